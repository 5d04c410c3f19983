#pragma once

#include <iosfwd>
#include <string>

#include "quatsurf/geometry.hpp"

namespace qs {

// CSV: one "# key=value" header block, then re,im,w,x,y,z rows.
void write_field_csv(std::ostream& os, const QField& f);
QField read_field_csv(std::istream& is);

// Compact binary dump: magic "QSF1", grid header, row-major doubles.
void write_field_binary(std::ostream& os, const QField& f);
QField read_field_binary(std::istream& is);

// JSON bundle (schema 1) for a full surface: grids, kodaira and weierstrass
// fields, cocycle tag and degree. Unknown keys are rejected on ingest.
void write_bundle_json(std::ostream& os, const SurfaceBundle& b, const std::string& name);
SurfaceBundle read_bundle_json(std::istream& is, std::string* name = nullptr);

struct MeshOptions {
    bool project = false;  // drop the real part of H valued surfaces
};

// OBJ export with grid-quad faces; masked nodes produce holes. Vertices are
// the imaginary components; for H valued data the dropped real extent is
// recorded in a header comment (requires project=true).
void export_mesh(std::ostream& os, const SurfaceBundle& b, const MeshOptions& opts = {});

}  // namespace qs
