#pragma once

#include <optional>
#include <string>

#include "quatsurf/field.hpp"

namespace qs {

// A sampled surface patch F : chart -> H, optionally with closed form
// derivative coefficients (dF = dz A + dzbar B with left coefficients).
struct SurfaceChart {
    std::string name;
    QField F;
    std::optional<WirtingerPair> exact_dF;

    // Finite differences unless exact derivatives are attached.
    WirtingerPair differential() const;
};

struct NormalFields {
    QField N, R;
};

// Per node solve -*dF = N dF = dF R: with the tangent frame t1 = dF(dx),
// t2 = dF(dy) this is N = t2 t1^-1 and R = t1^-1 t2. Branch points
// (|dF| below threshold) are masked out.
NormalFields normals_from_dF(const SurfaceChart& s, double branch_threshold = 1e-8);

struct ConformalityReport {
    double residual = 0.0;        // sup |-*dF - N dF| / |dF|
    double metric_mismatch = 0.0; // sup | |F_x|^2 - |F_y|^2 | / |dF|^2
    double metric_skew = 0.0;     // sup |<F_x, F_y>| / |dF|^2
};

ConformalityReport conformality_residual(const SurfaceChart& s);

struct ImaginaryReport {
    bool imaginary = false;
    double re_sup = 0.0;          // sup |Re F|
    double g_residual = -1.0;     // H- part of psi chi^-1, when data attached
    double rn_residual = -1.0;    // sup |R + N|, when computable
};

ImaginaryReport imaginary_check(const SurfaceChart& s, const QField* chi = nullptr,
                                const QField* psi = nullptr, double tol = 1e-6);

}  // namespace qs
