#pragma once

#include <functional>
#include <vector>

#include "quatsurf/conformal.hpp"
#include "quatsurf/field.hpp"

namespace qs {

// One chart of a Kodaira quadruple (E, V, upsilon, phi): F = upsilon^-1 phi
// with (dbar - V) upsilon = (dbar - V) phi = 0 and upsilon root free.
struct KodairaChart {
    GridPtr grid;
    Potential01 V;
    QField upsilon;
    QField phi;
};

// One chart of a Weierstrass quadruple (E, U, chi, psi):
// dF = (chi, psi)^(1,0) with (dbar - U^dagger) chi = (dbar - U) psi = 0.
// B is the H+ valued (1,0) potential of the flat connection.
struct WeierstrassChart {
    GridPtr grid;
    Potential01 U;
    QField B;
    QField chi;
    QField psi;
};

using Cocycle = std::function<cplx(cplx)>;  // f21 as a function of z2

struct KodairaData {
    std::vector<KodairaChart> charts;
    Cocycle cocycle;  // only for two-chart atlases
    int deg = 0;
    bool compact = false;
};

struct WeierstrassData {
    std::vector<WeierstrassChart> charts;
    Cocycle cocycle;
    int deg = 0;
    bool compact = false;
};

struct IntertwinerResult {
    QField upsilon;
    Potential01 V;
    double symmetry_residual = 0.0;   // || i ups - ups N || / ||ups||
    double holo_residual = 0.0;       // || (dbar - V) ups || / ||ups||
    double normal_residual = 0.0;     // sup |ups^-1 i ups - N|
};

// Builds (V, upsilon) with i upsilon = upsilon N and (dbar - V) upsilon = 0
// from a unit imaginary normal field, via the projection P(xi) = (xi - i xi N)/2
// of a right-potential Neumann solution.
IntertwinerResult solve_intertwiner(const QField& N, const NeumannOptions& opts = {});

// Completes (V, upsilon) and a surface into a Kodaira chart with phi = upsilon F.
KodairaChart kodaira_of(const SurfaceChart& s, const QField& upsilon, const Potential01& V,
                        double normal_tol = 5e-2);

// Forward Darboux transformation of one chart:
// B = -2 d log|ups|, U = (-(d ups) ups^-1 - B)|_{H-}, chi = conj(j ups)^-1,
// psi = (d + B + U) phi.
WeierstrassChart darboux(const KodairaChart& k);
WeierstrassData darboux(const KodairaData& k);

struct InverseDarbouxResult {
    KodairaChart chart;
    QField F;
    double loop_residual = 0.0;
    double upsilon_residual = 0.0;  // holomorphicity of the recovered upsilon
    double phi_residual = 0.0;      // holomorphicity of phi = upsilon F
};

// Integrates dF = (chi, psi)^(1,0) from the node nearest to basepoint with
// F(basepoint) = F0 and recovers upsilon = -conj(j chi)^-1, phi = upsilon F.
InverseDarbouxResult inverse_darboux(const WeierstrassChart& w, cplx basepoint, Quat F0,
                                     double period_tol = 1e-2);

// Left coefficients of the 1-form (chi, psi)^(1,0) = conj(chi) j dz psi:
// dz coefficient conj(minus(chi)) psi, dzbar coefficient conj(plus(chi)) j psi.
WirtingerPair pairing10(const QField& chi, const QField& psi);

// Winding number of a nonvanishing cocycle around |z| = 1.
int bundle_degree(const Cocycle& f21, int samples = 512);

// V potential recovered from a root free chi (inverse transformation):
// V = conj(chi)^-1 conj(d chi) - 2 dbar log|chi| restricted to H-.
Potential01 potential_from_chi(const QField& chi);

}  // namespace qs
