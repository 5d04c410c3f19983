#pragma once

#include "quatsurf/geometry.hpp"

namespace qs {

// Coefficients of F -> (F gamma + delta)^-1 (F alpha + beta).
struct MoebiusCoeffs {
    Quat alpha, beta, gamma, delta;

    bool nondegenerate(double tol = 1e-12) const;
    MoebiusCoeffs inverse_coeffs() const;  // coefficients of the inverse map
    static MoebiusCoeffs identity() { return {kOne, Quat{}, Quat{}, kOne}; }
};

Quat moebius_apply(const MoebiusCoeffs& m, const Quat& F);

struct MoebiusKodairaResult {
    KodairaChart chart;
    QField F;          // transformed surface on the same grid
    int masked_nodes = 0;  // nodes lost to F gamma + delta ~ 0
};

// upsilon~ = phi gamma + upsilon delta, phi~ = phi alpha + upsilon beta,
// V~ = V. Nodes within 3h of a zero of F gamma + delta are masked.
MoebiusKodairaResult moebius_kodaira(const KodairaChart& k, const MoebiusCoeffs& m);

struct MoebiusWeierstrassResult {
    WeierstrassChart chart;
    QField F_new;
    double pairing_residual = 0.0;  // sup |(chi~,psi~)^(1,0) - dF~| / |dF~|
};

// chi~ = chi conj(F gamma + delta)^-1, psi~ = psi (alpha - gamma F~),
// U~ = U - (psi gamma ups~^-1)|H-, B~ = B - (psi gamma ups~^-1)|H+.
MoebiusWeierstrassResult moebius_weierstrass(const WeierstrassChart& w, const KodairaChart& k,
                                             const MoebiusCoeffs& m, const QField& F);

// Checks alpha conj(gamma) = -gamma conj(alpha), alpha conj(delta) =
// delta conj(alpha), beta conj(gamma) = gamma conj(beta),
// beta conj(delta) = -delta conj(beta).
bool imaginary_preserving(const MoebiusCoeffs& m, double tol = 1e-12);

struct HolomorphicMap {
    std::function<cplx(cplx)> f;
    std::function<cplx(cplx)> df;
};

// Pullback of Kodaira data along a holomorphic map into the source chart:
// V~ = conj(f') V(f), upsilon~ = upsilon(f), phi~ = phi(f).
KodairaChart pullback_covering(const KodairaChart& k, const HolomorphicMap& map, GridPtr target);
// Weierstrass side: U~ = f' U(f), B~ = f' B(f), chi~ = chi(f), psi~ = f' psi(f).
WeierstrassChart pullback_covering(const WeierstrassChart& w, const HolomorphicMap& map,
                                   GridPtr target);

// Weierstrass data of the reflection -conj(F): the pair swaps to (psi, chi).
WeierstrassChart reflect(const WeierstrassChart& w);

// Kodaira data of F composed with the orientation reversing chart z -> conj z:
// V~ = j V(conj z) j^-1, upsilon~ = j upsilon(conj z), phi~ = j phi(conj z).
KodairaChart conjugate_surface(const KodairaChart& k, GridPtr conjugate_grid);

}  // namespace qs
