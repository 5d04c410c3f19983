#pragma once

#include "quatsurf/geometry.hpp"
#include "quatsurf/transforms.hpp"

namespace qs {

// Sections paired with (upsilon, phi); both are V^dagger holomorphic when
// the pair certifies a dual map or a constrained critical point.
struct MultiplierPair {
    QField upsilon_star;
    QField phi_star;
};

// ||V' - V||_2 / max(||V||_2, eps) in the current chart coordinate.
double isothermic_residual(const KodairaChart& k, const WeierstrassChart& w);

// (eta, xi)^(0,1) = 2 k eta conj(xi) per node, an element of pot(E).
QField pairing01(const QField& eta, const QField& xi);

// sup |ups* conj(ups) + phi* conj(phi)| normalized by the field magnitudes.
double dual_residual(const KodairaChart& k, const MultiplierPair& pair);

// ||V- - (ups*,ups)^(0,1) - (phi*,phi)^(0,1)||_2 / ||V-||_2 (absolute when
// V- ~ 0): the certificate that the triple is a constrained critical point.
double constrained_residual(const KodairaChart& k, const MultiplierPair& pair);

// Solves phi~* conj(alpha) + ups~* conj(gamma) = phi*,
//        phi~* conj(beta)  + ups~* conj(delta) = ups* per node.
MultiplierPair transform_multipliers(const MultiplierPair& pair, const MoebiusCoeffs& m);

}  // namespace qs
