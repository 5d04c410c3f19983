#pragma once

#include <array>
#include <optional>
#include <vector>

#include "quatsurf/representations.hpp"

namespace qs {

// Everything the curvature and bound checks need for one surface: the map,
// its Kodaira data and its Weierstrass data, chart by chart.
struct SurfaceBundle {
    std::vector<SurfaceChart> surfaces;
    KodairaData kodaira;
    WeierstrassData weierstrass;
};

// Mean curvature vector H = 2 chi^-1 j U conj(psi)^-1 per node. Nodes where
// psi or chi fall below the branch threshold are masked.
QField mean_curvature(const WeierstrassChart& w, double branch_threshold = 1e-8);

using Mat2 = std::array<double, 4>;  // row major [a00 a01; a10 a11]

// Weingarten operator of the perpendicular field conj(chi) alpha psi in the
// chart frame: y -> a y + c ybar with a = 2 Re(j alpha U) and
// c = j alpha V' - V j alpha, as the symmetric matrix
// [[a + Re c, Im c], [Im c, a - Re c]].
struct WeingartenField {
    std::vector<Mat2> matrices;
    std::vector<std::uint8_t> mask;
};

WeingartenField weingarten(const WeierstrassChart& w, const Potential01& V, cplx alpha,
                           double branch_threshold = 1e-8);
// Variant with a per-node complex frame coefficient (e.g. 1/(|chi||psi|)).
WeingartenField weingarten(const WeierstrassChart& w, const Potential01& V,
                           const std::vector<cplx>& alpha, double branch_threshold = 1e-8);

struct WillmoreValue {
    double weierstrass = 0.0;  // 4 ||U-||^2
    double kodaira = 0.0;      // 4 pi deg E + 4 ||V-||^2
    bool has_weierstrass = false;
    bool has_kodaira = false;
    double discrepancy() const { return std::abs(weierstrass - kodaira); }
};

// Energies integrate over fundamental regions on two-chart atlases and over
// the full included mask on planar charts.
WillmoreValue willmore(const SurfaceBundle& b);
double willmore_weierstrass(const WeierstrassData& w);
double willmore_kodaira(const KodairaData& k);

struct PreimagePoint {
    int chart = 0;
    cplx z;
    double distance = 0.0;
    int ord_chi = 0;
    int ord_psi = 0;
};

struct LiYauReport {
    std::vector<PreimagePoint> preimages;
    double bound = 0.0;        // 4 pi sum (1 + ord chi + ord psi)
    double willmore = 0.0;
    bool bound_satisfied = false;
    // Plucker inequality for the two-section system on P1 data.
    bool has_plucker = false;
    double plucker_lhs = 0.0;  // ||V||^2 / pi
    double plucker_rhs = 0.0;  // d((d-1)(1-g) - deg E) + ord H, d=2, g=0
    bool plucker_satisfied = false;
};

LiYauReport liyau_pluecker_check(const SurfaceBundle& b, Quat probe,
                                 double capture_distance = 1e-3, double slack = 0.02);

// V' = ((d psi) psi^-1)|_{H-}; shared with the isothermic diagnostics.
Potential01 v_prime(const WeierstrassChart& w, double branch_threshold = 1e-8);

}  // namespace qs
