#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "quatsurf/grid.hpp"
#include "quatsurf/quat.hpp"

namespace qs {

// Quaternion-valued samples on a chart. A field carries its own mask, which
// starts as the grid mask and shrinks under stencil operations.
class QField {
  public:
    QField() = default;
    explicit QField(GridPtr grid, Quat fill = Quat{});
    QField(GridPtr grid, std::function<Quat(cplx)> f);

    GridPtr grid;
    std::vector<Quat> values;
    std::vector<std::uint8_t> mask;

    int size() const { return grid ? grid->size() : 0; }
    Quat& operator[](int idx) { return values[idx]; }
    const Quat& operator[](int idx) const { return values[idx]; }
    bool on(int idx) const { return mask[idx] != 0; }

    QField map(const std::function<Quat(Quat)>& f) const;
    static QField zip(const QField& a, const QField& b,
                      const std::function<Quat(Quat, Quat)>& f);

    QField operator+(const QField& b) const;
    QField operator-(const QField& b) const;
    QField lmul(const Quat& q) const;   // q * f
    QField rmul(const Quat& q) const;   // f * q
    QField pointwise_mul(const QField& b) const;     // a * b
    QField pointwise_inverse(double floor = 1e-300) const;
    QField conjugated() const;

    double sup_norm() const;
    double l2_norm_sq() const;          // sum |f|^2 weight
    double l2_norm_sq(const std::vector<std::uint8_t>& where) const;

    // Bilinear interpolation; nullopt outside the valid stencil.
    std::optional<Quat> interpolate(cplx z) const;
    // Catmull-Rom bicubic, falling back to bilinear near mask edges.
    std::optional<Quat> interpolate_cubic(cplx z) const;

    void restrict_mask(const std::vector<std::uint8_t>& m);
};

// (0,1) potential: the coefficient V of dzbar in a holomorphic structure
// dbar - V. Splits as V = V+ + V- with V+ in H+ and V- in H-.
struct Potential01 {
    QField field;
    QField plus() const;
    QField minus() const;
    double l2_norm_sq() const { return field.l2_norm_sq(); }
};

struct WirtingerPair {
    QField dz;     // coefficient of dz   (d f)
    QField dzbar;  // coefficient of dzbar (dbar f)
};

// Fourth order central Wirtinger derivatives with i acting by left
// multiplication: d = (fx - i fy)/2, dbar = (fx + i fy)/2. Nodes lacking the
// full five point stencil in either axis are dropped from the output mask.
WirtingerPair wirtinger(const QField& f);

// Discrete Cauchy transform g(z) = sum_w f(w) (z-w)^-1 weight(w)/pi with the
// self node omitted; a right inverse of dbar on compactly supported data.
QField cauchy_transform(const QField& f);

struct NeumannOptions {
    int max_iter = 200;
    double tol = 1e-10;
    double divergence_guard = 1e6;
};

struct NeumannResult {
    QField xi;
    int iterations = 0;
    double last_update = 0.0;
    double holo_residual = 0.0;  // ||(dbar - V) xi|| / ||xi|| on eroded mask
};

// Solves xi = seed + I_Omega(V xi) by fixed point iteration; throws
// NoConvergence when the series diverges or the iteration cap is hit.
NeumannResult neumann_resolve(const Potential01& V, const QField& seed,
                              const NeumannOptions& opts = {});

// Same iteration with the potential acting by right multiplication,
// xi = seed + I_Omega(xi W); used by the intertwiner construction.
NeumannResult neumann_resolve_right(const QField& W, const QField& seed,
                                    const NeumannOptions& opts = {});

// Least squares slope of log mean |f| over circles r in {4h,8h,16h,32h}
// around z0, rounded to the nearest integer; negative values signal poles.
int root_order(const QField& f, cplx z0, double* regression_residual = nullptr);

// Trapezoidal integral of dz A + dzbar B (left coefficients) along the
// circle |z - center| = radius, sampled by bilinear interpolation.
Quat loop_integral(const QField& A, const QField& B, cplx center, double radius,
                   int samples = 256);

// ||dbar xi - W xi||_2 / max(||xi||_2, eps) with W = V or V^dagger = k conj(V) k.
double holo_residual(const QField& xi, const Potential01& V, bool dagger,
                     int erode_cells = 3);

Quat dagger_potential_value(const Quat& v);  // k conj(v) k
Potential01 dagger_potential(const Potential01& V);

}  // namespace qs
