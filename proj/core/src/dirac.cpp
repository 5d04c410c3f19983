#include "quatsurf/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "quatsurf/errors.hpp"

namespace qs {

namespace {

// Angle phi = arctan(s) together with its stable complement a = pi - 2 phi.
// Computing a as 2 arctan(1/s) avoids the cancellation that otherwise wrecks
// the integrand tails for large s.
struct Angle {
    double phi, complement;
};

Angle stable_angle(double s) {
    if (s <= 1.0) {
        double phi = std::atan(s);
        return {phi, std::numbers::pi - 2.0 * phi};
    }
    double t = std::atan(1.0 / s);
    return {0.5 * std::numbers::pi - t, 2.0 * t};
}

// sinh(lambda(pi - 2 phi)) / sinh(lambda pi), finite for large lambda and
// smooth through lambda = 0.
double sinh_ratio(double lambda, const Angle& ang) {
    double l = std::fabs(lambda);
    double a = ang.complement;
    if (l * std::numbers::pi < 1e-4) {
        // sinh(l a)/sinh(l pi) = (a/pi)(1 + l^2(a^2 - pi^2)/6 + O(l^4))
        double l2 = l * l;
        return (a / std::numbers::pi) *
               (1.0 + l2 * (a * a - std::numbers::pi * std::numbers::pi) / 6.0);
    }
    return std::exp(-2.0 * l * ang.phi) * (-std::expm1(-2.0 * l * a)) /
           (-std::expm1(-2.0 * l * std::numbers::pi));
}

// Adaptive Gauss-Legendre (15 point) with interval bisection.
template <typename F>
double adaptive_gl(const F& f, double a, double b, double rel_tol, double abs_floor,
                   int depth = 0) {
    static const double xs[8] = {0.0,
                                 0.2011940939974345,
                                 0.3941513470775634,
                                 0.5709721726085388,
                                 0.7244177313601700,
                                 0.8482065834104272,
                                 0.9372733924007059,
                                 0.9879925180204854};
    static const double ws[8] = {0.2025782419255613, 0.1984314853271116, 0.1861610000155622,
                                 0.1662692058169939, 0.1395706779261543, 0.1071592204671719,
                                 0.0703660474881081, 0.0307532419961173};
    auto gl = [&](double lo, double hi) {
        double c = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
        double s = ws[0] * f(c);
        for (int k = 1; k < 8; ++k)
            s += ws[k] * (f(c - hw * xs[k]) + f(c + hw * xs[k]));
        return s * hw;
    };
    double whole = gl(a, b);
    double mid = 0.5 * (a + b);
    double split = gl(a, mid) + gl(mid, b);
    if (depth > 24 ||
        std::fabs(split - whole) <= rel_tol * std::fabs(split) + abs_floor)
        return split;
    return adaptive_gl(f, a, mid, rel_tol, abs_floor * 0.5, depth + 1) +
           adaptive_gl(f, mid, b, rel_tol, abs_floor * 0.5, depth + 1);
}

}  // namespace

double flambda(double lambda, double r, double rel_tol) {
    if (r < 0.0) throw Error("flambda: r must be nonnegative");
    if (r == 0.0) return std::numeric_limits<double>::infinity();
    // s = r cosh u removes the endpoint singularity:
    // F = (2/pi) sqrt(1+r^2) int_0^inf K(lambda, arctan(r cosh u)) du / (1 + r^2 cosh^2 u).
    auto integrand = [lambda, r](double u) {
        double ch = std::cosh(u);
        double s = r * ch;
        return sinh_ratio(lambda, stable_angle(s)) / (1.0 + s * s);
    };
    // The integrand decays at least like e^{-2u}; large lambda concentrates
    // mass near u = 0, which the adaptive refinement resolves.
    double cut = 1.0;
    double total = 0.0;
    double u0 = 0.0;
    double tail_limit = 40.0 + std::max(0.0, std::log1p(1.0 / r));
    while (u0 < tail_limit) {
        double u1 = std::min(u0 + cut, tail_limit);
        total += adaptive_gl(integrand, u0, u1, rel_tol * 0.1, 1e-300);
        u0 = u1;
        cut *= 2.0;
        if (integrand(u0) < 1e-18 * std::max(total, 1e-30) / (1.0 + u0)) break;
    }
    return (2.0 / std::numbers::pi) * std::sqrt(1.0 + r * r) * total;
}

double flambda_prime(double lambda, double r) {
    double s = 1e-4 * (1.0 + r);
    if (r - 2.0 * s <= 0.0) {
        double lo = std::max(r - s, 1e-12);
        return (flambda(lambda, r + s) - flambda(lambda, lo)) / (r + s - lo);
    }
    // Fourth order central stencil keeps the truncation error below the
    // bound margins even near the logarithmic singularity.
    return (8.0 * (flambda(lambda, r + s) - flambda(lambda, r - s)) -
            (flambda(lambda, r + 2.0 * s) - flambda(lambda, r - 2.0 * s))) /
           (12.0 * s);
}

double finfty(double r, double rel_tol) {
    if (r <= 0.0) throw Error("finfty: r must be positive");
    // s = r cosh u turns the integral into (2/pi) int_0^inf e^{-2 r cosh u} du.
    auto integrand = [r](double u) { return std::exp(-2.0 * r * std::cosh(u)); };
    double tail = std::max(5.0, std::acosh(std::max(1.0, 745.0 / (2.0 * r))));
    double total = adaptive_gl(integrand, 0.0, tail, rel_tol * 0.1, 1e-320);
    return (2.0 / std::numbers::pi) * total;
}

double finfty_alt(double r, double rel_tol) {
    if (r <= 0.0) throw Error("finfty_alt: r must be positive");
    // (1/pi) int e^{-t - r^2/t} dt/t over the region where the exponent
    // exceeds the underflow threshold.
    auto integrand = [r](double t) { return std::exp(-t - r * r / t) / t; };
    double lo = r * r / 745.0;
    double hi = 745.0;
    if (lo >= hi) return 0.0;
    double total = adaptive_gl(integrand, lo, std::min(hi, std::max(4.0 * r, 2.0)),
                               rel_tol * 0.1, 1e-320) +
                   adaptive_gl(integrand, std::min(hi, std::max(4.0 * r, 2.0)), hi,
                               rel_tol * 0.1, 1e-320);
    return total / std::numbers::pi;
}

double green_b(double lambda, double y) {
    double l = std::fabs(lambda);
    if (l < 1e-12) return 1.0;  // [l y cosh(l a) + sinh(l a)] / sinh(l pi) -> 1
    // Rewrite with decaying exponentials only.
    double a = std::numbers::pi - y;
    double num = l * y * (1.0 + std::exp(-2.0 * l * a)) - std::expm1(-2.0 * l * a);
    double den = -std::expm1(-2.0 * l * std::numbers::pi);
    return std::exp(-l * y) * num / den;
}

Quat kernel_K(double lambda, cplx z, cplx w) {
    cplx den = 1.0 + z * std::conj(w);
    if (std::abs(den) < 1e-12) throw AntipodalPair("kernel_K: 1 + z conj(w) ~ 0");
    double rho = std::abs((w - z) / (1.0 + std::conj(z) * w));
    double F = flambda(lambda, rho);
    if (std::isinf(F))  // logarithmically divergent on the diagonal
        return Quat(std::numeric_limits<double>::infinity());
    return Quat(1.0 / den) * F;
}

double SpinorField::lp_norm(double p) const {
    // ||xi||_p^p = int |xi|_E^p dmu_P1 = int |xi|^p (1+|z|^2)^{p/2-2} dmu.
    const QField& f = values;
    const ChartGrid& g = *f.grid;
    double s = 0.0;
    for (int idx = 0; idx < f.size(); ++idx) {
        if (!f.mask[idx]) continue;
        double r2 = std::norm(g.node(idx));
        double lenE = std::sqrt(1.0 + r2) * abs(f.values[idx]);
        // g.weight already carries the Fubini-Study factor (1+r^2)^-2 h^2.
        s += std::pow(lenE, p) * g.weight[idx];
    }
    return std::pow(s, 1.0 / p);
}

cplx su2_point_action(const Quat& alpha, cplx z) {
    cplx a1(alpha.w, alpha.x), a2(alpha.y, -alpha.z);
    return (std::conj(a1) * z + a2) / (a1 - std::conj(a2) * z);
}

cplx su2_point_action_inverse(const Quat& alpha, cplx z) {
    cplx a1(alpha.w, alpha.x), a2(alpha.y, -alpha.z);
    return (a1 * z - a2) / (std::conj(a1) + std::conj(a2) * z);
}

SpinorField su2_act(const Quat& alpha, const SpinorField& xi) {
    if (std::fabs(abs(alpha) - 1.0) > 1e-9) throw NotUnit("su2_act: |alpha| != 1");
    cplx a1(alpha.w, alpha.x), a2(alpha.y, -alpha.z);
    SpinorField out{QField(xi.values.grid)};
    for (int idx = 0; idx < out.values.size(); ++idx) {
        if (!out.values.grid->mask[idx]) {
            out.values.mask[idx] = 0;
            continue;
        }
        cplx z = out.values.grid->node(idx);
        cplx factor = std::conj(a1) + std::conj(a2) * z;
        if (std::abs(factor) < 1e-9) {
            out.values.mask[idx] = 0;
            continue;
        }
        auto v = xi.values.interpolate(su2_point_action_inverse(alpha, z));
        if (!v) {
            out.values.mask[idx] = 0;
            continue;
        }
        out.values.values[idx] = lmul(1.0 / factor, *v);
        out.values.mask[idx] = 1;
    }
    return out;
}

}  // namespace qs
