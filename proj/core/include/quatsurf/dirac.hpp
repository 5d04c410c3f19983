#pragma once

#include "quatsurf/field.hpp"

namespace qs {

// Fundamental solution F_lambda(r) of lambda^2 + (free Dirac)^2 on P1:
// (2/pi) int_r^inf sinh(lambda(pi - 2 arctan s))/sinh(lambda pi)
//               sqrt(1+r^2)/sqrt(s^2-r^2) ds/(1+s^2),
// evaluated with the substitution s = r cosh u. Diverges logarithmically at
// r = 0 (returns +inf there). lambda = 0 takes the limit of the sinh ratio.
double flambda(double lambda, double r, double rel_tol = 1e-9);

// Central difference derivative with step 1e-4 (1 + r).
double flambda_prime(double lambda, double r);

// Euclidean blow-up limit F_inf(r) = (2/pi) int_r^inf e^-2s / sqrt(s^2-r^2) ds.
double finfty(double r, double rel_tol = 1e-9);
// Second integral form (1/pi) int_0^inf e^-t e^-(r^2/t) dt/t, evaluated as an
// independent quadrature for cross checks.
double finfty_alt(double r, double rel_tol = 1e-9);

// b(lambda, y) = [lambda y cosh(lambda(pi-y)) + sinh(lambda(pi-y))] / sinh(lambda pi).
double green_b(double lambda, double y);

// Moebius covariant kernel K_lambda(z, w) = (1 + z conj w)^-1 F_lambda(|(w-z)/(1+conj(z) w)|).
Quat kernel_K(double lambda, cplx z, cplx w);

// Spinor samples on the z1 chart of P1 (Fubini-Study weights); the length
// functional is |xi|_E = sqrt(1+|z|^2) |xi(z)|.
struct SpinorField {
    QField values;

    double lp_norm(double p) const;
    double area() const { return values.grid->total_weight(); }
};

// (alpha . xi)(z) = (conj(a1) + conj(a2) z)^-1 xi(alpha^-1 z) for the unit
// quaternion alpha = a1 + j a2, resampled with bilinear interpolation.
SpinorField su2_act(const Quat& alpha, const SpinorField& xi);

cplx su2_point_action(const Quat& alpha, cplx z);          // alpha z
cplx su2_point_action_inverse(const Quat& alpha, cplx z);  // alpha^-1 z

}  // namespace qs
