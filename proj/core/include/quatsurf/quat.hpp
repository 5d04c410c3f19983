#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <string>

#include "quatsurf/errors.hpp"

namespace qs {

using cplx = std::complex<double>;

// Quaternion value w + x i + y j + z k. The copy of C inside H spanned by
// {1, i} is written H+ throughout; its orthogonal complement jC = span{j, k}
// is H-. Every element splits uniquely as q = plus(q) + j * <complex>.
struct Quat {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    // Embeds a complex number into H+.
    Quat(cplx c) : w(c.real()), x(c.imag()), y(0.0), z(0.0) {}
    explicit constexpr Quat(double r) : w(r) {}

    Quat& operator+=(const Quat& b) { w += b.w; x += b.x; y += b.y; z += b.z; return *this; }
    Quat& operator-=(const Quat& b) { w -= b.w; x -= b.x; y -= b.y; z -= b.z; return *this; }
    Quat& operator*=(double s) { w *= s; x *= s; y *= s; z *= s; return *this; }
};

inline constexpr Quat kOne{1.0, 0.0, 0.0, 0.0};
inline constexpr Quat kI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quat kJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quat kK{0.0, 0.0, 0.0, 1.0};

inline Quat operator+(Quat a, const Quat& b) { return a += b; }
inline Quat operator-(Quat a, const Quat& b) { return a -= b; }
inline Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
inline Quat operator*(Quat a, double s) { return a *= s; }
inline Quat operator*(double s, Quat a) { return a *= s; }
inline Quat operator/(Quat a, double s) { return a *= (1.0 / s); }

// Hamilton product, i j = k.
inline Quat operator*(const Quat& a, const Quat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quat conj(const Quat& a) { return {a.w, -a.x, -a.y, -a.z}; }
inline double norm_sq(const Quat& a) { return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z; }
inline double abs(const Quat& a) { return std::sqrt(norm_sq(a)); }
inline double real(const Quat& a) { return a.w; }
inline Quat imag(const Quat& a) { return {0.0, a.x, a.y, a.z}; }

// q = plus(q) + j * minus(q) with plus, minus in C.
inline cplx plus_part(const Quat& a) { return {a.w, a.x}; }
inline cplx minus_part(const Quat& a) { return {a.y, -a.z}; }
inline Quat from_parts(cplx p, cplx m) { return {p.real(), p.imag(), m.real(), -m.imag()}; }

// Left and right multiplication by a complex scalar (they differ on H-).
inline Quat lmul(cplx c, const Quat& a) {
    return {c.real() * a.w - c.imag() * a.x, c.real() * a.x + c.imag() * a.w,
            c.real() * a.y - c.imag() * a.z, c.real() * a.z + c.imag() * a.y};
}
inline Quat rmul(const Quat& a, cplx c) {
    return {a.w * c.real() - a.x * c.imag(), a.w * c.imag() + a.x * c.real(),
            a.y * c.real() + a.z * c.imag(), -a.y * c.imag() + a.z * c.real()};
}

inline Quat inverse(const Quat& a) {
    double n2 = norm_sq(a);
    if (n2 < 1e-300) throw ZeroQuaternion("inverse of (near) zero quaternion");
    return conj(a) * (1.0 / n2);
}

inline Quat operator*(const Quat& a, cplx c) { return rmul(a, c); }
inline Quat operator*(cplx c, const Quat& a) { return lmul(c, a); }

inline double dot(const Quat& a, const Quat& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

// Rotation K_alpha(x) = alpha x alpha^-1 for unit alpha.
inline Quat rotate(const Quat& alpha, const Quat& x, double unit_tol = 1e-9) {
    if (std::fabs(abs(alpha) - 1.0) > unit_tol) throw NotUnit("rotate: |alpha| != 1");
    return alpha * x * conj(alpha);
}

struct PlaneNormals {
    Quat N, R;
};

// Left and right normals of the oriented plane span * C, oriented so that
// right multiplication by i is the positive quarter turn. N t1 = t2 and
// t1 R = t2 for the oriented basis t1 = span, t2 = span i.
inline PlaneNormals plane_normals(const Quat& span) {
    if (abs(span) < 1e-12) throw DegeneratePlane("plane_normals: span ~ 0");
    Quat t1 = span;
    Quat t2 = rmul(span, cplx(0.0, 1.0));
    Quat inv_t1 = inverse(t1);
    PlaneNormals out{t2 * inv_t1, inv_t1 * t2};
    out.N = imag(out.N) / abs(imag(out.N));
    out.R = imag(out.R) / abs(imag(out.R));
    return out;
}

std::string to_string(const Quat& a);  // "w+xi+yj+zk"
std::ostream& operator<<(std::ostream& os, const Quat& a);

// 2x2 matrix with quaternion entries; inverse via the Schur complement,
// falling back to a row permutation when the pivot is not invertible.
struct QMat2 {
    Quat a11, a12, a21, a22;

    QMat2 inverse(double tol = 1e-13) const {
        auto schur = [tol](const Quat& A, const Quat& B, const Quat& C, const Quat& D) {
            Quat iA = qs::inverse(A);
            Quat S = D - C * iA * B;
            if (abs(S) < tol) throw SingularSystem("QMat2: singular matrix");
            Quat iS = qs::inverse(S);
            return QMat2{iA + iA * B * iS * C * iA, -1.0 * (iA * B * iS),
                         -1.0 * (iS * C * iA), iS};
        };
        if (abs(a11) > tol) return schur(a11, a12, a21, a22);
        if (abs(a21) > tol) {
            // Swap rows, invert, then swap the columns of the result.
            QMat2 r = schur(a21, a22, a11, a12);
            return QMat2{r.a12, r.a11, r.a22, r.a21};
        }
        throw SingularSystem("QMat2: singular matrix");
    }
};

}  // namespace qs
