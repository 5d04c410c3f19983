#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>

#include "quatsurf/quat.hpp"

using namespace qs;

namespace {

std::mt19937 rng(7);

Quat random_quat() {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return Quat{u(rng), u(rng), u(rng), u(rng)};
}

// Independent oracle: the 4x4 real matrix of left multiplication by a,
// applied to the coefficient vector of b.
Quat mul_oracle(const Quat& a, const Quat& b) {
    std::array<std::array<double, 4>, 4> M = {{{a.w, -a.x, -a.y, -a.z},
                                               {a.x, a.w, -a.z, a.y},
                                               {a.y, a.z, a.w, -a.x},
                                               {a.z, -a.y, a.x, a.w}}};
    std::array<double, 4> v = {b.w, b.x, b.y, b.z}, r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += M[i][j] * v[j];
    return Quat{r[0], r[1], r[2], r[3]};
}

}  // namespace

TEST_CASE("multiplication table and unit element") {
    CHECK(abs(kI * kJ - kK) == 0.0);
    CHECK(abs(kJ * kK - kI) == 0.0);
    CHECK(abs(kK * kI - kJ) == 0.0);
    CHECK(abs(kI * kI + kOne) == 0.0);
    CHECK(abs(kI * kJ * kK + kOne) == 0.0);
    Quat a = random_quat();
    CHECK(abs(kOne * a - a) == 0.0);
    CHECK(abs(a * kOne - a) == 0.0);
}

TEST_CASE("product matches the left-multiplication matrix oracle") {
    for (int n = 0; n < 1000; ++n) {
        Quat a = random_quat(), b = random_quat();
        CHECK(abs(a * b - mul_oracle(a, b)) < 1e-12);
    }
}

TEST_CASE("norm multiplicativity and conjugation on random pairs") {
    double worst_norm = 0, worst_conj = 0;
    for (int n = 0; n < 10000; ++n) {
        Quat a = random_quat(), b = random_quat();
        worst_norm = std::max(worst_norm,
                              std::fabs(abs(a * b) - abs(a) * abs(b)) /
                                  std::max(abs(a) * abs(b), 1e-12));
        worst_conj = std::max(worst_conj, abs(conj(a * b) - conj(b) * conj(a)));
    }
    CHECK(worst_norm < 1e-12);
    CHECK(worst_conj < 1e-12);
}

TEST_CASE("alpha conj(alpha) equals |alpha|^2 and the polar square rule") {
    for (int n = 0; n < 1000; ++n) {
        Quat a = random_quat();
        CHECK(abs(a * conj(a) - Quat(norm_sq(a))) < 1e-12);
        Quat nu = imag(a);
        if (abs(nu) < 1e-6) continue;
        nu = nu / abs(nu);
        CHECK(abs(nu * nu + kOne) < 1e-12);  // unit imaginary squares to -1
        double t = 0.7;
        Quat alpha = Quat(std::cos(t)) + std::sin(t) * nu;
        CHECK(abs(alpha * alpha - (Quat(std::cos(2 * t)) + std::sin(2 * t) * nu)) < 1e-12);
    }
}

TEST_CASE("inverse") {
    CHECK(abs(inverse(kI) + kI) == 0.0);
    // (1-k)^-1 = (1+k)/2, checked against (1-k)(1+k) = 2.
    Quat v = kOne - kK;
    CHECK(abs(v * (kOne + kK) - 2.0 * kOne) == 0.0);
    CHECK(abs(inverse(v) - 0.5 * (kOne + kK)) < 1e-15);
    for (int n = 0; n < 1000; ++n) {
        Quat a = random_quat();
        if (abs(a) < 1e-3) continue;
        CHECK(abs(a * inverse(a) - kOne) < 1e-12);
        CHECK(abs(inverse(a) * a - kOne) < 1e-12);
    }
    CHECK_THROWS_AS((void)inverse(Quat{}), ZeroQuaternion);
}

TEST_CASE("rotations") {
    // K_{-k} negates the {i, j} plane and fixes {1, k}.
    Quat x{1.5, -0.25, 2.0, 0.75};
    Quat r = rotate(-1.0 * kK, x);
    CHECK(abs(r - Quat{1.5, 0.25, -2.0, 0.75}) < 1e-15);
    CHECK(abs(rotate(kOne, x) - x) == 0.0);
    for (int n = 0; n < 1000; ++n) {
        Quat alpha = random_quat();
        if (abs(alpha) < 1e-3) continue;
        alpha = alpha / abs(alpha);
        Quat v = imag(random_quat());
        Quat w = rotate(alpha, v);
        CHECK(std::fabs(real(w)) < 1e-12);          // Im H preserved
        CHECK(std::fabs(abs(w) - abs(v)) < 1e-12);  // length preserved
        // the plane span{1, alpha} is fixed
        CHECK(abs(rotate(alpha, alpha) - alpha) < 1e-12);
    }
    CHECK_THROWS_AS((void)rotate(2.0 * kI, x), NotUnit);
}

TEST_CASE("plane normals") {
    // Oriented plane spanned by (1-k)j: N = (1-k)(-i)(1-k)^-1 = j, R = i.
    Quat span = (kOne - kK) * kJ;
    PlaneNormals pn = plane_normals(span);
    Quat expected_N = (kOne - kK) * (-1.0 * kI) * inverse(kOne - kK);
    CHECK(abs(pn.N - expected_N) < 1e-15);
    CHECK(abs(pn.N - kJ) < 1e-15);  // symbolic simplification
    CHECK(abs(pn.R - kI) < 1e-15);
    CHECK(abs(pn.N * pn.N + kOne) < 1e-14);
    CHECK(abs(pn.R * pn.R + kOne) < 1e-14);

    // Standard complex plane: both normals are i.
    PlaneNormals st = plane_normals(kOne);
    CHECK(abs(st.N - kI) < 1e-15);
    CHECK(abs(st.R - kI) < 1e-15);

    // Fixed point description E = { x : N x = x R } on a basis of the plane.
    for (Quat x : {span, span * kI}) {
        CHECK(abs(pn.N * x - x * pn.R) < 1e-14);
    }
    CHECK_THROWS_AS((void)plane_normals(Quat{}), DegeneratePlane);
}

TEST_CASE("textual form") {
    CHECK(to_string(Quat{1, 2, -3, 0.5}) == "1+2i-3j+0.5k");
}

TEST_CASE("2x2 quaternionic inverse") {
    std::array<QMat2, 3> cases = {QMat2{kI, kOne, kOne, kI},
                                  QMat2{kOne, Quat{}, Quat{}, kOne},
                                  QMat2{Quat{}, kJ + kI, kOne - kK, 2.0 * kOne}};
    for (const QMat2& m : cases) {
        QMat2 inv = m.inverse();
        Quat p11 = m.a11 * inv.a11 + m.a12 * inv.a21;
        Quat p12 = m.a11 * inv.a12 + m.a12 * inv.a22;
        Quat p21 = m.a21 * inv.a11 + m.a22 * inv.a21;
        Quat p22 = m.a21 * inv.a12 + m.a22 * inv.a22;
        CHECK(abs(p11 - kOne) < 1e-13);
        CHECK(abs(p12) < 1e-13);
        CHECK(abs(p21) < 1e-13);
        CHECK(abs(p22 - kOne) < 1e-13);
    }
    QMat2 singular{Quat{}, Quat{}, kOne, kOne};
    CHECK_THROWS_AS((void)singular.inverse(), SingularSystem);
}
