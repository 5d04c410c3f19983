#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "quatsurf/field.hpp"

using namespace qs;

namespace {

const double kPi = std::numbers::pi;

Quat catenoid_V(cplx z) { return kK * Quat(std::conj(z) / z / (1.0 + std::norm(z))); }

QField smooth_bump(GridPtr grid, double r0, double r1) {
    return QField(grid, [r0, r1](cplx z) {
        double r = std::abs(z);
        if (r <= r0 || r >= r1) return Quat{};
        double t = (r - r0) * (r1 - r);
        double s = std::exp(-0.05 / t);
        return Quat{s, 0.4 * s, -0.3 * s, 0.2 * s};
    });
}

}  // namespace

TEST_CASE("grid weights approximate areas") {
    auto disk = ChartGrid::disk(cplx(0, 0), 1.0, 0.02);
    CHECK(std::fabs(disk->total_weight() - kPi) < 0.05 * kPi);  // O(h) boundary cells
    auto fs = ChartGrid::p1_chart(40.0, 0.05, 1, true);
    CHECK(std::fabs(fs->total_weight() - kPi) < 0.005 * kPi);  // Fubini-Study area of P1
    auto ann = ChartGrid::annulus(cplx(0, 0), 0.5, 1.0, 0.01);
    CHECK(std::fabs(ann->total_weight() - kPi * 0.75) < 0.02);
}

TEST_CASE("wirtinger derivatives of antiholomorphic and cubic monomials") {
    auto grid = ChartGrid::rectangle(-1, 1, -1, 1, 0.02);
    QField f(grid, [](cplx z) { return Quat(std::conj(z)); });
    WirtingerPair d = wirtinger(f);
    double worst_bar = 0, worst = 0;
    for (int i = 0; i < f.size(); ++i) {
        if (!d.dz.mask[i]) continue;
        worst_bar = std::max(worst_bar, abs(d.dzbar.values[i] - kOne));
        worst = std::max(worst, abs(d.dz.values[i]));
    }
    CHECK(worst_bar < 1e-10);
    CHECK(worst < 1e-10);

    // z^3: the five point stencil differentiates cubics exactly, so the
    // residual sits at rounding level for every h (trivially below C h^4).
    for (double h : {0.04, 0.02, 0.01}) {
        auto g = ChartGrid::rectangle(-1, 1, -1, 1, h);
        QField c(g, [](cplx z) { return Quat(z * z * z); });
        WirtingerPair dc = wirtinger(c);
        double sup = 0;
        for (int i = 0; i < c.size(); ++i) {
            if (!dc.dz.mask[i]) continue;
            sup = std::max(sup, abs(dc.dz.values[i] - Quat(3.0 * g->node(i) * g->node(i))));
        }
        CHECK(sup < 1e-11);
    }
    // genuine fourth order decay needs a nonvanishing fifth derivative: z^5
    double prev = -1.0;
    for (double h : {0.04, 0.02, 0.01}) {
        auto g = ChartGrid::rectangle(-1, 1, -1, 1, h);
        QField c(g, [](cplx z) { return Quat(std::pow(z, 5)); });
        WirtingerPair dc = wirtinger(c);
        double sup = 0;
        for (int i = 0; i < c.size(); ++i) {
            if (!dc.dz.mask[i]) continue;
            sup = std::max(sup, abs(dc.dz.values[i] - Quat(5.0 * std::pow(g->node(i), 4))));
        }
        if (prev > 0) CHECK(std::log2(prev / sup) > 3.5);
        prev = sup;
    }
    auto tiny = ChartGrid::rectangle(0, 0.06, 0, 0.06, 0.02);
    QField t(tiny, [](cplx) { return kOne; });
    CHECK_THROWS_AS((void)wirtinger(t), GridTooSmall);
}

TEST_CASE("wirtinger matches the catenoid closed form differential") {
    auto grid = ChartGrid::annulus(cplx(0, 0), 0.5, 1.5, 0.01);
    QField F(grid, [](cplx z) {
        return Quat(std::log(std::norm(z))) * kI + Quat(std::conj(z) + 1.0 / z) * kJ;
    });
    WirtingerPair d = wirtinger(F);
    double worst = 0;
    for (int i = 0; i < F.size(); ++i) {
        if (!d.dz.mask[i]) continue;
        cplx z = grid->node(i);
        Quat dz_exact = Quat(1.0 / z) * kI - Quat(1.0 / (z * z)) * kJ;
        Quat dzb_exact = Quat(1.0 / std::conj(z)) * kI + kJ;
        worst = std::max(worst, abs(d.dz.values[i] - dz_exact) + abs(d.dzbar.values[i] - dzb_exact));
    }
    CHECK(worst < 1e-4);  // h^4 with z^-5 scale at the inner radius
}

TEST_CASE("l2 norms of potentials") {
    auto grid = ChartGrid::disk(cplx(0, 0), 15.0, 0.05);
    Potential01 zero{QField(grid)};
    CHECK(zero.l2_norm_sq() == 0.0);

    Potential01 V{QField(grid, catenoid_V)};
    // int (1+r^2)^-2 dmu = pi (1 - 1/(1+R^2)): radial quadrature oracle.
    double oracle = kPi * (1.0 - 1.0 / (1.0 + 15.0 * 15.0));
    CHECK(std::fabs(V.l2_norm_sq() - oracle) < 0.01 * kPi);
    CHECK(std::fabs(V.l2_norm_sq() - kPi) < 0.01 * kPi);

    Potential01 W{QField(grid, [](cplx z) { return (1.0 / (1.0 + std::norm(z))) * kK; })};
    CHECK(std::fabs(W.l2_norm_sq() - kPi) < 0.01 * kPi);

    // split is exact and unique
    QField sum = QField::zip(V.plus(), V.minus(), [](Quat a, Quat b) { return a + b; });
    for (int i = 0; i < sum.size(); ++i)
        if (sum.mask[i]) CHECK(abs(sum.values[i] - V.field.values[i]) < 1e-15);
}

TEST_CASE("cauchy transform: constants, left inverse, linearity") {
    auto grid = ChartGrid::disk(cplx(0, 0), 1.0, 0.02);
    QField zero(grid);
    CHECK(cauchy_transform(zero).sup_norm() == 0.0);

    QField one(grid, [](cplx) { return kOne; });
    QField g = cauchy_transform(one);
    double worst = 0;
    for (int i = 0; i < g.size(); ++i) {
        cplx z = grid->node(i);
        if (!g.mask[i] || std::abs(z) > 0.6) continue;
        worst = std::max(worst, abs(g.values[i] - Quat(std::conj(z))));
    }
    CHECK(worst < 5e-3);  // g ~ zbar inside
    CHECK(abs(*g.interpolate(cplx(0, 0))) < 1e-3);

    QField f = smooth_bump(grid, 0.1, 0.9);
    QField gf = cauchy_transform(f);
    WirtingerPair d = wirtinger(gf);
    QField resid = QField::zip(d.dzbar, f, [](Quat a, Quat b) { return a - b; });
    auto interior = grid->eroded_mask(3);
    double rel = std::sqrt(resid.l2_norm_sq(interior) / f.l2_norm_sq(interior));
    CHECK(rel <= 0.05);

    // linearity and commutation with right quaternion multiplication
    Quat q{0.3, -1.0, 0.7, 0.2};
    QField fq = f.rmul(q);
    QField diff = QField::zip(cauchy_transform(fq), gf.rmul(q),
                              [](Quat a, Quat b) { return a - b; });
    CHECK(diff.sup_norm() < 1e-12);
}

TEST_CASE("neumann resolvent") {
    auto grid = ChartGrid::annulus(cplx(0, 0), 0.7, 1.4, 0.02);
    Potential01 zero{QField(grid)};
    QField one(grid, [](cplx) { return kOne; });
    NeumannResult triv = neumann_resolve(zero, one);
    CHECK(triv.iterations <= 2);
    CHECK(QField::zip(triv.xi, one, [](Quat a, Quat b) { return a - b; }).sup_norm() < 1e-14);

    Potential01 V{QField(grid, catenoid_V)};
    QField seed(grid, -1.0 * (kJ * inverse(kOne - kK)));  // upsilon(1)-matched constant
    NeumannResult r = neumann_resolve(V, seed);
    CHECK(r.holo_residual <= 5e-2);

    Potential01 V10{V.field.map([](Quat v) { return 10.0 * v; })};
    CHECK_THROWS_AS((void)neumann_resolve(V10, seed), NoConvergence);
}

TEST_CASE("discrete Cauchy integral formula for holomorphic sections") {
    // f xi = I_{Omega,V}((dbar f) xi) for a real bump f: apply the resolvent
    // series to (dbar f) xi and compare with f xi.
    auto grid = ChartGrid::annulus(cplx(0, 0), 0.7, 1.4, 0.02);
    Potential01 V{QField(grid, catenoid_V)};
    QField ups(grid, [](cplx z) { return -1.0 * (kJ * inverse(kOne - Quat(1.0 / z) * kK)); });
    QField fre(grid, [](cplx z) {
        double r = std::abs(z);
        if (r <= 0.75 || r >= 1.35) return Quat{};
        double t = (r - 0.75) * (1.35 - r);
        return Quat(std::exp(-0.02 / t));
    });
    WirtingerPair df = wirtinger(fre);
    QField rhs = QField::zip(df.dzbar, ups, [](Quat a, Quat u) { return a * u; });
    // I_{Omega,V}(g) via xi_{n+1} = I(g) + I(V xi_n)
    QField acc = cauchy_transform(rhs);
    for (int it = 0; it < 60; ++it) {
        QField next = QField::zip(cauchy_transform(V.field.pointwise_mul(acc)),
                                  cauchy_transform(rhs),
                                  [](Quat a, Quat b) { return a + b; });
        double change = QField::zip(next, acc, [](Quat a, Quat b) { return a - b; })
                            .sup_norm();
        acc = next;
        if (change < 1e-11) break;
    }
    QField lhs = QField::zip(fre, ups, [](Quat f, Quat u) { return f * u; });
    QField resid = QField::zip(lhs, acc, [](Quat a, Quat b) { return a - b; });
    auto interior = grid->eroded_mask(3);
    double rel = std::sqrt(resid.l2_norm_sq(interior) / std::max(lhs.l2_norm_sq(interior), 1e-30));
    CHECK(rel <= 5e-2);
}

TEST_CASE("root order estimation") {
    auto grid = ChartGrid::disk(cplx(0, 0), 1.0, 0.01);
    QField f2(grid, [](cplx z) { return Quat(z * z * (1.0 + z)); });
    CHECK(root_order(f2, cplx(0, 0)) == 2);

    auto ann = ChartGrid::annulus(cplx(0, 0), 0.03, 1.5, 0.01);
    QField psi(ann, [](cplx z) { return kOne + Quat(1.0 / z) * kK; });
    CHECK(root_order(psi, cplx(0, 0)) == -1);

    QField ups2(grid, [](cplx z) { return kOne + kK * Quat(std::conj(z)); });
    CHECK(root_order(ups2, cplx(0, 0)) == 0);

    // invariance under multiplication by a nonvanishing smooth field
    QField g = QField::zip(f2, QField(grid, [](cplx z) {
                               return Quat(2.0 + 0.3 * z.real()) + 0.2 * kJ;
                           }),
                           [](Quat a, Quat b) { return a * b; });
    CHECK(root_order(g, cplx(0, 0)) == 2);
}

TEST_CASE("loop integrals") {
    auto grid = ChartGrid::annulus(cplx(0, 0), 0.4, 1.6, 0.01);
    // dz / z over |z| = 1 -> 2 pi i
    QField A(grid, [](cplx z) { return Quat(1.0 / z); });
    QField B(grid);
    Quat p = loop_integral(A, B, cplx(0, 0), 1.0);
    CHECK(abs(p - Quat(cplx(0.0, 2.0 * kPi))) < 1e-6);

    // exact form: dF of the catenoid integrates to zero
    QField Adz(grid, [](cplx z) { return Quat(1.0 / z) * kI - Quat(1.0 / (z * z)) * kJ; });
    QField Bdzb(grid, [](cplx z) { return Quat(1.0 / std::conj(z)) * kI + kJ; });
    CHECK(abs(loop_integral(Adz, Bdzb, cplx(0, 0), 1.0)) < 1e-3);

    CHECK_THROWS_AS((void)loop_integral(A, B, cplx(0, 0), 2.5), PathOutsideGrid);
}

TEST_CASE("holomorphicity residuals and the dagger potential") {
    CHECK(abs(dagger_potential_value(kK * Quat(cplx(0.3, -0.7))) -
              kK * conj(kK * Quat(cplx(0.3, -0.7))) * kK) < 1e-15);
    auto grid = ChartGrid::annulus(cplx(0, 0), 0.5, 1.5, 0.02);
    Potential01 zero{QField(grid)};
    QField c(grid, [](cplx) { return Quat{0.5, 1.0, -2.0, 0.25}; });
    CHECK(holo_residual(c, zero, false) == 0.0);

    Potential01 V{QField(grid, catenoid_V)};
    QField ups(grid, [](cplx z) { return -1.0 * (kJ * inverse(kOne - Quat(1.0 / z) * kK)); });
    CHECK(holo_residual(ups, V, false) <= 5e-2);

    // ups* = -1/2 z^-1 j (z+k)(1+|z|^2)^-1 is V^dagger holomorphic
    QField ups_star(grid, [](cplx z) {
        return -0.5 * (Quat(1.0 / z) * kJ * (Quat(z) + kK) * (1.0 / (1.0 + std::norm(z))));
    });
    CHECK(holo_residual(ups_star, V, true) <= 5e-2);
    CHECK(holo_residual(ups_star, V, false) > 0.1);  // wrong structure as a witness
}
