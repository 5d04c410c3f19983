#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "quatsurf/catalog.hpp"
#include "quatsurf/geometry.hpp"

using namespace qs;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("mean curvature") {
    CatalogEntry cat = make("catenoid", 0.02);
    QField Hc = mean_curvature(cat.bundle.weierstrass.charts[0]);
    CHECK(Hc.sup_norm() == 0.0);  // minimal: U identically zero

    CatalogEntry pl = make("plane", 0.02);
    CHECK(mean_curvature(pl.bundle.weierstrass.charts[0]).sup_norm() == 0.0);

    // Round sphere: H = -F with closed form data, sup error <= 1e-6.
    CatalogEntry sph = make("sphere", 0.02);
    for (int ci = 0; ci < 2; ++ci) {
        QField H = mean_curvature(sph.bundle.weierstrass.charts[ci]);
        double worst = 0;
        for (int i = 0; i < H.size(); ++i)
            if (H.mask[i])
                worst = std::max(worst, abs(H.values[i] + sph.bundle.surfaces[ci].F.values[i]));
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("weingarten operator") {
    // Zero data gives the zero matrix.
    CatalogEntry pl = make("plane", 0.05);
    WeingartenField wz = weingarten(pl.bundle.weierstrass.charts[0],
                                    pl.bundle.kodaira.charts[0].V, cplx(1.0, 0.0));
    for (size_t i = 0; i < wz.matrices.size(); ++i)
        if (wz.mask[i])
            CHECK(std::fabs(wz.matrices[i][0]) + std::fabs(wz.matrices[i][1]) +
                      std::fabs(wz.matrices[i][3]) ==
                  0.0);

    // Sphere with the unit frame alpha = 1/(|chi||psi|): V' = V = 0 so the
    // matrix is 2 Re(j alpha U) Id; for the frame i alpha it equals |H| Id.
    CatalogEntry sph = make("sphere", 0.02);
    const auto& wc = sph.bundle.weierstrass.charts[0];
    std::vector<cplx> alpha(wc.grid->size(), cplx(0, 0));
    std::vector<cplx> ialpha(wc.grid->size(), cplx(0, 0));
    for (int i = 0; i < wc.grid->size(); ++i) {
        if (!wc.chi.mask[i]) continue;
        double a = 1.0 / (abs(wc.chi.values[i]) * abs(wc.psi.values[i]));
        alpha[i] = cplx(a, 0.0);
        ialpha[i] = cplx(0.0, a);
    }
    WeingartenField w1 = weingarten(wc, sph.bundle.kodaira.charts[0].V, alpha);
    WeingartenField w2 = weingarten(wc, sph.bundle.kodaira.charts[0].V, ialpha);
    double offdiag = 0, iso = 0, unit = 0;
    for (size_t i = 0; i < w1.matrices.size(); ++i) {
        if (!w1.mask[i]) continue;
        offdiag = std::max(offdiag, std::fabs(w1.matrices[i][1]) + std::fabs(w2.matrices[i][1]));
        iso = std::max(iso, std::fabs(w1.matrices[i][0] - w1.matrices[i][3]) +
                                std::fabs(w2.matrices[i][0] - w2.matrices[i][3]));
        unit = std::max(unit, std::fabs(w2.matrices[i][0] - 1.0));  // |H| = 1
    }
    CHECK(offdiag < 1e-6);
    CHECK(iso < 1e-6);
    CHECK(unit < 1e-6);

    // Catenoid at the waist z = 1: A^{alpha=1} = 0 (the direction normal to
    // Im H carries no curvature) and A^{alpha=i} is symmetric traceless with
    // eigenvalues +-1; divided by |Xi| = |chi||psi| = 2 these are the
    // classical principal curvatures +-1/2 of this scaling.
    CatalogEntry cat = make("catenoid", 0.01);
    const auto& cw = cat.bundle.weierstrass.charts[0];
    const Potential01& cv = cat.bundle.kodaira.charts[0].V;
    WeingartenField a1 = weingarten(cw, cv, cplx(1.0, 0.0));
    WeingartenField ai = weingarten(cw, cv, cplx(0.0, 1.0));
    int idx = -1;
    double best = 1e9;
    for (int i = 0; i < cw.grid->size(); ++i) {
        if (!a1.mask[i]) continue;
        double d = std::abs(cw.grid->node(i) - cplx(1.0, 0.0));
        if (d < best) {
            best = d;
            idx = i;
        }
    }
    REQUIRE(idx >= 0);
    Mat2 m1 = a1.matrices[idx], mi = ai.matrices[idx];
    CHECK(std::fabs(m1[0]) + std::fabs(m1[1]) + std::fabs(m1[3]) < 1e-3);
    CHECK(std::fabs(mi[0] + mi[3]) < 1e-3);  // traceless
    CHECK(std::fabs(mi[1] - mi[2]) == 0.0);  // symmetric
    double disc = std::sqrt(0.25 * (mi[0] - mi[3]) * (mi[0] - mi[3]) + mi[1] * mi[1]);
    double lam1 = 0.5 * (mi[0] + mi[3]) + disc, lam2 = 0.5 * (mi[0] + mi[3]) - disc;
    CHECK(lam1 == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(lam2 == doctest::Approx(-1.0).epsilon(2e-2));
    // principal curvatures at the waist: eigenvalues / (|chi||psi| |alpha|)
    double scale = abs(cw.chi.values[idx]) * abs(cw.psi.values[idx]);
    CHECK(lam1 / scale == doctest::Approx(0.5).epsilon(2e-2));
}

TEST_CASE("mean curvature from the weingarten traces") {
    // H = 1/2 (tr A^{a1} Xi^{a1} + tr A^{a2} Xi^{a2}) for the orthonormal
    // frame a1 = 1/(|chi||psi|), a2 = i a1.
    CatalogEntry sph = make("sphere", 0.02);
    const auto& wc = sph.bundle.weierstrass.charts[0];
    QField H = mean_curvature(wc);
    std::vector<cplx> a1(wc.grid->size()), a2(wc.grid->size());
    for (int i = 0; i < wc.grid->size(); ++i) {
        if (!wc.chi.mask[i]) continue;
        double a = 1.0 / (abs(wc.chi.values[i]) * abs(wc.psi.values[i]));
        a1[i] = cplx(a, 0);
        a2[i] = cplx(0, a);
    }
    WeingartenField w1 = weingarten(wc, sph.bundle.kodaira.charts[0].V, a1);
    WeingartenField w2 = weingarten(wc, sph.bundle.kodaira.charts[0].V, a2);
    double worst = 0;
    for (int i = 0; i < wc.grid->size(); ++i) {
        if (!w1.mask[i] || !H.mask[i]) continue;
        Quat xi1 = conj(wc.chi.values[i]) * Quat(a1[i]) * wc.psi.values[i];
        Quat xi2 = conj(wc.chi.values[i]) * Quat(a2[i]) * wc.psi.values[i];
        Quat rec = 0.5 * ((w1.matrices[i][0] + w1.matrices[i][3]) * xi1 +
                          (w2.matrices[i][0] + w2.matrices[i][3]) * xi2);
        worst = std::max(worst, abs(rec - H.values[i]));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("willmore energies of the catalog") {
    CatalogEntry pl = make("plane", 0.02);
    CHECK(willmore(pl.bundle).weierstrass == 0.0);
    CatalogEntry cat = make("catenoid", 0.02);
    CHECK(willmore(cat.bundle).weierstrass == 0.0);

    CatalogEntry sph = make("sphere", 0.02);
    WillmoreValue wv = willmore(sph.bundle);
    CHECK(wv.kodaira == doctest::Approx(4.0 * kPi).epsilon(0.01));
    CHECK(wv.weierstrass == doctest::Approx(4.0 * kPi).epsilon(0.01));

    CatalogEntry inv = make("inverted_catenoid", 0.01);
    CHECK(willmore(inv.bundle).kodaira == doctest::Approx(8.0 * kPi).epsilon(0.02));
}

TEST_CASE("preimage counting and the lower bounds") {
    CatalogEntry inv = make("inverted_catenoid", 0.01);
    LiYauReport r = liyau_pluecker_check(inv.bundle, kI);
    CHECK(r.preimages.size() == 2);
    CHECK(r.bound == doctest::Approx(8.0 * kPi).epsilon(1e-9));  // 2 x 4 pi, no dF roots
    CHECK(r.bound_satisfied);
    CHECK(std::fabs(r.willmore - r.bound) < 0.02 * r.bound);  // sharp at 8 pi
    CHECK(r.has_plucker);
    CHECK(r.plucker_satisfied);

    CatalogEntry sph = make("sphere", 0.01);
    LiYauReport s = liyau_pluecker_check(sph.bundle, kI);
    CHECK(s.preimages.size() == 1);  // injective at the probe
    CHECK(s.bound == doctest::Approx(4.0 * kPi).epsilon(1e-9));
    CHECK(s.bound_satisfied);

    LiYauReport off = liyau_pluecker_check(sph.bundle, 3.0 * kI);
    CHECK(off.preimages.empty());
    CHECK(off.bound == 0.0);
}

TEST_CASE("v_prime closed forms") {
    CatalogEntry sph = make("sphere", 0.02);
    Potential01 vp = v_prime(sph.bundle.weierstrass.charts[0]);
    CHECK(vp.field.sup_norm() < 1e-6);

    auto grid = ChartGrid::rectangle(-1, 1, -1, 1, 0.02);
    WeierstrassChart constant;
    constant.grid = grid;
    constant.psi = QField(grid, [](cplx) { return Quat{0.4, 0.1, -0.8, 0.3}; });
    CHECK(v_prime(constant).field.sup_norm() < 1e-12);

    // catenoid: V' = -z^-1 zbar k (1+|z|^2)^-1, the H- part of (d psi) psi^-1
    CatalogEntry cat = make("catenoid", 0.01);
    Potential01 vc = v_prime(cat.bundle.weierstrass.charts[0]);
    auto interior = vc.field.grid->eroded_mask(4);
    double worst = 0;
    for (int i = 0; i < vc.field.size(); ++i) {
        if (!vc.field.mask[i] || !interior[i]) continue;
        cplx z = vc.field.grid->node(i);
        Quat exact = -1.0 * (Quat(std::conj(z) / z / (1.0 + std::norm(z))) * kK);
        worst = std::max(worst, abs(vc.field.values[i] - exact));
    }
    CHECK(worst < 1e-3);
}
