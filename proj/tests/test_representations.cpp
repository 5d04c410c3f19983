#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "quatsurf/catalog.hpp"
#include "quatsurf/representations.hpp"

using namespace qs;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("intertwiner solves the projection equation") {
    // Trivial left normal N = i: V = 0, upsilon constant in C.
    auto grid = ChartGrid::disk(cplx(0, 0), 0.9, 0.03);
    QField Ni(grid, [](cplx) { return kI; });
    IntertwinerResult tr = solve_intertwiner(Ni);
    CHECK(tr.V.field.sup_norm() < 1e-12);
    CHECK(tr.symmetry_residual < 1e-12);
    double var = 0;
    Quat first;
    bool got = false;
    for (int i = 0; i < tr.upsilon.size(); ++i) {
        if (!tr.upsilon.mask[i]) continue;
        if (!got) {
            first = tr.upsilon.values[i];
            got = true;
        }
        // constant up to a left complex factor; here W = 0 so truly constant
        var = std::max(var, abs(tr.upsilon.values[i] - first));
    }
    CHECK(var < 1e-12);

    // Sphere chart 1: upsilon proportional to z + k by a left complex factor.
    QField Ns(grid, [](cplx z) {
        Quat a = -1.0 * (kJ * Quat(z)) - kI;
        return a * (-1.0 * kI) * inverse(a);
    });
    IntertwinerResult sr = solve_intertwiner(Ns);
    CHECK(sr.normal_residual <= 5e-2);
    double hminus = 0;
    for (int i = 0; i < sr.upsilon.size(); ++i) {
        if (!sr.upsilon.mask[i]) continue;
        Quat g = sr.upsilon.values[i] * inverse(Quat(grid->node(i)) + kK);
        if (abs(g) > 1e-9) hminus = std::max(hminus, std::abs(minus_part(g)) / abs(g));
    }
    CHECK(hminus <= 5e-2);

    // Catenoid on the annulus: |V| matches the gauge invariant |V-|.
    auto ann = ChartGrid::annulus(cplx(0, 0), 0.7, 1.4, 0.02);
    QField Nc(ann, [](cplx z) {
        Quat a = kOne - Quat(1.0 / z) * kK;
        return a * (-1.0 * kI) * inverse(a);
    });
    IntertwinerResult cr = solve_intertwiner(Nc);
    auto interior = ann->eroded_mask(5);
    double worst = 0;
    for (int i = 0; i < cr.V.field.size(); ++i) {
        if (!cr.V.field.mask[i] || !interior[i]) continue;
        double target = 1.0 / (1.0 + std::norm(ann->node(i)));
        worst = std::max(worst, std::fabs(abs(cr.V.field.values[i]) - target) / target);
    }
    CHECK(worst <= 5e-2);
    CHECK(cr.normal_residual <= 5e-2);
}

TEST_CASE("kodaira_of validates against the left normal") {
    CatalogEntry sph = make("sphere", 0.02);
    const auto& kc = sph.bundle.kodaira.charts[0];
    KodairaChart built = kodaira_of(sph.bundle.surfaces[0], kc.upsilon, kc.V);
    double worst = 0;
    for (int i = 0; i < built.phi.size(); ++i)
        if (built.phi.mask[i] && kc.phi.mask[i])
            worst = std::max(worst, abs(built.phi.values[i] - kc.phi.values[i]));
    CHECK(worst < 1e-12);  // phi = ups F reproduces z i - j
    CHECK(holo_residual(built.phi, built.V, false) < 1e-6);

    // inconsistent normal: hand it the multiplied-by-j upsilon
    QField wrong = kc.upsilon.lmul(kJ);
    CHECK_THROWS_AS((void)kodaira_of(sph.bundle.surfaces[0], wrong, kc.V),
                    InconsistentNormal);

    // plane F = alpha f(z) beta with alpha = j, beta = 1, f = z: phi = f beta
    CatalogEntry pl = make("plane", 0.02);
    const auto& kp = pl.bundle.kodaira.charts[0];
    KodairaChart pb = kodaira_of(pl.bundle.surfaces[0], kp.upsilon, kp.V);
    for (int i = 0; i < pb.phi.size(); i += 53)
        if (pb.phi.mask[i]) CHECK(abs(pb.phi.values[i] - Quat(pl.bundle.surfaces[0].F.grid->node(i))) < 1e-12);
}

TEST_CASE("forward transformation reproduces the closed form pairs") {
    CatalogEntry cat = make("catenoid", 0.01);
    WeierstrassChart w = darboux(cat.bundle.kodaira.charts[0]);
    auto interior = w.grid->eroded_mask(4);
    double chi_err = 0, psi_err = 0, B_err = 0, U_sup = 0;
    for (int i = 0; i < w.chi.size(); ++i) {
        if (!w.chi.mask[i] || !interior[i] || !w.psi.mask[i] || !w.B.mask[i]) continue;
        cplx z = w.grid->node(i);
        Quat closed = kOne + Quat(1.0 / z) * kK;  // chi = psi = 1 + z^-1 k
        chi_err = std::max(chi_err, abs(w.chi.values[i] - closed));
        psi_err = std::max(psi_err, abs(w.psi.values[i] - closed));
        Quat Bex = Quat(-1.0 / (z * (1.0 + std::norm(z))));
        B_err = std::max(B_err, abs(w.B.values[i] - Bex));
        U_sup = std::max(U_sup, abs(w.U.field.values[i]));
    }
    CHECK(chi_err < 1e-12);  // pointwise algebra, no differencing
    CHECK(psi_err < 1e-3);   // finite differences of phi
    CHECK(B_err < 1e-3);
    CHECK(U_sup < 1e-3);     // minimal surface: U = 0

    // plane: chi = j conj(alpha) = 1, psi = f' beta = 1
    CatalogEntry pl = make("plane", 0.02);
    WeierstrassChart wp = darboux(pl.bundle.kodaira.charts[0]);
    for (int i = 0; i < wp.chi.size(); i += 71) {
        if (!wp.chi.mask[i] || !wp.psi.mask[i]) continue;
        CHECK(abs(wp.chi.values[i] - kOne) < 1e-12);
        CHECK(abs(wp.psi.values[i] - kOne) < 1e-10);
    }

    QField with_root = cat.bundle.kodaira.charts[0].upsilon.map(
        [](Quat u) { return u * 1e-9; });
    KodairaChart broken = cat.bundle.kodaira.charts[0];
    broken.upsilon = with_root;
    CHECK_THROWS_AS((void)darboux(broken), RootInUpsilon);
}

TEST_CASE("inverse transformation recovers the surfaces") {
    for (const char* name : {"catenoid", "sphere"}) {
        CatalogEntry e = make(name, 0.01);
        WeierstrassChart w = darboux(e.bundle.kodaira.charts[0]);
        cplx base = name[0] == 'c' ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        Quat F0 = *e.bundle.surfaces[0].F.interpolate(base);
        InverseDarbouxResult inv = inverse_darboux(w, base, F0);
        double sup = 0;
        for (int i = 0; i < inv.F.size(); ++i)
            if (inv.F.mask[i] && e.bundle.surfaces[0].F.mask[i])
                sup = std::max(sup, abs(inv.F.values[i] - e.bundle.surfaces[0].F.values[i]));
        CHECK(sup <= 5e-2);
        CHECK(inv.upsilon_residual <= 5e-2);
        CHECK(inv.phi_residual <= 5e-2);
    }

    // plane: F = alpha z beta + F0 exactly
    CatalogEntry pl = make("plane", 0.02);
    WeierstrassChart wp = darboux(pl.bundle.kodaira.charts[0]);
    Quat F0 = kJ * Quat(cplx(-0.4, 0.2)) + kI;
    InverseDarbouxResult ip = inverse_darboux(wp, cplx(-0.4, 0.2), F0);
    double sup = 0;
    for (int i = 0; i < ip.F.size(); ++i)
        if (ip.F.mask[i])
            sup = std::max(sup, abs(ip.F.values[i] - (kJ * Quat(ip.F.grid->node(i)) + kI)));
    CHECK(sup < 1e-6);

    // associated family (chi, i psi): periods obstruct the integration
    CatalogEntry assoc = make("associated", 0.02, {0.0, 1.0});
    CHECK_THROWS_AS(
        (void)inverse_darboux(assoc.bundle.weierstrass.charts[0], cplx(1.0, 0.0), Quat{}),
        NonzeroPeriods);
}

TEST_CASE("pairing coefficients and properties") {
    auto grid = ChartGrid::annulus(cplx(0, 0), 0.5, 1.5, 0.02);
    QField one(grid, [](cplx) { return kOne; });
    WirtingerPair p = pairing10(one, one);
    // (1,1)^{(1,0)} = j dz: the dzbar coefficient carries the j in the left
    // coefficient convention dF = dz A + dzbar B.
    for (int i = 0; i < p.dz.size(); i += 31) {
        if (!p.dz.mask[i]) continue;
        CHECK(abs(p.dz.values[i]) == 0.0);
        CHECK(abs(p.dzbar.values[i] - kJ) == 0.0);
    }

    // catenoid: the pairing reproduces the closed form differential
    CatalogEntry cat = make("catenoid", 0.02);
    const auto& wc = cat.bundle.weierstrass.charts[0];
    WirtingerPair pc = pairing10(wc.chi, wc.psi);
    double worst = 0;
    for (int i = 0; i < pc.dz.size(); ++i) {
        if (!pc.dz.mask[i]) continue;
        cplx z = wc.grid->node(i);
        Quat dz_exact = Quat(1.0 / z) * kI - Quat(1.0 / (z * z)) * kJ;
        Quat dzb_exact = Quat(1.0 / std::conj(z)) * kI + kJ;
        worst = std::max(worst,
                         abs(pc.dz.values[i] - dz_exact) + abs(pc.dzbar.values[i] - dzb_exact));
    }
    CHECK(worst < 1e-12);

    // (g chi, psi)^{(1,0)} = (chi, g psi)^{(1,0)} for complex g
    QField g(grid, [](cplx z) { return Quat(z + cplx(2.0, 0.5)); });
    QField chi(grid, [](cplx z) { return kOne + Quat(1.0 / z) * kK; });
    QField psi(grid, [](cplx z) { return Quat(0.3) + Quat(z) * kJ; });
    WirtingerPair lhs = pairing10(g.pointwise_mul(chi), psi);
    WirtingerPair rhs = pairing10(chi, g.pointwise_mul(psi));
    double d = 0;
    for (int i = 0; i < lhs.dz.size(); ++i)
        if (lhs.dz.mask[i])
            d = std::max(d, abs(lhs.dz.values[i] - rhs.dz.values[i]) +
                                abs(lhs.dzbar.values[i] - rhs.dzbar.values[i]));
    CHECK(d < 1e-12);

    // right H-linearity: (chi, psi h) = (chi, psi) h
    Quat hq{0.2, -0.4, 1.0, 0.3};
    WirtingerPair ph = pairing10(chi, psi.rmul(hq));
    WirtingerPair pr = pairing10(chi, psi);
    double dh = 0;
    for (int i = 0; i < ph.dz.size(); ++i)
        if (ph.dz.mask[i])
            dh = std::max(dh, abs(ph.dz.values[i] - pr.dz.values[i] * hq) +
                                  abs(ph.dzbar.values[i] - pr.dzbar.values[i] * hq));
    CHECK(dh < 1e-12);
}

TEST_CASE("bundle degree by winding number") {
    CHECK(bundle_degree([](cplx z2) { return z2; }) == 1);
    CHECK(bundle_degree([](cplx) { return cplx(1.0, 0.0); }) == 0);
    CHECK(bundle_degree([](cplx z2) { return z2 * z2 * z2; }) == 3);
    CHECK(bundle_degree([](cplx z2) { return 1.0 / z2; }) == -1);
    CHECK_THROWS_AS((void)bundle_degree([](cplx z2) { return z2 - 1.0; }), ZeroOnCircle);
}

TEST_CASE("gauge covariance of the quadruple") {
    // (V, ups, phi) -> (g V g^-1, g ups, g phi) for holomorphic complex g
    // leaves F and |V-| invariant and preserves the residuals.
    CatalogEntry cat = make("catenoid", 0.02);
    const KodairaChart& kc = cat.bundle.kodaira.charts[0];
    QField g(kc.grid, [](cplx z) { return Quat(z + 4.0); });  // nonvanishing on the annulus
    KodairaChart gauged;
    gauged.grid = kc.grid;
    gauged.upsilon = g.pointwise_mul(kc.upsilon);
    gauged.phi = g.pointwise_mul(kc.phi);
    gauged.V = Potential01{QField::zip(g, kc.V.field, [](Quat gg, Quat v) {
        return gg * v * inverse(gg);
    })};
    double f_dev = 0, v_dev = 0;
    for (int i = 0; i < kc.upsilon.size(); ++i) {
        if (!kc.upsilon.mask[i]) continue;
        Quat F0 = inverse(kc.upsilon.values[i]) * kc.phi.values[i];
        Quat F1 = inverse(gauged.upsilon.values[i]) * gauged.phi.values[i];
        f_dev = std::max(f_dev, abs(F0 - F1));
        v_dev = std::max(v_dev,
                         std::fabs(abs(gauged.V.field.values[i]) - abs(kc.V.field.values[i])));
    }
    CHECK(f_dev < 1e-12);
    CHECK(v_dev < 1e-12);
    CHECK(holo_residual(gauged.upsilon, gauged.V, false) <= 5e-2);
    CHECK(holo_residual(gauged.phi, gauged.V, false) <= 5e-2);
}

TEST_CASE("zero curvature and the norm identity on the sphere") {
    CatalogEntry sph = make("sphere", 0.02);
    double u2 = 0, v2 = 0;
    for (const auto& c : sph.bundle.weierstrass.charts)
        u2 += c.U.minus().l2_norm_sq(c.grid->fundamental);
    for (const auto& c : sph.bundle.kodaira.charts)
        v2 += c.V.minus().l2_norm_sq(c.grid->fundamental);
    CHECK(std::fabs(u2 - v2 - kPi * sph.bundle.kodaira.deg) < 0.02 * kPi);
}
