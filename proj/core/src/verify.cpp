#include "quatsurf/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "quatsurf/dirac.hpp"
#include "quatsurf/errors.hpp"

namespace qs {

const std::set<std::string> kAllSuites = {"algebra",    "conformal",   "darboux", "energy",
                                          "isothermic", "constrained", "dirac",   "plucker"};

namespace {

Quat random_quat(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return Quat{u(rng), u(rng), u(rng), u(rng)};
}

void suite_algebra(VerificationReport& rep) {
    std::mt19937 rng(2024);
    double worst_norm = 0.0, worst_conj = 0.0, worst_rot = 0.0, worst_inv = 0.0;
    for (int n = 0; n < 10000; ++n) {
        Quat a = random_quat(rng), b = random_quat(rng);
        double lhs = abs(a * b), rhs = abs(a) * abs(b);
        worst_norm = std::max(worst_norm, std::fabs(lhs - rhs) / std::max(rhs, 1e-12));
        worst_conj = std::max(worst_conj, abs(conj(a * b) - conj(b) * conj(a)));
        if (abs(a) > 1e-3) {
            worst_inv = std::max(worst_inv, abs(a * inverse(a) - kOne));
            Quat alpha = a / abs(a);
            Quat im = imag(b);
            Quat r = rotate(alpha, im);
            worst_rot = std::max(worst_rot,
                                 std::fabs(abs(r) - abs(im)) + std::fabs(real(r)));
        }
    }
    rep.add_residual("algebra.norm_mult", "|ab| = |a||b| on 1e4 random pairs", "identity",
                     worst_norm, 1e-12);
    rep.add_residual("algebra.conj_antihom", "conj(ab) = conj(b)conj(a)", "identity",
                     worst_conj, 1e-12);
    rep.add_residual("algebra.inverse", "a a^-1 = 1", "identity", worst_inv, 1e-12);
    rep.add_residual("algebra.rotation", "rotations preserve length and Im H", "identity",
                     worst_rot, 1e-12);
    rep.add_residual("algebra.ij_k", "i j = k", "exact", abs(kI * kJ - kK), 0.0);
    // Oriented plane spanned by (1-k)j: left normal simplifies to j, right to i.
    PlaneNormals pn = plane_normals((kOne - kK) * kJ);
    rep.add_residual("algebra.plane_N", "left normal of span (1-k)j is j", "closed-form",
                     abs(pn.N - kJ), 1e-12);
    rep.add_residual("algebra.plane_R", "right normal of span (1-k)j is i", "closed-form",
                     abs(pn.R - kI), 1e-12);
    // Polar squares: (cos t + sin t nu)^2 = cos 2t + sin 2t nu.
    double worst_sq = 0.0;
    for (int n = 0; n < 1000; ++n) {
        Quat nu = imag(random_quat(rng));
        if (abs(nu) < 1e-3) continue;
        nu = nu / abs(nu);
        std::uniform_real_distribution<double> th(0.0, 3.14);
        double t = th(rng);
        Quat a = Quat(std::cos(t)) + std::sin(t) * nu;
        Quat sq = Quat(std::cos(2 * t)) + std::sin(2 * t) * nu;
        worst_sq = std::max(worst_sq, abs(a * a - sq));
    }
    rep.add_residual("algebra.polar_square", "unit quaternion squaring doubles the angle",
                     "identity", worst_sq, 1e-12);
}

void suite_conformal(VerificationReport& rep, const SurfaceBundle& b) {
    for (size_t ci = 0; ci < b.surfaces.size(); ++ci) {
        std::string pre = "conformal.c" + std::to_string(ci + 1) + ".";
        ConformalityReport cr = conformality_residual(b.surfaces[ci]);
        bool exact = b.surfaces[ci].exact_dF.has_value();
        double tol = exact ? 1e-9 : 5e-2;
        rep.add_residual(pre + "residual", "sup |-*dF - N dF| / |dF|", "identity",
                         cr.residual, tol);
        rep.add_residual(pre + "metric", "conformal metric |F_x|^2 = |F_y|^2, F_x . F_y = 0",
                         "identity", cr.metric_mismatch + cr.metric_skew, tol);
        NormalFields nf = normals_from_dF(b.surfaces[ci]);
        double n2 = 0.0;
        for (int idx = 0; idx < nf.N.size(); ++idx)
            if (nf.N.mask[idx]) n2 = std::max(n2, abs(nf.N.values[idx] * nf.N.values[idx] + kOne));
        rep.add_residual(pre + "unit_normal", "N^2 = -1", "identity", n2, 1e-6);
        ImaginaryReport ir = imaginary_check(b.surfaces[ci], &b.weierstrass.charts[ci].chi,
                                             &b.weierstrass.charts[ci].psi);
        if (ir.imaginary) {
            rep.add_residual(pre + "imaginary_g", "psi = g chi with complex g", "identity",
                             ir.g_residual, 1e-6);
            rep.add_residual(pre + "imaginary_RN", "R = -N for maps into Im H", "identity",
                             ir.rn_residual, exact ? 1e-6 : 5e-2);
        }
    }
}

void suite_darboux(VerificationReport& rep, const SurfaceBundle& b,
                   const CatalogEntry* entry) {
    for (size_t ci = 0; ci < b.kodaira.charts.size(); ++ci) {
        std::string pre = "darboux.c" + std::to_string(ci + 1) + ".";
        const KodairaChart& kc = b.kodaira.charts[ci];
        const WeierstrassChart& wc = b.weierstrass.charts[ci];
        rep.add_residual(pre + "ups_holo", "(dbar - V) upsilon = 0", "identity",
                         holo_residual(kc.upsilon, kc.V, false), 5e-2);
        rep.add_residual(pre + "phi_holo", "(dbar - V) phi = 0", "identity",
                         holo_residual(kc.phi, kc.V, false), 5e-2);
        rep.add_residual(pre + "chi_holo", "(dbar - U^dagger) chi = 0", "identity",
                         holo_residual(wc.chi, wc.U, true), 5e-2);
        rep.add_residual(pre + "psi_holo", "(dbar - U) psi = 0", "identity",
                         holo_residual(wc.psi, wc.U, false), 5e-2);
        // Pairing identity dF = (chi, psi)^(1,0) nodewise.
        WirtingerPair pw = pairing10(wc.chi, wc.psi);
        WirtingerPair dF = b.surfaces[ci].differential();
        double sup = 0.0;
        for (int idx = 0; idx < pw.dz.size(); ++idx) {
            if (!(pw.dz.mask[idx] && dF.dz.mask[idx])) continue;
            double scale = abs(dF.dz.values[idx]) + abs(dF.dzbar.values[idx]) + 1e-9;
            sup = std::max(sup, (abs(pw.dz.values[idx] - dF.dz.values[idx]) +
                                 abs(pw.dzbar.values[idx] - dF.dzbar.values[idx])) /
                                    scale);
        }
        double h4 = std::pow(kc.grid->h, 4);
        bool exact = b.surfaces[ci].exact_dF.has_value();
        rep.add_residual(pre + "pairing", "dF = (chi,psi)^(1,0) nodewise", "identity", sup,
                         exact ? 1e-8 + 100 * h4 : 5e-2);
        // Forward transformation reproduces the attached Weierstrass data.
        try {
            WeierstrassChart fwd = darboux(kc);
            auto diff_norm = [](const QField& a, const QField& bb) {
                QField d = QField::zip(a, bb, [](Quat u, Quat v) { return u - v; });
                return std::sqrt(d.l2_norm_sq()) /
                       std::max(std::sqrt(bb.l2_norm_sq()), 1e-12);
            };
            rep.add_residual(pre + "fwd_chi", "computed chi matches data", "derived",
                             diff_norm(fwd.chi, wc.chi), 5e-2);
            rep.add_residual(pre + "fwd_psi", "computed psi matches data", "derived",
                             diff_norm(fwd.psi, wc.psi), 5e-2);
        } catch (const RootInUpsilon&) {
            rep.add_flag(pre + "fwd", "forward transformation applies", "derived", false);
        }
    }
    // Cocycle compatibility on the overlap band 0.8 <= |z1| <= 1.25.
    if (b.kodaira.charts.size() == 2 && b.kodaira.cocycle) {
        const KodairaChart& k1 = b.kodaira.charts[0];
        const KodairaChart& k2 = b.kodaira.charts[1];
        double worst = 0.0;
        int used = 0;
        for (int idx = 0; idx < k1.upsilon.size(); ++idx) {
            if (!k1.upsilon.mask[idx]) continue;
            cplx z1 = k1.grid->node(idx);
            double r = std::abs(z1);
            if (r < 0.8 || r > 1.25) continue;
            cplx z2 = 1.0 / z1;
            auto u2 = k2.upsilon.interpolate(z2);
            auto p2 = k2.phi.interpolate(z2);
            if (!u2 || !p2) continue;
            cplx f21 = b.kodaira.cocycle(z2);
            double scale = abs(*u2) + abs(*p2) + 1e-12;
            worst = std::max(worst, (abs(*u2 - lmul(f21, k1.upsilon.values[idx])) +
                                     abs(*p2 - lmul(f21, k1.phi.values[idx]))) /
                                        scale);
            ++used;
        }
        if (used > 0)
            rep.add_residual("darboux.cocycle", "sections glue with f21 on the overlap",
                             "identity", worst, 5e-2);
        rep.add("darboux.deg", "winding number of the cocycle", "derived",
                bundle_degree(b.kodaira.cocycle), b.kodaira.deg, 0.0);
    }
    (void)entry;
}

void suite_energy(VerificationReport& rep, const SurfaceBundle& b, const CatalogEntry* entry) {
    WillmoreValue wv = willmore(b);
    // The degree formula only applies to compact atlases; truncated planar
    // charts report the mean curvature integral instead.
    double energy = b.kodaira.compact ? wv.kodaira : wv.weierstrass;
    if (entry && entry->has_willmore) {
        double expect = entry->expected_willmore;
        double tol = expect == 0.0 ? 1e-9 : 0.02 * expect;
        rep.add("energy.willmore", "Willmore energy", "closed-form", energy, expect, tol);
    }
    if (b.kodaira.compact) {
        double u2 = 0.0, v2 = 0.0;
        for (const auto& c : b.weierstrass.charts)
            u2 += c.U.minus().l2_norm_sq(c.grid->fundamental.empty() ? c.U.field.mask
                                                                     : c.grid->fundamental);
        for (const auto& c : b.kodaira.charts)
            v2 += c.V.minus().l2_norm_sq(c.grid->fundamental.empty() ? c.V.field.mask
                                                                     : c.grid->fundamental);
        double target = std::numbers::pi * b.kodaira.deg;
        // Surfaces whose potentials are merely square integrable at the
        // compactification points converge like h log h; report instead of
        // asserting for those.
        bool assertable = !entry || !entry->singular_compactification;
        if (assertable) {
            rep.add("energy.norm_identity", "||U||^2 - ||V||^2 = pi deg E", "identity",
                    u2 - v2, target, 0.02 * std::max(std::fabs(target), std::numbers::pi));
            rep.add("energy.willmore_both", "Weierstrass and Kodaira energies agree",
                    "identity", wv.weierstrass, wv.kodaira, 0.02 * std::max(wv.kodaira, 1.0));
        } else {
            rep.add_flag("energy.norm_identity", "||U||^2 - ||V||^2 vs pi deg E (reported)",
                         "identity", true).value = u2 - v2;
            rep.add_flag("energy.willmore_both", "energy form discrepancy (reported)",
                         "identity", true).value = wv.discrepancy();
        }
    }
    for (size_t ci = 0; ci < b.weierstrass.charts.size(); ++ci) {
        std::string pre = "energy.c" + std::to_string(ci + 1) + ".";
        const WeierstrassChart& wc = b.weierstrass.charts[ci];
        const KodairaChart& kc = b.kodaira.charts[ci];
        // Zero curvature: dbar B = |V|^2 - |U|^2 at finite difference accuracy.
        WirtingerPair dB = wirtinger(wc.B);
        QField rhs = QField::zip(kc.V.field, wc.U.field, [](Quat v, Quat u) {
            return Quat(norm_sq(v) - norm_sq(u));
        });
        QField diff = QField::zip(dB.dzbar, rhs, [](Quat a, Quat bb) { return a - bb; });
        auto interior = kc.grid->eroded_mask(3);
        double num = std::sqrt(diff.l2_norm_sq(interior));
        double den = std::sqrt(rhs.l2_norm_sq(interior)) + 1e-9;
        rep.add_residual(pre + "zero_curvature", "dbar B = |V|^2 - |U|^2", "identity",
                         num / den, 5e-2);
        // dN = 2 ups^-1 i (dzbar V - dz U) ups, compared on the coordinate
        // directions: dN(dx) = 2 ups^-1 i (V - U) ups and
        // dN(dy) = 2 ups^-1 (V + U) ups.
        NormalFields nf = normals_from_dF(b.surfaces[ci]);
        WirtingerPair dN = wirtinger(nf.N);
        double worst = 0.0;
        for (int idx = 0; idx < dN.dz.size(); ++idx) {
            if (!(dN.dz.mask[idx] && interior[idx] && kc.upsilon.mask[idx])) continue;
            Quat ui = inverse(kc.upsilon.values[idx]);
            const Quat& ups = kc.upsilon.values[idx];
            const Quat& V = kc.V.field.values[idx];
            const Quat& U = wc.U.field.values[idx];
            Quat Nx = dN.dz.values[idx] + dN.dzbar.values[idx];
            Quat Ny = lmul(cplx(0, -1), dN.dzbar.values[idx] - dN.dz.values[idx]);
            Quat rhs_x = 2.0 * (ui * kI * (V - U) * ups);
            Quat rhs_y = 2.0 * (ui * (V + U) * ups);
            double scale = abs(Nx) + abs(Ny) + 1e-6;
            worst = std::max(worst, (abs(Nx - rhs_x) + abs(Ny - rhs_y)) / scale);
        }
        rep.add_residual(pre + "dN_potentials", "dN = 2 ups^-1 i (dzbar V - dz U) ups",
                         "identity", worst, 5e-2);
        // Mean curvature identity 2 dF conj(H) = *dN - N dN.
        QField H = mean_curvature(wc);
        WirtingerPair dF = b.surfaces[ci].differential();
        double worst_mc = 0.0;
        for (int idx = 0; idx < H.size(); ++idx) {
            if (!(H.mask[idx] && dN.dz.mask[idx] && dF.dz.mask[idx] && interior[idx] &&
                  nf.N.mask[idx]))
                continue;
            Quat Hbar = conj(H.values[idx]);
            Quat A = dF.dz.values[idx], Bq = dF.dzbar.values[idx];
            Quat t1 = A + Bq;
            Quat t2 = lmul(cplx(0, 1), A - Bq);
            Quat Nx = dN.dz.values[idx] + dN.dzbar.values[idx];
            Quat Ny = lmul(cplx(0, -1), dN.dzbar.values[idx] - dN.dz.values[idx]);
            const Quat& N = nf.N.values[idx];
            // On d/dx: *dN(dx) = -dN(dy) is the paper's star convention
            // *(P dx + Q dy) = P dy - Q dx evaluated on dx, i.e. -Q.
            Quat lhs1 = 2.0 * (t1 * Hbar), lhs2 = 2.0 * (t2 * Hbar);
            Quat rhs1 = -1.0 * Ny - N * Nx;
            Quat rhs2 = Nx - N * Ny;
            double scale = abs(Nx) + abs(Ny) + abs(lhs1) + abs(lhs2) + 1e-6;
            worst_mc =
                std::max(worst_mc, (abs(lhs1 - rhs1) + abs(lhs2 - rhs2)) / scale);
        }
        rep.add_residual(pre + "mean_curvature_identity", "2 dF conj(H) = *dN - N dN",
                         "identity", worst_mc, 5e-2);
    }
}

void suite_isothermic(VerificationReport& rep, const SurfaceBundle& b,
                      const CatalogEntry* entry) {
    for (size_t ci = 0; ci < b.kodaira.charts.size(); ++ci) {
        std::string pre = "isothermic.c" + std::to_string(ci + 1) + ".";
        double r = isothermic_residual(b.kodaira.charts[ci], b.weierstrass.charts[ci]);
        rep.add_flag(pre + "vprime_vs_v", "||V' - V|| / ||V|| reported (value field)",
                     "derived", std::isfinite(r));
        rep.checks.back().value = r;
    }
    if (entry && entry->has_kernel_pair) {
        double r = dual_residual(entry->bundle.kodaira.charts[0], entry->kernel_pair);
        rep.add_residual("isothermic.dual_pair", "ups* conj(ups) + phi* conj(phi) = 0",
                         "closed-form", r, 1e-8);
    }
    (void)b;
}

void suite_constrained(VerificationReport& rep, const SurfaceBundle& b,
                       const CatalogEntry* entry) {
    if (!entry || !entry->has_multipliers) return;
    const KodairaChart& kc = entry->bundle.kodaira.charts[0];
    double res = constrained_residual(kc, entry->multipliers);
    rep.add_residual("constrained.certificate",
                     "V- = (ups*,ups)^(0,1) + (phi*,phi)^(0,1)", "closed-form", res, 5e-2);
    rep.add_residual("constrained.ups_star_holo", "(dbar - V^dagger) ups* = 0", "identity",
                     holo_residual(entry->multipliers.upsilon_star, kc.V, true), 5e-2);
    (void)b;
}

void suite_dirac(VerificationReport& rep) {
    // Bounds (i), (ii), (iv) on a 40x40 lattice.
    double margin_i = 1e300, margin_ii = 1e300, margin_iv = 1e300, min_f = 1e300;
    for (int a = 0; a < 40; ++a) {
        double lambda = 0.05 * std::pow(1e3, a / 39.0);  // 0.05 .. 50
        for (int bq = 0; bq < 40; ++bq) {
            double r = 1e-2 * std::pow(1e4, bq / 39.0);  // 0.01 .. 100
            double F = flambda(lambda, r);
            min_f = std::min(min_f, F);
            double s = std::sqrt(1.0 + r * r);
            double bound1 =
                std::exp(-2.0 * lambda * std::atan(r)) * std::log((s + 1.0) / (s - 1.0)) /
                std::numbers::pi;
            margin_i = std::min(margin_i, bound1 - F);
            margin_ii = std::min(margin_ii, 1.0 / (2.0 * std::numbers::e) - r * lambda * F);
            double Fp = flambda_prime(lambda, r);
            double lhs = -r * (1.0 + r * r) * Fp;
            double bound4 = (2.0 / std::numbers::pi) * green_b(lambda, std::atan(r));
            margin_iv = std::min(std::min(margin_iv, bound4 - lhs), lhs);
        }
    }
    rep.add_flag("dirac.positive", "F_lambda(r) > 0 on the lattice", "bound", min_f > 0.0);
    rep.add_flag("dirac.bound_i", "F_lambda below the logarithmic envelope", "bound",
                 margin_i >= -1e-9);
    rep.checks.back().value = margin_i;
    rep.add_flag("dirac.bound_ii", "r lambda F_lambda <= 1/(2e)", "bound",
                 margin_ii >= -1e-9);
    rep.checks.back().value = margin_ii;
    rep.add_flag("dirac.bound_iv", "0 < -r(1+r^2) F' <= (2/pi) b(lambda, arctan r)", "bound",
                 margin_iv >= -1e-6);
    rep.checks.back().value = margin_iv;
    // Euclidean limit cross checks.
    double f1 = finfty(1.0), f2 = finfty_alt(1.0);
    rep.add_residual("dirac.finfty_forms", "two integral forms of F_inf agree", "derived",
                     std::fabs(f1 - f2) / f1, 1e-8);
    double extrap_err = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
        double g10 = flambda(10.0, r / 10.0), g40 = flambda(40.0, r / 40.0),
               g160 = flambda(160.0, r / 160.0);
        double e1 = g40 + (g40 - g10) / 3.0;  // one Richardson step (ratio 4)
        double e2 = g160 + (g160 - g40) / 3.0;
        double extrap = e2 + (e2 - e1) / 15.0;
        extrap_err = std::max(extrap_err, std::fabs(extrap - finfty(r)));
    }
    rep.add_residual("dirac.euclidean_limit", "F_lambda(r/lambda) -> F_inf(r)", "derived",
                     extrap_err, 1e-3);
    // Fubini-Study area of P1.
    auto fs = ChartGrid::p1_chart(60.0, 0.05, 1, true);
    rep.add("dirac.fs_area", "Fubini-Study area of P1", "closed-form", fs->total_weight(),
            std::numbers::pi, 0.005 * std::numbers::pi);
}

void suite_plucker(VerificationReport& rep, const SurfaceBundle& b,
                   const CatalogEntry* entry) {
    if (!entry) return;
    Quat probe = kI;
    LiYauReport ly = liyau_pluecker_check(b, probe);
    rep.add("plucker.preimages", "numeric preimage count of the probe", "derived",
            static_cast<double>(ly.preimages.size()),
            entry->name == "inverted_catenoid" ? 2.0 : (entry->name == "sphere" ? 1.0 : 0.0),
            0.0);
    rep.add_flag("plucker.liyau", "W >= 4 pi sum (1 + ord chi + ord psi)", "bound",
                 ly.bound_satisfied);
    rep.checks.back().value = ly.willmore - ly.bound;
    if (ly.has_plucker) {
        rep.add_flag("plucker.inequality", "||V||^2/pi >= d((d-1)(1-g) - deg E) + ord H",
                     "bound", ly.plucker_satisfied);
        rep.checks.back().value = ly.plucker_lhs - ly.plucker_rhs;
    }
}

}  // namespace

VerificationReport run_verify(const CatalogEntry& entry, const std::set<std::string>& suites) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.surface = entry.name;
    rep.resolution = entry.resolution;
    if (suites.count("algebra")) suite_algebra(rep);
    if (suites.count("conformal")) suite_conformal(rep, entry.bundle);
    if (suites.count("darboux")) suite_darboux(rep, entry.bundle, &entry);
    if (suites.count("energy")) suite_energy(rep, entry.bundle, &entry);
    if (suites.count("isothermic")) suite_isothermic(rep, entry.bundle, &entry);
    if (suites.count("constrained")) suite_constrained(rep, entry.bundle, &entry);
    if (suites.count("dirac")) suite_dirac(rep);
    if (suites.count("plucker")) suite_plucker(rep, entry.bundle, &entry);
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

VerificationReport run_verify_bundle(const SurfaceBundle& bundle, const std::string& name,
                                     double resolution, const std::set<std::string>& suites) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.surface = name;
    rep.resolution = resolution;
    if (suites.count("algebra")) suite_algebra(rep);
    if (suites.count("conformal")) suite_conformal(rep, bundle);
    if (suites.count("darboux")) suite_darboux(rep, bundle, nullptr);
    if (suites.count("energy")) suite_energy(rep, bundle, nullptr);
    if (suites.count("isothermic")) suite_isothermic(rep, bundle, nullptr);
    if (suites.count("dirac")) suite_dirac(rep);
    rep.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace qs
