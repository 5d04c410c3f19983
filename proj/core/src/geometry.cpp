#include "quatsurf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quatsurf/errors.hpp"

namespace qs {

QField mean_curvature(const WeierstrassChart& w, double branch_threshold) {
    QField H(w.grid);
    for (int idx = 0; idx < H.size(); ++idx) {
        bool ok = w.chi.mask[idx] && w.psi.mask[idx] && w.U.field.mask[idx];
        H.mask[idx] = 0;
        if (!ok) continue;
        const Quat& c = w.chi.values[idx];
        const Quat& p = w.psi.values[idx];
        if (abs(c) < branch_threshold || abs(p) < branch_threshold) continue;  // branch point
        H.values[idx] = 2.0 * (inverse(c) * kJ * w.U.field.values[idx] * inverse(conj(p)));
        H.mask[idx] = 1;
    }
    return H;
}

Potential01 v_prime(const WeierstrassChart& w, double branch_threshold) {
    WirtingerPair dpsi = wirtinger(w.psi);
    QField out(w.grid);
    for (int idx = 0; idx < out.size(); ++idx) {
        bool ok = dpsi.dz.mask[idx] && w.psi.mask[idx];
        out.mask[idx] = 0;
        if (!ok) continue;
        const Quat& p = w.psi.values[idx];
        if (abs(p) < branch_threshold) continue;
        Quat q = dpsi.dz.values[idx] * inverse(p);
        out.values[idx] = from_parts(cplx(0, 0), minus_part(q));
        out.mask[idx] = 1;
    }
    return Potential01{out};
}

namespace {

WeingartenField weingarten_impl(const WeierstrassChart& w, const Potential01& V,
                                const std::function<cplx(int)>& alpha_at,
                                double branch_threshold) {
    Potential01 Vp = v_prime(w, branch_threshold);
    WeingartenField out;
    out.matrices.assign(w.grid->size(), Mat2{0, 0, 0, 0});
    out.mask.assign(w.grid->size(), 0);
    for (int idx = 0; idx < w.grid->size(); ++idx) {
        if (!(Vp.field.mask[idx] && V.field.mask[idx] && w.U.field.mask[idx])) continue;
        cplx alpha = alpha_at(idx);
        Quat ja = kJ * Quat(alpha);
        double a = 2.0 * real(ja * w.U.field.values[idx]);
        Quat cq = ja * Vp.field.values[idx] - V.field.values[idx] * ja;
        cplx c = plus_part(cq);  // product of two H- values lies in H+
        out.matrices[idx] = Mat2{a + c.real(), c.imag(), c.imag(), a - c.real()};
        out.mask[idx] = 1;
    }
    return out;
}

}  // namespace

WeingartenField weingarten(const WeierstrassChart& w, const Potential01& V, cplx alpha,
                           double branch_threshold) {
    return weingarten_impl(w, V, [alpha](int) { return alpha; }, branch_threshold);
}

WeingartenField weingarten(const WeierstrassChart& w, const Potential01& V,
                           const std::vector<cplx>& alpha, double branch_threshold) {
    return weingarten_impl(w, V, [&alpha](int idx) { return alpha[idx]; }, branch_threshold);
}

namespace {

double atlas_norm_sq(const QField& f) {
    const ChartGrid& g = *f.grid;
    if (!g.fundamental.empty()) return f.l2_norm_sq(g.fundamental);
    return f.l2_norm_sq();
}

}  // namespace

double willmore_weierstrass(const WeierstrassData& w) {
    double s = 0.0;
    for (const auto& c : w.charts) s += atlas_norm_sq(c.U.minus());
    return 4.0 * s;
}

double willmore_kodaira(const KodairaData& k) {
    double s = 0.0;
    for (const auto& c : k.charts) s += atlas_norm_sq(c.V.minus());
    return 4.0 * std::numbers::pi * k.deg + 4.0 * s;
}

WillmoreValue willmore(const SurfaceBundle& b) {
    WillmoreValue v;
    if (!b.weierstrass.charts.empty()) {
        v.weierstrass = willmore_weierstrass(b.weierstrass);
        v.has_weierstrass = true;
    }
    if (!b.kodaira.charts.empty()) {
        v.kodaira = willmore_kodaira(b.kodaira);
        v.has_kodaira = true;
    }
    return v;
}

namespace {

// Chordal distance on P1 between points given in chart coordinates.
double chordal(int chart_a, cplx za, int chart_b, cplx zb) {
    auto lift = [](int chart, cplx z) {
        // Represent as chart-1 coordinate when possible, else the point at
        // infinity flag.
        if (chart == 1) return std::pair<bool, cplx>(false, z);
        if (std::abs(z) < 1e-12) return std::pair<bool, cplx>(true, cplx(0, 0));
        return std::pair<bool, cplx>(false, 1.0 / z);
    };
    auto [ainf, a] = lift(chart_a, za);
    auto [binf, b] = lift(chart_b, zb);
    auto den = [](cplx w) { return std::sqrt(1.0 + std::norm(w)); };
    if (ainf && binf) return 0.0;
    if (ainf) return 1.0 / den(b);
    if (binf) return 1.0 / den(a);
    return std::abs(a - b) / (den(a) * den(b));
}

}  // namespace

LiYauReport liyau_pluecker_check(const SurfaceBundle& b, Quat probe, double capture_distance,
                                 double slack) {
    LiYauReport rep;
    std::vector<PreimagePoint> candidates;
    for (size_t ci = 0; ci < b.surfaces.size(); ++ci) {
        const QField& F = b.surfaces[ci].F;
        const ChartGrid& g = *F.grid;
        const std::vector<std::uint8_t>& region =
            g.fundamental.empty() ? F.mask : g.fundamental;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                int idx = g.index(i, j);
                if (!F.mask[idx] || !region[idx]) continue;
                double d0 = abs(F.values[idx] - probe);
                if (d0 >= capture_distance) continue;
                bool is_min = true;
                for (int dj = -1; dj <= 1 && is_min; ++dj)
                    for (int di = -1; di <= 1 && is_min; ++di) {
                        if (di == 0 && dj == 0) continue;
                        if (!g.in_bounds(i + di, j + dj)) continue;
                        int nb = g.index(i + di, j + dj);
                        if (F.mask[nb] && abs(F.values[nb] - probe) < d0) is_min = false;
                    }
                if (is_min)
                    candidates.push_back({static_cast<int>(ci) + 1, g.node(idx), d0, 0, 0});
            }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const PreimagePoint& a, const PreimagePoint& b) {
                  return a.distance < b.distance;
              });
    double h = b.surfaces.empty() ? 0.01 : b.surfaces[0].F.grid->h;
    double dedup = 10.0 * h;
    for (const auto& c : candidates) {
        bool dup = false, ambiguous = false;
        for (const auto& kept : rep.preimages) {
            double d = chordal(kept.chart, kept.z, c.chart, c.z);
            if (d < dedup) dup = true;
            else if (d < 2.0 * dedup) ambiguous = true;
        }
        if (ambiguous && !dup)
            throw AmbiguousPreimage("liyau_pluecker_check: clustering inconclusive");
        if (!dup) rep.preimages.push_back(c);
    }

    double order_sum = 0.0;
    for (auto& p : rep.preimages) {
        const WeierstrassChart& wc = b.weierstrass.charts[p.chart - 1];
        try {
            p.ord_chi = std::max(0, root_order(wc.chi, p.z));
        } catch (const Inconclusive&) {
            p.ord_chi = 0;
        }
        try {
            p.ord_psi = std::max(0, root_order(wc.psi, p.z));
        } catch (const Inconclusive&) {
            p.ord_psi = 0;
        }
        order_sum += 1.0 + p.ord_chi + p.ord_psi;
    }
    rep.bound = 4.0 * std::numbers::pi * order_sum;
    WillmoreValue wv = willmore(b);
    rep.willmore = b.kodaira.compact ? wv.kodaira : wv.weierstrass;
    rep.bound_satisfied = rep.willmore >= rep.bound * (1.0 - slack);

    if (b.kodaira.compact && !b.kodaira.charts.empty()) {
        rep.has_plucker = true;
        double v2 = 0.0;
        for (const auto& c : b.kodaira.charts) v2 += atlas_norm_sq(c.V.minus());
        rep.plucker_lhs = v2 / std::numbers::pi;
        double ordH = 0.0;
        for (const auto& p : rep.preimages) {
            const KodairaChart& kc = b.kodaira.charts[p.chart - 1];
            QField diff = QField::zip(kc.phi, kc.upsilon, [probe](Quat f, Quat u) {
                return f - u * probe;
            });
            try {
                ordH += std::max(0, root_order(diff, p.z) - 1);
            } catch (const Inconclusive&) {
            }
        }
        rep.plucker_rhs = 2.0 * (1.0 - b.kodaira.deg) + ordH;
        rep.plucker_satisfied = rep.plucker_lhs >= rep.plucker_rhs - slack;
    }
    return rep;
}

}  // namespace qs
