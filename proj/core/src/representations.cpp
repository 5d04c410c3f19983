#include "quatsurf/representations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>

#include "quatsurf/errors.hpp"

namespace qs {

namespace {

struct AxisDerivatives {
    QField fx, fy;
};

AxisDerivatives axis_derivatives(const QField& f) {
    WirtingerPair d = wirtinger(f);
    AxisDerivatives out{QField(f.grid), QField(f.grid)};
    out.fx = d.dz + d.dzbar;
    out.fy = QField::zip(d.dzbar, d.dz, [](Quat b, Quat a) {
        return lmul(cplx(0, -1), b - a);
    });
    return out;
}

double masked_l2(const QField& f) { return std::sqrt(f.l2_norm_sq()); }

}  // namespace

WirtingerPair pairing10(const QField& chi, const QField& psi) {
    WirtingerPair out{QField(chi.grid), QField(chi.grid)};
    for (int idx = 0; idx < chi.size(); ++idx) {
        bool ok = chi.mask[idx] && psi.mask[idx];
        out.dz.mask[idx] = out.dzbar.mask[idx] = ok ? 1 : 0;
        if (!ok) continue;
        const Quat& c = chi.values[idx];
        const Quat& p = psi.values[idx];
        out.dz.values[idx] = lmul(std::conj(minus_part(c)), p);
        out.dzbar.values[idx] = lmul(std::conj(plus_part(c)), kJ * p);
    }
    return out;
}

IntertwinerResult solve_intertwiner(const QField& N, const NeumannOptions& opts) {
    AxisDerivatives dN = axis_derivatives(N);
    // Right potential of the auxiliary equation dbar xi = -xi W.
    QField W = QField::zip(N, dN.fx, [](Quat n, Quat nx) { return n * nx; });
    W = QField::zip(W, dN.fy, [](Quat a, Quat ny) { return (a + ny) * 0.25; });
    // Potential of the projected solution, -V = ups (N Nx - Ny)/4 ups^-1.
    QField Wm = QField::zip(QField::zip(N, dN.fx, [](Quat n, Quat nx) { return n * nx; }),
                            dN.fy, [](Quat a, Quat ny) { return (a - ny) * 0.25; });

    const Quat seeds[4] = {kOne, kJ, kI, kK};
    IntertwinerResult res;
    for (const Quat& seed_value : seeds) {
        QField seed(N.grid, seed_value);
        seed.restrict_mask(W.mask);
        NeumannResult nr = neumann_resolve_right(W, seed, opts);
        // Project onto the i xi = xi N symmetry.
        QField ups = QField::zip(nr.xi, N, [](Quat xi, Quat n) {
            return (xi - kI * xi * n) * 0.5;
        });
        double ratio = masked_l2(ups) / std::max(masked_l2(nr.xi), 1e-300);
        if (ratio < 0.05) continue;  // trivial projection, rotate the seed

        QField Vf(N.grid);
        Vf.mask = ups.mask;
        for (int idx = 0; idx < ups.size(); ++idx) {
            if (!ups.mask[idx] || !Wm.mask[idx]) {
                Vf.mask[idx] = ups.mask[idx] && Wm.mask[idx];
                continue;
            }
            const Quat& u = ups.values[idx];
            if (norm_sq(u) < 1e-16)
                Vf.values[idx] = Quat{};
            else
                Vf.values[idx] = -1.0 * (u * Wm.values[idx] * inverse(u));
        }
        res.upsilon = ups;
        res.V = Potential01{Vf};

        QField sym = QField::zip(ups, N, [](Quat u, Quat n) { return kI * u - u * n; });
        res.symmetry_residual = masked_l2(sym) / std::max(masked_l2(ups), 1e-300);
        res.holo_residual = qs::holo_residual(ups, res.V, false);
        double nres = 0.0;
        for (int idx = 0; idx < ups.size(); ++idx) {
            if (!ups.mask[idx] || !N.mask[idx]) continue;
            const Quat& u = ups.values[idx];
            if (norm_sq(u) < 1e-12) continue;
            nres = std::max(nres, abs(inverse(u) * kI * u - N.values[idx]));
        }
        res.normal_residual = nres;
        return res;
    }
    throw TrivialProjection("solve_intertwiner: projection degenerate for all seeds");
}

KodairaChart kodaira_of(const SurfaceChart& s, const QField& upsilon, const Potential01& V,
                        double normal_tol) {
    NormalFields nf = normals_from_dF(s);
    double dev = 0.0;
    for (int idx = 0; idx < upsilon.size(); ++idx) {
        if (!upsilon.mask[idx] || !nf.N.mask[idx]) continue;
        const Quat& u = upsilon.values[idx];
        if (norm_sq(u) < 1e-16) continue;
        dev = std::max(dev, abs(inverse(u) * kI * u - nf.N.values[idx]));
    }
    if (dev > normal_tol)
        throw InconsistentNormal("kodaira_of: upsilon^-1 i upsilon deviates from N");
    KodairaChart out;
    out.grid = s.F.grid;
    out.V = V;
    out.upsilon = upsilon;
    out.phi = QField::zip(upsilon, s.F, [](Quat u, Quat f) { return u * f; });
    return out;
}

WeierstrassChart darboux(const KodairaChart& k) {
    for (int idx = 0; idx < k.upsilon.size(); ++idx)
        if (k.upsilon.mask[idx] && abs(k.upsilon.values[idx]) < 1e-8)
            throw RootInUpsilon("darboux: upsilon vanishes on an included node");

    // B = -2 d log|ups| from the real field log|ups|.
    QField log_ups = k.upsilon.map([](Quat u) { return Quat(0.5 * std::log(norm_sq(u))); });
    WirtingerPair dlog = wirtinger(log_ups);
    QField B = dlog.dz.map([](Quat v) { return Quat(plus_part(v) * -2.0); });

    WirtingerPair dups = wirtinger(k.upsilon);
    QField P = QField::zip(dups.dz, k.upsilon, [](Quat du, Quat u) {
        return -1.0 * (du * inverse(u));
    });
    QField U = QField::zip(P, B, [](Quat p, Quat b) {
        return from_parts(cplx(0, 0), minus_part(p - b));
    });

    WeierstrassChart w;
    w.grid = k.grid;
    w.B = B;
    w.U = Potential01{U};
    w.chi = k.upsilon.map([](Quat u) { return inverse(conj(kJ * u)); });
    WirtingerPair dphi = wirtinger(k.phi);
    w.psi = QField::zip(dphi.dz, QField::zip(B + U, k.phi, [](Quat c, Quat f) { return c * f; }),
                        [](Quat a, Quat b) { return a + b; });
    return w;
}

WeierstrassData darboux(const KodairaData& k) {
    WeierstrassData out;
    for (const auto& c : k.charts) out.charts.push_back(darboux(c));
    out.cocycle = k.cocycle;
    out.deg = k.deg;
    out.compact = k.compact;
    return out;
}

Potential01 potential_from_chi(const QField& chi) {
    // upsilon = -conj(j chi)^-1 has no roots, so its potential is
    // (dbar upsilon) upsilon^-1; the H+ part carries only stencil noise.
    QField ups = chi.map([](Quat c) { return -1.0 * inverse(conj(kJ * c)); });
    WirtingerPair dups = wirtinger(ups);
    QField V = QField::zip(dups.dzbar, ups, [](Quat du, Quat u) {
        return from_parts(cplx(0, 0), minus_part(du * inverse(u)));
    });
    return Potential01{V};
}

InverseDarbouxResult inverse_darboux(const WeierstrassChart& w, cplx basepoint, Quat F0,
                                     double period_tol) {
    WirtingerPair coeff = pairing10(w.chi, w.psi);
    const ChartGrid& g = *w.grid;
    const double h = g.h;

    // Closedness pre-check on small random loops plus one bulk test cycle.
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, g.size() - 1);
    double scale = coeff.dz.sup_norm() + coeff.dzbar.sup_norm();
    int checked = 0;
    double worst_loop = 0.0;
    auto interior = g.eroded_mask(8);
    for (int attempts = 0; attempts < 4000 && checked < 8; ++attempts) {
        int idx = pick(rng);
        if (!interior[idx]) continue;
        cplx c = g.node(idx);
        double r = 5.0 * h;
        try {
            Quat p = loop_integral(coeff.dz, coeff.dzbar, c, r);
            worst_loop = std::max(worst_loop, abs(p) / std::max(scale * r, 1e-300));
            ++checked;
        } catch (const PathOutsideGrid&) {
        }
    }
    if (g.kind == GridKind::annulus) {
        // Test cycle around the hole.
        double rin = 0.0, rout = 0.0;
        std::vector<double> radii;
        for (int idx = 0; idx < g.size(); ++idx)
            if (g.mask[idx]) radii.push_back(std::abs(g.node(idx) - g.center));
        auto [mn, mx] = std::minmax_element(radii.begin(), radii.end());
        rin = *mn;
        rout = *mx;
        double rmid = 0.5 * (rin + rout);
        Quat p = loop_integral(coeff.dz, coeff.dzbar, g.center, rmid);
        worst_loop = std::max(worst_loop, abs(p) / std::max(scale * rmid, 1e-300));
    }
    if (worst_loop > period_tol)
        throw NonzeroPeriods("inverse_darboux: loop integral above tolerance");

    // Path integration over a spanning tree of the included nodes.
    QField F(w.grid);
    std::vector<std::uint8_t> visited(g.size(), 0);
    std::vector<std::uint8_t> usable(g.size(), 0);
    for (int idx = 0; idx < g.size(); ++idx)
        usable[idx] = coeff.dz.mask[idx] && coeff.dzbar.mask[idx];

    int start = -1;
    double best = 1e300;
    for (int idx = 0; idx < g.size(); ++idx) {
        if (!usable[idx]) continue;
        double d = std::abs(g.node(idx) - basepoint);
        if (d < best) {
            best = d;
            start = idx;
        }
    }
    if (start < 0) throw GridTooSmall("inverse_darboux: no usable nodes");

    F.values[start] = F0;
    visited[start] = 1;
    std::queue<int> q;
    q.push(start);
    auto edge_step = [&](int from, int to, cplx dz_step) {
        Quat a0 = coeff.dz.values[from], a1 = coeff.dz.values[to];
        Quat b0 = coeff.dzbar.values[from], b1 = coeff.dzbar.values[to];
        Quat incr = (lmul(dz_step, a0 + a1) + lmul(std::conj(dz_step), b0 + b1)) * 0.5;
        F.values[to] = F.values[from] + incr;
    };
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        int ci = cur % g.nx, cj = cur / g.nx;
        for (int d = 0; d < 4; ++d) {
            int ni = ci + dx[d], nj = cj + dy[d];
            if (!g.in_bounds(ni, nj)) continue;
            int nxt = g.index(ni, nj);
            if (visited[nxt] || !usable[nxt]) continue;
            edge_step(cur, nxt, cplx(dx[d] * h, dy[d] * h));
            visited[nxt] = 1;
            q.push(nxt);
        }
    }
    F.mask = visited;

    InverseDarbouxResult out;
    out.F = F;
    out.loop_residual = worst_loop;
    out.chart.grid = w.grid;
    out.chart.upsilon = w.chi.map([](Quat c) { return -1.0 * inverse(conj(kJ * c)); });
    out.chart.phi = QField::zip(out.chart.upsilon, F, [](Quat u, Quat f) { return u * f; });
    out.chart.V = potential_from_chi(w.chi);
    out.upsilon_residual = holo_residual(out.chart.upsilon, out.chart.V, false);
    out.phi_residual = holo_residual(out.chart.phi, out.chart.V, false);
    return out;
}

int bundle_degree(const Cocycle& f21, int samples) {
    double total = 0.0;
    cplx prev = f21(cplx(1.0, 0.0));
    if (std::abs(prev) < 1e-9) throw ZeroOnCircle("bundle_degree: cocycle vanishes on |z|=1");
    for (int s = 1; s <= samples; ++s) {
        double th = 2.0 * std::numbers::pi * s / samples;
        cplx cur = f21(std::polar(1.0, th));
        if (std::abs(cur) < 1e-9)
            throw ZeroOnCircle("bundle_degree: cocycle vanishes on |z|=1");
        total += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace qs
