#include "quatsurf/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "quatsurf/errors.hpp"

namespace qs {

bool MoebiusCoeffs::nondegenerate(double tol) const {
    if (abs(gamma) < tol) return abs(alpha) > tol && abs(delta) > tol;
    return abs(delta * inverse(gamma) * alpha - beta) > tol;
}

MoebiusCoeffs MoebiusCoeffs::inverse_coeffs() const {
    // Composing (a1..d1) then (a2..d2) composes the section coefficients as
    // the quaternionic matrix product [[a1,c1],[b1,d1]] [[a2,c2],[b2,d2]],
    // so the inverse transformation is the matrix inverse.
    QMat2 inv = QMat2{alpha, gamma, beta, delta}.inverse();
    return MoebiusCoeffs{inv.a11, inv.a21, inv.a12, inv.a22};
}

Quat moebius_apply(const MoebiusCoeffs& m, const Quat& F) {
    Quat den = F * m.gamma + m.delta;
    if (abs(den) < 1e-12) throw HitsInfinity("moebius_apply: F gamma + delta ~ 0");
    return inverse(den) * (F * m.alpha + m.beta);
}

MoebiusKodairaResult moebius_kodaira(const KodairaChart& k, const MoebiusCoeffs& m) {
    if (!m.nondegenerate()) throw SingularSystem("moebius_kodaira: degenerate coefficients");
    MoebiusKodairaResult out;
    out.chart.grid = k.grid;
    out.chart.V = k.V;
    out.chart.upsilon = QField::zip(k.phi, k.upsilon, [&m](Quat phi, Quat ups) {
        return phi * m.gamma + ups * m.delta;
    });
    out.chart.phi = QField::zip(k.phi, k.upsilon, [&m](Quat phi, Quat ups) {
        return phi * m.alpha + ups * m.beta;
    });
    out.F = QField(k.grid);
    const double h = k.grid->h;
    // First pass: locate denominators that blow up, then mask a 3h halo.
    std::vector<cplx> bad;
    for (int idx = 0; idx < out.F.size(); ++idx) {
        if (!k.upsilon.mask[idx] || !k.phi.mask[idx]) {
            out.F.mask[idx] = 0;
            continue;
        }
        const Quat& u = out.chart.upsilon.values[idx];
        if (abs(u) < 1e-8) bad.push_back(k.grid->node(idx));
    }
    for (int idx = 0; idx < out.F.size(); ++idx) {
        if (!out.F.mask[idx]) continue;
        cplx z = k.grid->node(idx);
        bool hit = false;
        for (cplx b : bad)
            if (std::abs(z - b) <= 3.0 * h) hit = true;
        if (hit) {
            out.F.mask[idx] = 0;
            out.chart.upsilon.mask[idx] = out.chart.phi.mask[idx] = 0;
            ++out.masked_nodes;
            continue;
        }
        out.F.values[idx] =
            inverse(out.chart.upsilon.values[idx]) * out.chart.phi.values[idx];
    }
    return out;
}

MoebiusWeierstrassResult moebius_weierstrass(const WeierstrassChart& w, const KodairaChart& k,
                                             const MoebiusCoeffs& m, const QField& F) {
    if (!m.nondegenerate())
        throw SingularSystem("moebius_weierstrass: degenerate coefficients");
    MoebiusWeierstrassResult out;
    out.chart.grid = w.grid;
    QField ups_new = QField::zip(k.phi, k.upsilon, [&m](Quat phi, Quat ups) {
        return phi * m.gamma + ups * m.delta;
    });
    out.F_new = QField(w.grid);
    out.chart.chi = QField(w.grid);
    out.chart.psi = QField(w.grid);
    out.chart.U = Potential01{QField(w.grid)};
    out.chart.B = QField(w.grid);
    for (int idx = 0; idx < ups_new.size(); ++idx) {
        bool ok = w.chi.mask[idx] && w.psi.mask[idx] && F.mask[idx] && ups_new.mask[idx] &&
                  abs(ups_new.values[idx]) > 1e-8;
        Quat den = F.values[idx] * m.gamma + m.delta;
        ok = ok && abs(den) > 1e-8;
        out.chart.chi.mask[idx] = out.chart.psi.mask[idx] = out.chart.U.field.mask[idx] =
            out.chart.B.mask[idx] = out.F_new.mask[idx] = ok ? 1 : 0;
        if (!ok) continue;
        Quat Fn = inverse(den) * (F.values[idx] * m.alpha + m.beta);
        out.F_new.values[idx] = Fn;
        out.chart.chi.values[idx] = w.chi.values[idx] * inverse(conj(den));
        out.chart.psi.values[idx] = w.psi.values[idx] * (m.alpha - m.gamma * Fn);
        Quat corr = w.psi.values[idx] * m.gamma * inverse(ups_new.values[idx]);
        out.chart.U.field.values[idx] =
            w.U.field.values[idx] - from_parts(cplx(0, 0), minus_part(corr));
        out.chart.B.values[idx] = w.B.values[idx] - Quat(plus_part(corr));
    }
    // Verify (chi~, psi~)^(1,0) = dF~ on the surviving interior.
    WirtingerPair lhs = pairing10(out.chart.chi, out.chart.psi);
    WirtingerPair rhs = wirtinger(out.F_new);
    double sup = 0.0;
    for (int idx = 0; idx < ups_new.size(); ++idx) {
        if (!(lhs.dz.mask[idx] && rhs.dz.mask[idx])) continue;
        double scale = abs(rhs.dz.values[idx]) + abs(rhs.dzbar.values[idx]) + 1e-12;
        sup = std::max(sup, (abs(lhs.dz.values[idx] - rhs.dz.values[idx]) +
                             abs(lhs.dzbar.values[idx] - rhs.dzbar.values[idx])) /
                                scale);
    }
    out.pairing_residual = sup;
    return out;
}

bool imaginary_preserving(const MoebiusCoeffs& m, double tol) {
    auto is_zero = [tol](const Quat& q) { return abs(q) <= tol; };
    return is_zero(m.alpha * conj(m.gamma) + m.gamma * conj(m.alpha)) &&
           is_zero(m.alpha * conj(m.delta) - m.delta * conj(m.alpha)) &&
           is_zero(m.beta * conj(m.gamma) - m.gamma * conj(m.beta)) &&
           is_zero(m.beta * conj(m.delta) + m.delta * conj(m.beta));
}

namespace {

void check_image(const HolomorphicMap& map, const ChartGrid& target, const ChartGrid& source) {
    for (int idx = 0; idx < target.size(); ++idx) {
        if (!target.mask[idx]) continue;
        cplx w = map.f(target.node(idx));
        int i, j;
        double fx, fy;
        if (!source.locate(w, i, j, fx, fy))
            throw ImageOutsideChart("pullback_covering: image leaves the source chart");
    }
}

}  // namespace

KodairaChart pullback_covering(const KodairaChart& k, const HolomorphicMap& map, GridPtr target) {
    check_image(map, *target, *k.grid);
    KodairaChart out;
    out.grid = target;
    out.V = Potential01{QField(target)};
    out.upsilon = QField(target);
    out.phi = QField(target);
    for (int idx = 0; idx < target->size(); ++idx) {
        if (!target->mask[idx]) {
            out.V.field.mask[idx] = out.upsilon.mask[idx] = out.phi.mask[idx] = 0;
            continue;
        }
        cplx z = target->node(idx);
        cplx w = map.f(z);
        auto v = k.V.field.interpolate(w);
        auto u = k.upsilon.interpolate(w);
        auto p = k.phi.interpolate(w);
        bool ok = v && u && p;
        out.V.field.mask[idx] = out.upsilon.mask[idx] = out.phi.mask[idx] = ok ? 1 : 0;
        if (!ok) continue;
        out.V.field.values[idx] = lmul(std::conj(map.df(z)), *v);
        out.upsilon.values[idx] = *u;
        out.phi.values[idx] = *p;
    }
    return out;
}

WeierstrassChart pullback_covering(const WeierstrassChart& w, const HolomorphicMap& map,
                                   GridPtr target) {
    check_image(map, *target, *w.grid);
    WeierstrassChart out;
    out.grid = target;
    out.U = Potential01{QField(target)};
    out.B = QField(target);
    out.chi = QField(target);
    out.psi = QField(target);
    for (int idx = 0; idx < target->size(); ++idx) {
        bool ok = target->mask[idx] != 0;
        cplx z = target->node(idx);
        cplx fw = ok ? map.f(z) : cplx{};
        std::optional<Quat> u, b, c, p;
        if (ok) {
            u = w.U.field.interpolate(fw);
            b = w.B.interpolate(fw);
            c = w.chi.interpolate(fw);
            p = w.psi.interpolate(fw);
            ok = u && b && c && p;
        }
        out.U.field.mask[idx] = out.B.mask[idx] = out.chi.mask[idx] = out.psi.mask[idx] =
            ok ? 1 : 0;
        if (!ok) continue;
        cplx df = map.df(z);
        out.U.field.values[idx] = lmul(df, *u);
        out.B.values[idx] = lmul(df, *b);
        out.chi.values[idx] = *c;
        out.psi.values[idx] = lmul(df, *p);
    }
    return out;
}

WeierstrassChart reflect(const WeierstrassChart& w) {
    WeierstrassChart out;
    out.grid = w.grid;
    out.chi = w.psi;
    out.psi = w.chi;
    out.U = Potential01{w.U.field.map(dagger_potential_value)};
    out.B = w.B.conjugated();
    return out;
}

KodairaChart conjugate_surface(const KodairaChart& k, GridPtr conjugate_grid) {
    KodairaChart out;
    out.grid = conjugate_grid;
    out.V = Potential01{QField(conjugate_grid)};
    out.upsilon = QField(conjugate_grid);
    out.phi = QField(conjugate_grid);
    Quat jinv = inverse(kJ);
    for (int idx = 0; idx < conjugate_grid->size(); ++idx) {
        bool ok = conjugate_grid->mask[idx] != 0;
        std::optional<Quat> v, u, p;
        if (ok) {
            cplx z = std::conj(conjugate_grid->node(idx));
            v = k.V.field.interpolate(z);
            u = k.upsilon.interpolate(z);
            p = k.phi.interpolate(z);
            ok = v && u && p;
        }
        out.V.field.mask[idx] = out.upsilon.mask[idx] = out.phi.mask[idx] = ok ? 1 : 0;
        if (!ok) continue;
        out.V.field.values[idx] = kJ * (*v) * jinv;
        out.upsilon.values[idx] = kJ * (*u);
        out.phi.values[idx] = kJ * (*p);
    }
    return out;
}

}  // namespace qs
