#include "quatsurf/conformal.hpp"

#include <algorithm>
#include <cmath>

namespace qs {

WirtingerPair SurfaceChart::differential() const {
    if (exact_dF) return *exact_dF;
    return wirtinger(F);
}

NormalFields normals_from_dF(const SurfaceChart& s, double branch_threshold) {
    WirtingerPair d = s.differential();
    NormalFields out{QField(s.F.grid), QField(s.F.grid)};
    for (int idx = 0; idx < s.F.size(); ++idx) {
        bool ok = d.dz.mask[idx] && d.dzbar.mask[idx];
        out.N.mask[idx] = out.R.mask[idx] = 0;
        if (!ok) continue;
        const Quat& A = d.dz.values[idx];
        const Quat& B = d.dzbar.values[idx];
        if (abs(A) + abs(B) < branch_threshold) continue;  // branch point
        Quat t1 = A + B;                                    // dF(d/dx)
        Quat t2 = lmul(cplx(0, 1), A - B);                  // dF(d/dy)
        if (abs(t1) < branch_threshold || abs(t2) < branch_threshold) continue;
        Quat inv_t1 = inverse(t1);
        Quat N = t2 * inv_t1;
        Quat R = inv_t1 * t2;
        double nn = abs(imag(N)), nr = abs(imag(R));
        if (nn < branch_threshold || nr < branch_threshold) continue;
        out.N.values[idx] = imag(N) / nn;
        out.R.values[idx] = imag(R) / nr;
        out.N.mask[idx] = out.R.mask[idx] = 1;
    }
    return out;
}

ConformalityReport conformality_residual(const SurfaceChart& s) {
    WirtingerPair d = s.differential();
    NormalFields nr = normals_from_dF(s);
    ConformalityReport rep;
    for (int idx = 0; idx < s.F.size(); ++idx) {
        if (!nr.N.mask[idx]) continue;
        const Quat& A = d.dz.values[idx];
        const Quat& B = d.dzbar.values[idx];
        Quat t1 = A + B;
        Quat t2 = lmul(cplx(0, 1), A - B);
        const Quat& N = nr.N.values[idx];
        double scale = abs(t1) + abs(t2);
        // -*dF = N dF on both coordinate directions.
        double res = (abs(t2 - N * t1) + abs(-1.0 * t1 - N * t2)) / scale;
        rep.residual = std::max(rep.residual, res);
        double g11 = norm_sq(t1), g22 = norm_sq(t2), g12 = dot(t1, t2);
        rep.metric_mismatch = std::max(rep.metric_mismatch, std::fabs(g11 - g22) / (g11 + g22));
        rep.metric_skew = std::max(rep.metric_skew, std::fabs(g12) / (g11 + g22));
    }
    return rep;
}

ImaginaryReport imaginary_check(const SurfaceChart& s, const QField* chi, const QField* psi,
                                double tol) {
    ImaginaryReport rep;
    for (int idx = 0; idx < s.F.size(); ++idx)
        if (s.F.mask[idx]) rep.re_sup = std::max(rep.re_sup, std::fabs(real(s.F.values[idx])));
    rep.imaginary = rep.re_sup <= tol;
    if (chi && psi) {
        double g_res = 0.0;
        for (int idx = 0; idx < s.F.size(); ++idx) {
            if (!chi->mask[idx] || !psi->mask[idx]) continue;
            Quat c = chi->values[idx];
            if (norm_sq(c) < 1e-24) continue;
            Quat g = psi->values[idx] * inverse(c);  // should be complex valued
            double denom = std::max(abs(g), 1e-12);
            g_res = std::max(g_res, std::abs(minus_part(g)) / denom);
        }
        rep.g_residual = g_res;
    }
    NormalFields nr = normals_from_dF(s);
    double rn = 0.0;
    bool any = false;
    for (int idx = 0; idx < s.F.size(); ++idx) {
        if (!nr.N.mask[idx]) continue;
        any = true;
        rn = std::max(rn, abs(nr.R.values[idx] + nr.N.values[idx]));
    }
    if (any) rep.rn_residual = rn;
    return rep;
}

}  // namespace qs
