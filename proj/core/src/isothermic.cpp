#include "quatsurf/isothermic.hpp"

#include <algorithm>
#include <cmath>

#include "quatsurf/errors.hpp"

namespace qs {

double isothermic_residual(const KodairaChart& k, const WeierstrassChart& w) {
    Potential01 Vp = v_prime(w);
    QField diff = QField::zip(Vp.field, k.V.field, [](Quat a, Quat b) { return a - b; });
    double num = std::sqrt(diff.l2_norm_sq());
    double den = std::sqrt(k.V.field.l2_norm_sq());
    return num / std::max(den, 1e-12);
}

QField pairing01(const QField& eta, const QField& xi) {
    return QField::zip(eta, xi, [](Quat e, Quat x) { return 2.0 * (kK * e * conj(x)); });
}

double dual_residual(const KodairaChart& k, const MultiplierPair& pair) {
    double sup = 0.0;
    double scale = 0.0;
    for (int idx = 0; idx < k.upsilon.size(); ++idx) {
        bool ok = k.upsilon.mask[idx] && k.phi.mask[idx] && pair.upsilon_star.mask[idx] &&
                  pair.phi_star.mask[idx];
        if (!ok) continue;
        Quat s = pair.upsilon_star.values[idx] * conj(k.upsilon.values[idx]) +
                 pair.phi_star.values[idx] * conj(k.phi.values[idx]);
        sup = std::max(sup, abs(s));
        scale = std::max(scale, abs(pair.upsilon_star.values[idx]) * abs(k.upsilon.values[idx]) +
                                    abs(pair.phi_star.values[idx]) * abs(k.phi.values[idx]));
    }
    return scale > 0.0 ? sup / scale : sup;
}

double constrained_residual(const KodairaChart& k, const MultiplierPair& pair) {
    QField sum = QField::zip(pairing01(pair.upsilon_star, k.upsilon),
                             pairing01(pair.phi_star, k.phi),
                             [](Quat a, Quat b) { return a + b; });
    QField vminus = k.V.minus();
    QField diff = QField::zip(vminus, sum, [](Quat a, Quat b) { return a - b; });
    double num = std::sqrt(diff.l2_norm_sq());
    double den = std::sqrt(vminus.l2_norm_sq());
    if (den < 1e-9) return num;
    return num / den;
}

MultiplierPair transform_multipliers(const MultiplierPair& pair, const MoebiusCoeffs& m) {
    if (!m.nondegenerate())
        throw SingularSystem("transform_multipliers: degenerate coefficients");
    // Row vector (phi~*, ups~*) times [[conj a, conj b], [conj g, conj d]]
    // equals (phi*, ups*); invert the constant matrix once.
    QMat2 inv =
        QMat2{conj(m.alpha), conj(m.beta), conj(m.gamma), conj(m.delta)}.inverse();
    MultiplierPair out;
    out.phi_star = QField::zip(pair.phi_star, pair.upsilon_star, [&inv](Quat ps, Quat us) {
        return ps * inv.a11 + us * inv.a21;
    });
    out.upsilon_star = QField::zip(pair.phi_star, pair.upsilon_star, [&inv](Quat ps, Quat us) {
        return ps * inv.a12 + us * inv.a22;
    });
    return out;
}

}  // namespace qs
