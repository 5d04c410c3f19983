#include "quatsurf/catalog.hpp"

#include <cmath>
#include <numbers>

#include "quatsurf/errors.hpp"

namespace qs {

QField sample(GridPtr grid, const QFun& f) { return QField(grid, f); }

namespace {

Quat C(cplx c) { return Quat(c); }

// ---- catenoid closed forms on C* ----------------------------------------

Quat cat_F(cplx z) {
    return Quat(std::log(std::norm(z))) * kI + C(std::conj(z) + 1.0 / z) * kJ;
}
Quat cat_dFdz(cplx z) { return C(1.0 / z) * kI - C(1.0 / (z * z)) * kJ; }
Quat cat_dFdzbar(cplx z) { return C(1.0 / std::conj(z)) * kI + kJ; }
Quat cat_N(cplx z) {
    Quat a = kOne - C(1.0 / z) * kK;
    return a * (-1.0 * kI) * inverse(a);
}
Quat cat_R(cplx z) { return -1.0 * cat_N(z); }
Quat cat_V(cplx z) {
    return kK * C((std::conj(z) / z) / (1.0 + std::norm(z)));
}
Quat cat_upsilon(cplx z) { return -1.0 * (kJ * inverse(kOne - C(1.0 / z) * kK)); }
Quat cat_phi(cplx z) { return cat_upsilon(z) * cat_F(z); }
Quat cat_B(cplx z) { return C(-1.0 / (z * (1.0 + std::norm(z)))); }
Quat cat_U(cplx) { return Quat{}; }
Quat cat_chi(cplx z) { return kOne + C(1.0 / z) * kK; }
Quat cat_psi(cplx z) { return cat_chi(z); }
Quat cat_vprime(cplx z) {
    return -1.0 * (C(std::conj(z) / z / (1.0 + std::norm(z))) * kK);
}
Quat cat_upsilon_star(cplx z) {
    return -0.5 * (C(1.0 / z) * kJ * (C(z) + kK) * (1.0 / (1.0 + std::norm(z))));
}
Quat cat_kernel_ups_star(cplx z) { return C(1.0 / (z * z)) * cat_phi(z); }
Quat cat_kernel_phi_star(cplx z) { return C(1.0 / (z * z)) * cat_upsilon(z); }

// ---- sphere closed forms --------------------------------------------------

Quat sph_F1(cplx z) {
    double r2 = std::norm(z);
    return (1.0 / (1.0 + r2)) * (Quat(r2 - 1.0) * kI - 2.0 * (kJ * C(z)));
}
Quat sph_dF1dz(cplx z) {
    double s = 2.0 / ((1.0 + std::norm(z)) * (1.0 + std::norm(z)));
    return s * (C(std::conj(z)) * kI + kJ * C(z * z));
}
Quat sph_dF1dzbar(cplx z) {
    double s = 2.0 / ((1.0 + std::norm(z)) * (1.0 + std::norm(z)));
    return s * (C(z) * kI - kJ);
}
Quat sph_N1(cplx z) {
    Quat a = -1.0 * (kJ * C(z)) - kI;
    return a * (-1.0 * kI) * inverse(a);
}
Quat sph_R1(cplx z) { return -1.0 * sph_N1(z); }
Quat sph_ups1(cplx z) { return C(z) + kK; }
Quat sph_phi1(cplx z) { return C(z) * kI - kJ; }
Quat sph_B1(cplx z) { return C(-std::conj(z) / (1.0 + std::norm(z))); }
Quat sph_U1(cplx z) { return (1.0 / (1.0 + std::norm(z))) * kK; }
Quat sph_chi1(cplx z) { return -1.0 * inverse(kJ * C(z) + kI); }
Quat sph_psi1(cplx z) { return -2.0 * inverse(kJ * C(z) + kI); }

Quat sph_F2(cplx z) {
    double r2 = std::norm(z);
    return (1.0 / (1.0 + r2)) * (Quat(1.0 - r2) * kI - 2.0 * (kJ * C(std::conj(z))));
}
Quat sph_dF2dz(cplx z) {
    double s = 1.0 / ((1.0 + std::norm(z)) * (1.0 + std::norm(z)));
    return -2.0 * s * (C(std::conj(z)) * kI + kJ);
}
Quat sph_dF2dzbar(cplx z) {
    double s = 1.0 / ((1.0 + std::norm(z)) * (1.0 + std::norm(z)));
    return -2.0 * s * (C(z) * kI - kJ * C(std::conj(z) * std::conj(z)));
}
Quat sph_N2(cplx z) {
    Quat a = -1.0 * kJ - kI * C(z);
    return a * (-1.0 * kI) * inverse(a);
}
Quat sph_R2(cplx z) { return -1.0 * sph_N2(z); }
Quat sph_ups2(cplx z) { return kOne + kK * C(std::conj(z)); }
Quat sph_phi2(cplx z) { return kI - kJ * C(std::conj(z)); }
Quat sph_B2(cplx z) { return C(-std::conj(z) / (1.0 + std::norm(z))); }
Quat sph_U2(cplx z) { return (-1.0 / (1.0 + std::norm(z))) * kK; }
Quat sph_chi2(cplx z) { return -1.0 * inverse(kJ + kI * C(z)); }
Quat sph_psi2(cplx z) { return -2.0 * sph_chi2(z); }

// ---- inverted catenoid: Moebius image with alpha = delta = i, beta = gamma = 1

const Quat kMa = kI, kMb = kOne, kMg = kOne, kMd = kI;

Quat inv_F1(cplx z) {
    Quat F = cat_F(z);
    return inverse(F * kMg + kMd) * (F * kMa + kMb);
}
Quat inv_ups1(cplx z) { return cat_upsilon(z) * (cat_F(z) + kI); }
Quat inv_phi1(cplx z) { return cat_upsilon(z) * (cat_F(z) * kI + kOne); }
Quat inv_V1(cplx z) { return cat_V(z); }
Quat inv_chi1(cplx z) { return cat_chi(z) * inverse(conj(cat_F(z) + kI)); }
Quat inv_psi1(cplx z) { return cat_psi(z) * (kI - inv_F1(z)); }
Quat inv_corr1(cplx z) {  // psi gamma ups~^-1
    return cat_psi(z) * kMg * inverse(inv_ups1(z));
}
Quat inv_B1(cplx z) { return cat_B(z) - Quat(plus_part(inv_corr1(z))); }
Quat inv_U1(cplx z) {
    return -1.0 * from_parts(cplx(0, 0), minus_part(inv_corr1(z)));
}
Quat inv_N1(cplx z) {
    Quat den = cat_F(z) * kMg + kMd;
    return inverse(den) * cat_N(z) * den;
}
Quat inv_R1(cplx z) { return -1.0 * inv_N1(z); }
Quat inv_ups_star1(cplx z) { return 0.5 * (cat_upsilon_star(z) * kI); }
Quat inv_phi_star1(cplx z) { return 0.5 * cat_upsilon_star(z); }

// Chart 2 through the cocycle f21 = z2 and coordinate change z1 = 1/z2.
Quat inv_F2(cplx z2) { return inv_F1(1.0 / z2); }
Quat inv_ups2(cplx z2) { return C(z2) * inv_ups1(1.0 / z2); }
Quat inv_phi2(cplx z2) { return C(z2) * inv_phi1(1.0 / z2); }
Quat inv_V2(cplx z2) {
    cplx zb = std::conj(z2);
    return C(-1.0 / (zb * zb)) * C(z2) * inv_V1(1.0 / z2) * C(1.0 / z2);
}
Quat inv_chi2(cplx z2) { return C(1.0 / z2) * inv_chi1(1.0 / z2); }
Quat inv_psi2(cplx z2) { return C(-1.0 / z2) * inv_psi1(1.0 / z2); }
Quat inv_U2(cplx z2) {
    cplx zb = std::conj(z2);
    return C(-1.0 / (zb * zb)) * C(1.0 / z2) * inv_U1(1.0 / z2) * C(z2);
}
Quat inv_B2(cplx z2) {
    return C(-1.0 / (z2 * z2)) * inv_B1(1.0 / z2) - C(1.0 / z2);
}
Quat inv_N2(cplx z2) { return inv_N1(1.0 / z2); }
Quat inv_R2(cplx z2) { return -1.0 * inv_N2(z2); }

// Exact differential from the pairing coefficients of (chi, psi).
QFun pairing_dz(QFun chi, QFun psi) {
    return [chi, psi](cplx z) {
        return lmul(std::conj(minus_part(chi(z))), psi(z));
    };
}
QFun pairing_dzbar(QFun chi, QFun psi) {
    return [chi, psi](cplx z) {
        return lmul(std::conj(plus_part(chi(z))), kJ * psi(z));
    };
}

void fill_bundle_chart(SurfaceBundle& b, GridPtr grid, const ChartForms& f,
                       const std::string& name) {
    SurfaceChart sc;
    sc.name = name;
    sc.F = sample(grid, f.F);
    if (f.dF_dz && f.dF_dzbar)
        sc.exact_dF = WirtingerPair{sample(grid, f.dF_dz), sample(grid, f.dF_dzbar)};
    b.surfaces.push_back(std::move(sc));

    KodairaChart kc;
    kc.grid = grid;
    kc.V = Potential01{sample(grid, f.V)};
    kc.upsilon = sample(grid, f.upsilon);
    kc.phi = sample(grid, f.phi);
    b.kodaira.charts.push_back(std::move(kc));

    WeierstrassChart wc;
    wc.grid = grid;
    wc.U = Potential01{sample(grid, f.U)};
    wc.B = sample(grid, f.B);
    wc.chi = sample(grid, f.chi);
    wc.psi = sample(grid, f.psi);
    b.weierstrass.charts.push_back(std::move(wc));
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"plane", "catenoid", "sphere", "inverted_catenoid", "associated"};
}

CatalogEntry make(const std::string& name, double resolution, const std::vector<double>& params) {
    CatalogEntry e;
    e.name = name;
    e.resolution = resolution;
    const double h = resolution;

    if (name == "plane") {
        auto grid = ChartGrid::rectangle(-1.0, 1.0, -1.0, 1.0, h);
        ChartForms f;
        f.F = [](cplx z) { return kJ * C(z); };
        f.N = [](cplx) { return -1.0 * kI; };
        f.R = [](cplx) { return kI; };
        f.V = [](cplx) { return Quat{}; };
        f.upsilon = [](cplx) { return -1.0 * kJ; };
        f.phi = [](cplx z) { return C(z); };
        f.B = [](cplx) { return Quat{}; };
        f.U = [](cplx) { return Quat{}; };
        f.chi = [](cplx) { return kOne; };
        f.psi = [](cplx) { return kOne; };
        f.dF_dz = [](cplx) { return Quat{}; };
        f.dF_dzbar = [](cplx) { return kJ; };
        f.g = [](cplx) { return kOne; };
        e.forms.push_back(f);
        fill_bundle_chart(e.bundle, grid, f, name);
        e.expected_willmore = 0.0;
        e.has_willmore = true;
        return e;
    }

    if (name == "catenoid" || name == "associated") {
        cplx hparam(1.0, 0.0);
        if (name == "associated") {
            if (params.size() >= 2)
                hparam = cplx(params[0], params[1]);
            else if (params.size() == 1)
                hparam = cplx(params[0], 0.0);
        }
        e.assoc_param = hparam;
        auto grid = ChartGrid::annulus(cplx(0, 0), 0.3, 3.0, h);
        ChartForms f;
        f.F = cat_F;
        f.N = cat_N;
        f.R = cat_R;
        f.V = cat_V;
        f.upsilon = cat_upsilon;
        f.phi = cat_phi;
        f.B = cat_B;
        f.U = cat_U;
        f.chi = cat_chi;
        f.psi = [hparam](cplx z) { return lmul(hparam, cat_psi(z)); };
        f.dF_dz = pairing_dz(f.chi, f.psi);
        f.dF_dzbar = pairing_dzbar(f.chi, f.psi);
        f.g = [hparam](cplx) { return Quat(hparam); };
        f.upsilon_star = cat_upsilon_star;
        f.phi_star = [](cplx) { return Quat{}; };
        e.forms.push_back(f);
        fill_bundle_chart(e.bundle, grid, f, name);
        e.expected_willmore = 0.0;
        e.has_willmore = (name == "catenoid");
        if (name == "catenoid") {
            e.has_multipliers = true;
            e.multipliers.upsilon_star = sample(grid, cat_upsilon_star);
            e.multipliers.phi_star = QField(grid);
            e.has_kernel_pair = true;
            e.kernel_pair.upsilon_star = sample(grid, cat_kernel_ups_star);
            e.kernel_pair.phi_star = sample(grid, cat_kernel_phi_star);
        }
        return e;
    }

    if (name == "sphere") {
        auto g1 = ChartGrid::p1_chart(1.5, h, 1, /*fubini=*/false);
        auto g2 = ChartGrid::p1_chart(1.5, h, 2, /*fubini=*/false);
        ChartForms f1;
        f1.F = sph_F1;
        f1.N = sph_N1;
        f1.R = sph_R1;
        f1.V = [](cplx) { return Quat{}; };
        f1.upsilon = sph_ups1;
        f1.phi = sph_phi1;
        f1.B = sph_B1;
        f1.U = sph_U1;
        f1.chi = sph_chi1;
        f1.psi = sph_psi1;
        f1.dF_dz = sph_dF1dz;
        f1.dF_dzbar = sph_dF1dzbar;
        f1.g = [](cplx) { return Quat(2.0); };
        ChartForms f2 = f1;
        f2.F = sph_F2;
        f2.N = sph_N2;
        f2.R = sph_R2;
        f2.upsilon = sph_ups2;
        f2.phi = sph_phi2;
        f2.B = sph_B2;
        f2.U = sph_U2;
        f2.chi = sph_chi2;
        f2.psi = sph_psi2;
        f2.dF_dz = sph_dF2dz;
        f2.dF_dzbar = sph_dF2dzbar;
        f2.g = [](cplx) { return Quat(-2.0); };
        e.forms = {f1, f2};
        fill_bundle_chart(e.bundle, g1, f1, name);
        fill_bundle_chart(e.bundle, g2, f2, name);
        e.bundle.kodaira.cocycle = [](cplx z2) { return z2; };
        e.bundle.kodaira.deg = 1;
        e.bundle.kodaira.compact = true;
        e.bundle.weierstrass.cocycle = e.bundle.kodaira.cocycle;
        e.bundle.weierstrass.deg = 1;
        e.bundle.weierstrass.compact = true;
        e.expected_willmore = 4.0 * std::numbers::pi;
        e.has_willmore = true;
        return e;
    }

    if (name == "inverted_catenoid") {
        // The map extends continuously across the punctures (both ends map
        // to i), so the surface samples live on the full disks while the
        // singular section and potential fields carry the puncture mask.
        auto g1full = ChartGrid::p1_chart(1.5, h, 1, /*fubini=*/false);
        auto g2full = ChartGrid::p1_chart(1.5, h, 2, /*fubini=*/false);
        auto g1 = ChartGrid::p1_chart(1.5, h, 1, /*fubini=*/false);
        auto g2 = ChartGrid::p1_chart(1.5, h, 2, /*fubini=*/false);
        g1->puncture(cplx(0, 0), 3.0 * h);
        g2->puncture(cplx(0, 0), 3.0 * h);
        ChartForms f1;
        f1.F = inv_F1;
        f1.N = inv_N1;
        f1.R = inv_R1;
        f1.V = inv_V1;
        f1.upsilon = inv_ups1;
        f1.phi = inv_phi1;
        f1.B = inv_B1;
        f1.U = inv_U1;
        f1.chi = inv_chi1;
        f1.psi = inv_psi1;
        f1.dF_dz = pairing_dz(inv_chi1, inv_psi1);
        f1.dF_dzbar = pairing_dzbar(inv_chi1, inv_psi1);
        f1.upsilon_star = inv_ups_star1;
        f1.phi_star = inv_phi_star1;
        ChartForms f2;
        f2.F = inv_F2;
        f2.N = inv_N2;
        f2.R = inv_R2;
        f2.V = inv_V2;
        f2.upsilon = inv_ups2;
        f2.phi = inv_phi2;
        f2.B = inv_B2;
        f2.U = inv_U2;
        f2.chi = inv_chi2;
        f2.psi = inv_psi2;
        f2.dF_dz = pairing_dz(inv_chi2, inv_psi2);
        f2.dF_dzbar = pairing_dzbar(inv_chi2, inv_psi2);
        // Continuous extension across the punctures for the map itself.
        f1.F = [](cplx z) { return std::abs(z) < 1e-12 ? kI : inv_F1(z); };
        f2.F = [](cplx z) { return std::abs(z) < 1e-12 ? kI : inv_F2(z); };
        e.forms = {f1, f2};
        fill_bundle_chart(e.bundle, g1, f1, name);
        fill_bundle_chart(e.bundle, g2, f2, name);
        e.bundle.surfaces[0].F = sample(g1full, f1.F);
        e.bundle.surfaces[1].F = sample(g2full, f2.F);
        e.bundle.kodaira.cocycle = [](cplx z2) { return z2; };
        e.bundle.kodaira.deg = 1;
        e.bundle.kodaira.compact = true;
        e.bundle.weierstrass.cocycle = e.bundle.kodaira.cocycle;
        e.bundle.weierstrass.deg = 1;
        e.bundle.weierstrass.compact = true;
        e.expected_willmore = 8.0 * std::numbers::pi;
        e.has_willmore = true;
        e.singular_compactification = true;
        e.has_multipliers = true;
        e.multipliers.upsilon_star = sample(g1, inv_ups_star1);
        e.multipliers.phi_star = sample(g1, inv_phi_star1);
        return e;
    }

    throw UnknownSurface("catalog: unknown surface '" + name + "'");
}

}  // namespace qs
