#include "quatsurf/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quatsurf/errors.hpp"
#include "quatsurf/parallel.hpp"

namespace qs {

QField::QField(GridPtr g, Quat fill) : grid(std::move(g)) {
    values.assign(grid->size(), fill);
    mask = grid->mask;
}

QField::QField(GridPtr g, std::function<Quat(cplx)> f) : grid(std::move(g)) {
    values.resize(grid->size());
    mask = grid->mask;
    for (int idx = 0; idx < grid->size(); ++idx)
        if (mask[idx]) values[idx] = f(grid->node(idx));
}

QField QField::map(const std::function<Quat(Quat)>& f) const {
    QField out(*this);
    for (int idx = 0; idx < size(); ++idx)
        if (mask[idx]) out.values[idx] = f(values[idx]);
    return out;
}

QField QField::zip(const QField& a, const QField& b,
                   const std::function<Quat(Quat, Quat)>& f) {
    QField out(a);
    for (int idx = 0; idx < a.size(); ++idx) {
        out.mask[idx] = a.mask[idx] && b.mask[idx];
        if (out.mask[idx]) out.values[idx] = f(a.values[idx], b.values[idx]);
    }
    return out;
}

QField QField::operator+(const QField& b) const {
    return zip(*this, b, [](Quat u, Quat v) { return u + v; });
}
QField QField::operator-(const QField& b) const {
    return zip(*this, b, [](Quat u, Quat v) { return u - v; });
}
QField QField::lmul(const Quat& q) const {
    return map([q](Quat v) { return q * v; });
}
QField QField::rmul(const Quat& q) const {
    return map([q](Quat v) { return v * q; });
}
QField QField::pointwise_mul(const QField& b) const {
    return zip(*this, b, [](Quat u, Quat v) { return u * v; });
}
QField QField::pointwise_inverse(double floor) const {
    return map([floor](Quat v) {
        double n2 = norm_sq(v);
        if (n2 < floor) throw ZeroQuaternion("pointwise_inverse: zero sample");
        return conj(v) * (1.0 / n2);
    });
}
QField QField::conjugated() const {
    return map([](Quat v) { return conj(v); });
}

double QField::sup_norm() const {
    double m = 0.0;
    for (int idx = 0; idx < size(); ++idx)
        if (mask[idx]) m = std::max(m, abs(values[idx]));
    return m;
}

double QField::l2_norm_sq() const { return l2_norm_sq(mask); }

double QField::l2_norm_sq(const std::vector<std::uint8_t>& where) const {
    double s = 0.0;
    for (int idx = 0; idx < size(); ++idx)
        if (mask[idx] && where[idx]) s += norm_sq(values[idx]) * grid->weight[idx];
    return s;
}

namespace {
double catmull_rom(double fm1, double f0, double f1, double f2, double t) {
    return f0 + 0.5 * t * (f1 - fm1 + t * (2.0 * fm1 - 5.0 * f0 + 4.0 * f1 - f2 +
                                           t * (3.0 * (f0 - f1) + f2 - fm1)));
}
}  // namespace

std::optional<Quat> QField::interpolate(cplx z) const {
    int i, j;
    double fx, fy;
    if (!grid->locate(z, i, j, fx, fy)) return std::nullopt;
    int i00 = grid->index(i, j), i10 = grid->index(i + 1, j);
    int i01 = grid->index(i, j + 1), i11 = grid->index(i + 1, j + 1);
    if (!(mask[i00] && mask[i10] && mask[i01] && mask[i11])) return std::nullopt;
    Quat a = values[i00] * ((1 - fx) * (1 - fy)) + values[i10] * (fx * (1 - fy)) +
             values[i01] * ((1 - fx) * fy) + values[i11] * (fx * fy);
    return a;
}

std::optional<Quat> QField::interpolate_cubic(cplx z) const {
    int i, j;
    double fx, fy;
    if (!grid->locate(z, i, j, fx, fy)) return std::nullopt;
    if (i < 1 || i + 2 >= grid->nx || j < 1 || j + 2 >= grid->ny) return interpolate(z);
    for (int dj = -1; dj <= 2; ++dj)
        for (int di = -1; di <= 2; ++di)
            if (!mask[grid->index(i + di, j + dj)]) return interpolate(z);
    double comp[4];
    Quat rows[4];
    for (int dj = -1; dj <= 2; ++dj) {
        const Quat* r = &values[grid->index(i - 1, j + dj)];
        for (int c = 0; c < 4; ++c) {
            auto pick = [c](const Quat& q) {
                return c == 0 ? q.w : c == 1 ? q.x : c == 2 ? q.y : q.z;
            };
            comp[c] = catmull_rom(pick(r[0]), pick(r[1]), pick(r[2]), pick(r[3]), fx);
        }
        rows[dj + 1] = Quat{comp[0], comp[1], comp[2], comp[3]};
    }
    for (int c = 0; c < 4; ++c) {
        auto pick = [c](const Quat& q) {
            return c == 0 ? q.w : c == 1 ? q.x : c == 2 ? q.y : q.z;
        };
        comp[c] = catmull_rom(pick(rows[0]), pick(rows[1]), pick(rows[2]), pick(rows[3]), fy);
    }
    return Quat{comp[0], comp[1], comp[2], comp[3]};
}

void QField::restrict_mask(const std::vector<std::uint8_t>& m) {
    for (int idx = 0; idx < size(); ++idx) mask[idx] = mask[idx] && m[idx];
}

QField Potential01::plus() const {
    return field.map([](Quat v) { return Quat(plus_part(v)); });
}
QField Potential01::minus() const {
    return field.map([](Quat v) { return from_parts(cplx(0, 0), minus_part(v)); });
}

WirtingerPair wirtinger(const QField& f) {
    const ChartGrid& g = *f.grid;
    if (g.nx < 5 || g.ny < 5) throw GridTooSmall("wirtinger: need >= 5 nodes per axis");
    WirtingerPair out{QField(f.grid), QField(f.grid)};
    std::fill(out.dz.mask.begin(), out.dz.mask.end(), 0);
    std::fill(out.dzbar.mask.begin(), out.dzbar.mask.end(), 0);
    const double c = 1.0 / (12.0 * g.h);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            int idx = g.index(i, j);
            if (!f.mask[idx]) continue;
            bool okx = i >= 2 && i + 2 < g.nx && f.mask[idx - 2] && f.mask[idx - 1] &&
                       f.mask[idx + 1] && f.mask[idx + 2];
            bool oky = j >= 2 && j + 2 < g.ny && f.mask[idx - 2 * g.nx] && f.mask[idx - g.nx] &&
                       f.mask[idx + g.nx] && f.mask[idx + 2 * g.nx];
            if (!okx || !oky) continue;
            Quat fx = (f.values[idx - 2] - 8.0 * f.values[idx - 1] + 8.0 * f.values[idx + 1] -
                       f.values[idx + 2]) * c;
            Quat fy = (f.values[idx - 2 * g.nx] - 8.0 * f.values[idx - g.nx] +
                       8.0 * f.values[idx + g.nx] - f.values[idx + 2 * g.nx]) * c;
            Quat ify = qs::lmul(cplx(0, 1), fy);
            out.dz.values[idx] = (fx - ify) * 0.5;
            out.dzbar.values[idx] = (fx + ify) * 0.5;
            out.dz.mask[idx] = out.dzbar.mask[idx] = 1;
        }
    }
    return out;
}

QField cauchy_transform(const QField& f) {
    const ChartGrid& g = *f.grid;
    const int n = g.size();
    // Flat arrays over included source nodes keep the O(N^2) kernel tight.
    std::vector<double> sx, sy, aw, ax, ay, az;
    std::vector<int> src_idx;
    sx.reserve(n);
    for (int idx = 0; idx < n; ++idx) {
        if (!f.mask[idx]) continue;
        cplx w = g.node(idx);
        double scale = g.weight[idx] / std::numbers::pi;
        sx.push_back(w.real());
        sy.push_back(w.imag());
        const Quat& q = f.values[idx];
        aw.push_back(q.w * scale);
        ax.push_back(q.x * scale);
        ay.push_back(q.y * scale);
        az.push_back(q.z * scale);
        src_idx.push_back(idx);
    }
    const int m = static_cast<int>(sx.size());
    QField out(f.grid);
    out.mask = f.mask;
    std::vector<int> targets;
    targets.reserve(m);
    for (int idx = 0; idx < n; ++idx)
        if (f.mask[idx]) targets.push_back(idx);

    parallel_for(static_cast<int>(targets.size()), [&](int t0, int t1) {
        for (int t = t0; t < t1; ++t) {
            int idx = targets[t];
            cplx z = g.node(idx);
            const double zx = z.real(), zy = z.imag();
            double rw = 0, rx = 0, ry = 0, rz = 0;
            for (int s = 0; s < m; ++s) {
                double dx = zx - sx[s];
                double dy = zy - sy[s];
                double n2 = dx * dx + dy * dy;
                if (n2 == 0.0) continue;  // principal value: centered cell integrates to zero
                double inv = 1.0 / n2;
                double kr = dx * inv;   // Re (z-w)^-1
                double ki = -dy * inv;  // Im (z-w)^-1
                // Left multiplication of the quaternion by the complex kernel.
                rw += kr * aw[s] - ki * ax[s];
                rx += kr * ax[s] + ki * aw[s];
                ry += kr * ay[s] - ki * az[s];
                rz += kr * az[s] + ki * ay[s];
            }
            out.values[idx] = Quat{rw, rx, ry, rz};
        }
    });
    return out;
}

namespace {

NeumannResult neumann_common(const QField& coeff, const QField& seed, bool right,
                             const NeumannOptions& opts) {
    NeumannResult res;
    QField xi = seed;
    double seed_norm = std::sqrt(seed.l2_norm_sq());
    if (seed_norm == 0.0) seed_norm = 1.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        QField prod = right ? xi.pointwise_mul(coeff) : coeff.pointwise_mul(xi);
        QField next = seed + cauchy_transform(prod);
        double diff = 0.0, base = 0.0;
        for (int idx = 0; idx < xi.size(); ++idx) {
            if (!next.mask[idx]) continue;
            diff += norm_sq(next.values[idx] - xi.values[idx]) * xi.grid->weight[idx];
            base += norm_sq(next.values[idx]) * xi.grid->weight[idx];
        }
        double rel = std::sqrt(diff) / std::max(std::sqrt(base), 1e-300);
        xi = std::move(next);
        res.iterations = it;
        res.last_update = rel;
        if (std::sqrt(base) > opts.divergence_guard * seed_norm)
            throw NoConvergence("neumann_resolve: series diverging (operator norm >= 1)");
        if (rel < opts.tol) {
            res.xi = std::move(xi);
            return res;
        }
    }
    throw NoConvergence("neumann_resolve: iteration cap reached");
}

}  // namespace

NeumannResult neumann_resolve(const Potential01& V, const QField& seed,
                              const NeumannOptions& opts) {
    NeumannResult res = neumann_common(V.field, seed, false, opts);
    res.holo_residual = holo_residual(res.xi, V, false);
    return res;
}

NeumannResult neumann_resolve_right(const QField& W, const QField& seed,
                                    const NeumannOptions& opts) {
    // Fixed point of xi = seed - I_Omega(xi W).
    QField negW = W.map([](Quat v) { return -v; });
    NeumannResult res = neumann_common(negW, seed, true, opts);
    return res;
}

int root_order(const QField& f, cplx z0, double* regression_residual) {
    const double h = f.grid->h;
    const int per_circle = 64;
    std::vector<double> lr, lm;
    for (int k = 0; k < 4; ++k) {
        double r = h * 4.0 * (1 << k);
        double sum = 0.0;
        int cnt = 0;
        for (int s = 0; s < per_circle; ++s) {
            double th = 2.0 * std::numbers::pi * s / per_circle;
            auto v = f.interpolate(z0 + std::polar(r, th));
            if (v) {
                sum += abs(*v);
                ++cnt;
            }
        }
        if (cnt < per_circle / 2) throw Inconclusive("root_order: probe circle mostly masked");
        double mean = sum / cnt;
        if (mean <= 0.0) throw Inconclusive("root_order: field vanishes on probe annuli");
        lr.push_back(std::log(r));
        lm.push_back(std::log(mean));
    }
    double mx = 0, my = 0;
    for (int k = 0; k < 4; ++k) {
        mx += lr[k];
        my += lm[k];
    }
    mx /= 4;
    my /= 4;
    double sxx = 0, sxy = 0;
    for (int k = 0; k < 4; ++k) {
        sxx += (lr[k] - mx) * (lr[k] - mx);
        sxy += (lr[k] - mx) * (lm[k] - my);
    }
    double slope = sxy / sxx;
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        double pred = my + slope * (lr[k] - mx);
        worst = std::max(worst, std::fabs(pred - lm[k]));
    }
    if (regression_residual) *regression_residual = worst;
    if (worst > 0.25) throw Inconclusive("root_order: regression residual > 0.25");
    return static_cast<int>(std::lround(slope));
}

Quat loop_integral(const QField& A, const QField& B, cplx center, double radius,
                   int samples) {
    samples = std::max(samples, 256);
    Quat acc{};
    double dt = 2.0 * std::numbers::pi / samples;
    for (int s = 0; s < samples; ++s) {
        double th = dt * s;
        cplx z = center + std::polar(radius, th);
        cplx dz = cplx(0, 1) * std::polar(radius, th);  // z'(t)
        auto a = A.interpolate_cubic(z);
        auto b = B.interpolate_cubic(z);
        if (!a || !b) throw PathOutsideGrid("loop_integral: path leaves valid region");
        acc += (qs::lmul(dz, *a) + qs::lmul(std::conj(dz), *b)) * dt;
    }
    return acc;
}

Quat dagger_potential_value(const Quat& v) { return kK * conj(v) * kK; }

Potential01 dagger_potential(const Potential01& V) {
    return {V.field.map([](Quat v) { return dagger_potential_value(v); })};
}

double holo_residual(const QField& xi, const Potential01& V, bool dagger, int erode_cells) {
    WirtingerPair d = wirtinger(xi);
    QField W = dagger ? dagger_potential(V).field : V.field;
    QField resid = QField::zip(d.dzbar, QField::zip(W, xi, [](Quat w, Quat x) { return w * x; }),
                               [](Quat a, Quat b) { return a - b; });
    auto interior = xi.grid->eroded_mask(erode_cells);
    double num = resid.l2_norm_sq(interior);
    double den = xi.l2_norm_sq(interior);
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

}  // namespace qs
