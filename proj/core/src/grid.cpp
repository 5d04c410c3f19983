#include "quatsurf/grid.hpp"

#include <algorithm>
#include <cmath>

#include "quatsurf/errors.hpp"

namespace qs {

namespace {

std::shared_ptr<ChartGrid> make_lattice(double xmin, double xmax, double ymin, double ymax,
                                        double h) {
    auto g = std::make_shared<ChartGrid>();
    g->h = h;
    g->nx = static_cast<int>(std::floor((xmax - xmin) / h + 0.5)) + 1;
    g->ny = static_cast<int>(std::floor((ymax - ymin) / h + 0.5)) + 1;
    g->x0 = xmin;
    g->y0 = ymin;
    g->mask.assign(static_cast<size_t>(g->nx) * g->ny, 1);
    g->weight.assign(static_cast<size_t>(g->nx) * g->ny, h * h);
    return g;
}

void apply_fubini(ChartGrid& g) {
    g.fubini_study = true;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            double r2 = std::norm(g.node(i, j));
            g.weight[g.index(i, j)] = g.h * g.h / ((1.0 + r2) * (1.0 + r2));
        }
}

}  // namespace

bool ChartGrid::locate(cplx z, int& i, int& j, double& fx, double& fy) const {
    double u = (z.real() - x0) / h;
    double v = (z.imag() - y0) / h;
    i = static_cast<int>(std::floor(u));
    j = static_cast<int>(std::floor(v));
    fx = u - i;
    fy = v - j;
    return i >= 0 && i + 1 < nx && j >= 0 && j + 1 < ny;
}

double ChartGrid::total_weight() const {
    double s = 0.0;
    for (int idx = 0; idx < size(); ++idx)
        if (mask[idx]) s += weight[idx];
    return s;
}

std::shared_ptr<ChartGrid> ChartGrid::rectangle(double xmin, double xmax, double ymin,
                                                double ymax, double h) {
    auto g = make_lattice(xmin, xmax, ymin, ymax, h);
    g->kind = GridKind::rectangle;
    g->center = cplx(0.5 * (xmin + xmax), 0.5 * (ymin + ymax));
    return g;
}

std::shared_ptr<ChartGrid> ChartGrid::disk(cplx center, double radius, double h, bool fubini) {
    auto g = make_lattice(center.real() - radius, center.real() + radius,
                          center.imag() - radius, center.imag() + radius, h);
    g->kind = GridKind::disk;
    g->center = center;
    for (int j = 0; j < g->ny; ++j)
        for (int i = 0; i < g->nx; ++i)
            if (std::abs(g->node(i, j) - center) > radius) g->mask[g->index(i, j)] = 0;
    if (fubini) apply_fubini(*g);
    return g;
}

std::shared_ptr<ChartGrid> ChartGrid::annulus(cplx center, double rin, double rout, double h) {
    auto g = make_lattice(center.real() - rout, center.real() + rout, center.imag() - rout,
                          center.imag() + rout, h);
    g->kind = GridKind::annulus;
    g->center = center;
    for (int j = 0; j < g->ny; ++j)
        for (int i = 0; i < g->nx; ++i) {
            double r = std::abs(g->node(i, j) - center);
            if (r < rin || r > rout) g->mask[g->index(i, j)] = 0;
        }
    return g;
}

std::shared_ptr<ChartGrid> ChartGrid::p1_chart(double radius, double h, int chart_index,
                                               bool fubini) {
    auto g = disk(cplx(0, 0), radius, h, fubini);
    g->kind = GridKind::p1_chart;
    g->fundamental.assign(g->mask.size(), 0);
    for (int idx = 0; idx < g->size(); ++idx) {
        if (!g->mask[idx]) continue;
        double r = std::abs(g->node(idx));
        // Chart 1 owns |z| <= 1, chart 2 owns |z| < 1; split on the circle
        // with a half-cell guard so atlas integrals count each point once.
        bool inside = (chart_index == 1) ? (r <= 1.0) : (r < 1.0 - 0.5 * h);
        g->fundamental[idx] = inside ? 1 : 0;
    }
    return g;
}

void ChartGrid::puncture(cplx where, double radius) {
    for (int idx = 0; idx < size(); ++idx)
        if (mask[idx] && std::abs(node(idx) - where) <= radius) mask[idx] = 0;
}

std::vector<std::uint8_t> ChartGrid::eroded_mask(int cells) const {
    std::vector<std::uint8_t> cur(mask);
    for (int pass = 0; pass < cells; ++pass) {
        std::vector<std::uint8_t> next(cur);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                int idx = index(i, j);
                if (!cur[idx]) continue;
                bool interior = i > 0 && i + 1 < nx && j > 0 && j + 1 < ny && cur[index(i - 1, j)] &&
                                cur[index(i + 1, j)] && cur[index(i, j - 1)] && cur[index(i, j + 1)];
                if (!interior) next[idx] = 0;
            }
        cur.swap(next);
    }
    return cur;
}

std::string to_string(GridKind k) {
    switch (k) {
        case GridKind::rectangle: return "rectangle";
        case GridKind::annulus: return "annulus";
        case GridKind::disk: return "disk";
        case GridKind::p1_chart: return "p1-chart";
    }
    return "rectangle";
}

GridKind grid_kind_from_string(const std::string& s) {
    if (s == "rectangle") return GridKind::rectangle;
    if (s == "annulus") return GridKind::annulus;
    if (s == "disk") return GridKind::disk;
    if (s == "p1-chart") return GridKind::p1_chart;
    throw BadBundle("unknown grid kind: " + s);
}

}  // namespace qs
