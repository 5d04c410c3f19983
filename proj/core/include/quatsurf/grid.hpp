#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "quatsurf/quat.hpp"

namespace qs {

enum class GridKind { rectangle, annulus, disk, p1_chart };

// Uniform lattice sampling of a coordinate chart Omega in C. Nodes outside
// the declared domain are masked out; each included node carries a measure
// weight (Lebesgue h^2 or Fubini-Study h^2 (1+|z|^2)^-2).
class ChartGrid {
  public:
    GridKind kind = GridKind::rectangle;
    cplx center{0.0, 0.0};
    double h = 0.0;
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0;  // coordinates of node (0, 0)
    bool fubini_study = false;
    std::vector<std::uint8_t> mask;
    std::vector<double> weight;
    // For P1 atlases: nodes belonging to this chart's fundamental region.
    std::vector<std::uint8_t> fundamental;

    int size() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
    cplx node(int i, int j) const { return {x0 + i * h, y0 + j * h}; }
    cplx node(int idx) const { return node(idx % nx, idx / nx); }
    bool included(int i, int j) const {
        return i >= 0 && i < nx && j >= 0 && j < ny && mask[index(i, j)];
    }
    bool in_bounds(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }

    // Nearest lattice cell for a point; false when outside the bounding box.
    bool locate(cplx z, int& i, int& j, double& fx, double& fy) const;

    double total_weight() const;

    static std::shared_ptr<ChartGrid> rectangle(double xmin, double xmax, double ymin,
                                                double ymax, double h);
    static std::shared_ptr<ChartGrid> disk(cplx center, double radius, double h,
                                           bool fubini = false);
    // Annulus rin <= |z - center| <= rout.
    static std::shared_ptr<ChartGrid> annulus(cplx center, double rin, double rout, double h);
    // Disk |z| <= radius with Fubini-Study weights and fundamental region
    // |z| <= 1 (chart 1) or |z| < 1 (chart 2) for two-chart atlases.
    static std::shared_ptr<ChartGrid> p1_chart(double radius, double h, int chart_index,
                                               bool fubini = true);

    // Masks nodes within `radius` of the puncture point.
    void puncture(cplx where, double radius);
    // Shrinks the mask by `cells` lattice steps (for boundary-free residuals).
    std::vector<std::uint8_t> eroded_mask(int cells) const;
};

using GridPtr = std::shared_ptr<const ChartGrid>;

std::string to_string(GridKind k);
GridKind grid_kind_from_string(const std::string& s);

}  // namespace qs
