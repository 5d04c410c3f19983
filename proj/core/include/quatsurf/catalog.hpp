#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quatsurf/isothermic.hpp"

namespace qs {

using QFun = std::function<Quat(cplx)>;

// Closed forms for one chart of a catalog surface. Null entries mean the
// quantity is not available in closed form for that chart.
struct ChartForms {
    QFun F, N, R;
    QFun V, upsilon, phi;
    QFun B, U, chi, psi;
    QFun dF_dz, dF_dzbar;
    QFun upsilon_star, phi_star;  // constrained multipliers
    QFun g;                       // Im H ratio psi = g chi
};

struct CatalogEntry {
    std::string name;
    double resolution = 0.0;
    std::vector<ChartForms> forms;   // one per chart
    SurfaceBundle bundle;            // closed forms sampled on default grids
    double expected_willmore = 0.0;
    bool has_willmore = false;
    bool has_multipliers = false;
    MultiplierPair multipliers;      // chart 1 samples
    bool has_kernel_pair = false;
    MultiplierPair kernel_pair;      // chart 1 samples of the dual-map pair
    cplx assoc_param{1.0, 0.0};
    // Set when sections or potentials are merely L^2 near compactification
    // points; atlas norms then converge too slowly to assert tight bounds.
    bool singular_compactification = false;
};

// Catalog of the worked surfaces: "plane", "catenoid", "sphere",
// "inverted_catenoid", "associated" (params[0], params[1] = Re, Im of the
// family parameter on the unit circle). Throws UnknownSurface otherwise.
CatalogEntry make(const std::string& name, double resolution = 0.01,
                  const std::vector<double>& params = {});

std::vector<std::string> catalog_names();

QField sample(GridPtr grid, const QFun& f);

}  // namespace qs
