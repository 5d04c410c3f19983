#include "quatsurf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "quatsurf/errors.hpp"

namespace qs {

namespace {

using nlohmann::json;

json grid_to_json(const ChartGrid& g) {
    json jg;
    jg["kind"] = to_string(g.kind);
    jg["center"] = {g.center.real(), g.center.imag()};
    jg["h"] = g.h;
    jg["nx"] = g.nx;
    jg["ny"] = g.ny;
    jg["x0"] = g.x0;
    jg["y0"] = g.y0;
    jg["fubini"] = g.fubini_study;
    jg["mask"] = g.mask;
    if (!g.fundamental.empty()) jg["fundamental"] = g.fundamental;
    return jg;
}

void expect_keys(const json& j, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional, const char* what) {
    for (const char* k : required)
        if (!j.contains(k)) throw BadBundle(std::string(what) + ": missing key " + k);
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : required)
            if (it.key() == k) known = true;
        for (const char* k : optional)
            if (it.key() == k) known = true;
        if (!known) throw BadBundle(std::string(what) + ": unknown key " + it.key());
    }
}

GridPtr grid_from_json(const json& jg) {
    expect_keys(jg, {"kind", "center", "h", "nx", "ny", "x0", "y0", "fubini", "mask"},
                {"fundamental"}, "grid");
    auto g = std::make_shared<ChartGrid>();
    g->kind = grid_kind_from_string(jg["kind"].get<std::string>());
    g->center = cplx(jg["center"][0].get<double>(), jg["center"][1].get<double>());
    g->h = jg["h"].get<double>();
    g->nx = jg["nx"].get<int>();
    g->ny = jg["ny"].get<int>();
    g->x0 = jg["x0"].get<double>();
    g->y0 = jg["y0"].get<double>();
    g->fubini_study = jg["fubini"].get<bool>();
    g->mask = jg["mask"].get<std::vector<std::uint8_t>>();
    if (jg.contains("fundamental"))
        g->fundamental = jg["fundamental"].get<std::vector<std::uint8_t>>();
    if (static_cast<int>(g->mask.size()) != g->size())
        throw BadBundle("grid: mask size mismatch");
    g->weight.assign(g->size(), g->h * g->h);
    if (g->fubini_study)
        for (int idx = 0; idx < g->size(); ++idx) {
            double r2 = std::norm(g->node(idx));
            g->weight[idx] = g->h * g->h / ((1 + r2) * (1 + r2));
        }
    return g;
}

json field_to_json(const QField& f) {
    json jf;
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(f.size()) * 4);
    for (int idx = 0; idx < f.size(); ++idx) {
        const Quat& q = f.values[idx];
        flat.push_back(q.w);
        flat.push_back(q.x);
        flat.push_back(q.y);
        flat.push_back(q.z);
    }
    jf["values"] = flat;
    jf["mask"] = f.mask;
    return jf;
}

QField field_from_json(const json& jf, GridPtr grid) {
    expect_keys(jf, {"values", "mask"}, {}, "field");
    QField f(grid);
    auto flat = jf["values"].get<std::vector<double>>();
    if (static_cast<int>(flat.size()) != 4 * grid->size())
        throw BadBundle("field: value count mismatch");
    for (int idx = 0; idx < grid->size(); ++idx)
        f.values[idx] = Quat{flat[4 * idx], flat[4 * idx + 1], flat[4 * idx + 2],
                             flat[4 * idx + 3]};
    f.mask = jf["mask"].get<std::vector<std::uint8_t>>();
    if (static_cast<int>(f.mask.size()) != grid->size())
        throw BadBundle("field: mask size mismatch");
    return f;
}

}  // namespace

void write_field_csv(std::ostream& os, const QField& f) {
    const ChartGrid& g = *f.grid;
    os << "# kind=" << to_string(g.kind) << " h=" << g.h << " nx=" << g.nx << " ny=" << g.ny
       << " x0=" << g.x0 << " y0=" << g.y0 << " fubini=" << (g.fubini_study ? 1 : 0) << "\n";
    os << "re,im,w,x,y,z\n";
    os.precision(17);
    for (int idx = 0; idx < f.size(); ++idx) {
        if (!f.mask[idx]) continue;
        cplx z = g.node(idx);
        const Quat& q = f.values[idx];
        os << z.real() << ',' << z.imag() << ',' << q.w << ',' << q.x << ',' << q.y << ','
           << q.z << "\n";
    }
}

QField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0)
        throw BadBundle("field csv: missing header");
    auto grab = [&line](const std::string& key) {
        auto pos = line.find(key + "=");
        if (pos == std::string::npos) throw BadBundle("field csv: missing " + key);
        return std::stod(line.substr(pos + key.size() + 1));
    };
    auto g = std::make_shared<ChartGrid>();
    g->h = grab("h");
    g->nx = static_cast<int>(grab("nx"));
    g->ny = static_cast<int>(grab("ny"));
    g->x0 = grab("x0");
    g->y0 = grab("y0");
    g->fubini_study = grab("fubini") != 0.0;
    g->mask.assign(g->size(), 0);
    g->weight.assign(g->size(), g->h * g->h);
    if (g->fubini_study)
        for (int idx = 0; idx < g->size(); ++idx) {
            double r2 = std::norm(g->node(idx));
            g->weight[idx] = g->h * g->h / ((1 + r2) * (1 + r2));
        }
    std::getline(is, line);  // column names
    QField f;
    f.grid = g;
    f.values.assign(g->size(), Quat{});
    f.mask.assign(g->size(), 0);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        double re, im, w, x, y, z;
        char c;
        row >> re >> c >> im >> c >> w >> c >> x >> c >> y >> c >> z;
        int i = static_cast<int>(std::lround((re - g->x0) / g->h));
        int j = static_cast<int>(std::lround((im - g->y0) / g->h));
        if (!g->in_bounds(i, j)) throw BadBundle("field csv: node outside grid");
        int idx = g->index(i, j);
        f.values[idx] = Quat{w, x, y, z};
        f.mask[idx] = 1;
        g->mask[idx] = 1;
    }
    return f;
}

void write_field_binary(std::ostream& os, const QField& f) {
    const char magic[4] = {'Q', 'S', 'F', '1'};
    os.write(magic, 4);
    const ChartGrid& g = *f.grid;
    std::int32_t meta[3] = {static_cast<std::int32_t>(g.kind), g.nx, g.ny};
    os.write(reinterpret_cast<const char*>(meta), sizeof(meta));
    double geo[4] = {g.h, g.x0, g.y0, g.fubini_study ? 1.0 : 0.0};
    os.write(reinterpret_cast<const char*>(geo), sizeof(geo));
    os.write(reinterpret_cast<const char*>(f.mask.data()), f.mask.size());
    os.write(reinterpret_cast<const char*>(f.values.data()), sizeof(Quat) * f.values.size());
}

QField read_field_binary(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "QSF1", 4) != 0)
        throw BadBundle("field binary: bad magic");
    std::int32_t meta[3];
    is.read(reinterpret_cast<char*>(meta), sizeof(meta));
    double geo[4];
    is.read(reinterpret_cast<char*>(geo), sizeof(geo));
    auto g = std::make_shared<ChartGrid>();
    g->kind = static_cast<GridKind>(meta[0]);
    g->nx = meta[1];
    g->ny = meta[2];
    g->h = geo[0];
    g->x0 = geo[1];
    g->y0 = geo[2];
    g->fubini_study = geo[3] != 0.0;
    g->mask.assign(g->size(), 0);
    is.read(reinterpret_cast<char*>(g->mask.data()), g->mask.size());
    g->weight.assign(g->size(), g->h * g->h);
    if (g->fubini_study)
        for (int idx = 0; idx < g->size(); ++idx) {
            double r2 = std::norm(g->node(idx));
            g->weight[idx] = g->h * g->h / ((1 + r2) * (1 + r2));
        }
    QField f;
    f.grid = g;
    f.values.assign(g->size(), Quat{});
    is.read(reinterpret_cast<char*>(f.values.data()), sizeof(Quat) * f.values.size());
    if (!is) throw BadBundle("field binary: truncated");
    f.mask = g->mask;
    return f;
}

void write_bundle_json(std::ostream& os, const SurfaceBundle& b, const std::string& name) {
    json j;
    j["schema"] = 1;
    j["surface"] = name;
    j["deg"] = b.kodaira.deg;
    j["compact"] = b.kodaira.compact;
    j["cocycle"] = b.kodaira.compact ? "z2" : "one";
    json charts = json::array();
    for (size_t ci = 0; ci < b.kodaira.charts.size(); ++ci) {
        json jc;
        jc["grid"] = grid_to_json(*b.kodaira.charts[ci].grid);
        jc["F"] = field_to_json(b.surfaces[ci].F);
        jc["V"] = field_to_json(b.kodaira.charts[ci].V.field);
        jc["upsilon"] = field_to_json(b.kodaira.charts[ci].upsilon);
        jc["phi"] = field_to_json(b.kodaira.charts[ci].phi);
        jc["U"] = field_to_json(b.weierstrass.charts[ci].U.field);
        jc["B"] = field_to_json(b.weierstrass.charts[ci].B);
        jc["chi"] = field_to_json(b.weierstrass.charts[ci].chi);
        jc["psi"] = field_to_json(b.weierstrass.charts[ci].psi);
        charts.push_back(jc);
    }
    j["charts"] = charts;
    os << j.dump(0) << "\n";
}

SurfaceBundle read_bundle_json(std::istream& is, std::string* name) {
    json j;
    try {
        is >> j;
    } catch (const json::exception& ex) {
        throw BadBundle(std::string("bundle: parse error: ") + ex.what());
    }
    expect_keys(j, {"schema", "surface", "deg", "compact", "cocycle", "charts"}, {}, "bundle");
    if (j["schema"].get<int>() != 1) throw BadBundle("bundle: unsupported schema");
    SurfaceBundle b;
    if (name) *name = j["surface"].get<std::string>();
    b.kodaira.deg = b.weierstrass.deg = j["deg"].get<int>();
    b.kodaira.compact = b.weierstrass.compact = j["compact"].get<bool>();
    std::string tag = j["cocycle"].get<std::string>();
    if (tag == "z2")
        b.kodaira.cocycle = b.weierstrass.cocycle = [](cplx z2) { return z2; };
    else if (tag == "one")
        b.kodaira.cocycle = b.weierstrass.cocycle = [](cplx) { return cplx(1.0, 0.0); };
    else
        throw BadBundle("bundle: unknown cocycle tag " + tag);
    for (const json& jc : j["charts"]) {
        expect_keys(jc, {"grid", "F", "V", "upsilon", "phi", "U", "B", "chi", "psi"}, {},
                    "chart");
        GridPtr g = grid_from_json(jc["grid"]);
        SurfaceChart sc;
        sc.F = field_from_json(jc["F"], g);
        b.surfaces.push_back(std::move(sc));
        KodairaChart kc;
        kc.grid = g;
        kc.V = Potential01{field_from_json(jc["V"], g)};
        kc.upsilon = field_from_json(jc["upsilon"], g);
        kc.phi = field_from_json(jc["phi"], g);
        b.kodaira.charts.push_back(std::move(kc));
        WeierstrassChart wc;
        wc.grid = g;
        wc.U = Potential01{field_from_json(jc["U"], g)};
        wc.B = field_from_json(jc["B"], g);
        wc.chi = field_from_json(jc["chi"], g);
        wc.psi = field_from_json(jc["psi"], g);
        b.weierstrass.charts.push_back(std::move(wc));
    }
    return b;
}

void export_mesh(std::ostream& os, const SurfaceBundle& b, const MeshOptions& opts) {
    double re_sup = 0.0;
    for (const auto& s : b.surfaces)
        for (int idx = 0; idx < s.F.size(); ++idx)
            if (s.F.mask[idx]) re_sup = std::max(re_sup, std::fabs(real(s.F.values[idx])));
    if (re_sup > 1e-6 && !opts.project)
        throw NotImaginary("export_mesh: surface leaves Im H; pass project");
    os << "# quatsurf mesh export\n";
    if (re_sup > 1e-6)
        os << "# orthogonal projection: dropped real extent " << re_sup << "\n";
    os.precision(12);
    int base = 1;
    for (const auto& s : b.surfaces) {
        const ChartGrid& g = *s.F.grid;
        std::vector<int> vid(g.size(), 0);
        int count = 0;
        for (int idx = 0; idx < g.size(); ++idx) {
            if (!s.F.mask[idx]) continue;
            const Quat& q = s.F.values[idx];
            os << "v " << q.x << ' ' << q.y << ' ' << q.z << "\n";
            vid[idx] = base + count;
            ++count;
        }
        for (int j = 0; j + 1 < g.ny; ++j)
            for (int i = 0; i + 1 < g.nx; ++i) {
                int a = g.index(i, j), bb = g.index(i + 1, j), c = g.index(i + 1, j + 1),
                    d = g.index(i, j + 1);
                if (vid[a] && vid[bb] && vid[c] && vid[d])
                    os << "f " << vid[a] << ' ' << vid[bb] << ' ' << vid[c] << ' ' << vid[d]
                       << "\n";
            }
        base += count;
    }
}

}  // namespace qs
