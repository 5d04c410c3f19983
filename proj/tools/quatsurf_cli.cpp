// Batch verification harness and exporters over the surface catalog.
//
//   quatsurf verify <surface|bundle.json> [--resolution h] [--suite csv]
//                   [--out path] [--format json|csv]
//   quatsurf mesh <surface> [--resolution h] [--project] [--out path]
//   quatsurf kernel-table [--out path]
//   quatsurf catalog

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "quatsurf/dirac.hpp"
#include "quatsurf/io.hpp"
#include "quatsurf/verify.hpp"

using namespace qs;

namespace {

std::set<std::string> parse_suites(const std::string& csv) {
    if (csv.empty()) return kAllSuites;
    std::set<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!kAllSuites.count(item)) throw CLI::ValidationError("unknown suite: " + item);
        out.insert(item);
    }
    return out;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open " + path);
    return file;
}

int cmd_verify(const std::string& target, double resolution, const std::string& suites_csv,
               const std::string& out_path, const std::string& format) {
    std::set<std::string> suites = parse_suites(suites_csv);
    VerificationReport rep;
    bool is_bundle = target.size() > 5 && target.substr(target.size() - 5) == ".json";
    try {
        if (is_bundle) {
            std::ifstream in(target);
            if (!in) throw BadBundle("cannot open bundle " + target);
            std::string name;
            SurfaceBundle b = read_bundle_json(in, &name);
            rep = run_verify_bundle(b, name, resolution, suites);
        } else {
            CatalogEntry entry = make(target, resolution);
            rep = run_verify(entry, suites);
        }
    } catch (const UnknownSurface& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const BadBundle& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    }
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    if (format == "csv")
        rep.write_csv(os);
    else
        rep.write_json(os);
    return rep.all_pass() ? 0 : 1;
}

int cmd_mesh(const std::string& surface, double resolution, bool project,
             const std::string& out_path) {
    CatalogEntry entry;
    try {
        entry = make(surface, resolution);
    } catch (const UnknownSurface& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    MeshOptions opts;
    opts.project = project;
    export_mesh(os, entry.bundle, opts);
    return 0;
}

int cmd_kernel_table(const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_out(file, out_path);
    os << "lambda,r,F,bound_i,bound_ii,margin\n";
    os.precision(10);
    for (double lambda : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
        for (int k = 0; k < 24; ++k) {
            double r = 0.01 * std::pow(10.0, 3.0 * k / 23.0);
            double F = flambda(lambda, r);
            double s = std::sqrt(1.0 + r * r);
            double b1 = std::exp(-2.0 * lambda * std::atan(r)) *
                        std::log((s + 1.0) / (s - 1.0)) / std::numbers::pi;
            double b2 = 1.0 / (2.0 * std::numbers::e * r * lambda);
            double margin = std::min(b1 - F, b2 - F);
            os << lambda << ',' << r << ',' << F << ',' << b1 << ',' << b2 << ',' << margin
               << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternionic surface analysis toolkit"};
    app.require_subcommand(1);

    std::string target, out_path, suites_csv, format = "json";
    double resolution = 0.01;
    bool project = false;

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("surface", target, "catalog surface or bundle .json path")->required();
    verify->add_option("--resolution", resolution, "grid spacing h");
    verify->add_option("--suite", suites_csv, "comma separated suite subset");
    verify->add_option("--out", out_path, "write the report to a file");
    verify->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* mesh = app.add_subcommand("mesh", "export a surface as OBJ");
    mesh->add_option("surface", target, "catalog surface")->required();
    mesh->add_option("--resolution", resolution, "grid spacing h");
    mesh->add_flag("--project", project, "project H valued surfaces to Im H");
    mesh->add_option("--out", out_path, "output OBJ path");

    auto* ktab = app.add_subcommand("kernel-table", "CSV table of F_lambda and bounds");
    ktab->add_option("--out", out_path, "output CSV path");

    auto* cat = app.add_subcommand("catalog", "list catalog surfaces");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return cmd_verify(target, resolution, suites_csv, out_path, format);
        if (mesh->parsed()) return cmd_mesh(target, resolution, project, out_path);
        if (ktab->parsed()) return cmd_kernel_table(out_path);
        if (cat->parsed()) {
            for (const auto& n : catalog_names()) std::cout << n << "\n";
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
