#include "quatsurf/report.hpp"

#include <cmath>
#include <json.hpp>
#include <ostream>

namespace qs {

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

Check& VerificationReport::add(const std::string& id, const std::string& description,
                               const std::string& ref, double value, double expected,
                               double tolerance) {
    Check c{id, description, ref, value, expected, tolerance,
            std::isfinite(value) && std::fabs(value - expected) <= tolerance};
    checks.push_back(c);
    return checks.back();
}

Check& VerificationReport::add_residual(const std::string& id, const std::string& description,
                                        const std::string& ref, double value,
                                        double tolerance) {
    Check c{id, description, ref, value, 0.0, tolerance,
            std::isfinite(value) && value <= tolerance};
    checks.push_back(c);
    return checks.back();
}

Check& VerificationReport::add_flag(const std::string& id, const std::string& description,
                                    const std::string& ref, bool ok) {
    Check c{id, description, ref, ok ? 1.0 : 0.0, 1.0, 0.0, ok};
    checks.push_back(c);
    return checks.back();
}

void VerificationReport::write_json(std::ostream& os) const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["artifact_version"] = artifact_version;
    j["surface"] = surface;
    j["resolution"] = resolution;
    j["pass"] = all_pass();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["description"] = c.description;
        jc["ref"] = c.ref;
        jc["value"] = c.value;
        jc["expected"] = c.expected;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        arr.push_back(jc);
    }
    j["checks"] = arr;
    j["wall_time_s"] = wall_time_s;
    os << j.dump(2) << "\n";
}

void VerificationReport::write_csv(std::ostream& os) const {
    os << "id,description,ref,value,expected,tolerance,pass\n";
    os.precision(12);
    for (const auto& c : checks)
        os << c.id << ",\"" << c.description << "\"," << c.ref << ',' << c.value << ','
           << c.expected << ',' << c.tolerance << ',' << (c.pass ? 1 : 0) << "\n";
}

}  // namespace qs
