#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qs {

struct Check {
    std::string id;
    std::string description;
    std::string ref;  // tag: exact | closed-form | identity | bound | derived
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string artifact_version = "0.1.0";
    std::string surface;
    double resolution = 0.0;
    std::vector<Check> checks;
    double wall_time_s = 0.0;

    bool all_pass() const;
    Check& add(const std::string& id, const std::string& description, const std::string& ref,
               double value, double expected, double tolerance);
    // value must not exceed tolerance (expected 0).
    Check& add_residual(const std::string& id, const std::string& description,
                        const std::string& ref, double value, double tolerance);
    // true/false assertion.
    Check& add_flag(const std::string& id, const std::string& description,
                    const std::string& ref, bool ok);

    void write_json(std::ostream& os) const;
    void write_csv(std::ostream& os) const;
};

}  // namespace qs
