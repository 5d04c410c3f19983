#include "quatsurf/quat.hpp"

#include <ostream>
#include <sstream>

namespace qs {

std::string to_string(const Quat& a) {
    std::ostringstream os;
    os.precision(12);
    os << a.w;
    auto term = [&os](double v, const char* unit) {
        if (v >= 0)
            os << "+" << v << unit;
        else
            os << "-" << -v << unit;
    };
    term(a.x, "i");
    term(a.y, "j");
    term(a.z, "k");
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Quat& a) { return os << to_string(a); }

}  // namespace qs
