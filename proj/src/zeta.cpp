#include "msum/zeta.hpp"

#include <sstream>

namespace msum {

std::string zeta_mon_str(const ZetaMon& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) os << "*";
        os << "z(" << m[i] << ")";
    }
    return os.str();
}

std::string ZetaValue::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        Rat a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        if (m.empty()) {
            os << a.str();
        } else if (a == Rat(1)) {
            os << zeta_mon_str(m);
        } else {
            os << a.str() << "*" << zeta_mon_str(m);
        }
    }
    return os.str();
}

} // namespace msum
