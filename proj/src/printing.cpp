#include "msum/printing.hpp"

#include <sstream>

namespace msum {

std::string poly_str(const PolyQ& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long e = p.degree(); e >= 0; --e) {
        Rat c = p.coeffs()[(std::size_t)e];
        if (c.is_zero()) continue;
        if (first) {
            if (c.sign() < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        first = false;
        if (e == 0) {
            os << c.str();
        } else {
            if (!c.is_one()) os << c.str() << "*";
            os << var;
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

std::string ratfunc_str(const RatFuncQ& f, const std::string& var) {
    if (f.is_polynomial()) {
        if (f.num().is_constant()) {
            Rat c = f.num().is_zero() ? Rat(0) : f.num().coeffs()[0];
            return c.str();
        }
        return "(" + poly_str(f.num(), var) + ")";
    }
    std::string n = f.num().is_constant() ? f.num().coeffs()[0].str()
                                          : "(" + poly_str(f.num(), var) + ")";
    return n + "/(" + poly_str(f.den(), var) + ")";
}

} // namespace msum
