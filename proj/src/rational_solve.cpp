#include "msum/rational_solve.hpp"

namespace msum {

std::set<long> int_roots_q(const PolyQ& p) {
    if (p.is_zero() || p.is_constant()) return {};
    return integer_roots(p);
}

std::set<long> int_roots_ratn(const Poly<RatFuncQ>& p) {
    if (p.is_zero() || p.is_constant()) return {};
    // Specialize the parameter n to a sample point that keeps the degree and
    // all coefficient denominators alive; that gives a candidate superset.
    for (long sample = 10007;; sample += 2) {
        bool ok = true;
        std::vector<Rat> spec;
        for (const auto& c : p.coeffs()) {
            if (c.has_pole_at(Rat(sample))) {
                ok = false;
                break;
            }
            spec.push_back(c.eval(Rat(sample)));
        }
        if (!ok || spec.back().is_zero()) continue;

        std::set<long> out;
        for (long j : integer_roots(PolyQ(spec)))
            if (p.eval(RatFuncQ(j)).is_zero()) out.insert(j);
        return out;
    }
}

} // namespace msum
