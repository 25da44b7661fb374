#ifndef MSUM_ZETA_HPP
#define MSUM_ZETA_HPP

#include <algorithm>
#include <initializer_list>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "msum/rational.hpp"

namespace msum {

/// Multiset of zeta arguments (each >= 2), sorted ascending. The empty
/// monomial is the constant 1.
using ZetaMon = std::vector<int>;

inline ZetaMon zeta_mon(std::initializer_list<int> args) {
    ZetaMon m(args);
    for (int a : m)
        if (a < 2) throw std::domain_error("zeta argument must be >= 2");
    std::sort(m.begin(), m.end());
    return m;
}

inline int zeta_weight(const ZetaMon& m) {
    int w = 0;
    for (int a : m) w += a;
    return w;
}

inline ZetaMon zeta_merge(const ZetaMon& a, const ZetaMon& b) {
    ZetaMon r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

/// Exact element of Q[zeta_2, zeta_3, ...], the zeta symbols treated as
/// independent transcendentals. Never numerically approximated.
class ZetaValue {
public:
    ZetaValue() = default;
    ZetaValue(Rat r) {
        if (!r.is_zero()) t_[{}] = std::move(r);
    }
    ZetaValue(long r) : ZetaValue(Rat(r)) {}
    ZetaValue(ZetaMon m, Rat c) {
        if (!c.is_zero()) t_[std::move(m)] = std::move(c);
    }

    bool is_zero() const { return t_.empty(); }
    bool is_rational() const {
        return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty());
    }
    Rat rational_part() const {
        auto it = t_.find({});
        return it == t_.end() ? Rat(0) : it->second;
    }
    Rat coeff(const ZetaMon& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Rat(0) : it->second;
    }
    const std::map<ZetaMon, Rat>& terms() const { return t_; }

    ZetaValue& operator+=(const ZetaValue& o) {
        for (const auto& [m, c] : o.t_) {
            Rat& v = t_[m];
            v += c;
            if (v.is_zero()) t_.erase(m);
        }
        return *this;
    }
    friend ZetaValue operator+(ZetaValue a, const ZetaValue& b) { return a += b; }
    friend ZetaValue operator-(const ZetaValue& a, const ZetaValue& b) {
        return a + b * Rat(-1);
    }
    friend ZetaValue operator*(const ZetaValue& a, const Rat& s) {
        ZetaValue r;
        if (s.is_zero()) return r;
        for (const auto& [m, c] : a.t_) r.t_[m] = c * s;
        return r;
    }
    friend ZetaValue operator*(const Rat& s, const ZetaValue& a) { return a * s; }
    friend ZetaValue operator*(const ZetaValue& a, const ZetaValue& b) {
        ZetaValue r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                ZetaMon m = zeta_merge(ma, mb);
                Rat& v = r.t_[m];
                v += ca * cb;
                if (v.is_zero()) r.t_.erase(m);
            }
        return r;
    }
    friend bool operator==(const ZetaValue& a, const ZetaValue& b) { return a.t_ == b.t_; }
    friend bool operator!=(const ZetaValue& a, const ZetaValue& b) { return !(a == b); }

    /// e.g. "85/36 - 2*z(3) + z(3)*z(5)"
    std::string str() const;

private:
    std::map<ZetaMon, Rat> t_;
};

std::string zeta_mon_str(const ZetaMon& m);

} // namespace msum

#endif
