#include "msum/harmonic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "msum/printing.hpp"

namespace msum {

int hindex_weight(const HIndex& m) {
    int w = 0;
    for (int a : m) w += a < 0 ? -a : a;
    return w;
}

std::string hindex_str(const HIndex& m) {
    std::ostringstream os;
    os << "S[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) os << ",";
        os << m[i];
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// HExpr normal form

static HKey key_of(const HTerm& t) { return {t.alt, t.zeta, t.sum}; }

void HExpr::add_term(HTerm t) {
    if (t.coeff.is_zero()) return;
    HKey k = key_of(t);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const HTerm& a, const HKey& b) { return key_of(a) < b; });
    if (it != terms_.end() && key_of(*it) == k) {
        it->coeff = it->coeff + t.coeff;
        if (it->coeff.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, std::move(t));
    }
}

RatFuncQ HExpr::coeff(const HKey& k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const HTerm& a, const HKey& b) { return key_of(a) < b; });
    if (it != terms_.end() && key_of(*it) == k) return it->coeff;
    return RatFuncQ(0);
}

std::optional<RatFuncQ> HExpr::as_rational() const {
    if (terms_.empty()) return RatFuncQ(0);
    if (terms_.size() == 1 && !terms_[0].alt && terms_[0].zeta.empty() && terms_[0].sum.empty())
        return terms_[0].coeff;
    return std::nullopt;
}

HExpr& HExpr::operator+=(const HExpr& o) {
    for (const auto& t : o.terms_) add_term(t);
    return *this;
}

HExpr& HExpr::operator-=(const HExpr& o) {
    for (const auto& t : o.terms_) add_term({-t.coeff, t.alt, t.zeta, t.sum});
    return *this;
}

HExpr HExpr::operator-() const {
    HExpr r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

bool operator==(const HExpr& a, const HExpr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const HTerm &s = a.terms_[i], &t = b.terms_[i];
        if (s.alt != t.alt || s.zeta != t.zeta || s.sum != t.sum || !(s.coeff == t.coeff))
            return false;
    }
    return true;
}

HExpr operator*(const HExpr& a, const RatFuncQ& s) {
    HExpr r;
    if (s.is_zero()) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.coeff = t.coeff * s;
    return r;
}

HExpr operator*(const HExpr& a, const HExpr& b) {
    HExpr r;
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            RatFuncQ c = s.coeff * t.coeff;
            bool alt = s.alt != t.alt;
            ZetaMon z = zeta_merge(s.zeta, t.zeta);
            if (s.sum.empty() || t.sum.empty()) {
                r.add_term({std::move(c), alt, std::move(z), s.sum.empty() ? t.sum : s.sum});
            } else {
                HExpr prod = stuffle(s.sum, t.sum); // keep alive across the loop
                for (const auto& u : prod.terms())
                    r.add_term({c * u.coeff, alt, z, u.sum});
            }
        }
    return r;
}

HExpr operator/(const HExpr& a, const HExpr& b) {
    auto r = b.as_rational();
    if (!r || r->is_zero())
        throw std::domain_error("HExpr: division by a non-invertible expression");
    return a * r->inv();
}

int HExpr::weight() const {
    int w = 0;
    for (const auto& t : terms_) w = std::max(w, t.weight());
    return w;
}

// ---------------------------------------------------------------------------
// Exact evaluation

Rat harmonic_value(const HIndex& m, long N) {
    if (m.empty()) return Rat(1);
    if (N <= 0) return Rat(0);

    static std::map<HIndex, std::vector<Rat>> memo; // memo[m][i] = S_m(i)
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);

    // Iteratively extend all prefix tables up to N, deepest suffix first.
    std::vector<HIndex> chain; // m, tail(m), ..., last single entry
    for (HIndex s = m; !s.empty(); s.erase(s.begin())) chain.push_back(s);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const HIndex& s = *it;
        std::vector<Rat>& v = memo[s];
        if (v.empty()) v.push_back(Rat(0)); // S(0) = 0
        long a = s[0] < 0 ? -s[0] : s[0];
        bool neg = s[0] < 0;
        HIndex rest(s.begin() + 1, s.end());
        const std::vector<Rat>* restv = rest.empty() ? nullptr : &memo[rest];
        for (long i = (long)v.size(); i <= N; ++i) {
            Rat term = Rat(1, i).pow(a);
            if (neg && (i % 2 != 0)) term = -term;
            if (restv) term = term * (*restv)[(std::size_t)i];
            v.push_back(v.back() + term);
        }
    }
    return memo[m][(std::size_t)N];
}

ZetaValue HExpr::eval(long N) const {
    ZetaValue v;
    for (const auto& t : terms_) {
        if (t.coeff.has_pole_at(Rat(N))) throw PoleError(N, ratfunc_str(t.coeff));
        Rat c = t.coeff.eval(Rat(N));
        if (t.alt && (N % 2 != 0)) c = -c;
        c = c * harmonic_value(t.sum, N);
        v += ZetaValue(t.zeta, c);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Quasi-shuffle product

// S_h(N) * E where every term of E is a pure sum: prepend h to each index.
static HExpr prepend(int h, const HExpr& e) {
    HExpr r;
    for (const auto& t : e.terms()) {
        HIndex m;
        m.reserve(t.sum.size() + 1);
        m.push_back(h);
        m.insert(m.end(), t.sum.begin(), t.sum.end());
        r.add_term({t.coeff, false, {}, std::move(m)});
    }
    return r;
}

HExpr stuffle(const HIndex& a, const HIndex& b) {
    if (a.empty()) return HExpr::harmonic(b);
    if (b.empty()) return HExpr::harmonic(a);

    static std::map<std::pair<HIndex, HIndex>, HExpr> memo;
    static std::mutex mtx;
    std::unique_lock<std::mutex> lock(mtx);
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    lock.unlock();

    HIndex ra(a.begin() + 1, a.end()), rb(b.begin() + 1, b.end());
    int merged = (a[0] < 0) == (b[0] < 0)
                     ? std::abs(a[0]) + std::abs(b[0])
                     : -(std::abs(a[0]) + std::abs(b[0]));
    HExpr r = prepend(a[0], stuffle(ra, b)) + prepend(b[0], stuffle(a, rb)) -
              prepend(merged, stuffle(ra, rb));

    lock.lock();
    memo[{a, b}] = r;
    return r;
}

// ---------------------------------------------------------------------------
// Argument shifts

// 1/(x+j)^p as a rational function.
static RatFuncQ inv_pole(long j, long p) {
    PolyQ b = PolyQ::x() + PolyQ(Rat(j));
    PolyQ d(Rat(1));
    for (long i = 0; i < p; ++i) d = d * b;
    return RatFuncQ(PolyQ(Rat(1)), d);
}

HExpr shift_sum(const HIndex& m, long j) {
    if (j == 0 || m.empty()) return HExpr::harmonic(m);

    static std::map<std::pair<HIndex, long>, HExpr> memo;
    static std::mutex mtx;
    std::unique_lock<std::mutex> lock(mtx);
    auto it = memo.find({m, j});
    if (it != memo.end()) return it->second;
    lock.unlock();

    long a = m[0] < 0 ? -m[0] : m[0];
    bool neg = m[0] < 0;
    HIndex rest(m.begin() + 1, m.end());
    HExpr r;
    if (j > 0) {
        // S_m(N+j) = S_m(N+j-1) + sign^(N+j) (N+j)^-a S_rest(N+j)
        HExpr step = HExpr::term({inv_pole(j, a), false, {}, {}});
        if (neg) {
            step = step * HExpr::alt_sign();
            if (j % 2 != 0) step = -step;
        }
        r = shift_sum(m, j - 1) + step * shift_sum(rest, j);
    } else {
        // S_m(N+j) = S_m(N+j+1) - sign^(N+j+1) (N+j+1)^-a S_rest(N+j+1)
        HExpr step = HExpr::term({inv_pole(j + 1, a), false, {}, {}});
        if (neg) {
            step = step * HExpr::alt_sign();
            if ((j + 1) % 2 != 0) step = -step;
        }
        r = shift_sum(m, j + 1) - step * shift_sum(rest, j + 1);
    }

    lock.lock();
    memo[{m, j}] = r;
    return r;
}

HExpr HExpr::shifted(long j) const {
    if (j == 0) return *this;
    HExpr r;
    Rat altj(j % 2 == 0 ? 1 : -1);
    for (const auto& t : terms_) {
        RatFuncQ c = t.coeff.shifted(Rat(j));
        if (t.alt) c = c * RatFuncQ(PolyQ(altj));
        HExpr base = shift_sum(t.sum, j); // keep alive across the loop
        for (const auto& u : base.terms())
            r.add_term({c * u.coeff, t.alt != u.alt, zeta_merge(t.zeta, u.zeta), u.sum});
    }
    return r;
}

// ---------------------------------------------------------------------------
// Printing

std::string HExpr::str(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        RatFuncQ c = t.coeff;
        bool negated = false;
        if (c.num().lc().sign() < 0) {
            c = -c;
            negated = true;
        }
        if (first) {
            if (negated) os << "-";
        } else {
            os << (negated ? " - " : " + ");
        }
        first = false;

        std::vector<std::string> factors;
        bool structural = t.alt || !t.zeta.empty() || !t.sum.empty();
        std::string cs = ratfunc_str(c, var);
        if (!structural || cs != "1") factors.push_back(cs);
        if (t.alt) factors.push_back("(-1)^" + var);
        for (int z : t.zeta) factors.push_back("z(" + std::to_string(z) + ")");
        if (!t.sum.empty()) factors.push_back(hindex_str(t.sum) + "(" + var + ")");
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Basis enumeration

std::vector<HIndex> hindices_of_weight(int w) {
    if (w == 0) return {{}};
    std::vector<HIndex> out;
    for (int a = w; a >= 1; --a)
        for (int sign : {1, -1})
            for (const HIndex& tail : hindices_of_weight(w - a)) {
                HIndex m;
                m.reserve(tail.size() + 1);
                m.push_back(sign * a);
                m.insert(m.end(), tail.begin(), tail.end());
                out.push_back(std::move(m));
            }
    return out;
}

std::vector<ZetaMon> zeta_monomials(const std::vector<int>& gens, int maxw) {
    std::vector<int> g = gens;
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    std::vector<ZetaMon> out{{}};
    // DFS over nondecreasing multisets within the weight budget.
    std::vector<std::pair<ZetaMon, std::size_t>> stack{{{}, 0}};
    while (!stack.empty()) {
        auto [mon, lo] = stack.back();
        stack.pop_back();
        for (std::size_t i = lo; i < g.size(); ++i) {
            ZetaMon next = mon;
            next.push_back(g[i]);
            if (zeta_weight(next) > maxw) continue;
            out.push_back(next);
            stack.push_back({std::move(next), i});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<HTerm> basis_enumerate(const AnsatzBasis& cfg) {
    std::vector<ZetaMon> zetas = cfg.zetas;
    if (std::find(zetas.begin(), zetas.end(), ZetaMon{}) == zetas.end())
        zetas.insert(zetas.begin(), ZetaMon{});
    std::sort(zetas.begin(), zetas.end());
    zetas.erase(std::unique(zetas.begin(), zetas.end()), zetas.end());

    std::vector<HTerm> out;
    for (const ZetaMon& z : zetas) {
        int zw = zeta_weight(z);
        if (zw > cfg.max_weight) continue;
        for (int alt = 0; alt <= (cfg.use_alt ? 1 : 0); ++alt)
            for (int ws = 0; ws + zw <= cfg.max_weight; ++ws)
                for (const HIndex& m : hindices_of_weight(ws))
                    for (int p = 0; ws + zw + p <= cfg.max_weight && p <= cfg.pole_degree; ++p) {
                        if (p == 0) {
                            out.push_back({RatFuncQ(1), alt != 0, z, m});
                        } else {
                            for (long j = cfg.pole_lo; j <= cfg.pole_hi; ++j)
                                out.push_back({inv_pole(j, p), alt != 0, z, m});
                        }
                    }
    }
    return out;
}

} // namespace msum
