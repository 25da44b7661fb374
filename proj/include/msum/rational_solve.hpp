#ifndef MSUM_RATIONAL_SOLVE_HPP
#define MSUM_RATIONAL_SOLVE_HPP

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "msum/linalg.hpp"
#include "msum/poly.hpp"
#include "msum/roots.hpp"

namespace msum {

/// Callable producing the integer roots of a polynomial over the field K.
template <typename K>
using IntRootsFn = std::function<std::set<long>(const Poly<K>&)>;

std::set<long> int_roots_q(const PolyQ& p);
/// Integer roots of a polynomial with coefficients in Q(n): candidates from a
/// specialization of n, each verified exactly in the field.
std::set<long> int_roots_ratn(const Poly<RatFuncQ>& p);

/// Newton interpolation through (K(x0+i), ys[i]).
template <typename K>
Poly<K> interpolate_k(long x0, const std::vector<K>& ys) {
    std::vector<K> coef = ys; // divided differences in place
    const std::size_t n = ys.size();
    for (std::size_t lvl = 1; lvl < n; ++lvl)
        for (std::size_t i = n - 1; i >= lvl; --i)
            coef[i] = (coef[i] - coef[i - 1]) / K((long)lvl);
    Poly<K> r(coef[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;)
        r = Poly<K>(coef[i]) + (Poly<K>::x() - Poly<K>(K(x0 + (long)i))) * r;
    return r;
}

/// Res_x(p(x), q(x+j)) as a polynomial in j, by evaluation + interpolation.
template <typename K>
Poly<K> shift_resultant_k(const Poly<K>& p, const Poly<K>& q) {
    long points = p.degree() * q.degree() + 1;
    if (points < 1) points = 1;
    std::vector<K> ys;
    for (long j = 0; j < points; ++j)
        ys.push_back(resultant(p, q.shifted(K(j))));
    return interpolate_k<K>(0, ys);
}

/// All j >= 0 with gcd(p(x), q(x+j)) nonconstant.
template <typename K>
std::set<long> dispersion_set_k(const Poly<K>& p, const Poly<K>& q,
                                const IntRootsFn<K>& int_roots) {
    std::set<long> out;
    if (p.degree() < 1 || q.degree() < 1) return out;
    for (long j : int_roots(shift_resultant_k(p, q)))
        if (j >= 0 && gcd(p, q.shifted(K(j))).degree() > 0) out.insert(j);
    return out;
}

/// Abramov's universal denominator for sum_{i=0}^m p_i(k) y(k+i) = rhs:
/// every rational solution can be written y = z/u with z polynomial.
template <typename K>
Poly<K> universal_denominator(const std::vector<Poly<K>>& p,
                              const IntRootsFn<K>& int_roots) {
    const long m = (long)p.size() - 1;
    Poly<K> a = p.front();       // trailing coefficient p_0(k)
    Poly<K> b = p.back().shifted(K(-m)); // leading coefficient at shifted argument
    Poly<K> u(K(1));
    std::set<long> disp = dispersion_set_k(a, b, int_roots);
    for (auto it = disp.rbegin(); it != disp.rend(); ++it) {
        long j = *it;
        Poly<K> d = gcd(a, b.shifted(K(j)));
        if (d.degree() < 1) continue;
        a = a / d;
        b = b / d.shifted(K(-j));
        for (long i = 0; i <= j; ++i) u = u * d.shifted(K(-i));
    }
    return u;
}

/// Degree bound for polynomial solutions of sum p_i(k) y(k+i) = rhs, via the
/// difference-operator leading/indicial analysis; -1 means "none possible".
template <typename K>
long polynomial_degree_bound(const std::vector<Poly<K>>& p, long rhs_degree,
                             const IntRootsFn<K>& int_roots) {
    const long m = (long)p.size() - 1;
    // r_j = sum_i C(i,j) p_i: coefficients of the operator in the Delta basis
    std::vector<Poly<K>> r((std::size_t)m + 1);
    for (long j = 0; j <= m; ++j) {
        Poly<K> acc;
        for (long i = j; i <= m; ++i) {
            long c = 1; // C(i,j) fits easily at these orders
            for (long t = 1; t <= j; ++t) c = c * (i - j + t) / t;
            acc = acc + p[(std::size_t)i] * K(c);
        }
        r[(std::size_t)j] = acc;
    }

    long b = -1;
    bool any = false;
    for (long j = 0; j <= m; ++j) {
        if (r[(std::size_t)j].is_zero()) continue;
        long v = r[(std::size_t)j].degree() - j;
        if (!any || v > b) b = v, any = true;
    }
    if (!any) return -1;

    Poly<K> indicial;
    for (long j = 0; j <= m; ++j) {
        if (r[(std::size_t)j].is_zero() || r[(std::size_t)j].degree() - j != b) continue;
        Poly<K> fall(K(1)); // D(D-1)...(D-j+1)
        for (long t = 0; t < j; ++t)
            fall = fall * (Poly<K>::x() - Poly<K>(K(t)));
        indicial = indicial + fall * r[(std::size_t)j].lc();
    }

    long bound = rhs_degree - b;
    for (long z : int_roots(indicial))
        if (z > bound) bound = z;
    return bound;
}

/// Basis of polynomial solutions of sum_i p_i(k) y(k+i) = 0.
template <typename K>
std::vector<Poly<K>> polynomial_kernel(const std::vector<Poly<K>>& p,
                                       const IntRootsFn<K>& int_roots,
                                       std::optional<long> max_degree = {}) {
    const long m = (long)p.size() - 1;
    long D = polynomial_degree_bound(p, -1, int_roots);
    if (max_degree && *max_degree > D) D = *max_degree;
    std::vector<Poly<K>> out;
    if (D < 0) return out;

    const std::size_t nz = (std::size_t)D + 1;
    std::vector<Poly<K>> zcols(nz);
    for (std::size_t e = 0; e < nz; ++e) {
        Poly<K> col;
        for (long i = 0; i <= m; ++i) {
            Poly<K> pw(K(1)), base = Poly<K>::x() + Poly<K>(K(i));
            for (std::size_t t = 0; t < e; ++t) pw = pw * base;
            col = col + p[(std::size_t)i] * pw;
        }
        zcols[e] = col;
    }
    long maxdeg = -1;
    for (const auto& q : zcols) maxdeg = std::max(maxdeg, q.degree());

    LinearSystem<K> sys;
    // an all-zero column block still needs a row so the unknown count is known
    if (maxdeg < 0) sys.add_row(std::vector<K>(nz, K(0)), K(0));
    for (long e = 0; e <= maxdeg; ++e) {
        std::vector<K> row;
        for (std::size_t z = 0; z < nz; ++z) row.push_back(zcols[z][(std::size_t)e]);
        sys.add_row(std::move(row), K(0));
    }
    LinearSolution<K> sol = solve_linear(std::move(sys));
    for (const auto& v : sol.nullspace) {
        Poly<K> z(v);
        if (!z.is_zero()) out.push_back(std::move(z));
    }
    return out;
}

/// One basis element of the parameterized problem
///   sum_i p_i(k) y(k+i) = sum_t c_t f_t(k).
template <typename K>
struct ParamBasisElem {
    std::vector<K> c;
    RatFunc<K> y;
};

/// Complete basis of (c, y) pairs with y rational, via universal denominator +
/// degree-bounded undetermined coefficients. `fs` may be empty (homogeneous).
template <typename K>
std::vector<ParamBasisElem<K>> solve_rational_param(std::vector<Poly<K>> p,
                                                    std::vector<RatFunc<K>> fs,
                                                    const IntRootsFn<K>& int_roots,
                                                    std::optional<long> max_degree = {}) {
    const long m = (long)p.size() - 1;

    // clear rhs denominators into the equation
    Poly<K> den(K(1));
    for (const auto& f : fs) den = den * (f.den() / gcd(den, f.den()));
    for (auto& q : p) q = q * den;
    std::vector<Poly<K>> fpoly;
    for (const auto& f : fs) fpoly.push_back(f.num() * (den / f.den()));

    // substitute y = z/u and clear the shifted denominators
    Poly<K> u = universal_denominator(p, int_roots);
    std::vector<Poly<K>> shifted_u;
    for (long i = 0; i <= m; ++i) shifted_u.push_back(u.shifted(K(i)));
    Poly<K> U(K(1));
    for (const auto& su : shifted_u) U = U * (su / gcd(U, su));
    for (long i = 0; i <= m; ++i)
        p[(std::size_t)i] = p[(std::size_t)i] * (U / shifted_u[(std::size_t)i]);
    for (auto& f : fpoly) f = f * U;

    long rhs_deg = -1;
    for (const auto& f : fpoly) rhs_deg = std::max(rhs_deg, f.degree());
    long D = polynomial_degree_bound(p, rhs_deg, int_roots);
    if (max_degree && *max_degree > D) D = *max_degree;
    std::vector<ParamBasisElem<K>> out;
    if (D < 0 && fs.empty()) return out;
    if (D < 0) D = 0; // allow rhs-only cancellation (c with zero y)

    // unknowns: z_0..z_D, c_0..c_{d-1}; match coefficients of k^e
    const std::size_t nz = (std::size_t)D + 1, nc = fs.size();
    std::vector<Poly<K>> zcols(nz);
    for (std::size_t e = 0; e < nz; ++e) {
        Poly<K> col;
        for (long i = 0; i <= m; ++i) {
            Poly<K> pw(K(1)), base = Poly<K>::x() + Poly<K>(K(i));
            for (std::size_t t = 0; t < e; ++t) pw = pw * base;
            col = col + p[(std::size_t)i] * pw;
        }
        zcols[e] = col;
    }
    long maxdeg = -1;
    for (const auto& q : zcols) maxdeg = std::max(maxdeg, q.degree());
    for (const auto& f : fpoly) maxdeg = std::max(maxdeg, f.degree());

    LinearSystem<K> sys;
    if (maxdeg < 0) sys.add_row(std::vector<K>(nz + nc, K(0)), K(0));
    for (long e = 0; e <= maxdeg; ++e) {
        std::vector<K> row;
        for (std::size_t z = 0; z < nz; ++z) row.push_back(zcols[z][(std::size_t)e]);
        for (std::size_t t = 0; t < nc; ++t)
            row.push_back(K(0) - fpoly[t][(std::size_t)e]);
        sys.add_row(std::move(row), K(0));
    }
    LinearSolution<K> sol = solve_linear(std::move(sys));
    if (!sol.consistent) return out;

    for (const auto& v : sol.nullspace) {
        ParamBasisElem<K> e;
        std::vector<K> zc(v.begin(), v.begin() + (long)nz);
        e.y = RatFunc<K>(Poly<K>(zc), u);
        e.c.assign(v.begin() + (long)nz, v.end());
        bool trivial = e.y.is_zero();
        for (const auto& ci : e.c) trivial = trivial && ci.is_zero();
        if (!trivial) out.push_back(std::move(e));
    }
    return out;
}

} // namespace msum

#endif
