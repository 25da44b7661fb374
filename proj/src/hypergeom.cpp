#include "msum/hypergeom.hpp"

#include <algorithm>
#include <stdexcept>

#include "msum/roots.hpp"
#include "msum/solvers.hpp"

namespace msum {

namespace {

/// p written as lc * prod (k - r_i)^{e_i} * cofactor, cofactor monic without
/// rational roots.
struct LinearSplit {
    std::vector<std::pair<Rat, int>> roots; // (root, multiplicity)
    PolyQ cofactor;                         // monic
};

LinearSplit split_linear(const PolyQ& p) {
    LinearSplit s;
    PolyQ rest = p.monic();
    for (const Rat& r : rational_roots(p)) {
        int mult = 0;
        PolyQ lin(std::vector<Rat>{-r, Rat(1)});
        while ((rest % lin).is_zero()) {
            rest = rest / lin;
            ++mult;
        }
        if (mult > 0) s.roots.emplace_back(r, mult);
    }
    s.cofactor = rest;
    return s;
}

/// Exact substitution check: sum_i p_i(k) prod_{j<i} r(k+j) == 0.
bool certifies(const std::vector<PolyQ>& p, const RatFuncQ& r) {
    RatFuncQ acc(0), prod(1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc = acc + RatFuncQ(p[i]) * prod;
        prod = prod * r.shifted(Rat((long)i));
    }
    return acc.is_zero();
}

} // namespace

std::vector<PolyQ> monic_divisors(const PolyQ& p) {
    if (p.is_zero()) throw std::invalid_argument("monic_divisors: zero polynomial");
    LinearSplit s = split_linear(p);
    std::vector<PolyQ> out{PolyQ(Rat(1))};
    for (const auto& [root, mult] : s.roots) {
        PolyQ lin(std::vector<Rat>{-root, Rat(1)});
        std::vector<PolyQ> next;
        for (const auto& d : out) {
            PolyQ f = d;
            for (int e = 0; e <= mult; ++e) {
                next.push_back(f);
                f = f * lin;
            }
        }
        out = std::move(next);
    }
    if (s.cofactor.degree() > 0) {
        std::vector<PolyQ> next;
        for (const auto& d : out) {
            next.push_back(d);
            next.push_back(d * s.cofactor);
        }
        out = std::move(next);
    }
    return out;
}

std::vector<HypergeomCertificate> solve_hypergeometric(const std::vector<PolyQ>& p) {
    const long m = (long)p.size() - 1;
    if (m < 1 || p.front().is_zero() || p.back().is_zero())
        throw std::invalid_argument("solve_hypergeometric: degenerate operator");

    std::vector<HypergeomCertificate> out;
    auto push_unique = [&out](RatFuncQ r) {
        for (const auto& c : out)
            if (c.ratio == r) return;
        out.push_back({std::move(r)});
    };

    for (const PolyQ& a : monic_divisors(p.front())) {
        for (const PolyQ& b : monic_divisors(p.back().shifted(Rat(m - 1)))) {
            // P_i(k) = p_i(k) * prod_{j<i} a(k+j) * prod_{i<=j<m} b(k+j)
            std::vector<PolyQ> P((std::size_t)m + 1);
            for (long i = 0; i <= m; ++i) {
                PolyQ q = p[(std::size_t)i];
                for (long j = 0; j < i; ++j) q = q * a.shifted(Rat(j));
                for (long j = i; j < m; ++j) q = q * b.shifted(Rat(j));
                P[(std::size_t)i] = q;
            }
            long d = -1;
            for (const auto& q : P) d = std::max(d, q.degree());
            // candidate constants z: nonzero rational roots of the leading-
            // coefficient polynomial sum_i [k^d](P_i) z^i
            std::vector<Rat> lead((std::size_t)m + 1, Rat(0));
            for (long i = 0; i <= m; ++i) lead[(std::size_t)i] = P[(std::size_t)i][(std::size_t)d];
            PolyQ zpoly(lead);
            if (zpoly.is_zero()) continue;
            for (const Rat& z : rational_roots(zpoly)) {
                if (z.is_zero()) continue;
                std::vector<PolyQ> Q((std::size_t)m + 1);
                Rat zi(1);
                for (long i = 0; i <= m; ++i) {
                    Q[(std::size_t)i] = P[(std::size_t)i] * zi;
                    zi = zi * z;
                }
                for (const PolyQ& c : polynomial_kernel<Rat>(Q, int_roots_q)) {
                    RatFuncQ r = RatFuncQ(PolyQ(z)) * RatFuncQ(a, b) *
                                 RatFuncQ(c.shifted(Rat(1)), c);
                    if (certifies(p, r)) push_unique(std::move(r));
                }
            }
        }
    }
    return out;
}

std::vector<HypergeomCertificate> solve_hypergeometric(const Recurrence& rec) {
    AscendingForm a = ascending_form(rec);
    if (!a.f.is_zero())
        throw std::invalid_argument("solve_hypergeometric: recurrence is not homogeneous");
    return solve_hypergeometric(a.p);
}

} // namespace msum
