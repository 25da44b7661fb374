#include "msum/roots.hpp"

#include <algorithm>
#include <cstdlib>

namespace msum {

PolyQ primitive_part(const PolyQ& p) {
    if (p.is_zero()) return p;
    mpz_class den_lcm = 1;
    for (const Rat& c : p.coeffs()) {
        mpz_class d = c.den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
    }
    std::vector<Rat> cleared;
    cleared.reserve(p.coeffs().size());
    mpz_class content = 0;
    for (const Rat& c : p.coeffs()) {
        mpq_class v = c.raw() * mpq_class(den_lcm);
        mpz_class z = v.get_num(); // denominator is 1 now
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
        cleared.push_back(Rat(z));
    }
    if (content == 0) content = 1;
    if (p.lc().sign() < 0) content = -content;
    std::vector<Rat> out;
    out.reserve(cleared.size());
    for (const Rat& c : cleared) out.push_back(Rat(mpz_class(c.num() / content)));
    return PolyQ(std::move(out));
}

namespace {

// Divisors of |n|, via trial division. Gives up (returns nullopt) when a
// large cofactor survives the small-prime sieve and is not prime.
std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    std::vector<std::pair<mpz_class, int>> fac;
    mpz_class m = n;
    for (mpz_class p = 2; p * p <= m && p < 1000000; p == 2 ? p = 3 : p += 2) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            fac.emplace_back(p, e);
        }
    }
    if (m > 1) {
        if (mpz_probab_prime_p(m.get_mpz_t(), 30))
            fac.emplace_back(m, 1);
        else
            return std::nullopt;
    }
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        std::size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
        if (divs.size() > 200000) return std::nullopt;
    }
    return divs;
}

// Cauchy bound: every root r satisfies |r| <= 1 + max |a_i / a_n|.
mpz_class cauchy_bound(const PolyQ& p) {
    mpq_class m = 0;
    for (const Rat& c : p.coeffs()) {
        mpq_class q = ::abs(c.raw() / p.lc().raw());
        if (q > m) m = q;
    }
    mpz_class b = m.get_num() / m.get_den() + 2;
    return b;
}

} // namespace

int root_multiplicity(const PolyQ& p, const Rat& r) {
    PolyQ lin(std::vector<Rat>{-r, Rat(1)});
    PolyQ q = p;
    int mult = 0;
    while (!q.is_zero()) {
        auto [quot, rem] = divmod(q, lin);
        if (!rem.is_zero()) break;
        ++mult;
        q = quot;
    }
    return mult;
}

std::set<long> integer_roots(const PolyQ& p) {
    if (p.is_zero()) throw std::domain_error("integer_roots: zero polynomial");
    std::set<long> roots;
    PolyQ q = primitive_part(p);
    // strip powers of x
    std::size_t v = 0;
    while (q[v].is_zero()) ++v;
    if (v > 0) {
        roots.insert(0);
        std::vector<Rat> shifted(q.coeffs().begin() + static_cast<long>(v), q.coeffs().end());
        q = PolyQ(std::move(shifted));
    }
    if (q.degree() < 1) return roots;
    mpz_class bound = cauchy_bound(q);
    auto try_root = [&](const mpz_class& r) {
        if (!r.fits_slong_p()) return;
        if (q.eval(Rat(r)).is_zero()) roots.insert(r.get_si());
    };
    auto divs = divisors(q.constant_term().num());
    if (divs) {
        for (const mpz_class& d : *divs) {
            if (d > bound) continue;
            try_root(d);
            try_root(mpz_class(-d));
        }
    } else {
        // fallback scan under the root bound
        mpz_class cap = std::min(bound, mpz_class(200000));
        for (mpz_class r = -cap; r <= cap; ++r) try_root(r);
    }
    return roots;
}

std::vector<Rat> rational_roots(const PolyQ& p) {
    if (p.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    std::vector<Rat> roots;
    PolyQ q = primitive_part(p);
    std::size_t v = 0;
    while (q[v].is_zero()) ++v;
    if (v > 0) {
        roots.push_back(Rat(0));
        std::vector<Rat> shifted(q.coeffs().begin() + static_cast<long>(v), q.coeffs().end());
        q = PolyQ(std::move(shifted));
    }
    if (q.degree() >= 1) {
        auto nds = divisors(q.constant_term().num());
        auto dds = divisors(q.lc().num());
        if (nds && dds) {
            for (const mpz_class& n : *nds)
                for (const mpz_class& d : *dds) {
                    for (int s : {1, -1}) {
                        Rat cand(mpq_class(s * n, d));
                        if (q.eval(cand).is_zero() &&
                            std::find(roots.begin(), roots.end(), cand) == roots.end())
                            roots.push_back(cand);
                    }
                }
        } else {
            for (long r : integer_roots(q)) roots.push_back(Rat(r));
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

PolyQ shift_resultant(const PolyQ& p, const PolyQ& q) {
    if (p.is_zero() || q.is_zero())
        throw std::domain_error("shift_resultant: zero polynomial");
    long deg = p.degree() * q.degree();
    if (deg == 0) {
        if (p.degree() == 0) return PolyQ(p.lc().pow(q.degree()));
        return PolyQ(q.lc().pow(p.degree()));
    }
    std::vector<Rat> xs, ys;
    xs.reserve(static_cast<std::size_t>(deg) + 1);
    ys.reserve(static_cast<std::size_t>(deg) + 1);
    for (long j = 0; j <= deg; ++j) {
        xs.push_back(Rat(j));
        ys.push_back(resultant(p, q.shifted(Rat(j))));
    }
    return interpolate(xs, ys);
}

PolyQ interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    // Newton form, expanded at the end.
    std::size_t n = xs.size();
    std::vector<Rat> dd(ys);
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n; i-- > k;)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
    PolyQ r;
    for (std::size_t i = n; i-- > 0;) {
        PolyQ lin(std::vector<Rat>{-xs[i], Rat(1)});
        r = r * lin + PolyQ(dd[i]);
    }
    return r;
}

std::set<long> dispersion_set(const PolyQ& p, const PolyQ& q) {
    if (p.is_zero() || q.is_zero())
        throw std::domain_error("dispersion: zero polynomial");
    std::set<long> out;
    if (p.degree() == 0 || q.degree() == 0) return out;
    PolyQ res = shift_resultant(p, q);
    if (res.is_zero()) {
        // degenerate interpolation cannot occur for nonzero p, q; guard anyway
        throw std::logic_error("dispersion: vanishing resultant polynomial");
    }
    for (long j : integer_roots(res))
        if (j >= 0) out.insert(j);
    return out;
}

std::optional<long> dispersion_max(const PolyQ& p, const PolyQ& q) {
    auto s = dispersion_set(p, q);
    if (s.empty()) return std::nullopt;
    return *s.rbegin();
}

} // namespace msum
