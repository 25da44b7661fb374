#ifndef MSUM_HARMONIC_HPP
#define MSUM_HARMONIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "msum/poly.hpp"
#include "msum/rational.hpp"
#include "msum/zeta.hpp"

namespace msum {

/// Nested-sum index: nonzero entries, sign encodes the alternating factor of
/// the corresponding layer.  {} is the trivial sum S(N) = 1.
using HIndex = std::vector<int>;

int hindex_weight(const HIndex& m);
std::string hindex_str(const HIndex& m);

/// Raised when an expression is evaluated at an integer point where one of
/// its rational-function coefficients has a pole.
class PoleError : public std::domain_error {
public:
    PoleError(long n, const std::string& coeff)
        : std::domain_error("pole at N=" + std::to_string(n) + " in coefficient " + coeff),
          point(n) {}
    long point;
};

/// One canonical term c(N) * (-1)^(N*alt) * zeta * S_m(N).
struct HTerm {
    RatFuncQ coeff;
    bool alt = false;
    ZetaMon zeta;
    HIndex sum;

    /// Weight of the structural skeleton: sum weight + zeta weight + pole
    /// degree of the coefficient (its denominator degree).
    int weight() const {
        return hindex_weight(sum) + zeta_weight(zeta) + (int)coeff.den().degree();
    }
};

/// Key identifying the linearly independent generator of a term over Q(N).
struct HKey {
    bool alt = false;
    ZetaMon zeta;
    HIndex sum;
    friend bool operator==(const HKey&, const HKey&) = default;
    friend bool operator<(const HKey& a, const HKey& b) {
        if (a.alt != b.alt) return !a.alt;
        if (a.zeta != b.zeta) return a.zeta < b.zeta;
        return a.sum < b.sum;
    }
};

/// Element of the harmonic-sum algebra: a finite sum of HTerms, kept sorted
/// by key with nonzero coefficients.  Distinct keys are linearly independent
/// over Q(N), so structural equality of normal forms is algebra equality.
class HExpr {
public:
    HExpr() = default;
    HExpr(Rat c) { add_term({RatFuncQ(PolyQ(c)), false, {}, {}}); }
    HExpr(long c) : HExpr(Rat(c)) {}

    static HExpr rational(RatFuncQ f) {
        HExpr e;
        e.add_term({std::move(f), false, {}, {}});
        return e;
    }
    static HExpr harmonic(HIndex m) {
        HExpr e;
        e.add_term({RatFuncQ(1), false, {}, std::move(m)});
        return e;
    }
    static HExpr zeta(ZetaMon m) {
        HExpr e;
        e.add_term({RatFuncQ(1), false, std::move(m), {}});
        return e;
    }
    static HExpr alt_sign() {
        HExpr e;
        e.add_term({RatFuncQ(1), true, {}, {}});
        return e;
    }
    static HExpr term(HTerm t) {
        HExpr e;
        e.add_term(std::move(t));
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<HTerm>& terms() const { return terms_; }

    /// Coefficient of the generator with the given key (0 if absent).
    RatFuncQ coeff(const HKey& k) const;

    /// Nonnull iff the expression is a pure rational function of N.
    std::optional<RatFuncQ> as_rational() const;

    void add_term(HTerm t);

    HExpr& operator+=(const HExpr& o);
    HExpr& operator-=(const HExpr& o);
    friend HExpr operator+(HExpr a, const HExpr& b) { return a += b; }
    friend HExpr operator-(HExpr a, const HExpr& b) { return a -= b; }
    HExpr operator-() const;
    friend HExpr operator*(const HExpr& a, const HExpr& b);
    friend HExpr operator*(const HExpr& a, const RatFuncQ& s);
    friend HExpr operator*(const RatFuncQ& s, const HExpr& a) { return a * s; }
    friend HExpr operator*(const HExpr& a, const Rat& s) { return a * RatFuncQ(PolyQ(s)); }
    friend HExpr operator*(const Rat& s, const HExpr& a) { return a * s; }
    /// Division is only defined by (nonzero) pure rational functions:
    /// (-1)^N and the sums are not units of the algebra.
    friend HExpr operator/(const HExpr& a, const HExpr& b);
    friend bool operator==(const HExpr& a, const HExpr& b);
    friend bool operator!=(const HExpr& a, const HExpr& b) { return !(a == b); }

    /// Expression E' with E'(N) = E(N + j), expanded back into the canonical
    /// basis at argument N.
    HExpr shifted(long j) const;

    /// Exact value at integer N >= 0.  Throws PoleError on coefficient poles.
    ZetaValue eval(long N) const;

    /// Largest structural weight over the terms (0 for the zero expression).
    int weight() const;

    std::string str(const std::string& var = "N") const;

private:
    std::vector<HTerm> terms_; // sorted by key, nonzero coefficients
};

/// Exact value of S_m(N); memoized across calls.
Rat harmonic_value(const HIndex& m, long N);

/// Product S_a * S_b expanded by the quasi-shuffle recursion into a linear
/// combination of single sums with integer coefficients.
HExpr stuffle(const HIndex& a, const HIndex& b);

/// S_m(N + j) expanded at argument N; memoized across calls.
HExpr shift_sum(const HIndex& m, long j);

/// Envelope for term enumeration.
struct AnsatzBasis {
    int max_weight = 6;          // sum + zeta + pole degree
    long pole_lo = 0, pole_hi = 0; // denominator offsets j: poles at N = -j
    int pole_degree = 2;         // max power per pole factor
    bool use_alt = true;
    std::vector<ZetaMon> zetas;  // candidate monomials; {} prepended if absent
};

/// All skeleton terms (unit coefficient times 1/(N+j)^p) inside the envelope,
/// in a deterministic order.
std::vector<HTerm> basis_enumerate(const AnsatzBasis& cfg);

/// All sum indices of exact weight w, in enumeration order.
std::vector<HIndex> hindices_of_weight(int w);

/// All zeta monomials over the given generator arguments with weight <= maxw,
/// including the empty monomial, sorted.
std::vector<ZetaMon> zeta_monomials(const std::vector<int>& gens, int maxw);

} // namespace msum

#endif
