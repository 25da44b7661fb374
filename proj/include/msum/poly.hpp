#ifndef MSUM_POLY_HPP
#define MSUM_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "msum/rational.hpp"

namespace msum {

/// Dense univariate polynomial over a field K. Coefficient i is the
/// coefficient of x^i; the vector carries no trailing zeros, so the zero
/// polynomial has an empty vector and degree() == -1.
///
/// K must provide: K(long), +, -, *, /, ==, is_zero().
template <typename K>
class Poly {
public:
    Poly() = default;
    Poly(K c) { c_.push_back(std::move(c)); trim(); }
    Poly(long c) : Poly(K(c)) {}
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }
    /// c * x^e
    static Poly monomial(K c, std::size_t e) {
        std::vector<K> v(e + 1, K(0));
        v[e] = std::move(c);
        return Poly(std::move(v));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == K(1); }
    bool is_constant() const { return c_.size() <= 1; }

    const K& operator[](std::size_t i) const {
        static const K zero = K(0);
        return i < c_.size() ? c_[i] : zero;
    }
    const K& lc() const {
        if (is_zero()) throw std::domain_error("Poly: leading coefficient of zero");
        return c_.back();
    }
    const std::vector<K>& coeffs() const { return c_; }

    K constant_term() const { return c_.empty() ? K(0) : c_[0]; }

    void set_coeff(std::size_t i, K v) {
        if (i >= c_.size()) c_.resize(i + 1, K(0));
        c_[i] = std::move(v);
        trim();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<K> r(c_.size(), K(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = K(0) - c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const K& s) {
        std::vector<K> r(a.c_.size(), K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i] * s;
        return Poly(std::move(r));
    }
    friend Poly operator*(const K& s, const Poly& a) { return a * s; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Exact (quotient, remainder) with deg(rem) < deg(d).
    friend std::pair<Poly, Poly> divmod(const Poly& n, const Poly& d) {
        if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly q, r = n;
        while (!r.is_zero() && r.degree() >= d.degree()) {
            K c = r.lc() / d.lc();
            std::size_t e = static_cast<std::size_t>(r.degree() - d.degree());
            Poly t = monomial(c, e);
            q = q + t;
            r = r - t * d;
        }
        return {q, r};
    }
    friend Poly operator/(const Poly& n, const Poly& d) { return divmod(n, d).first; }
    friend Poly operator%(const Poly& n, const Poly& d) { return divmod(n, d).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        K inv = K(1) / lc();
        return *this * inv;
    }

    /// Monic gcd via the Euclidean algorithm.
    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    template <typename V>
    V eval(const V& x) const {
        V r = V(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + V(c_[i]);
        return r;
    }

    /// p(x + c), expanded.
    Poly shifted(const K& c) const {
        Poly r;
        Poly xc = x() + Poly(c);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * xc + Poly(c_[i]);
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> r(c_.size() - 1, K(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
        return Poly(std::move(r));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;
};

/// Resultant of two polynomials over a field, by the PRS recurrence.
template <typename K>
K resultant(Poly<K> p, Poly<K> q) {
    if (p.is_zero() || q.is_zero()) return K(0);
    K acc = K(1);
    bool neg = false;
    while (q.degree() > 0) {
        if (p.degree() < q.degree()) {
            if ((p.degree() % 2) && (q.degree() % 2)) neg = !neg;
            std::swap(p, q);
            continue;
        }
        Poly<K> r = p % q;
        long dp = p.degree(), dq = q.degree(), dr = r.is_zero() ? 0 : r.degree();
        K f = K(1);
        for (long i = 0; i < dp - dr; ++i) f = f * q.lc();
        acc = acc * f;
        if ((dp % 2) && (dq % 2)) neg = !neg;
        p = std::move(q);
        q = std::move(r);
        if (q.is_zero()) return K(0);
    }
    // q is a nonzero constant
    K f = K(1);
    for (long i = 0; i < p.degree(); ++i) f = f * q.lc();
    acc = acc * f;
    return neg ? K(0) - acc : acc;
}

/// Rational function num/den over K, kept reduced with monic denominator.
template <typename K>
class RatFunc {
public:
    RatFunc() : num_(), den_(K(1)) {}
    RatFunc(K c) : num_(std::move(c)), den_(K(1)) {}
    RatFunc(long c) : num_(K(c)), den_(K(1)) {}
    RatFunc(Poly<K> n) : num_(std::move(n)), den_(K(1)) {}
    RatFunc(Poly<K> n, Poly<K> d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static RatFunc x() { return RatFunc(Poly<K>::x()); }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const {
        RatFunc r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return RatFunc(den_, num_);
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// f(x + c)
    RatFunc shifted(const K& c) const {
        RatFunc r;
        r.num_ = num_.shifted(c);
        r.den_ = den_.shifted(c);
        r.normalize_lc();
        return r;
    }

    /// Evaluate at a point; throws on poles.
    K eval(const K& x) const {
        K d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("RatFunc: pole at evaluation point");
        return num_.eval(x) / d;
    }
    bool has_pole_at(const K& x) const { return den_.eval(x).is_zero(); }

private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<K>(K(1));
            return;
        }
        Poly<K> g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        normalize_lc();
    }
    void normalize_lc() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        K inv = K(1) / den_.lc();
        if (!(inv == K(1))) {
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }
    Poly<K> num_, den_;
};

using PolyQ = Poly<Rat>;
using RatFuncQ = RatFunc<Rat>;
/// Bivariate polynomial, outer variable = eps, inner = N.
using BivarPoly = Poly<PolyQ>;

} // namespace msum

#endif
