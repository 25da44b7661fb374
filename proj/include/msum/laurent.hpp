#ifndef MSUM_LAURENT_HPP
#define MSUM_LAURENT_HPP

#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace msum {

/// Truncated Laurent series in eps over a coefficient ring C.
///
/// Exponents lead .. lead+coeffs.size()-1 are stored; `trunc`, when set, is
/// the highest exponent known (inclusive) — terms above it are unknown.
/// trunc == nullopt means the value is exact (a Laurent polynomial).
/// Operations propagate the smallest compatible truncation order; nothing is
/// ever silently re-expanded.
template <typename C>
class Laurent {
public:
    Laurent() = default;
    Laurent(C c) {
        if (!c.is_zero()) {
            lead_ = 0;
            c_.push_back(std::move(c));
        }
    }
    Laurent(long c) : Laurent(C(c)) {}
    Laurent(long lead, std::vector<C> coeffs, std::optional<long> trunc = std::nullopt)
        : lead_(lead), c_(std::move(coeffs)), trunc_(trunc) {
        normalize();
    }

    static Laurent eps(long power = 1) {
        return Laurent(power, std::vector<C>{C(1)});
    }

    bool is_zero() const { return c_.empty(); }
    bool is_exact() const { return !trunc_.has_value(); }
    std::optional<long> trunc() const { return trunc_; }
    long lead() const {
        if (is_zero()) throw std::domain_error("Laurent: leading exponent of zero");
        return lead_;
    }
    long high() const { return lead_ + static_cast<long>(c_.size()) - 1; }

    /// Coefficient of eps^e (zero outside the stored window).
    const C& coeff(long e) const {
        static const C zero = C(0);
        if (is_zero() || e < lead_ || e > high()) return zero;
        return c_[static_cast<std::size_t>(e - lead_)];
    }
    const C& leading_coeff() const {
        if (is_zero()) throw std::domain_error("Laurent: leading coefficient of zero");
        return c_.front();
    }

    Laurent truncated(long order) const {
        Laurent r = *this;
        r.trunc_ = trunc_ ? std::min(*trunc_, order) : order;
        r.normalize();
        return r;
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        if (a.is_zero()) { Laurent r = b; r.trunc_ = min_trunc(a.trunc_, b.trunc_); r.normalize(); return r; }
        if (b.is_zero()) { Laurent r = a; r.trunc_ = min_trunc(a.trunc_, b.trunc_); r.normalize(); return r; }
        long lo = std::min(a.lead_, b.lead_);
        long hi = std::max(a.high(), b.high());
        std::vector<C> v(static_cast<std::size_t>(hi - lo + 1), C(0));
        for (long e = lo; e <= hi; ++e)
            v[static_cast<std::size_t>(e - lo)] = a.coeff(e) + b.coeff(e);
        return Laurent(lo, std::move(v), min_trunc(a.trunc_, b.trunc_));
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    Laurent operator-() const {
        Laurent r = *this;
        for (C& c : r.c_) c = C(0) - c;
        return r;
    }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        std::optional<long> t;
        if (a.trunc_ && !b.is_zero()) t = min_trunc(t, *a.trunc_ + b.lead_);
        if (b.trunc_ && !a.is_zero()) t = min_trunc(t, *b.trunc_ + a.lead_);
        if (a.is_zero() || b.is_zero()) return Laurent(0, {}, t);
        std::vector<C> v(a.c_.size() + b.c_.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        return Laurent(a.lead_ + b.lead_, std::move(v), t);
    }

    /// Division. The divisor must have an invertible (nonzero) leading
    /// coefficient; when both operands are exact the quotient must either
    /// terminate or a truncation order must have been imposed beforehand.
    friend Laurent operator/(const Laurent& a, const Laurent& b) {
        if (b.is_zero()) throw std::domain_error("Laurent: division by (truncated) zero");
        std::optional<long> t;
        if (a.trunc_) t = min_trunc(t, *a.trunc_ - b.lead_);
        if (b.trunc_ && !a.is_zero()) t = min_trunc(t, *b.trunc_ - 2 * b.lead_ + a.lead_);
        if (a.is_zero()) return Laurent(0, {}, t);
        if (!t) {
            // exact/exact: long-divide; require termination
            Laurent q = a.divide_exact(b);
            return q;
        }
        Laurent q(0, {}, t);
        Laurent rem = a;
        while (!rem.is_zero() && rem.lead() - b.lead_ <= *t) {
            long e = rem.lead() - b.lead_;
            C c = rem.leading_coeff() / b.leading_coeff();
            Laurent term(e, std::vector<C>{c});
            q = q + term;
            rem = rem - term * b;
        }
        return q;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return a.lead_ == b.lead_ && a.c_ == b.c_ && a.trunc_ == b.trunc_;
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

private:
    static std::optional<long> min_trunc(std::optional<long> a, std::optional<long> b) {
        if (!a) return b;
        if (!b) return a;
        return std::min(*a, *b);
    }
    Laurent divide_exact(const Laurent& b) const {
        // If a = q*b exactly then the top exponent of q is high() - b.high();
        // a quotient term beyond that proves the expansion does not terminate.
        Laurent rem = *this, q;
        long top = high() - b.high();
        while (!rem.is_zero()) {
            long e = rem.lead() - b.lead_;
            if (e > top)
                throw std::domain_error(
                    "Laurent: exact division does not terminate; set a truncation order");
            C c = rem.leading_coeff() / b.leading_coeff();
            Laurent term(e, std::vector<C>{c});
            q = q + term;
            rem = rem - term * b;
        }
        return q;
    }
    void normalize() {
        while (!c_.empty() && c_.front().is_zero()) {
            c_.erase(c_.begin());
            ++lead_;
        }
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (trunc_ && !c_.empty()) {
            while (!c_.empty() && high() > *trunc_) c_.pop_back();
            while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        }
        if (c_.empty()) lead_ = 0;
        if (trunc_ && !c_.empty() && *trunc_ < lead_)
            throw std::domain_error("Laurent: truncation order below leading exponent");
    }

    long lead_ = 0;
    std::vector<C> c_;
    std::optional<long> trunc_;
};

} // namespace msum

#endif
