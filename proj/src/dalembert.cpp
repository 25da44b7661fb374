#include "msum/dalembert.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>

#include "msum/ansatz.hpp"
#include "msum/printing.hpp"
#include "msum/solvers.hpp"

namespace msum {

Rat NestedSumExpr::eval(long k, long k0) const {
    if (rational_value) return rational_value->eval(Rat(k));
    if (k < k0) throw std::invalid_argument("NestedSumExpr: eval before base point");
    Rat y = inner ? Rat(0) : Rat(1);
    for (long j = k0; j < k; ++j)
        y = ratio.eval(Rat(j)) * y + (inner ? inner->eval(j, k0) : Rat(0));
    return y;
}

std::string NestedSumExpr::str(const std::string& var) const {
    if (rational_value) return ratfunc_str(*rational_value, var);
    std::ostringstream os;
    os << "prod[" << ratfunc_str(ratio, var) << "]";
    if (inner) os << "*sum(" << inner->str(var) << ")";
    return os.str();
}

namespace {

std::shared_ptr<NestedSumExpr> box(NestedSumExpr e) {
    return std::make_shared<NestedSumExpr>(std::move(e));
}

} // namespace

DalembertSolutions solve_dalembertian(const std::vector<PolyQ>& p,
                                      const RatFuncQ& rhs) {
    DalembertSolutions res;
    const long m = (long)p.size() - 1;
    if (m <= 0) {
        if (!rhs.is_zero()) {
            NestedSumExpr leaf;
            leaf.rational_value = rhs / RatFuncQ(p.front());
            res.particular = std::move(leaf);
        }
        return res;
    }

    auto certs = solve_hypergeometric(p);
    if (certs.empty()) {
        res.complete = false;
        res.remaining = p;
        return res;
    }
    const RatFuncQ r = certs.front().ratio;

    // Right division by (shift - r): quotient q_0..q_{m-1}, remainder must
    // vanish because r certifies a solution of the full operator.
    std::vector<RatFuncQ> q((std::size_t)m);
    q[(std::size_t)m - 1] = RatFuncQ(p[(std::size_t)m]);
    for (long i = m - 1; i >= 1; --i)
        q[(std::size_t)i - 1] = RatFuncQ(p[(std::size_t)i]) + q[(std::size_t)i] * r.shifted(Rat(i));
    RatFuncQ rem = RatFuncQ(p[0]) + q[0] * r;
    if (!rem.is_zero())
        throw std::logic_error("dalembertian factorization: nonzero remainder");

    // Clear quotient denominators so the recursion stays over polynomials.
    PolyQ D(Rat(1));
    for (const auto& qi : q) D = D * (qi.den() / gcd(D, qi.den()));
    std::vector<PolyQ> Q;
    Q.reserve(q.size());
    for (const auto& qi : q) Q.push_back((qi * RatFuncQ(D)).num());

    DalembertSolutions sub = solve_dalembertian(Q, rhs * RatFuncQ(D));

    NestedSumExpr prod;
    prod.ratio = r;
    res.basis.push_back(prod);
    for (const auto& w : sub.basis) {
        NestedSumExpr e;
        e.ratio = r;
        e.inner = box(w);
        res.basis.push_back(std::move(e));
    }
    if (sub.particular) {
        NestedSumExpr e;
        e.ratio = r;
        e.inner = box(*sub.particular);
        res.particular = std::move(e);
    }
    res.complete = sub.complete;
    res.remaining = std::move(sub.remaining);
    for (const auto& b : res.basis) res.closed.push_back(harmonic_closed_form(b));
    return res;
}

DalembertSolutions solve_dalembertian(const Recurrence& rec) {
    AscendingForm a = ascending_form(rec);
    return solve_dalembertian(a.p, a.f);
}

std::optional<HExpr> harmonic_closed_form(const NestedSumExpr& e) {
    if (e.rational_value) return HExpr::rational(*e.rational_value);

    // Rational kernel u of y(k+1) = s * r(k) y(k) for s = +1 (plain) and
    // s = -1 (then y = (-1)^k u).
    auto kernel = [](const PolyQ& p0, const PolyQ& p1) -> std::optional<RatFuncQ> {
        auto basis = solve_rational_param<Rat>({p0, p1}, {}, int_roots_q);
        if (basis.empty()) return std::nullopt;
        return basis.front().y;
    };
    std::optional<RatFuncQ> u = kernel(-e.ratio.num(), e.ratio.den());
    bool alt = false;
    if (!u) {
        u = kernel(e.ratio.num(), e.ratio.den());
        alt = true;
    }
    if (!u) return std::nullopt;
    HExpr h = HExpr::rational(*u);
    if (alt) h = h * HExpr::alt_sign();
    if (!e.inner) return h;

    std::optional<HExpr> wi = harmonic_closed_form(*e.inner);
    if (!wi) return std::nullopt;
    // y = h * g with g(k+1) - g(k) = w(k)/h(k+1); the free multiple of h is
    // already spanned by the pure-product basis element.
    HExpr summand = *wi * u->shifted(Rat(1)).inv();
    if (alt) summand = summand * HExpr::alt_sign() * Rat(-1);
    // rational summands may telescope to polynomials, which lie outside the
    // pole-based ansatz envelope; try the rational route first
    if (auto sr = summand.as_rational()) {
        if (auto gr = telescope_rational(*sr)) return h * HExpr::rational(*gr);
    }
    HarmonicTelescope tg = telescope_harmonic(summand);
    if (!tg.solved) return std::nullopt;
    return h * tg.g;
}

} // namespace msum
