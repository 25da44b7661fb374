#include "msum/solvers.hpp"

#include <stdexcept>

namespace msum {

namespace {

std::vector<PolyQ> clear_denominators(std::vector<RatFuncQ> qs, RatFuncQ* extra) {
    PolyQ den(Rat(1));
    for (const auto& q : qs) den = den * (q.den() / gcd(den, q.den()));
    std::vector<PolyQ> out;
    for (const auto& q : qs) out.push_back(q.num() * (den / q.den()));
    if (extra) *extra = *extra * RatFuncQ(den);
    return out;
}

} // namespace

AscendingForm ascending_form(const Recurrence& rec) {
    if (rec.field == FieldKind::Eps)
        throw std::invalid_argument("rational solver: recurrence has eps-dependent coefficients");
    const long m = rec.order;
    RatFuncQ f(0);
    if (!rec.rhs_resolved)
        throw std::invalid_argument("rational solver: rhs references unresolved external sequences");
    if (!rec.rhs.is_zero()) {
        if (rec.rhs.lead() != 0 || rec.rhs.high() != 0)
            throw std::invalid_argument("rational solver: rhs is eps-dependent");
        auto fr = rec.rhs.coeff(0).as_rational();
        if (!fr)
            throw std::invalid_argument(
                "rational solver: rhs contains harmonic or zeta terms outside the rational class");
        f = fr->shifted(Rat(m));
    }
    std::vector<RatFuncQ> ps;
    for (long j = 0; j <= m; ++j)
        ps.push_back(rec.coeff_q((int)(m - j)).shifted(Rat(m)));
    AscendingForm a;
    a.p = clear_denominators(std::move(ps), &f);
    a.f = f;
    return a;
}

RationalSolutions solve_rational(const Recurrence& rec, std::optional<long> max_degree) {
    AscendingForm a = ascending_form(rec);
    std::vector<RatFuncQ> fs;
    if (!a.f.is_zero()) fs.push_back(a.f);

    auto basis = solve_rational_param<Rat>(a.p, fs, int_roots_q, max_degree);
    RationalSolutions out;
    for (auto& e : basis) {
        if (e.c.empty() || e.c[0].is_zero()) {
            if (!e.y.is_zero()) out.homogeneous.push_back(e.y);
        } else if (!out.particular) {
            out.particular = e.y * RatFuncQ(e.c[0].inv());
        }
    }
    // reduce a later-found particular against the kernel only implicitly: any
    // (c=1, y) element is a valid particular; callers add kernel multiples.
    return out;
}

std::optional<RatFuncQ> telescope_rational(const RatFuncQ& f, std::optional<long> max_degree) {
    auto basis = parameterized_telescope_q({f}, max_degree);
    for (auto& e : basis)
        if (!e.c[0].is_zero()) return e.y * RatFuncQ(e.c[0].inv());
    return std::nullopt;
}

std::vector<ParamBasisElem<Rat>> parameterized_telescope_q(const std::vector<RatFuncQ>& fs,
                                                           std::optional<long> max_degree) {
    std::vector<PolyQ> p{PolyQ(Rat(-1)), PolyQ(Rat(1))};
    return solve_rational_param<Rat>(p, fs, int_roots_q, max_degree);
}

std::vector<ParamBasisElem<RatFuncQ>> creative_telescope(
    const std::vector<RatFunc<RatFuncQ>>& fs, std::optional<long> max_degree) {
    std::vector<Poly<RatFuncQ>> p{Poly<RatFuncQ>(RatFuncQ(-1)), Poly<RatFuncQ>(RatFuncQ(1))};
    return solve_rational_param<RatFuncQ>(p, fs, int_roots_ratn, max_degree);
}

} // namespace msum
