#include "msum/recurrence.hpp"

#include <algorithm>
#include <stdexcept>

#include "msum/roots.hpp"

namespace msum {

RatFuncQ Recurrence::coeff_q(int i) const { return coeff_q(i, 0); }

RatFuncQ Recurrence::coeff_q(int i, long eps_pow) const {
    const EExpr& c = coeffs.at((std::size_t)i);
    auto r = c.coeff(eps_pow).as_rational();
    if (!r) throw std::logic_error("recurrence coefficient is not rational");
    return *r;
}

EExpr rec_apply(const Recurrence& rec, const EExpr& candidate) {
    EExpr acc;
    for (int i = 0; i <= rec.order; ++i)
        acc = acc + rec.coeffs[(std::size_t)i] * eexpr_shift(candidate, -i);
    return acc;
}

HExpr rec_apply(const Recurrence& rec, const HExpr& candidate) {
    EExpr r = rec_apply(rec, EExpr(candidate));
    if (r.is_zero()) return HExpr();
    if (r.lead() != 0 || r.high() != 0)
        throw std::logic_error("eps-dependent recurrence applied to eps-free candidate");
    return r.coeff(0);
}

// All eps-coefficients of e evaluated at N must vanish.
static bool eexpr_zero_at(const EExpr& e, long N, ZetaValue* witness) {
    if (e.is_zero()) return true;
    for (long x = e.lead(); x <= e.high(); ++x) {
        const HExpr& c = e.coeff(x);
        if (c.is_zero()) continue;
        ZetaValue v = c.eval(N);
        if (!v.is_zero()) {
            if (witness) *witness = v;
            return false;
        }
    }
    return true;
}

ResidualReport verify_solution(const Recurrence& rec, const EExpr& candidate,
                               const InitialConditions& ics, long lo, long hi) {
    ResidualReport rep;
    if (!rec.rhs_resolved) {
        rep.message = "right-hand side references unresolved external symbols";
        return rep;
    }
    EExpr residual = rec_apply(rec, candidate) - rec.rhs;

    rep.pass = true;
    std::vector<long> points;
    for (long N = lo; N <= hi; ++N) points.push_back(N);
    std::vector<std::pair<long, ZetaValue>> vals(points.size());
    std::vector<char> ok(points.size(), 1);
    std::vector<std::string> errs(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < points.size(); ++i) {
        try {
            ZetaValue w;
            ok[i] = eexpr_zero_at(residual, points[i], &w) ? 1 : 0;
            vals[i] = {points[i], w};
        } catch (const std::exception& e) {
            ok[i] = 0;
            vals[i] = {points[i], ZetaValue()};
            errs[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        rep.residuals.push_back(vals[i]);
        if (!ok[i] && rep.pass) {
            rep.pass = false;
            rep.first_failure = points[i];
            rep.message = errs[i].empty()
                              ? "nonzero residual at " + rec.var + "=" +
                                    std::to_string(points[i]) + ": " + vals[i].second.str()
                              : errs[i];
        }
    }

    // eps-free candidates must also reproduce the initial conditions
    for (const auto& [N, v] : ics) {
        HExpr c0 = candidate.is_zero() ? HExpr() : candidate.coeff(0);
        ZetaValue have;
        try {
            have = c0.eval(N);
        } catch (const std::exception& e) {
            rep.pass = false;
            rep.message = e.what();
            break;
        }
        if (have != v) {
            rep.pass = false;
            if (!rep.first_failure) rep.first_failure = N;
            rep.message = "initial condition mismatch at " + rec.var + "=" +
                          std::to_string(N) + ": expected " + v.str() + ", got " + have.str();
            break;
        }
    }
    if (rep.pass) rep.message = "all residuals zero";
    return rep;
}

// Integer points where the coefficient vanishes identically (for all eps).
static std::set<long> identical_zeros(const EExpr& c) {
    std::set<long> out;
    if (c.is_zero()) return out;
    bool first = true;
    for (long x = c.lead(); x <= c.high(); ++x) {
        auto r = c.coeff(x).as_rational();
        if (!r || r->is_zero()) continue;
        std::set<long> all = integer_roots(r->num());
        std::set<long> roots; // sequences live on N >= 0
        for (long z : all)
            if (z >= 0) roots.insert(z);
        if (first) {
            out = roots;
            first = false;
        } else {
            std::set<long> keep;
            std::set_intersection(out.begin(), out.end(), roots.begin(), roots.end(),
                                  std::inserter(keep, keep.begin()));
            out = keep;
        }
        if (out.empty()) break;
    }
    return out;
}

SingularPoints singular_points(const Recurrence& rec) {
    SingularPoints sp;
    sp.forward = identical_zeros(rec.coeffs.front());
    sp.backward = identical_zeros(rec.coeffs.back());
    return sp;
}

std::map<long, ZetaValue> unroll(const Recurrence& rec, const InitialConditions& ics,
                                 long upTo) {
    if (rec.field == FieldKind::Eps && rec.eps_order)
        throw std::invalid_argument("unroll requires an eps-free recurrence");
    if (!rec.rhs_resolved)
        throw std::invalid_argument("unroll requires a resolved right-hand side");
    long k = rec.order;

    // find `k` consecutive seed values
    std::optional<long> seed;
    for (const auto& [N, v] : ics) {
        bool run = true;
        for (long i = 0; i < k; ++i) run = run && ics.count(N + i);
        if (run) { seed = N + k - 1; break; }
    }
    if (!seed) throw std::invalid_argument("unroll: need " + std::to_string(k) +
                                           " consecutive seed values");

    std::map<long, ZetaValue> out(ics.begin(), ics.end());
    HExpr rhs0 = rec.rhs.is_zero() ? HExpr() : rec.rhs.coeff(0);
    for (long N = *seed + 1; N <= upTo; ++N) {
        if (out.count(N)) continue;
        RatFuncQ a0 = rec.coeff_q(0);
        if (a0.has_pole_at(Rat(N)))
            throw PoleError(N, "leading recurrence coefficient");
        Rat lead = a0.eval(Rat(N));
        if (lead.is_zero())
            throw std::invalid_argument(
                "unroll: leading coefficient vanishes at " + rec.var + "=" +
                std::to_string(N) + " and no initial condition covers it");
        ZetaValue acc = rhs0.eval(N);
        for (int i = 1; i <= rec.order; ++i) {
            auto it = out.find(N - i);
            if (it == out.end())
                throw std::invalid_argument("unroll: missing value at " +
                                            std::to_string(N - i));
            RatFuncQ ai = rec.coeff_q(i);
            if (ai.has_pole_at(Rat(N))) throw PoleError(N, "recurrence coefficient");
            acc = acc - it->second * ai.eval(Rat(N));
        }
        out[N] = acc * lead.inv();
    }
    return out;
}

} // namespace msum
