#ifndef MSUM_DALEMBERT_HPP
#define MSUM_DALEMBERT_HPP

#include <memory>
#include <optional>
#include <vector>

#include "msum/hypergeom.hpp"
#include "msum/recurrence.hpp"

namespace msum {

/// Product factor times one optional nested summation layer:
///   y(k0) = (inner ? 0 : 1),  y(k+1) = ratio(k) * y(k) + w(k)
/// where w is the inner nested-sum solution (absent for a pure product).
/// Unfolding the recurrence gives y(k) = h(k) * sum_{j<k} w(j)/h(j+1) with
/// h the product over ratio, i.e. one indefinite summation quantifier per
/// nesting level.
struct NestedSumExpr {
    RatFuncQ ratio;
    std::shared_ptr<NestedSumExpr> inner;
    /// Exact rational leaf (used for particular solutions): when set, the
    /// value is this rational function and ratio/inner are ignored.
    std::optional<RatFuncQ> rational_value;

    /// Exact value by unrolling from k0 (default 0). Throws on ratio poles.
    Rat eval(long k, long k0 = 0) const;
    /// Nesting depth: 0 for a pure product.
    int depth() const { return inner ? 1 + inner->depth() : 0; }
    std::string str(const std::string& var = "k") const;
};

struct DalembertSolutions {
    std::vector<NestedSumExpr> basis;           // homogeneous nested-sum basis
    std::vector<std::optional<HExpr>> closed;   // harmonic form where recognized
    std::optional<NestedSumExpr> particular;    // for a rational rhs
    bool complete = true;                       // false: left factor unfactored
    std::vector<PolyQ> remaining;               // the unfactored left operator
};

/// Factor first-order right factors off the operator as long as product
/// solutions exist, recursing on the quotient; assembles a nested-sum basis
/// (and particular solution for rational rhs) and recognizes harmonic-sum
/// closed forms layer by layer. Recursion depth is capped by the order.
DalembertSolutions solve_dalembertian(const std::vector<PolyQ>& p,
                                      const RatFuncQ& rhs = RatFuncQ(0));
DalembertSolutions solve_dalembertian(const Recurrence& rec);

/// Closed form of a nested-sum solution inside the harmonic algebra, built
/// with telescoping per layer; nullopt when a layer falls outside the class
/// (e.g. a genuine factorial product).
std::optional<HExpr> harmonic_closed_form(const NestedSumExpr& e);

} // namespace msum

#endif
