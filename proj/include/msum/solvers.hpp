#ifndef MSUM_SOLVERS_HPP
#define MSUM_SOLVERS_HPP

#include <optional>
#include <vector>

#include "msum/rational_solve.hpp"
#include "msum/recurrence.hpp"

namespace msum {

/// Solutions of a recurrence within the rational functions of the variable.
struct RationalSolutions {
    std::optional<RatFuncQ> particular;   // set when the rhs is matched
    std::vector<RatFuncQ> homogeneous;    // basis of rational kernel elements
};

/// Complete rational-solution search (universal denominator + degree bound).
/// Requires an eps-free recurrence with rational coefficients and rhs.
RationalSolutions solve_rational(const Recurrence& rec,
                                 std::optional<long> max_degree = {});

/// g with g(k+1) - g(k) = f, if f has a rational antidifference.
std::optional<RatFuncQ> telescope_rational(const RatFuncQ& f,
                                           std::optional<long> max_degree = {});

/// Parameterized telescoping over the constant field Q:
/// basis of (c, g) with sum_t c_t f_t(k) = g(k+1) - g(k).
std::vector<ParamBasisElem<Rat>> parameterized_telescope_q(
    const std::vector<RatFuncQ>& fs, std::optional<long> max_degree = {});

/// Creative telescoping over Q(n): basis of (c(n), g(n,k)) with
/// sum_t c_t(n) f_t(n,k) = g(n,k+1) - g(n,k); pass f(n,k), f(n+1,k), ... as fs.
std::vector<ParamBasisElem<RatFuncQ>> creative_telescope(
    const std::vector<RatFunc<RatFuncQ>>& fs, std::optional<long> max_degree = {});

/// Ascending-form view  sum_j p_j(k) y(k+j) = f(k)  of a recurrence, obtained
/// by the substitution k = N - order; denominators are cleared.
struct AscendingForm {
    std::vector<PolyQ> p;
    RatFuncQ f;
};
AscendingForm ascending_form(const Recurrence& rec);

} // namespace msum

#endif
