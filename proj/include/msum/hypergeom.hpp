#ifndef MSUM_HYPERGEOM_HPP
#define MSUM_HYPERGEOM_HPP

#include <vector>

#include "msum/rational_solve.hpp"
#include "msum/recurrence.hpp"

namespace msum {

/// Certificate of a product (hypergeometric) solution: the consecutive-term
/// ratio r(k) = y(k+1)/y(k), a nonzero rational function.
struct HypergeomCertificate {
    RatFuncQ ratio;
};

/// All product-solution ratios of the homogeneous equation
/// sum_{i=0}^m p_i(k) y(k+i) = 0, up to constant multiples of the solution,
/// via monic-divisor candidate enumeration over the trailing and leading
/// coefficients.  Every returned certificate is re-verified by exact
/// substitution.  Nonlinear irreducible-looking factors are kept atomic;
/// certificates whose ratio needs a strict partial factor of such a block are
/// outside the enumeration.
std::vector<HypergeomCertificate> solve_hypergeometric(const std::vector<PolyQ>& p);

/// Convenience wrapper: homogeneous recurrence in descending form.
std::vector<HypergeomCertificate> solve_hypergeometric(const Recurrence& rec);

/// Monic divisors of a rational polynomial: products of its rational linear
/// factors (to each multiplicity) and, when present, the atomic nonlinear
/// cofactor. Deterministic order, 1 first.
std::vector<PolyQ> monic_divisors(const PolyQ& p);

} // namespace msum

#endif
