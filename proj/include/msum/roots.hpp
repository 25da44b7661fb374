#ifndef MSUM_ROOTS_HPP
#define MSUM_ROOTS_HPP

#include <optional>
#include <set>
#include <vector>

#include "msum/poly.hpp"
#include "msum/rational.hpp"

namespace msum {

/// Clears denominators and content: returns the primitive integer-coefficient
/// polynomial proportional to p (positive leading coefficient).
PolyQ primitive_part(const PolyQ& p);

/// All integer roots of a nonzero rational polynomial. Candidates are divisor
/// pairs of the trailing coefficient of the primitive part, capped by the
/// Cauchy root bound; a direct scan backs up the divisor enumeration when the
/// trailing coefficient resists factoring.
std::set<long> integer_roots(const PolyQ& p);

/// All rational roots of a nonzero rational polynomial.
std::vector<Rat> rational_roots(const PolyQ& p);

/// Multiplicity of root r in p.
int root_multiplicity(const PolyQ& p, const Rat& r);

/// Res_x(p(x), q(x+j)) as a polynomial in j, computed by evaluation at
/// integer nodes and Lagrange interpolation.
PolyQ shift_resultant(const PolyQ& p, const PolyQ& q);

/// All j >= 0 with gcd(p(x), q(x+j)) nonconstant.
std::set<long> dispersion_set(const PolyQ& p, const PolyQ& q);

/// Largest element of dispersion_set, or nullopt when the set is empty.
std::optional<long> dispersion_max(const PolyQ& p, const PolyQ& q);

/// Lagrange interpolation through (xs[i], ys[i]).
PolyQ interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

} // namespace msum

#endif
