#ifndef MSUM_PRINTING_HPP
#define MSUM_PRINTING_HPP

#include <string>

#include "msum/poly.hpp"

namespace msum {

/// "3*N^2 - 2*N + 1"; "0" for the zero polynomial.
std::string poly_str(const PolyQ& p, const std::string& var = "N");

/// Grammar-compatible form: a constant, "(poly)", or "(num)/(den)".
std::string ratfunc_str(const RatFuncQ& f, const std::string& var = "N");

} // namespace msum

#endif
