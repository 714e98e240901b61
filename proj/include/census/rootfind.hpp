#pragma once

#include <vector>

#include <gmpxx.h>

#include "census/intmath.hpp"

namespace census {

/// All integer roots t with |t| <= bound of p(t) = sum coeffs[i]*t^i
/// (coefficients ascending). Entirely integer arithmetic: closed forms for
/// degree <= 2 and binomials, constant-term divisor testing over small
/// ranges, and exact finite-difference sign isolation for the rest.
/// Throws on the zero polynomial. Result is sorted and duplicate-free.
std::vector<i64> univariate_integer_roots(const std::vector<mpz_class>& coeffs, i64 bound);

/// int64 closed-form path used by the enumeration engines once a worst-case
/// magnitude certificate holds: handles degree <= 2, pure binomials, and a
/// bounded scan; returns false when the shape needs the general solver.
bool univariate_roots_i64(const std::vector<i64>& coeffs, i64 bound, std::vector<i64>& out);

}  // namespace census
