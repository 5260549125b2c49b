#pragma once

#include "hsum/index_vector.hpp"
#include "hsum/mp.hpp"

#include <vector>

namespace hsum {

/// Exact S_v(n); S_v(0) = 0 and S_unit(n) = 1.
Rational finite_sum(const IndexVector& v, long n);

/// Exact S_v(0), ..., S_v(n).
std::vector<Rational> finite_sum_table(const IndexVector& v, long n);

/// S_v(n) in floating point at `bits` precision.
Real finite_sum_real(const IndexVector& v, long n, mpfr_prec_t bits);

} // namespace hsum
