#pragma once

#include "hsum/expression.hpp"
#include "hsum/index_vector.hpp"

namespace hsum {

/// Linear decomposition of S_a(n) * S_b(n) into single sums of weight
/// weight(a) + weight(b). Terms carry tag Z; callers retag as needed.
/// A unit factor returns the other operand.
Expression stuffle_product(const IndexVector& a, const IndexVector& b);

} // namespace hsum
