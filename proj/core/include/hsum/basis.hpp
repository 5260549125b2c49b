#pragma once

#include "hsum/expression.hpp"
#include "hsum/index_vector.hpp"

#include <optional>
#include <vector>

namespace hsum {

/// The minimal linear set B_w of harmonic sums of weight w (1 <= w <= 4),
/// in the conventional listing order. Sizes 2, 6, 18, 54.
const std::vector<IndexVector>& build_basis(int w);

/// B_1, ..., B_4 concatenated (80 vectors). Closed under tail().
const std::vector<IndexVector>& basis_universe();

/// Position of v in basis_universe(), or -1.
int universe_index(const IndexVector& v);

bool in_basis(const IndexVector& v);

struct AnsatzEntry {
    ConstantMonomial cmono;
    std::optional<IndexVector> sum;

    /// Pure constants do not depend on the argument.
    bool argument_independent() const { return !sum.has_value(); }
    bool operator==(const AnsatzEntry&) const = default;
};

/// Weight-w ansatz: B_w plus (constants of weight w-k) x B_k plus the pure
/// constants of weight w. For w = 4 this is the fixed 95-entry list.
std::vector<AnsatzEntry> build_ansatz(int w = 4);

} // namespace hsum
