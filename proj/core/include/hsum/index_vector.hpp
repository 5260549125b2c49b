#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace hsum {

/// Signed index list (a1, ..., ak) labelling the nested sum S_{a1,...,ak}.
///
/// Regular vectors are nonempty and contain no zeros. The default-constructed
/// value is the unit vector (depth 0, weight 0, S = 1); it exists so that a
/// product with a missing factor can be written uniformly, and can only be
/// obtained through the default constructor or unit().
class IndexVector {
public:
    IndexVector() = default;
    /// Throws std::invalid_argument when `indices` is empty or contains 0.
    explicit IndexVector(std::vector<int> indices);
    IndexVector(std::initializer_list<int> indices) : IndexVector(std::vector<int>(indices)) {}

    static IndexVector unit() { return IndexVector(); }

    /// Parses "1", "-2,1", " 1 , -1 " (no brackets).
    static IndexVector parse(std::string_view text);

    const std::vector<int>& indices() const { return indices_; }
    int weight() const;
    int depth() const { return static_cast<int>(indices_.size()); }
    bool is_unit() const { return indices_.empty(); }

    int head() const { return indices_.front(); }
    IndexVector tail() const;

    /// "1,-2" (empty string for the unit).
    std::string to_string() const;

    auto operator<=>(const IndexVector&) const = default;
    bool operator==(const IndexVector&) const = default;

private:
    std::vector<int> indices_;
};

enum class ArgTag { Z, Refl };

inline ArgTag flip(ArgTag t) { return t == ArgTag::Z ? ArgTag::Refl : ArgTag::Z; }

/// Harmonic sum with an argument tag: S_v(z) or S_v(-1-z).
struct SumRef {
    IndexVector indices;
    ArgTag tag = ArgTag::Z;

    auto operator<=>(const SumRef&) const = default;
    bool operator==(const SumRef&) const = default;
};

/// Contraction index sign(a) sign(b) (|a| + |b|).
int contract(int a, int b);

} // namespace hsum

template <>
struct std::hash<hsum::IndexVector> {
    std::size_t operator()(const hsum::IndexVector& v) const noexcept
    {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (int a : v.indices()) h = (h ^ static_cast<std::size_t>(a + 64)) * 0x100000001b3ULL;
        return h;
    }
};
