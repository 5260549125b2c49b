#pragma once

#include "hsum/index_vector.hpp"
#include "hsum/mp.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace hsum {

/// Irreducible constants of the weight-graded alphabet.
enum class Constant { Ln2 = 0, Zeta2 = 1, Zeta3 = 2, Li4Half = 3 };

inline constexpr std::array<Constant, 4> kAllConstants = {Constant::Ln2, Constant::Zeta2, Constant::Zeta3,
                                                         Constant::Li4Half};

int constant_weight(Constant c);
/// Compact token: ln2, z2, z3, Li4h.
const char* constant_token(Constant c);
/// Upper-case name used by the structured format: LN2, ZETA2, ZETA3, LI4HALF.
const char* constant_name(Constant c);

/// Product of irreducible constants, e.g. z2 * ln2^2. The empty monomial is 1.
class ConstantMonomial {
public:
    ConstantMonomial() = default;
    explicit ConstantMonomial(Constant c, int power = 1);
    /// Exponents in Ln2, Zeta2, Zeta3, Li4Half order; all must be >= 0.
    explicit ConstantMonomial(const std::array<int, 4>& exponents);

    int exponent(Constant c) const { return exps_[static_cast<int>(c)]; }
    const std::array<int, 4>& exponents() const { return exps_; }
    int weight() const;
    bool is_one() const { return exps_ == std::array<int, 4>{}; }

    ConstantMonomial operator*(const ConstantMonomial& o) const;

    /// "z2*ln2^2"; "1" for the empty monomial.
    std::string to_string() const;

    /// Value at `bits` precision.
    Real value(mpfr_prec_t bits) const;

    /// Canonical order: descending over (z2, z3, Li4h, ln2) exponents.
    std::strong_ordering operator<=>(const ConstantMonomial& o) const;
    bool operator==(const ConstantMonomial&) const = default;

private:
    std::array<int, 4> exps_{};
};

/// Numeric value of a single constant: ln 2, pi^2/6, zeta(3), Li4(1/2).
Real constant_value(Constant c, mpfr_prec_t bits);

/// Irreducible constant monomials of weight w (1 <= w <= 4), in the order
/// they are usually listed: w=1 {ln2}, w=2 {z2, ln2^2}, w=3 {z2 ln2, ln2^3, z3},
/// w=4 {z2^2, z2 ln2^2, ln2^4, Li4h, z3 ln2}.
std::vector<ConstantMonomial> build_constants(int w);

struct Term {
    Rational coeff;
    ConstantMonomial cmono;
    std::optional<SumRef> sum;

    int weight() const { return cmono.weight() + (sum ? sum->indices.weight() : 0); }
    bool operator==(const Term&) const = default;
};

/// Rational-linear combination of (constant monomial x optional sum) terms.
class Expression {
public:
    Expression() = default;
    explicit Expression(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static Expression sum(const IndexVector& v, ArgTag tag = ArgTag::Z, Rational c = 1);
    static Expression constant(const ConstantMonomial& m, Rational c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(Term t) { terms_.push_back(std::move(t)); }
    Expression& operator+=(const Expression& o);
    Expression& operator-=(const Expression& o);
    Expression& operator*=(const Rational& c);
    /// Multiplies every term by a constant monomial.
    Expression& operator*=(const ConstantMonomial& m);

    /// Weight shared by all terms, or nullopt when mixed (or empty).
    std::optional<int> homogeneous_weight() const;

    /// Replaces every sum's argument tag.
    Expression with_tag(ArgTag tag) const;
    /// Swaps Z <-> Refl on every sum.
    Expression reflected() const;
    /// Only the terms carrying a sum with the given tag.
    Expression filter_tag(ArgTag tag) const;
    /// Only the pure-constant terms.
    Expression constants_only() const;

    bool operator==(const Expression&) const = default;

private:
    std::vector<Term> terms_;
};

/// Merges like terms, drops zeros, sorts into the canonical order: by
/// constant monomial (descending), the bare constant before sums, tag Z
/// before Refl, then index vectors lexicographically.
Expression canonicalize(const Expression& e);

/// Strict weak order on (cmono, sum) keys used by canonicalize.
bool term_key_less(const Term& a, const Term& b);

} // namespace hsum
