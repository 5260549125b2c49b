#pragma once

#include "hsum/continuation.hpp"
#include "hsum/expression.hpp"
#include "hsum/index_vector.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hsum {

enum class Provenance { Corpus, Derived, Reflected, Composed };

const char* provenance_name(Provenance p);

/// One factor S_v(z) or S_v(-1-z) of a left-hand product. A unit index
/// vector stands for the constant 1.
struct Factor {
    IndexVector indices;
    ArgTag tag = ArgTag::Z;
    bool operator==(const Factor&) const = default;
};

/// Product of harmonic sums = linear combination of single sums.
///
/// Bilinear reflection records have left = {(a, Z), (b, Refl)}. Composed
/// records may carry more factors.
struct IdentityRecord {
    std::vector<Factor> left;
    Expression right;
    int weight = 0;
    Provenance provenance = Provenance::Corpus;

    static IdentityRecord bilinear(const IndexVector& a, const IndexVector& b, Expression right,
                                   Provenance p = Provenance::Corpus);

    bool is_bilinear() const;
    /// (a, b) of a bilinear record.
    std::pair<IndexVector, IndexVector> key() const;

    /// Mathematical content only; provenance is ignored.
    bool operator==(const IdentityRecord& o) const
    {
        return left == o.left && right == o.right && weight == o.weight;
    }
};

/// Throws std::invalid_argument describing the first broken invariant:
/// weight bookkeeping, canonical right side, basis membership.
void validate_record(const IdentityRecord& r);

/// Random sample points in a rectangle of the upper half plane.
struct SamplePlan {
    int count = 256;
    double re_min = -2.0, re_max = 1.0;
    double im_min = 0.3, im_max = 2.0;
    std::uint64_t seed = 20140507;
    /// Minimum distance from integers for both z and -1-z.
    double exclusion = 1e-2;

    /// Deterministic for a given seed.
    std::vector<Complex> points(mpfr_prec_t bits) const;
};

struct VerifyReport {
    double max_residual = 0;
    std::vector<double> residuals;
    double tolerance = 0;
    bool passed() const { return max_residual <= tolerance; }
};

/// Product of the left factors at z.
Complex evaluate_left(const IdentityRecord& r, const Complex& z, const EvalContext& ctx);

/// |left - right| at `points` seeded random points of the default region.
VerifyReport verify_identity(const IdentityRecord& r, int points, double tol, std::uint64_t seed,
                             const EvalContext& ctx);

/// z <-> -1-z on both sides.
IdentityRecord reflect(const IdentityRecord& r);

/// S_a(z) S_b(-1-z) S_c(-1-z) through the quasi-shuffle of b and c and the
/// bilinear records (looked up directly or by reflection). Throws
/// MissingBilinear when a needed record is absent.
IdentityRecord compose_trilinear(const IndexVector& a, const IndexVector& b, const IndexVector& c,
                                 const std::vector<IdentityRecord>& corpus);

struct PoleReport {
    long point = 0;
    /// Orders -5..-1.
    std::vector<Complex> left;
    std::vector<Complex> near_side;
    std::vector<Complex> far_side;
    /// max |left - near_side| over the orders.
    double mismatch = 0;
    /// max |far_side| over the orders.
    double far_singular = 0;
    bool passed(double tol) const { return mismatch <= tol && far_singular <= tol; }
};

/// Singular parts at z = -m (tag-Z terms carry the pole) or, for
/// `reflected_side`, at z = m - 1 (tag-Refl terms carry it).
PoleReport pole_separation_check(const IdentityRecord& r, int m, const EvalContext& ctx,
                                 bool reflected_side = false);

/// Columns of the weight-w derivation ansatz: every ansatz entry with tag Z,
/// every non-constant entry with tag Refl (constants are argument-independent
/// and counted once). 185 at weight 4.
std::vector<Term> derivation_columns(int w = 4);

struct DeriveOptions {
    long max_denominator = 1000;
    /// Fresh verification points and tolerance.
    int verify_points = 20;
    double verify_tolerance = 1e-10;
};

/// Sampling-based derivation of S_a(z) S_b(-1-z) for a fixed weight.
///
/// Every column of derivation_columns() is a constant monomial times one of
/// 1, S_v(z), S_v(-1-z). Columns sharing a function are linearly dependent
/// over the reals, so the solve runs over the distinct functions and each
/// function's real coefficient is then split over its admissible constants by
/// rational reconstruction. The factorization is shared by all products of
/// the same weight.
///
/// The sampled functions are nearly dependent on the sample strip (condition
/// around 1e188 at weight 4), so useful work needs roughly 250 digits.
/// Throws IllConditioned when fewer than 40 digits would survive the solve.
class Deriver {
public:
    Deriver(int weight, const SamplePlan& plan, const EvalContext& ctx, DeriveOptions opts = {});
    ~Deriver();
    Deriver(const Deriver&) = delete;
    Deriver& operator=(const Deriver&) = delete;

    int weight() const;
    /// Unknowns of the ansatz (185 at weight 4).
    int column_count() const;
    /// Distinct functions actually solved for (161 at weight 4).
    int function_count() const;
    /// log10 of the pivoted-QR diagonal spread of the function system.
    double log10_condition() const;
    /// Numerical rank of the full column system (constant multiples kept
    /// apart) at relative threshold 10^(30-digits). 161 at weight 4.
    int column_rank() const;

    IdentityRecord derive(const IndexVector& a, const IndexVector& b) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

IdentityRecord derive_identity(const IndexVector& a, const IndexVector& b, const SamplePlan& plan,
                               const EvalContext& ctx);

} // namespace hsum
