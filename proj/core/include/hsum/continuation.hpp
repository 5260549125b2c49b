#pragma once

#include "hsum/expression.hpp"
#include "hsum/index_vector.hpp"
#include "hsum/mp.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace hsum {

class EvalCache;

/// Precision and truncation settings plus a shared memo table.
///
/// shift_target and tail_order of 0 mean "derive from digits". Copies share
/// the same cache.
class EvalContext {
public:
    explicit EvalContext(int digits = 30, int shift_target = 0, int tail_order = 0);

    int digits() const { return digits_; }
    int shift_target() const { return shift_target_; }
    int tail_order() const { return tail_order_; }
    /// Error target 10^(5 - digits).
    double tolerance() const;

    EvalCache& cache() const { return *cache_; }
    /// Drops memoized point values.
    void clear_cache() const;

private:
    int digits_;
    int shift_target_;
    int tail_order_;
    std::shared_ptr<EvalCache> cache_;
};

struct Evaluation {
    Complex value;
    /// Self-reported absolute error bound.
    double error = 0;
};

/// Continuation from even integers of every sum in basis_universe() at one
/// argument, indexed like basis_universe().
struct PointValues {
    std::vector<Complex> values;
    std::vector<double> errors;
};

/// Distance from z to the nearest pole (negative integer).
double pole_distance(const Complex& z);

/// S_v continued from even integers. Throws PoleProximity within 1e-3 of a
/// negative integer and PrecisionExhausted when the error target is missed.
Complex evaluate(const IndexVector& v, const Complex& z, const EvalContext& ctx);
Evaluation evaluate_with_error(const IndexVector& v, const Complex& z, const EvalContext& ctx);

/// All 80 basis sums at z (memoized).
std::shared_ptr<const PointValues> evaluate_all(const Complex& z, const EvalContext& ctx);

/// Sum of coeff * constants * S(arg), arg = z for tag Z and -1-z for Refl.
Complex evaluate_expression(const Expression& e, const Complex& z, const EvalContext& ctx);

/// -1 - z.
Complex reflect_argument(const Complex& z);

/// Laurent coefficients c_m (m = lo..hi) of f around z0 by the trapezoid rule
/// on a circle of the given radius. Doubles the node count from 64 until two
/// successive estimates agree to 10^(-digits/2); otherwise PrecisionExhausted.
std::vector<Complex> laurent_coefficients(const std::function<Complex(const Complex&)>& f, long z0, int lo,
                                          int hi, const EvalContext& ctx, double radius = 0.25);

namespace detail {

/// Continuation from odd integers (branch used only inside the recurrence).
/// Exposed for recurrence-consistency tests.
Evaluation evaluate_odd_branch(const IndexVector& v, const Complex& z, const EvalContext& ctx);

/// Working precision chosen for an evaluation at z.
mpfr_prec_t working_bits(const Complex& z, const EvalContext& ctx);

} // namespace detail

} // namespace hsum
