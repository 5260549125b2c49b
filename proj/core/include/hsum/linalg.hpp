#pragma once

#include "hsum/mp.hpp"

#include <optional>
#include <vector>

namespace hsum {

/// Dense row-major real matrix at a fixed precision.
class Matrix {
public:
    Matrix(int rows, int cols, mpfr_prec_t bits);
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Real& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Real& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

private:
    int rows_, cols_;
    std::vector<Real> a_;
};

/// Householder QR with column pivoting of an m x n matrix (m >= n), for
/// repeated least-squares solves against one matrix.
class PivotedQR {
public:
    /// Columns are scaled to unit max-norm before factoring.
    explicit PivotedQR(Matrix a);

    int rows() const { return m_; }
    int cols() const { return n_; }
    /// |R_kk| / |R_00| after scaling, in pivot order.
    const std::vector<double>& diagonal_ratios() const { return ratios_; }
    /// Number of diagonal ratios above `threshold`.
    int rank(double threshold) const;
    /// log10 of |R_00| / |R_last|.
    double log10_condition() const;

    /// Least-squares solution of A x = b (full rank assumed).
    std::vector<Real> solve(const std::vector<Real>& b) const;

private:
    int m_, n_;
    Matrix qr_;
    std::vector<Real> beta_;
    std::vector<Real> rdiag_;
    std::vector<int> perm_;
    std::vector<Real> scale_;
    std::vector<double> ratios_;
};

/// Best rational approximation p/q of x with q <= max_den (continued fractions).
Rational best_rational(const Real& x, long max_den);

/// Integer relation m with sum m_i x_i ~ 0 (PSLQ). Returns nullopt if no
/// relation with max |m_i| <= bound exists at the working precision.
std::optional<std::vector<Integer>> pslq(const std::vector<Real>& x, const Real& tolerance, double bound,
                                        int max_iterations = 10000);

} // namespace hsum
