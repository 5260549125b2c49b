#pragma once

// Large-argument expansions  sum_{j<=kMaxLog} L^j sum_{k<=K} c[j][k] w^k
// with w = 1/z and L = log z. Coefficients are real.

#include "hsum/mp.hpp"

#include <vector>

namespace hsum::detail {

inline constexpr int kMaxLog = 4;

class ShiftTable;

class LogSeries {
public:
    LogSeries(int order, mpfr_prec_t bits);

    static LogSeries one(int order, mpfr_prec_t bits);

    int order() const { return order_; }
    mpfr_prec_t bits() const { return bits_; }
    Real& at(int j, int k) { return c_[j][k]; }
    const Real& at(int j, int k) const { return c_[j][k]; }

    LogSeries& operator+=(const LogSeries& o);
    LogSeries& operator*=(long s);
    LogSeries& add_scaled(const LogSeries& o, const Real& s);

    /// Multiplies by w^a.
    LogSeries times_w(int a) const;
    LogSeries derivative() const;
    /// Requires a vanishing w^0 part.
    LogSeries antiderivative() const;
    /// f(z - 1).
    LogSeries shifted(const ShiftTable& t) const;
    /// F with F(z) - F(z - 2) = *this, up to an additive constant.
    LogSeries inverse_step2_difference(const std::vector<Real>& em_weights) const;

    Complex evaluate(const Complex& L, const Complex& w) const;
    Real evaluate(const Real& L, const Real& w) const;
    /// Size of the last few retained terms at |L|, |w|.
    double tail_estimate(double absL, double absw) const;

private:
    int order_;
    mpfr_prec_t bits_;
    std::vector<std::vector<Real>> c_;
};

/// Expansion coefficients of (log(1 - w))^p (1 - w)^(-k), p <= kMaxLog.
class ShiftTable {
public:
    ShiftTable(int order, mpfr_prec_t bits);
    const std::vector<Real>& get(int p, int k) const { return p_[p][k]; }

private:
    std::vector<std::vector<std::vector<Real>>> p_;
};

/// Weights B_{2n} 2^(2n-1) / (2n)! = (-1)^(n+1) zeta(2n) / pi^(2n), n >= 1
/// (index 0 unused).
std::vector<Real> euler_maclaurin_step2_weights(int count, mpfr_prec_t bits);

} // namespace hsum::detail
