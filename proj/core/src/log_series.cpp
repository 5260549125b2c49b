#include "log_series.hpp"

#include <cmath>
#include <stdexcept>

namespace hsum::detail {

LogSeries::LogSeries(int order, mpfr_prec_t bits)
    : order_(order), bits_(bits), c_(kMaxLog + 1, std::vector<Real>(order + 1, Real(0L, bits)))
{
}

LogSeries LogSeries::one(int order, mpfr_prec_t bits)
{
    LogSeries s(order, bits);
    s.at(0, 0) = Real(1L, bits);
    return s;
}

LogSeries& LogSeries::operator+=(const LogSeries& o)
{
    for (int j = 0; j <= kMaxLog; ++j)
        for (int k = 0; k <= order_; ++k) c_[j][k] += o.c_[j][k];
    return *this;
}

LogSeries& LogSeries::operator*=(long s)
{
    for (auto& row : c_)
        for (Real& x : row) x *= s;
    return *this;
}

LogSeries& LogSeries::add_scaled(const LogSeries& o, const Real& s)
{
    for (int j = 0; j <= kMaxLog; ++j)
        for (int k = 0; k <= order_; ++k)
            if (!o.c_[j][k].is_zero()) c_[j][k] += o.c_[j][k] * s;
    return *this;
}

LogSeries LogSeries::times_w(int a) const
{
    LogSeries r(order_, bits_);
    for (int j = 0; j <= kMaxLog; ++j)
        for (int k = 0; k + a <= order_; ++k) r.c_[j][k + a] = c_[j][k];
    return r;
}

LogSeries LogSeries::derivative() const
{
    // d/dz (L^j w^k) = j L^(j-1) w^(k+1) - k L^j w^(k+1)
    LogSeries r(order_, bits_);
    for (int j = 0; j <= kMaxLog; ++j)
        for (int k = 0; k < order_; ++k) {
            const Real& c = c_[j][k];
            if (c.is_zero()) continue;
            if (j > 0) r.c_[j - 1][k + 1] += c * static_cast<long>(j);
            if (k > 0) r.c_[j][k + 1] -= c * static_cast<long>(k);
        }
    return r;
}

LogSeries LogSeries::antiderivative() const
{
    LogSeries r(order_, bits_);
    for (int j = 0; j <= kMaxLog; ++j) {
        if (!c_[j][0].is_zero()) throw std::logic_error("antiderivative of a non-decaying term");
        for (int k = 1; k <= order_; ++k) {
            const Real& c = c_[j][k];
            if (c.is_zero()) continue;
            if (k == 1) {
                if (j == kMaxLog) throw std::logic_error("log power overflow");
                r.c_[j + 1][0] += c / static_cast<long>(j + 1);
                continue;
            }
            // int L^j z^-k = L^j z^(1-k)/(1-k) - j/(1-k) int L^(j-1) z^-k
            Real f = c / static_cast<long>(1 - k);
            for (int i = j; i >= 0; --i) {
                r.c_[i][k - 1] += f;
                f *= -static_cast<long>(i);
                f /= static_cast<long>(1 - k);
            }
        }
    }
    return r;
}

LogSeries LogSeries::shifted(const ShiftTable& t) const
{
    // z - 1 = z (1 - w):  L^j w^k -> (L + log(1-w))^j w^k (1-w)^-k
    LogSeries r(order_, bits_);
    static const long binom[kMaxLog + 1][kMaxLog + 1] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    Real tmp(bits_);
    for (int j = 0; j <= kMaxLog; ++j)
        for (int k = 0; k <= order_; ++k) {
            const Real& c = c_[j][k];
            if (c.is_zero()) continue;
            for (int i = 0; i <= j; ++i) {
                const auto& p = t.get(j - i, k);
                Real ci = c * binom[j][i];
                auto& out = r.c_[i];
                for (int n = j - i; k + n <= order_; ++n) {
                    if (p[n].is_zero()) continue;
                    mpfr_mul(tmp.raw(), ci.raw(), p[n].raw(), MPFR_RNDN);
                    mpfr_add(out[k + n].raw(), out[k + n].raw(), tmp.raw(), MPFR_RNDN);
                }
            }
        }
    return r;
}

LogSeries LogSeries::inverse_step2_difference(const std::vector<Real>& em) const
{
    // (1 - e^{-2D})^{-1} = (2D)^{-1} + 1/2 + sum_n B_{2n} (2D)^{2n-1} / (2n)!
    LogSeries F = antiderivative();
    F += *this;
    for (auto& row : F.c_)
        for (Real& x : row) x /= 2;
    LogSeries d = *this;
    for (int m = 1; m <= order_; ++m) {
        d = d.derivative();
        if (m % 2 == 1) {
            std::size_t n = static_cast<std::size_t>((m + 1) / 2);
            if (n >= em.size()) throw std::logic_error("not enough Euler-Maclaurin weights");
            F.add_scaled(d, em[n]);
        }
    }
    return F;
}

Complex LogSeries::evaluate(const Complex& L, const Complex& w) const
{
    Complex total(bits_), Lp(Real(1L, bits_), Real(0L, bits_));
    Real t0(bits_), t1(bits_);
    for (int j = 0; j <= kMaxLog; ++j) {
        Complex acc(bits_);
        bool any = false;
        for (int k = order_; k >= 0; --k) {
            if (any) acc *= w;
            if (!c_[j][k].is_zero()) {
                acc.re() += c_[j][k];
                any = true;
            }
        }
        if (any) total += acc * Lp;
        if (j < kMaxLog) Lp *= L;
    }
    return total;
}

Real LogSeries::evaluate(const Real& L, const Real& w) const
{
    Real total(0L, bits_), Lp(1L, bits_);
    for (int j = 0; j <= kMaxLog; ++j) {
        Real acc(0L, bits_);
        for (int k = order_; k >= 0; --k) {
            acc *= w;
            acc += c_[j][k];
        }
        total += acc * Lp;
        Lp *= L;
    }
    return total;
}

double LogSeries::tail_estimate(double absL, double absw) const
{
    double est = 0;
    for (int j = 0; j <= kMaxLog; ++j) {
        double m = 0;
        for (int k = std::max(0, order_ - 3); k <= order_; ++k) {
            const Real& c = c_[j][k];
            if (c.is_zero()) continue;
            // log-domain to dodge overflow of huge coefficients
            long e = 0;
            double mant = mpfr_get_d_2exp(&e, c.raw(), MPFR_RNDN);
            double lg = std::log(std::fabs(mant)) + std::log(2.0) * static_cast<double>(e) + k * std::log(absw) +
                        j * std::log(std::max(absL, 1e-300));
            m = std::max(m, std::exp(lg));
        }
        est += m;
    }
    return est;
}

ShiftTable::ShiftTable(int order, mpfr_prec_t bits)
{
    // lambda = log(1 - w) = -sum_{n>=1} w^n / n
    std::vector<Real> lam(order + 1, Real(0L, bits));
    for (int n = 1; n <= order; ++n) lam[n] = Real(-1L, bits) / static_cast<long>(n);

    p_.assign(kMaxLog + 1, {});
    std::vector<Real> pow_p(order + 1, Real(0L, bits));
    pow_p[0] = Real(1L, bits);
    for (int p = 0; p <= kMaxLog; ++p) {
        if (p > 0) {
            std::vector<Real> next(order + 1, Real(0L, bits));
            for (int a = 0; a <= order; ++a) {
                if (pow_p[a].is_zero()) continue;
                for (int b = 1; a + b <= order; ++b) next[a + b] += pow_p[a] * lam[b];
            }
            pow_p = std::move(next);
        }
        // multiplying by (1 - w)^-1 is a running sum
        auto& row = p_[p];
        row.reserve(order + 1);
        row.push_back(pow_p);
        for (int k = 1; k <= order; ++k) {
            std::vector<Real> s = row.back();
            for (int n = 1; n <= order; ++n) s[n] += s[n - 1];
            row.push_back(std::move(s));
        }
    }
}

std::vector<Real> euler_maclaurin_step2_weights(int count, mpfr_prec_t bits)
{
    std::vector<Real> out;
    out.reserve(count + 1);
    out.emplace_back(0L, bits);
    Real pi = Real::pi(bits);
    Real pi2 = pi * pi;
    Real pw(1L, bits);
    for (int n = 1; n <= count; ++n) {
        pw *= pi2;
        Real v = Real::zeta(static_cast<unsigned long>(2 * n), bits) / pw;
        if (n % 2 == 0) v = -v;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace hsum::detail
