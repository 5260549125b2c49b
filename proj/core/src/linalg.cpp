#include "hsum/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsum {

Matrix::Matrix(int rows, int cols, mpfr_prec_t bits)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Real(0L, bits))
{
}

PivotedQR::PivotedQR(Matrix a) : m_(a.rows()), n_(a.cols()), qr_(std::move(a))
{
    if (m_ < n_) throw std::invalid_argument("PivotedQR: fewer rows than columns");
    const mpfr_prec_t bits = qr_(0, 0).bits();
    Real tmp(bits), acc(bits);

    for (int j = 0; j < n_; ++j) {
        Real mx(0L, bits);
        for (int i = 0; i < m_; ++i) {
            Real v = abs(qr_(i, j));
            if (v > mx) mx = v;
        }
        if (mx.is_zero()) mx = Real(1L, bits);
        for (int i = 0; i < m_; ++i) qr_(i, j) /= mx;
        scale_.push_back(mx);
    }
    perm_.resize(n_);
    for (int j = 0; j < n_; ++j) perm_[j] = j;

    double r00 = 0;
    for (int k = 0; k < n_; ++k) {
        // Pivot on the largest remaining column norm.
        int best = k;
        Real best_norm(-1L, bits);
        for (int j = k; j < n_; ++j) {
            mpfr_set_zero(acc.raw(), 1);
            for (int i = k; i < m_; ++i) mpfr_fma(acc.raw(), qr_(i, j).raw(), qr_(i, j).raw(), acc.raw(), MPFR_RNDN);
            if (acc > best_norm) {
                best_norm = acc;
                best = j;
            }
        }
        if (best != k) {
            for (int i = 0; i < m_; ++i) mpfr_swap(qr_(i, k).raw(), qr_(i, best).raw());
            std::swap(perm_[k], perm_[best]);
        }

        Real norm = sqrt(best_norm);
        Real alpha = qr_(k, k).sign() > 0 ? -norm : norm;
        // v = x - alpha e1, stored in place; beta = 1 / (-alpha v0)
        qr_(k, k) -= alpha;
        Real beta(bits);
        if (norm.is_zero()) {
            beta = Real(0L, bits);
        } else {
            beta = Real(1L, bits) / (-alpha * qr_(k, k));
        }
        for (int j = k + 1; j < n_; ++j) {
            mpfr_set_zero(acc.raw(), 1);
            for (int i = k; i < m_; ++i) mpfr_fma(acc.raw(), qr_(i, k).raw(), qr_(i, j).raw(), acc.raw(), MPFR_RNDN);
            acc *= beta;
            for (int i = k; i < m_; ++i) {
                mpfr_mul(tmp.raw(), acc.raw(), qr_(i, k).raw(), MPFR_RNDN);
                mpfr_sub(qr_(i, j).raw(), qr_(i, j).raw(), tmp.raw(), MPFR_RNDN);
            }
        }
        beta_.push_back(beta);
        rdiag_.push_back(alpha);
        double ad = std::fabs(alpha.to_double());
        if (k == 0) r00 = ad;
        ratios_.push_back(r00 > 0 ? ad / r00 : 0.0);
    }
}

int PivotedQR::rank(double threshold) const
{
    int r = 0;
    for (double v : ratios_)
        if (v > threshold) ++r;
    return r;
}

double PivotedQR::log10_condition() const
{
    double last = ratios_.empty() ? 1.0 : ratios_.back();
    return last > 0 ? -std::log10(last) : INFINITY;
}

std::vector<Real> PivotedQR::solve(const std::vector<Real>& b_in) const
{
    if (static_cast<int>(b_in.size()) != m_) throw std::invalid_argument("PivotedQR::solve: size mismatch");
    const mpfr_prec_t bits = qr_(0, 0).bits();
    std::vector<Real> b;
    b.reserve(m_);
    for (const Real& v : b_in) {
        Real r(bits);
        mpfr_set(r.raw(), v.raw(), MPFR_RNDN);
        b.push_back(std::move(r));
    }
    Real acc(bits), tmp(bits);
    for (int k = 0; k < n_; ++k) {
        mpfr_set_zero(acc.raw(), 1);
        for (int i = k; i < m_; ++i) mpfr_fma(acc.raw(), qr_(i, k).raw(), b[i].raw(), acc.raw(), MPFR_RNDN);
        acc *= beta_[k];
        for (int i = k; i < m_; ++i) {
            mpfr_mul(tmp.raw(), acc.raw(), qr_(i, k).raw(), MPFR_RNDN);
            mpfr_sub(b[i].raw(), b[i].raw(), tmp.raw(), MPFR_RNDN);
        }
    }
    std::vector<Real> y(n_, Real(0L, bits));
    for (int k = n_ - 1; k >= 0; --k) {
        Real s = b[k];
        for (int j = k + 1; j < n_; ++j) s -= qr_(k, j) * y[j];
        y[k] = s / rdiag_[k];
    }
    std::vector<Real> x(n_, Real(0L, bits));
    for (int k = 0; k < n_; ++k) x[perm_[k]] = y[k] / scale_[perm_[k]];
    return x;
}

Rational best_rational(const Real& x, long max_den)
{
    // Convergents h/k of the continued fraction of x.
    const mpfr_prec_t bits = x.bits();
    Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Real r = x;
    Rational best = 0;
    for (int step = 0; step < 200; ++step) {
        Real fl = floor(r);
        Integer a = to_integer(fl);
        Integer h2 = a * h1 + h0, k2 = a * k1 + k0;
        if (k2 > max_den) break;
        best = Rational(h2, k2);
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        Real frac = r - fl;
        if (frac.is_zero() || frac.exponent2() < -static_cast<long>(bits) + 8) break;
        r = Real(1L, bits) / frac;
    }
    return best;
}

std::optional<std::vector<Integer>> pslq(const std::vector<Real>& x_in, const Real& tolerance, double bound,
                                        int max_iterations)
{
    const int n = static_cast<int>(x_in.size());
    if (n < 2) throw std::invalid_argument("pslq: need at least two numbers");
    const mpfr_prec_t bits = x_in[0].bits();
    const Real gamma = sqrt(Real(4L, bits) / Real(3L, bits)) + Real(0.01, bits);

    std::vector<Real> x = x_in;
    for (const Real& v : x)
        if (v.is_zero()) {
            // A zero entry is its own relation.
            std::vector<Integer> rel(n, 0);
            rel[&v - &x[0]] = 1;
            return rel;
        }
    Real nrm(0L, bits);
    for (const Real& v : x) nrm += v * v;
    nrm = sqrt(nrm);
    for (Real& v : x) v /= nrm;

    std::vector<Real> s(n, Real(0L, bits));
    {
        Real acc(0L, bits);
        for (int k = n - 1; k >= 0; --k) {
            acc += x[k] * x[k];
            s[k] = sqrt(acc);
        }
    }
    Matrix H(n, n - 1, bits);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - 1; ++j) {
            if (i < j) continue;
            if (i == j) {
                H(i, j) = s[j + 1] / s[j];
            } else {
                H(i, j) = -(x[i] * x[j]) / (s[j] * s[j + 1]);
            }
        }
    Matrix A(n, n, bits), B(n, n, bits);
    for (int i = 0; i < n; ++i) {
        A(i, i) = Real(1L, bits);
        B(i, i) = Real(1L, bits);
    }
    std::vector<Real> y = x;

    auto reduce_row = [&](int i, int jmax) {
        for (int j = jmax; j >= 0; --j) {
            if (H(j, j).is_zero()) continue;
            Real t = round(H(i, j) / H(j, j));
            if (t.is_zero()) continue;
            y[j] += t * y[i];
            for (int k = 0; k <= j; ++k) H(i, k) -= t * H(j, k);
            for (int k = 0; k < n; ++k) {
                A(i, k) -= t * A(j, k);
                B(k, j) += t * B(k, i);
            }
        }
    };
    for (int i = 1; i < n; ++i) reduce_row(i, i - 1);

    auto relation_from = [&](int col) {
        std::vector<Integer> rel;
        for (int k = 0; k < n; ++k) rel.push_back(to_integer(B(k, col)));
        return rel;
    };

    for (int iter = 0; iter < max_iterations; ++iter) {
        int m = 0;
        Real best(-1L, bits), g(1L, bits);
        for (int i = 0; i < n - 1; ++i) {
            g *= gamma;
            Real v = g * abs(H(i, i));
            if (v > best) {
                best = v;
                m = i;
            }
        }
        std::swap(y[m], y[m + 1]);
        for (int k = 0; k < n; ++k) {
            mpfr_swap(A(m, k).raw(), A(m + 1, k).raw());
            mpfr_swap(B(k, m).raw(), B(k, m + 1).raw());
        }
        for (int k = 0; k < n - 1; ++k) mpfr_swap(H(m, k).raw(), H(m + 1, k).raw());
        if (m < n - 2) {
            Real t0 = sqrt(H(m, m) * H(m, m) + H(m, m + 1) * H(m, m + 1));
            Real t1 = H(m, m) / t0, t2 = H(m, m + 1) / t0;
            for (int i = m; i < n; ++i) {
                Real t3 = H(i, m), t4 = H(i, m + 1);
                H(i, m) = t1 * t3 + t2 * t4;
                H(i, m + 1) = t1 * t4 - t2 * t3;
            }
        }
        for (int i = m + 1; i < n; ++i) reduce_row(i, std::min(i - 1, m + 1));

        for (int j = 0; j < n; ++j)
            if (abs(y[j]) < tolerance) return relation_from(j);

        // Any relation has norm >= 1 / max |H_jj|.
        Real hmax(0L, bits);
        for (int j = 0; j < n - 1; ++j) {
            Real v = abs(H(j, j));
            if (v > hmax) hmax = v;
        }
        if (!hmax.is_zero() && (Real(1L, bits) / hmax).to_double() > bound) return std::nullopt;
    }
    return std::nullopt;
}

} // namespace hsum
