#include "hsum/continuation.hpp"

#include "hsum/basis.hpp"
#include "hsum/errors.hpp"
#include "hsum/finite_sum.hpp"
#include "log_series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <unordered_map>

namespace hsum {

namespace {

constexpr double kPoleExclusion = 1e-3;
constexpr int kGuardDigits = 20;

using detail::LogSeries;

// Expansions of both parity branches for every basis sum, with constants
// matched to exact sums at N (even branch) and N + 1 (odd branch).
struct Tables {
    mpfr_prec_t bits;
    int shift_target;
    int order;
    std::vector<LogSeries> even;
    std::vector<LogSeries> odd;
    std::vector<double> const_error;
    std::vector<int> tail;
    std::vector<int> head_sign;
    std::vector<int> head_abs;
};

std::shared_ptr<const Tables> build_tables(mpfr_prec_t bits, int R, int K)
{
    auto t = std::make_shared<Tables>();
    t->bits = bits;
    t->shift_target = R;
    t->order = K;
    const auto& u = basis_universe();
    const std::size_t n = u.size();
    detail::ShiftTable shift(K, bits);
    auto em = detail::euler_maclaurin_step2_weights(K / 2 + 2, bits);

    const long N = R % 2 == 0 ? R : R + 1;
    Real logN = log(Real(N, bits)), invN = Real(1L, bits) / Real(N, bits);
    Real logN1 = log(Real(N + 1, bits)), invN1 = Real(1L, bits) / Real(N + 1, bits);
    double tailN = 0;

    LogSeries one = LogSeries::one(K, bits);
    t->even.reserve(n);
    t->odd.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const IndexVector& v = u[i];
        int ti = v.depth() > 1 ? universe_index(v.tail()) : -1;
        int s = v.head() < 0 ? -1 : 1;
        int a = std::abs(v.head());
        t->tail.push_back(ti);
        t->head_sign.push_back(s);
        t->head_abs.push_back(a);
        const LogSeries& te = ti < 0 ? one : t->even[ti];
        const LogSeries& to = ti < 0 ? one : t->odd[ti];

        // T_v(z) - T_v(z-2) = s (z-1)^-a U_tail(z-1) + z^-a T_tail(z)
        LogSeries ge = to.times_w(a);
        ge *= s;
        ge = ge.shifted(shift);
        ge += te.times_w(a);
        // U_v(z) - U_v(z-2) = (z-1)^-a T_tail(z-1) + s z^-a U_tail(z)
        LogSeries go = te.times_w(a).shifted(shift);
        LogSeries tmp = to.times_w(a);
        tmp *= s;
        go += tmp;

        LogSeries fe = ge.inverse_step2_difference(em);
        LogSeries fo = go.inverse_step2_difference(em);
        fe.at(0, 0) += finite_sum_real(v, N, bits) - fe.evaluate(logN, invN);
        fo.at(0, 0) += finite_sum_real(v, N + 1, bits) - fo.evaluate(logN1, invN1);
        double ce = fe.tail_estimate(logN.to_double(), invN.to_double()) +
                    fo.tail_estimate(logN1.to_double(), invN1.to_double());
        tailN = std::max(tailN, ce);
        t->const_error.push_back(ce + (ti < 0 ? 0.0 : t->const_error[ti]) * 4 * (1 + logN.to_double()));
        t->even.push_back(std::move(fe));
        t->odd.push_back(std::move(fo));
    }
    return t;
}

std::shared_ptr<const Tables> tables_for(mpfr_prec_t bits, int R, int K)
{
    static std::mutex mu;
    static std::map<std::tuple<mpfr_prec_t, int, int>, std::shared_ptr<const Tables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(bits, R, K);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto t = build_tables(bits, R, K);
    cache.emplace(key, t);
    return t;
}

double abs_d(const Complex& z) { return std::hypot(z.re().to_double(), z.im().to_double()); }

void check_pole(const Complex& z)
{
    double d = pole_distance(z);
    if (d < kPoleExclusion) throw PoleProximity("argument " + z.to_string(12) + " is within 1e-3 of a pole");
}

int default_shift_target(mpfr_prec_t bits) { return std::max(20, static_cast<int>(std::ceil(bits / 3.3219 * 1.6))); }
int default_order(mpfr_prec_t bits) { return static_cast<int>(std::ceil(bits / 3.3219)) + 12; }

struct Plan {
    mpfr_prec_t bits;
    std::shared_ptr<const Tables> tables;
};

Plan plan_for(const Complex& z, const EvalContext& ctx)
{
    mpfr_prec_t bits = detail::working_bits(z, ctx);
    int R = ctx.shift_target() > 0 ? ctx.shift_target() : default_shift_target(bits);
    int K = ctx.tail_order() > 0 ? ctx.tail_order() : default_order(bits);
    return {bits, tables_for(bits, R, K)};
}

// Backward recurrence from z + M (M even, Re >= R) down to z. `odd` selects
// the branch continued from odd integers.
PointValues run(const Complex& z_in, const EvalContext& ctx, bool odd)
{
    check_pole(z_in);
    Plan plan = plan_for(z_in, ctx);
    const Tables& t = *plan.tables;
    const mpfr_prec_t bits = plan.bits;
    const std::size_t n = t.even.size();
    const double eps = std::ldexp(1.0, -static_cast<int>(bits) + 4);

    Complex z(bits);
    mpfr_set(z.re().raw(), z_in.re().raw(), MPFR_RNDN);
    mpfr_set(z.im().raw(), z_in.im().raw(), MPFR_RNDN);

    double re = z.re().to_double();
    long M = 0;
    if (re < t.shift_target) {
        M = static_cast<long>(std::ceil(t.shift_target - re));
        if (M % 2) ++M;
    }

    Complex zeta = z;
    zeta.re() += Real(M, bits);
    Complex L = log(zeta);
    Complex w = Complex(Real(1L, bits), Real(0L, bits)) / zeta;
    double absL = abs_d(L), absw = abs_d(w);

    PointValues pv;
    pv.values.reserve(n);
    pv.errors.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const LogSeries& s = odd ? t.odd[i] : t.even[i];
        pv.values.push_back(s.evaluate(L, w));
        pv.errors.push_back(s.tail_estimate(absL, absw) + t.const_error[i] + abs_d(pv.values.back()) * eps);
    }

    Complex inv(bits), p2(bits), p3(bits), p4(bits), term(bits);
    Real t0(bits), t1(bits);
    const Complex* pw[5] = {nullptr, &inv, &p2, &p3, &p4};
    for (long m = M; m >= 1; --m) {
        Complex zm = z;
        zm.re() += Real(m, bits);
        inv = Complex(Real(1L, bits), Real(0L, bits)) / zm;
        p2 = inv * inv;
        p3 = p2 * inv;
        p4 = p3 * inv;
        double ai = abs_d(inv);
        double apw[5] = {1, ai, ai * ai, ai * ai * ai, ai * ai * ai * ai};
        // Even branch at even m uses the plain step, odd m the signed step;
        // the odd branch the other way round.
        bool signed_step = (m % 2 == 1) != odd;
        // Longest vectors first so tails still hold values at m.
        for (std::size_t k = n; k-- > 0;) {
            int a = t.head_abs[k];
            int ti = t.tail[k];
            if (ti < 0) {
                term = *pw[a];
            } else {
                term = *pw[a] * pv.values[ti];
            }
            if (signed_step && t.head_sign[k] < 0) {
                pv.values[k] += term;
            } else {
                pv.values[k] -= term;
            }
            double te = ti < 0 ? 0.0 : apw[a] * pv.errors[ti];
            pv.errors[k] += te + (abs_d(pv.values[k]) + abs_d(term)) * eps;
        }
    }
    return pv;
}

std::string point_key(const Complex& z, mpfr_prec_t bits, int digits)
{
    return z.re().to_string(digits + 5) + "|" + z.im().to_string(digits + 5) + "|" + std::to_string(bits);
}

} // namespace

class EvalCache {
public:
    std::shared_ptr<const PointValues> find(const std::string& key)
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : it->second;
    }

    void insert(const std::string& key, std::shared_ptr<const PointValues> v)
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (map_.size() >= kMaxEntries) map_.clear();
        map_.emplace(key, std::move(v));
    }

    void clear()
    {
        std::lock_guard<std::mutex> lock(mu_);
        map_.clear();
    }

private:
    static constexpr std::size_t kMaxEntries = 8192;
    std::mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<const PointValues>> map_;
};

EvalContext::EvalContext(int digits, int shift_target, int tail_order)
    : digits_(digits), shift_target_(shift_target), tail_order_(tail_order), cache_(std::make_shared<EvalCache>())
{
    if (digits < 30) throw std::invalid_argument("EvalContext: digits must be >= 30");
    if (shift_target != 0 && shift_target < 20) throw std::invalid_argument("EvalContext: shift_target must be >= 20");
    if (tail_order < 0) throw std::invalid_argument("EvalContext: tail_order must be >= 0");
}

double EvalContext::tolerance() const { return std::pow(10.0, 5 - digits_); }

void EvalContext::clear_cache() const { cache_->clear(); }

double pole_distance(const Complex& z)
{
    double re = z.re().to_double(), im = z.im().to_double();
    double m = std::round(re);
    if (m > -1) m = -1;
    return std::hypot(re - m, im);
}

Complex reflect_argument(const Complex& z)
{
    Complex r = -z;
    r.re() -= Real(1L, z.bits());
    return r;
}

namespace detail {

mpfr_prec_t working_bits(const Complex& z, const EvalContext& ctx)
{
    int extra = 0;
    double d = pole_distance(z);
    if (d < 1) extra = static_cast<int>(std::ceil(4 * std::log10(1 / d)));
    // Large negative real parts accumulate cancellation along the descent.
    double re = z.re().to_double();
    if (re < -10) extra += static_cast<int>(std::ceil(std::log10(-re))) * 4;
    mpfr_prec_t bits = digits_to_bits(ctx.digits() + kGuardDigits + extra);
    return (bits + 63) / 64 * 64;
}

Evaluation evaluate_odd_branch(const IndexVector& v, const Complex& z, const EvalContext& ctx)
{
    int i = universe_index(v);
    if (i < 0) throw std::invalid_argument("index vector " + v.to_string() + " is outside the weight-4 basis");
    PointValues pv = run(z, ctx, true);
    return {pv.values[i], pv.errors[i]};
}

} // namespace detail

std::shared_ptr<const PointValues> evaluate_all(const Complex& z, const EvalContext& ctx)
{
    check_pole(z);
    std::string key = point_key(z, detail::working_bits(z, ctx), ctx.digits());
    if (auto hit = ctx.cache().find(key)) return hit;
    auto pv = std::make_shared<const PointValues>(run(z, ctx, false));
    ctx.cache().insert(key, pv);
    return pv;
}

Evaluation evaluate_with_error(const IndexVector& v, const Complex& z, const EvalContext& ctx)
{
    int i = universe_index(v);
    if (i < 0) throw std::invalid_argument("index vector " + v.to_string() + " is outside the weight-4 basis");
    auto pv = evaluate_all(z, ctx);
    Evaluation e{pv->values[i], pv->errors[i]};
    if (!(e.error <= ctx.tolerance()) || !e.value.is_finite())
        throw PrecisionExhausted("error bound " + std::to_string(e.error) + " for S_" + v.to_string() + " at " +
                                 z.to_string(12) + " exceeds target");
    return e;
}

Complex evaluate(const IndexVector& v, const Complex& z, const EvalContext& ctx)
{
    return evaluate_with_error(v, z, ctx).value;
}

Complex evaluate_expression(const Expression& e, const Complex& z, const EvalContext& ctx)
{
    mpfr_prec_t bits = digits_to_bits(ctx.digits() + kGuardDigits);
    Complex total(bits);
    std::shared_ptr<const PointValues> at_z, at_r;
    for (const Term& t : e.terms()) {
        Real c(t.coeff, bits);
        if (!t.cmono.is_one()) c *= t.cmono.value(bits);
        if (!t.sum) {
            total.re() += c;
            continue;
        }
        if (t.sum->indices.is_unit()) {
            total.re() += c;
            continue;
        }
        Complex arg = t.sum->tag == ArgTag::Z ? z : reflect_argument(z);
        Complex v = evaluate(t.sum->indices, arg, ctx);
        total += v * c;
    }
    return total;
}

std::vector<Complex> laurent_coefficients(const std::function<Complex(const Complex&)>& f, long z0, int lo, int hi,
                                          const EvalContext& ctx, double radius)
{
    if (lo > hi) throw std::invalid_argument("laurent_coefficients: empty order range");
    if (!(radius > 1e-2 && radius <= 0.25)) throw std::invalid_argument("laurent_coefficients: radius out of range");
    mpfr_prec_t bits = digits_to_bits(ctx.digits() + kGuardDigits);
    Real r(radius, bits);
    Real two_pi = Real::pi(bits) * 2L;
    const double target = std::pow(10.0, -ctx.digits() / 2.0);

    // f sampled on the circle, reused when the node count doubles.
    std::vector<Complex> samples;
    int N = 32;
    auto node = [&](int k, int count) { return exp_i(two_pi * Real(static_cast<long>(k), bits) / static_cast<long>(count)); };
    auto sample = [&](int count) {
        std::vector<Complex> next(count, Complex(bits));
        for (int k = 0; k < count; ++k) {
            if (count > 1 && !samples.empty() && k % 2 == 0) {
                next[k] = samples[k / 2];
                continue;
            }
            Complex p = node(k, count) * r;
            p.re() += Real(z0, bits);
            next[k] = f(p);
        }
        samples = std::move(next);
    };
    auto coefficients = [&](int count) {
        std::vector<Complex> out;
        for (int m = lo; m <= hi; ++m) {
            Complex acc(bits);
            for (int k = 0; k < count; ++k) {
                // (r e^{i theta})^-m
                Complex u = node(-m * k % count, count);
                acc += samples[k] * u;
            }
            acc /= static_cast<long>(count);
            acc *= pow(r, -m);
            out.push_back(std::move(acc));
        }
        return out;
    };

    sample(N);
    auto prev = coefficients(N);
    for (N = 64; N <= 4096; N *= 2) {
        sample(N);
        auto cur = coefficients(N);
        double diff = 0, scale = 1;
        for (std::size_t i = 0; i < cur.size(); ++i) {
            diff = std::max(diff, abs_d(cur[i] - prev[i]));
            scale = std::max(scale, abs_d(cur[i]));
        }
        if (diff <= target * scale) return cur;
        prev = std::move(cur);
    }
    throw PrecisionExhausted("contour sampling did not converge");
}

} // namespace hsum
