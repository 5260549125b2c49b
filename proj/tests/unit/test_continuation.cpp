#include "hsum/basis.hpp"
#include "hsum/continuation.hpp"
#include "hsum/errors.hpp"
#include "hsum/finite_sum.hpp"
#include "hsum/stuffle.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace hsum;

namespace {

constexpr mpfr_prec_t kBits = 256;

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex cplx(double re, double im) { return Complex(re, im, kBits); }

double dist(const Complex& a, const Complex& b) { return abs(a - b).to_double(); }

Complex random_point(std::mt19937_64& rng)
{
    return cplx(uniform(rng, -2.0, 1.0), uniform(rng, 0.3, 2.0));
}

using Float50 = boost::multiprecision::cpp_bin_float_50;

// int_0^1 x^z / (1 + x) dx - ln 2
std::pair<double, double> mellin_alternating(double re, double im)
{
    boost::math::quadrature::tanh_sinh<Float50> ts;
    auto part = [&](bool imag) {
        return ts.integrate([&](Float50 x) -> Float50 {
            if (x <= 0) return Float50(0);
            Float50 lx = log(x);
            Float50 mag = exp(re * lx) / (1 + x);
            return imag ? mag * sin(im * lx) : mag * cos(im * lx);
        }, Float50(0), Float50(1));
    };
    Float50 ln2 = boost::math::constants::ln_two<Float50>();
    return {static_cast<double>(part(false) - ln2), static_cast<double>(part(true))};
}

// int_0^1 (-ln x)^(a-1)/(a-1)! (1 - x^z)/(1 - x) dx
std::pair<double, double> mellin_positive(int a, double re, double im)
{
    boost::math::quadrature::tanh_sinh<Float50> ts;
    double fact = std::tgamma(a);
    auto part = [&](bool imag) {
        return ts.integrate([&](Float50 x) -> Float50 {
            if (x <= 0 || x >= 1) return Float50(0);
            Float50 lx = log(x);
            Float50 w = pow(-lx, a - 1) / fact / (1 - x);
            Float50 mag = exp(re * lx);
            return imag ? -w * mag * sin(im * lx) : w * (1 - mag * cos(im * lx));
        }, Float50(0), Float50(1));
    };
    return {static_cast<double>(part(false)), static_cast<double>(part(true))};
}

} // namespace

TEST_CASE("context validation")
{
    CHECK_THROWS_AS(EvalContext(29), std::invalid_argument);
    CHECK_THROWS_AS(EvalContext(30, 10), std::invalid_argument);
    EvalContext ctx(30);
    CHECK(ctx.tolerance() == doctest::Approx(1e-25));
}

TEST_CASE("even integers reproduce finite sums")
{
    EvalContext ctx(30);
    const auto& u = basis_universe();
    double worst = 0;
    for (long n = 2; n <= 20; n += 2) {
        auto pv = evaluate_all(cplx(static_cast<double>(n), 0), ctx);
        for (std::size_t i = 0; i < u.size(); ++i) {
            Complex exact(Real(finite_sum(u[i], n), kBits), Real(0L, kBits));
            worst = std::max(worst, dist(pv->values[i], exact));
        }
    }
    CHECK(worst < 1e-25);
    CHECK(evaluate({-1}, cplx(2, 0), ctx).re().to_double() == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("depth-1 Mellin integrals")
{
    EvalContext ctx(30);
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 20; ++k) {
        double re = uniform(rng, -0.5, 3.0);
        double im = uniform(rng, 0.2, 2.0) * (k % 2 ? -1 : 1);
        auto [qr, qi] = mellin_alternating(re, im);
        Complex v = evaluate({-1}, cplx(re, im), ctx);
        CHECK(std::hypot(v.re().to_double() - qr, v.im().to_double() - qi) < 1e-12);
    }
    for (int a : {1, 2, 3}) {
        double re = uniform(rng, -0.5, 3.0), im = uniform(rng, 0.2, 2.0);
        auto [qr, qi] = mellin_positive(a, re, im);
        Complex v = evaluate({a}, cplx(re, im), ctx);
        CHECK(std::hypot(v.re().to_double() - qr, v.im().to_double() - qi) < 1e-12);
    }
    // Non-integer real argument.
    auto [qr, qi] = mellin_alternating(0.5, 0);
    CHECK(evaluate({-1}, cplx(0.5, 0), ctx).re().to_double() == doctest::Approx(qr).epsilon(1e-14));
    CHECK(qi == 0);
}

TEST_CASE("S_1(-1-z) - S_1(z) = pi cot(pi z)")
{
    EvalContext ctx(30);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 5; ++k) {
        Complex z = random_point(rng);
        Complex lhs = evaluate({1}, reflect_argument(z), ctx) - evaluate({1}, z, ctx);
        Real pi = Real::pi(kBits);
        Real x = z.re() * pi * 2L, y = z.im() * pi * 2L;
        // cot(x + iy) with doubled arguments: (sin 2x - i sinh 2y) / (cosh 2y - cos 2x)
        Real ey = exp(y), emy = exp(-y);
        Real sh = (ey - emy) / 2L, ch = (ey + emy) / 2L;
        Real den = ch - cos(x);
        Complex cot(sin(x) / den, -sh / den);
        CHECK(dist(lhs, cot * pi) < 1e-24);
    }
}

TEST_CASE("quasi-shuffle holds for the continued sums")
{
    EvalContext ctx(30);
    std::mt19937_64 rng(77);
    const auto& u = basis_universe();
    for (int k = 0; k < 3; ++k) {
        Complex z = random_point(rng);
        auto pv = evaluate_all(z, ctx);
        double worst = 0;
        for (std::size_t i = 0; i < u.size(); ++i)
            for (std::size_t j = 0; j < u.size(); ++j) {
                if (u[i].weight() + u[j].weight() > 4) continue;
                Complex lhs = pv->values[i] * pv->values[j];
                Complex rhs = evaluate_expression(stuffle_product(u[i], u[j]), z, ctx);
                worst = std::max(worst, dist(lhs, rhs));
            }
        CHECK(worst < 1e-24);
    }
}

TEST_CASE("conjugate symmetry")
{
    EvalContext ctx(30);
    std::mt19937_64 rng(91);
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
        Complex z = random_point(rng);
        auto a = evaluate_all(z, ctx);
        auto b = evaluate_all(conj(z), ctx);
        for (std::size_t i = 0; i < a->values.size(); ++i) worst = std::max(worst, dist(conj(a->values[i]), b->values[i]));
    }
    CHECK(worst < 1e-24);
}

TEST_CASE("paired parity recurrences")
{
    EvalContext ctx(30);
    std::mt19937_64 rng(404);
    const auto& u = basis_universe();
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
        Complex z = random_point(rng);
        Complex zm1 = z;
        zm1.re() -= Real(1L, kBits);
        if (pole_distance(zm1) < 1e-2) continue;
        const IndexVector& v = u[rng() % u.size()];
        int s = v.head() < 0 ? -1 : 1;
        Complex p = pow(z, -std::abs(v.head()));
        Complex te = evaluate(v, z, ctx);
        Complex to = detail::evaluate_odd_branch(v, z, ctx).value;
        Complex te1 = evaluate(v, zm1, ctx);
        Complex to1 = detail::evaluate_odd_branch(v, zm1, ctx).value;
        Complex tail_e = v.depth() > 1 ? evaluate(v.tail(), z, ctx) : cplx(1, 0);
        Complex tail_o = v.depth() > 1 ? detail::evaluate_odd_branch(v.tail(), z, ctx).value : cplx(1, 0);
        worst = std::max(worst, dist(te, to1 + p * tail_e));
        worst = std::max(worst, dist(to, te1 + p * tail_o * Real(static_cast<long>(s), kBits)));
    }
    CHECK(worst < 1e-24);
}

TEST_CASE("odd branch matches finite sums at odd integers")
{
    EvalContext ctx(30);
    for (long n : {1L, 3L, 7L}) {
        for (const IndexVector& v : {IndexVector{-1}, IndexVector{-2, 1}, IndexVector{1, -1, -1, 1}}) {
            Complex exact(Real(finite_sum(v, n), kBits), Real(0L, kBits));
            CHECK(dist(detail::evaluate_odd_branch(v, cplx(static_cast<double>(n), 0), ctx).value, exact) < 1e-25);
        }
    }
}

TEST_CASE("poles")
{
    EvalContext ctx(30);
    CHECK_THROWS_AS(evaluate({1}, cplx(-1, 0), ctx), PoleProximity);
    CHECK_THROWS_AS(evaluate({-2, 1}, cplx(-3.0005, 0.0002), ctx), PoleProximity);
    CHECK_NOTHROW(evaluate({1}, cplx(-1.002, 0), ctx));
    CHECK_NOTHROW(evaluate({1, 1}, cplx(0, 0), ctx));

    // (z + m)^weight S_v(z) stays bounded on a small circle around -m.
    std::mt19937_64 rng(3);
    const auto& u = basis_universe();
    for (int m = 1; m <= 3; ++m) {
        for (int k = 0; k < 8; ++k) {
            const IndexVector& v = u[rng() % u.size()];
            double th = uniform(rng, 0, 6.283185307179586);
            Complex d = cplx(1e-2 * std::cos(th), 1e-2 * std::sin(th));
            Complex z = d;
            z.re() -= Real(static_cast<long>(m), kBits);
            Complex scaled = evaluate(v, z, ctx) * pow(d, v.weight());
            CHECK(abs(scaled).to_double() < 50);
        }
    }

    // Residue of S_1 at -1 through (z + 1) S_1(z).
    Complex z = cplx(-1 + 1e-3 * 1.5, 0);
    Complex r = evaluate({1}, z, ctx) * cplx(1.5e-3, 0);
    CHECK(r.re().to_double() == doctest::Approx(-1).epsilon(1e-2));
}

TEST_CASE("Laurent coefficients")
{
    EvalContext ctx(30);
    auto s1 = [&](const Complex& z) { return evaluate({1}, z, ctx); };
    auto s2 = [&](const Complex& z) { return evaluate({2}, z, ctx); };
    // S_1(z) = psi(z + 1) + gamma = -1/(z+1) + zeta(2) (z+1) + O((z+1)^2)
    auto c1 = laurent_coefficients(s1, -1, -2, 1, ctx);
    CHECK(abs(c1[0]).to_double() < 1e-14);
    CHECK(c1[1].re().to_double() == doctest::Approx(-1).epsilon(1e-14));
    CHECK(std::fabs(c1[1].im().to_double()) < 1e-14);
    CHECK(abs(c1[2]).to_double() < 1e-14);
    CHECK(c1[3].re().to_double() == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-14));
    auto c2 = laurent_coefficients(s2, -1, -2, -1, ctx);
    // S_2(z) = zeta(2) - sum_k 1/(k+z)^2, so the leading term at -1 is -1/(z+1)^2.
    CHECK(c2[0].re().to_double() == doctest::Approx(-1).epsilon(1e-14));
    CHECK(abs(c2[1]).to_double() < 1e-14);
    // S_1(z) + 1/(z+1) is regular at -1.
    auto reg = [&](const Complex& z) {
        Complex zp = z;
        zp.re() += Real(1L, kBits);
        return s1(z) + Complex(Real(1L, kBits), Real(0L, kBits)) / zp;
    };
    CHECK(abs(laurent_coefficients(reg, -1, -1, -1, ctx)[0]).to_double() < 1e-14);
    CHECK_THROWS(laurent_coefficients(s1, -1, -1, -1, ctx, 0.5));
}
