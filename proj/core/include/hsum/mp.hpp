#pragma once

// Thin value-semantic wrappers over MPFR. Every Real carries its own
// precision; binary operations produce a result at the larger of the two
// operand precisions, so no process-wide precision state is involved.

#include <mpfr.h>

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace hsum {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Decimal digits -> MPFR bits (rounded up, plus a small guard).
mpfr_prec_t digits_to_bits(int digits);

class Real {
public:
    explicit Real(mpfr_prec_t bits = 64);
    Real(double v, mpfr_prec_t bits);
    Real(long v, mpfr_prec_t bits);
    Real(const Rational& q, mpfr_prec_t bits);
    /// Parses a decimal literal; throws std::invalid_argument on junk.
    Real(const std::string& s, mpfr_prec_t bits);

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator*=(long o);
    Real& operator/=(long o);

    Real operator-() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    /// Base-2 exponent (value in [0.5, 1) * 2^exp); very negative for zero.
    long exponent2() const;

    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits) const;

    static Real pi(mpfr_prec_t bits);
    static Real ln2(mpfr_prec_t bits);
    static Real zeta(unsigned long s, mpfr_prec_t bits);

private:
    mpfr_t v_;
};

Real operator+(Real a, const Real& b);
Real operator-(Real a, const Real& b);
Real operator*(Real a, const Real& b);
Real operator/(Real a, const Real& b);
Real operator*(Real a, long b);
Real operator/(Real a, long b);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real round(const Real& x);
/// Nearest integer (ties away from zero) as an exact big integer.
Integer to_integer(const Real& x);
/// Exact rational value of a finite Real.
Rational to_rational(const Real& x);

class Complex {
public:
    explicit Complex(mpfr_prec_t bits = 64) : re_(bits), im_(bits) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    Complex(double re, double im, mpfr_prec_t bits) : re_(re, bits), im_(im, bits) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }
    mpfr_prec_t bits() const { return re_.bits(); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex& operator*=(const Real& o);
    Complex& operator*=(long o);
    Complex& operator/=(long o);
    Complex operator-() const { return Complex(-re_, -im_); }

    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    /// "a+bi" with `digits` significant digits per component.
    std::string to_string(int digits) const;

private:
    Real re_;
    Real im_;
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator*(Complex a, const Real& b);
Complex operator*(const Real& b, Complex a);
Complex operator*(Complex a, long b);

Complex conj(const Complex& z);
Real abs(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
Complex pow(const Complex& z, long n);
Complex exp_i(const Real& theta);

/// acc += a * b, reusing scratch storage. Hot loops only.
void fma_into(Complex& acc, const Complex& a, const Complex& b, Real& t0, Real& t1);

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" with optional whitespace.
/// Throws std::invalid_argument on malformed input.
Complex parse_complex(const std::string& text, mpfr_prec_t bits);

} // namespace hsum
