#include "hsum/mp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <stdexcept>

namespace hsum {

namespace {

mpfr_prec_t max_bits(const Real& a, const Real& b) { return std::max(a.bits(), b.bits()); }

// Raises the precision of `a` (in place, exact) when `b` is more precise.
void widen(Real& a, const Real& b)
{
    if (b.bits() > a.bits()) mpfr_prec_round(a.raw(), b.bits(), MPFR_RNDN);
}

} // namespace

mpfr_prec_t digits_to_bits(int digits)
{
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

Real::Real(mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(long v, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const Rational& q, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.backend().data(), MPFR_RNDN);
}

Real::Real(const std::string& s, mpfr_prec_t bits)
{
    mpfr_init2(v_, bits);
    char* end = nullptr;
    mpfr_strtofr(v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end == s.c_str() || *end != '\0') {
        mpfr_clear(v_);
        throw std::invalid_argument("not a real number: '" + s + "'");
    }
}

Real::Real(const Real& o)
{
    mpfr_init2(v_, o.bits());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept
{
    mpfr_init2(v_, o.bits());
    mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.bits());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real& Real::operator+=(const Real& o)
{
    widen(*this, o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o)
{
    widen(*this, o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o)
{
    widen(*this, o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o)
{
    widen(*this, o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(long o)
{
    mpfr_mul_si(v_, v_, o, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(long o)
{
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const
{
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

long Real::exponent2() const
{
    if (mpfr_zero_p(v_)) return -(1L << 40);
    return mpfr_get_exp(v_);
}

std::string Real::to_string(int digits) const
{
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(std::max(digits - 1, 0)) + "Re";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

Real Real::pi(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::ln2(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
}

Real Real::zeta(unsigned long s, mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_zeta_ui(r.v_, s, MPFR_RNDN);
    return r;
}

Real operator+(Real a, const Real& b) { return a += b; }
Real operator-(Real a, const Real& b) { return a -= b; }
Real operator*(Real a, const Real& b) { return a *= b; }
Real operator/(Real a, const Real& b) { return a /= b; }
Real operator*(Real a, long b) { return a *= b; }
Real operator/(Real a, long b) { return a /= b; }

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

#define HSUM_UNARY(name, fn)                 \
    Real name(const Real& x)                 \
    {                                        \
        Real r(x.bits());                    \
        fn(r.raw(), x.raw(), MPFR_RNDN);     \
        return r;                            \
    }

HSUM_UNARY(abs, mpfr_abs)
HSUM_UNARY(sqrt, mpfr_sqrt)
HSUM_UNARY(log, mpfr_log)
HSUM_UNARY(exp, mpfr_exp)
HSUM_UNARY(sin, mpfr_sin)
HSUM_UNARY(cos, mpfr_cos)

#undef HSUM_UNARY

Real atan2(const Real& y, const Real& x)
{
    Real r(max_bits(x, y));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& x, long n)
{
    Real r(x.bits());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

Real floor(const Real& x)
{
    Real r(x.bits());
    mpfr_floor(r.raw(), x.raw());
    return r;
}

Real round(const Real& x)
{
    Real r(x.bits());
    mpfr_round(r.raw(), x.raw());
    return r;
}

Integer to_integer(const Real& x)
{
    Integer z;
    mpfr_get_z(z.backend().data(), x.raw(), MPFR_RNDNA);
    return z;
}

Rational to_rational(const Real& x)
{
    if (!x.is_finite()) throw std::domain_error("to_rational: non-finite value");
    if (x.is_zero()) return Rational(0);
    // x = m * 2^e exactly.
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.backend().data(), x.raw());
    Rational q(m);
    if (e >= 0) {
        q *= Rational(Integer(1) << static_cast<unsigned>(e));
    } else {
        q /= Rational(Integer(1) << static_cast<unsigned>(-e));
    }
    return q;
}

// ---------------------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Complex& Complex::operator-=(const Complex& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Complex& Complex::operator*=(const Complex& o)
{
    Real t = re_ * o.im_;
    re_ *= o.re_;
    Real u = im_ * o.im_;
    re_ -= u;
    im_ *= o.re_;
    im_ += t;
    return *this;
}

Complex& Complex::operator/=(const Complex& o)
{
    Real den = o.re_ * o.re_ + o.im_ * o.im_;
    Real nr = re_ * o.re_ + im_ * o.im_;
    Real ni = im_ * o.re_ - re_ * o.im_;
    re_ = nr / den;
    im_ = ni / den;
    return *this;
}

Complex& Complex::operator*=(const Real& o)
{
    re_ *= o;
    im_ *= o;
    return *this;
}

Complex& Complex::operator*=(long o)
{
    re_ *= o;
    im_ *= o;
    return *this;
}

Complex& Complex::operator/=(long o)
{
    re_ /= o;
    im_ /= o;
    return *this;
}

std::string Complex::to_string(int digits) const
{
    std::string r = re_.to_string(digits);
    std::string i = im_.to_string(digits);
    if (!i.empty() && i[0] == '-') return r + i + "i";
    return r + "+" + i + "i";
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator*(Complex a, const Real& b) { return a *= b; }
Complex operator*(const Real& b, Complex a) { return a *= b; }
Complex operator*(Complex a, long b) { return a *= b; }

Complex conj(const Complex& z) { return Complex(z.re(), -z.im()); }

Real abs(const Complex& z)
{
    Real r(std::max(z.re().bits(), z.im().bits()));
    mpfr_hypot(r.raw(), z.re().raw(), z.im().raw(), MPFR_RNDN);
    return r;
}

Complex log(const Complex& z) { return Complex(log(abs(z)), atan2(z.im(), z.re())); }

Complex pow(const Complex& z, long n)
{
    Complex base = z;
    bool invert = n < 0;
    unsigned long e = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Complex acc(Real(1L, z.bits()), Real(0L, z.bits()));
    while (e) {
        if (e & 1UL) acc *= base;
        e >>= 1;
        if (e) base *= Complex(base);
    }
    if (invert) {
        Complex one(Real(1L, z.bits()), Real(0L, z.bits()));
        return one / acc;
    }
    return acc;
}

Complex exp_i(const Real& theta) { return Complex(cos(theta), sin(theta)); }

void fma_into(Complex& acc, const Complex& a, const Complex& b, Real& t0, Real& t1)
{
    mpfr_mul(t0.raw(), a.re().raw(), b.re().raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.im().raw(), b.im().raw(), MPFR_RNDN);
    mpfr_sub(t0.raw(), t0.raw(), t1.raw(), MPFR_RNDN);
    mpfr_add(acc.re().raw(), acc.re().raw(), t0.raw(), MPFR_RNDN);
    mpfr_mul(t0.raw(), a.re().raw(), b.im().raw(), MPFR_RNDN);
    mpfr_mul(t1.raw(), a.im().raw(), b.re().raw(), MPFR_RNDN);
    mpfr_add(t0.raw(), t0.raw(), t1.raw(), MPFR_RNDN);
    mpfr_add(acc.im().raw(), acc.im().raw(), t0.raw(), MPFR_RNDN);
}

namespace {

std::string strip(const std::string& s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

} // namespace

Complex parse_complex(const std::string& text, mpfr_prec_t bits)
{
    std::string s = strip(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    auto real_of = [&](const std::string& t) { return Real(t, bits); };
    auto imag_of = [&](std::string t) {
        // t ends with 'i'; coefficient may be empty or a bare sign.
        t.pop_back();
        if (t.empty() || t == "+") return Real(1L, bits);
        if (t == "-") return Real(-1L, bits);
        return Real(t, bits);
    };
    if (s.back() != 'i') return Complex(real_of(s), Real(0L, bits));
    // Find the split between real and imaginary parts: last '+'/'-' that is
    // not at position 0 and not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return Complex(Real(0L, bits), imag_of(s));
    return Complex(real_of(s.substr(0, split)), imag_of(s.substr(split)));
}

} // namespace hsum
