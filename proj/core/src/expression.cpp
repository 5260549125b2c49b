#include "hsum/expression.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace hsum {

int constant_weight(Constant c)
{
    switch (c) {
    case Constant::Ln2: return 1;
    case Constant::Zeta2: return 2;
    case Constant::Zeta3: return 3;
    case Constant::Li4Half: return 4;
    }
    return 0;
}

const char* constant_token(Constant c)
{
    switch (c) {
    case Constant::Ln2: return "ln2";
    case Constant::Zeta2: return "z2";
    case Constant::Zeta3: return "z3";
    case Constant::Li4Half: return "Li4h";
    }
    return "?";
}

const char* constant_name(Constant c)
{
    switch (c) {
    case Constant::Ln2: return "LN2";
    case Constant::Zeta2: return "ZETA2";
    case Constant::Zeta3: return "ZETA3";
    case Constant::Li4Half: return "LI4HALF";
    }
    return "?";
}

namespace {

Real li4_half(mpfr_prec_t bits)
{
    // sum_k 2^-k / k^4; geometric convergence.
    mpfr_prec_t work = bits + 16;
    Real sum(work), term(work), pow2(1.0, work);
    for (long k = 1;; ++k) {
        pow2 /= 2;
        term = pow2;
        Real k4(static_cast<long>(k) * k, work);
        k4 *= Real(static_cast<long>(k) * k, work);
        term /= k4;
        sum += term;
        if (term.is_zero() || term.exponent2() < sum.exponent2() - static_cast<long>(work) - 4) break;
    }
    Real out(bits);
    mpfr_set(out.raw(), sum.raw(), MPFR_RNDN);
    return out;
}

Real compute_constant(Constant c, mpfr_prec_t bits)
{
    switch (c) {
    case Constant::Ln2: return Real::ln2(bits);
    case Constant::Zeta2: {
        Real pi = Real::pi(bits + 8);
        Real v = pi * pi / 6;
        Real out(bits);
        mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
        return out;
    }
    case Constant::Zeta3: return Real::zeta(3, bits);
    case Constant::Li4Half: return li4_half(bits);
    }
    throw std::logic_error("unknown constant");
}

} // namespace

Real constant_value(Constant c, mpfr_prec_t bits)
{
    static std::mutex mu;
    static std::map<std::pair<int, mpfr_prec_t>, Real> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(c), bits);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_constant(c, bits)).first;
    return it->second;
}

// ---------------------------------------------------------------------------

ConstantMonomial::ConstantMonomial(Constant c, int power)
{
    if (power < 0) throw std::invalid_argument("negative constant exponent");
    exps_[static_cast<int>(c)] = power;
}

ConstantMonomial::ConstantMonomial(const std::array<int, 4>& exponents) : exps_(exponents)
{
    for (int e : exps_)
        if (e < 0) throw std::invalid_argument("negative constant exponent");
}

int ConstantMonomial::weight() const
{
    int w = 0;
    for (Constant c : kAllConstants) w += constant_weight(c) * exponent(c);
    return w;
}

ConstantMonomial ConstantMonomial::operator*(const ConstantMonomial& o) const
{
    ConstantMonomial r = *this;
    for (int k = 0; k < 4; ++k) r.exps_[k] += o.exps_[k];
    return r;
}

std::string ConstantMonomial::to_string() const
{
    if (is_one()) return "1";
    std::string s;
    for (Constant c : {Constant::Zeta2, Constant::Zeta3, Constant::Li4Half, Constant::Ln2}) {
        int e = exponent(c);
        if (!e) continue;
        if (!s.empty()) s += '*';
        s += constant_token(c);
        if (e > 1) s += '^' + std::to_string(e);
    }
    return s;
}

Real ConstantMonomial::value(mpfr_prec_t bits) const
{
    Real v(1L, bits);
    for (Constant c : kAllConstants) {
        int e = exponent(c);
        if (e) v *= pow(constant_value(c, bits), e);
    }
    return v;
}

std::strong_ordering ConstantMonomial::operator<=>(const ConstantMonomial& o) const
{
    auto key = [](const ConstantMonomial& m) {
        return std::make_tuple(m.exponent(Constant::Zeta2), m.exponent(Constant::Zeta3),
                               m.exponent(Constant::Li4Half), m.exponent(Constant::Ln2));
    };
    // Descending.
    return key(o) <=> key(*this);
}

std::vector<ConstantMonomial> build_constants(int w)
{
    using CM = ConstantMonomial;
    switch (w) {
    case 1: return {CM(Constant::Ln2)};
    case 2: return {CM(Constant::Zeta2), CM(Constant::Ln2, 2)};
    case 3: return {CM(Constant::Zeta2) * CM(Constant::Ln2), CM(Constant::Ln2, 3), CM(Constant::Zeta3)};
    case 4:
        return {CM(Constant::Zeta2, 2), CM(Constant::Zeta2) * CM(Constant::Ln2, 2), CM(Constant::Ln2, 4),
                CM(Constant::Li4Half), CM(Constant::Zeta3) * CM(Constant::Ln2)};
    default: throw std::out_of_range("constant weight must be in 1..4");
    }
}

// ---------------------------------------------------------------------------

Expression Expression::sum(const IndexVector& v, ArgTag tag, Rational c)
{
    return Expression({Term{std::move(c), ConstantMonomial(), SumRef{v, tag}}});
}

Expression Expression::constant(const ConstantMonomial& m, Rational c)
{
    return Expression({Term{std::move(c), m, std::nullopt}});
}

Expression& Expression::operator+=(const Expression& o)
{
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

Expression& Expression::operator-=(const Expression& o)
{
    for (const Term& t : o.terms_) {
        Term n = t;
        n.coeff = -n.coeff;
        terms_.push_back(std::move(n));
    }
    return *this;
}

Expression& Expression::operator*=(const Rational& c)
{
    for (Term& t : terms_) t.coeff *= c;
    return *this;
}

Expression& Expression::operator*=(const ConstantMonomial& m)
{
    for (Term& t : terms_) t.cmono = t.cmono * m;
    return *this;
}

std::optional<int> Expression::homogeneous_weight() const
{
    if (terms_.empty()) return std::nullopt;
    int w = terms_.front().weight();
    for (const Term& t : terms_)
        if (t.weight() != w) return std::nullopt;
    return w;
}

Expression Expression::with_tag(ArgTag tag) const
{
    Expression r = *this;
    for (Term& t : r.terms_)
        if (t.sum) t.sum->tag = tag;
    return r;
}

Expression Expression::reflected() const
{
    Expression r = *this;
    for (Term& t : r.terms_)
        if (t.sum) t.sum->tag = flip(t.sum->tag);
    return r;
}

Expression Expression::filter_tag(ArgTag tag) const
{
    Expression r;
    for (const Term& t : terms_)
        if (t.sum && t.sum->tag == tag) r.terms_.push_back(t);
    return r;
}

Expression Expression::constants_only() const
{
    Expression r;
    for (const Term& t : terms_)
        if (!t.sum) r.terms_.push_back(t);
    return r;
}

bool term_key_less(const Term& a, const Term& b)
{
    if (a.cmono != b.cmono) return a.cmono < b.cmono;
    if (a.sum.has_value() != b.sum.has_value()) return !a.sum.has_value();
    if (!a.sum) return false;
    if (a.sum->tag != b.sum->tag) return a.sum->tag == ArgTag::Z;
    const auto& ia = a.sum->indices.indices();
    const auto& ib = b.sum->indices.indices();
    return ia < ib;
}

Expression canonicalize(const Expression& e)
{
    std::vector<Term> sorted = e.terms();
    std::stable_sort(sorted.begin(), sorted.end(), term_key_less);
    std::vector<Term> out;
    for (Term& t : sorted) {
        if (!out.empty() && !term_key_less(out.back(), t) && !term_key_less(t, out.back())) {
            out.back().coeff += t.coeff;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
    return Expression(std::move(out));
}

} // namespace hsum
