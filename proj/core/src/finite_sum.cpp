#include "hsum/finite_sum.hpp"

#include <stdexcept>

namespace hsum {

namespace {

template <class T, class MakeTerm>
std::vector<T> nested_table(const IndexVector& v, long n, const T& zero, const T& one, MakeTerm make_term)
{
    if (n < 0) throw std::invalid_argument("finite_sum: n must be >= 0");
    // Innermost index first: inner[i] = S_{a_j..a_k}(i).
    std::vector<T> inner(static_cast<std::size_t>(n) + 1, one);
    const auto& idx = v.indices();
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        std::vector<T> outer(inner.size(), zero);
        for (long i = 1; i <= n; ++i) outer[i] = outer[i - 1] + make_term(*it, i) * inner[i];
        inner = std::move(outer);
    }
    return inner;
}

} // namespace

std::vector<Rational> finite_sum_table(const IndexVector& v, long n)
{
    return nested_table<Rational>(v, n, Rational(0), Rational(1), [](int a, long i) {
        Integer den = boost::multiprecision::pow(Integer(i), static_cast<unsigned>(a < 0 ? -a : a));
        Rational t(Integer(1), den);
        if (a < 0 && (i & 1)) t = -t;
        return t;
    });
}

Rational finite_sum(const IndexVector& v, long n)
{
    return finite_sum_table(v, n).back();
}

Real finite_sum_real(const IndexVector& v, long n, mpfr_prec_t bits)
{
    auto table = nested_table<Real>(v, n, Real(0L, bits), Real(1L, bits), [bits](int a, long i) {
        Real t(1L, bits);
        t /= pow(Real(i, bits), a < 0 ? -a : a);
        if (a < 0 && (i & 1)) t = -t;
        return t;
    });
    return table.back();
}

} // namespace hsum
