#include "hsum/basis.hpp"
#include "hsum/finite_sum.hpp"
#include "hsum/stuffle.hpp"

#include <doctest.h>

using namespace hsum;

namespace {

Rational eval_at(const Expression& e, long n)
{
    Rational r = 0;
    for (const Term& t : e.terms()) {
        REQUIRE(t.cmono.is_one());
        r += t.coeff * (t.sum ? finite_sum(t.sum->indices, n) : Rational(1));
    }
    return r;
}

Expression parse_lin(std::initializer_list<std::pair<int, IndexVector>> items)
{
    Expression e;
    for (const auto& [c, v] : items) e += Expression::sum(v, ArgTag::Z, c);
    return canonicalize(e);
}

} // namespace

TEST_CASE("depth-1 products")
{
    CHECK(stuffle_product({1}, {1}) == parse_lin({{2, {1, 1}}, {-1, {2}}}));
    CHECK(stuffle_product({1}, {2}) == parse_lin({{1, {1, 2}}, {1, {2, 1}}, {-1, {3}}}));
    CHECK(stuffle_product({-1}, {1}) == parse_lin({{1, {-1, 1}}, {1, {1, -1}}, {-1, {-2}}}));
    CHECK(stuffle_product({-1}, {-1}) == parse_lin({{2, {-1, -1}}, {-1, {2}}}));
    CHECK(stuffle_product({1}, {2}).size() == 3);
}

TEST_CASE("unit factor")
{
    CHECK(stuffle_product(IndexVector::unit(), {2, 1}) == Expression::sum({2, 1}));
    CHECK(stuffle_product({-3}, IndexVector::unit()) == Expression::sum({-3}));
}

TEST_CASE("exact agreement with products of finite sums")
{
    const auto& u = basis_universe();
    int pairs = 0;
    for (const auto& a : u)
        for (const auto& b : u) {
            if (a.weight() + b.weight() > 4) continue;
            ++pairs;
            Expression e = stuffle_product(a, b);
            CHECK(e == stuffle_product(b, a));
            CHECK(e.homogeneous_weight() == a.weight() + b.weight());
            auto ta = finite_sum_table(a, 25), tb = finite_sum_table(b, 25);
            for (long n = 1; n <= 25; ++n) CHECK(eval_at(e, n) == ta[n] * tb[n]);
        }
    CHECK(pairs > 0);
}
