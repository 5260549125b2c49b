#include "hsum/basis.hpp"
#include "hsum/expression.hpp"
#include "hsum/finite_sum.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace hsum;

TEST_CASE("index vector weight and depth")
{
    CHECK(IndexVector{1}.weight() == 1);
    CHECK(IndexVector{-2, 1}.weight() == 3);
    CHECK(IndexVector{-1, 1, -1, 1}.weight() == 4);
    CHECK(IndexVector{-1, 1, -1, 1}.depth() == 4);
    CHECK(IndexVector::parse(" -2 , 1") == IndexVector{-2, 1});
    CHECK_THROWS_AS(IndexVector(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS((IndexVector{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(IndexVector::parse("1,,2"), std::invalid_argument);
    CHECK(IndexVector{1, 2} != IndexVector{2, 1});
    CHECK(contract(-1, 1) == -2);
    CHECK(contract(-2, -1) == 3);
}

TEST_CASE("finite sums")
{
    CHECK(finite_sum({1}, 3) == Rational(11, 6));
    CHECK(finite_sum({-1}, 2) == Rational(-1, 2));
    CHECK(finite_sum({1, 1}, 2) == Rational(7, 4));
    CHECK(finite_sum({-2, 1}, 0) == 0);
    // S_{-1,1}(2) = -1*1 + 1/2*(1 + 1/2)
    CHECK(finite_sum({-1, 1}, 2) == Rational(-1, 4));
    Real r = finite_sum_real({2, -1}, 12, 200);
    Real q(finite_sum({2, -1}, 12), 200);
    CHECK(abs(r - q).to_double() < 1e-55);
}

TEST_CASE("finite sum step relation over random vectors")
{
    std::mt19937_64 rng(11);
    const auto& u = basis_universe();
    for (int trial = 0; trial < 60; ++trial) {
        const IndexVector& v = u[rng() % u.size()];
        auto table = finite_sum_table(v, 30);
        auto tail = v.depth() > 1 ? finite_sum_table(v.tail(), 30) : std::vector<Rational>(31, Rational(1));
        int a = v.head();
        for (long n = 1; n <= 30; ++n) {
            Rational step(Integer(1), boost::multiprecision::pow(Integer(n), std::abs(a)));
            if (a < 0 && (n & 1)) step = -step;
            CHECK(table[n] - table[n - 1] == step * tail[n]);
        }
    }
}

TEST_CASE("basis sizes and closure")
{
    CHECK(build_basis(1).size() == 2);
    CHECK(build_basis(2).size() == 6);
    CHECK(build_basis(3).size() == 18);
    CHECK(build_basis(4).size() == 54);
    CHECK_THROWS(build_basis(0));
    CHECK_THROWS(build_basis(5));
    CHECK(build_basis(1).front() == IndexVector{-1});
    CHECK(build_basis(2)[2] == IndexVector{-1, 1});
    CHECK(build_basis(4).back() == IndexVector{2, 2});

    const auto& u = basis_universe();
    CHECK(u.size() == 80);
    std::set<IndexVector> seen(u.begin(), u.end());
    CHECK(seen.size() == 80);
    for (int w = 1; w <= 4; ++w)
        for (const IndexVector& v : build_basis(w)) {
            CHECK(v.weight() == w);
            if (v.depth() > 1) CHECK(in_basis(v.tail()));
        }
    // Each B_w is every signed composition of w: 2 * 3^(w-1) of them.
    CHECK(seen.size() == 2 + 6 + 18 + 54);
}

TEST_CASE("constant sets")
{
    CHECK(build_constants(1).size() == 1);
    CHECK(build_constants(2).size() == 2);
    CHECK(build_constants(3).size() == 3);
    CHECK(build_constants(4).size() == 5);
    for (int w = 1; w <= 4; ++w)
        for (const auto& c : build_constants(w)) CHECK(c.weight() == w);
    CHECK(build_constants(3)[0].to_string() == "z2*ln2");

    mpfr_prec_t bits = digits_to_bits(30);
    CHECK(constant_value(Constant::Ln2, bits).to_string(6) == "6.93147e-01");
    CHECK(constant_value(Constant::Li4Half, bits).to_string(6) == "5.17479e-01");
    CHECK(constant_value(Constant::Zeta3, bits).to_string(10) == "1.202056903e+00");

    // zeta(2) against a direct sum with the 1/n tail removed by Euler-Maclaurin.
    Real s(0L, bits);
    const long n = 2000;
    for (long k = 1; k <= n; ++k) s += Real(1L, bits) / pow(Real(k, bits), 2);
    Real nn(n, bits);
    Real tail = Real(1L, bits) / nn - Real(1L, bits) / (nn * nn * 2) + Real(1L, bits) / (pow(nn, 3) * 6) -
                Real(1L, bits) / (pow(nn, 5) * 30);
    s += tail;
    CHECK(abs(s - constant_value(Constant::Zeta2, bits)).to_double() < 1e-20);
    CHECK(ConstantMonomial().value(bits).to_double() == 1.0);
}

TEST_CASE("weight-4 ansatz")
{
    auto a = build_ansatz(4);
    CHECK(a.size() == 95);
    CHECK(std::count_if(a.begin(), a.end(), [](const AnsatzEntry& e) { return e.argument_independent(); }) == 5);
    auto has = [&](const ConstantMonomial& c, const IndexVector& v) {
        return std::find(a.begin(), a.end(), AnsatzEntry{c, v}) != a.end();
    };
    CHECK(has(ConstantMonomial(Constant::Zeta2), IndexVector{-2}));
    CHECK(has(ConstantMonomial(Constant::Ln2, 2), IndexVector{-1, -1}));
    for (const auto& e : a) CHECK(e.cmono.weight() + (e.sum ? e.sum->weight() : 0) == 4);

    // Same entries as the generic construction, just listed differently.
    std::vector<AnsatzEntry> generic;
    for (const auto& v : build_basis(4)) generic.push_back({ConstantMonomial(), v});
    for (int k = 3; k >= 1; --k)
        for (const auto& c : build_constants(4 - k))
            for (const auto& v : build_basis(k)) generic.push_back({c, v});
    for (const auto& c : build_constants(4)) generic.push_back({c, std::nullopt});
    CHECK(generic.size() == 95);
    for (const auto& e : generic) CHECK(std::find(a.begin(), a.end(), e) != a.end());

    CHECK(build_ansatz(2).size() == 6 + 2 + 2);
    CHECK(build_ansatz(3).size() == 18 + 6 + 2 * 2 + 3);
}

TEST_CASE("canonicalize")
{
    Expression e = Expression::sum({1}) ;
    e -= Expression::sum({1});
    CHECK(canonicalize(e).empty());

    ConstantMonomial z2(Constant::Zeta2);
    Expression f;
    f.add({Rational(2), z2, SumRef{{2}, ArgTag::Z}});
    f.add({Rational(3), z2, SumRef{{2}, ArgTag::Z}});
    auto g = canonicalize(f);
    REQUIRE(g.size() == 1);
    CHECK(g.terms()[0].coeff == 5);

    Expression h;
    h.add({Rational(1), ConstantMonomial(), SumRef{{3, 1}, ArgTag::Refl}});
    h.add({Rational(-1), z2, SumRef{{2}, ArgTag::Z}});
    h.add({Rational(8, 5), ConstantMonomial(Constant::Zeta2, 2), std::nullopt});
    h.add({Rational(1), ConstantMonomial(), SumRef{{3, 1}, ArgTag::Z}});
    auto c = canonicalize(h);
    CHECK(canonicalize(c) == c);
    CHECK(!c.terms()[0].sum.has_value());
    CHECK(c.terms()[1].sum->indices == IndexVector{2});
    CHECK(c.terms()[2].sum->tag == ArgTag::Z);
    CHECK(c.terms()[2].sum->indices == IndexVector{3, 1});
    CHECK(c.terms()[3].sum->tag == ArgTag::Refl);
    CHECK(c.homogeneous_weight() == 4);
    CHECK(c.reflected().reflected() == c);
}
