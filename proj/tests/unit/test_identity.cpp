#include "hsum/basis.hpp"
#include "hsum/errors.hpp"
#include "hsum/identity.hpp"
#include "hsum/identity_db.hpp"
#include "hsum/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace hsum;

namespace {

constexpr mpfr_prec_t kBits = 256;

IdentityRecord paper(const char* lhs_a, const char* lhs_b, const char* rhs)
{
    return IdentityRecord::bilinear(IndexVector::parse(lhs_a), IndexVector::parse(lhs_b), parse_expression(rhs));
}

// Printed forms, term order as typeset.
const char* kS1S3 = "8/5*z2^2 - z2*s[2] - z2*sb[2] + z3*s[1] - z3*sb[1] + s[3,1] + sb[1,3]";
const char* kS1S21 = "6/5*z2^2 - z2*s[2] + z2*sb[2] + 2*z3*s[1] - 2*z3*sb[1] + s[3,1] - sb[3,1] - s[2,1,1]"
                     " + sb[1,2,1] + sb[2,1,1]";
const char* kS1S12 = "6/5*z2^2 - z2*s[2] + z2*s[1,1] - z2*sb[1,1] + z3*s[1] + 2*z3*sb[1] + s[3,1] - sb[2,2]"
                     " - s[1,2,1] + 2*sb[1,1,2]";
const char* kS1S1S2 = "-z2*sb[1,1] - sb[1,3] - sb[2,2] - sb[3,1] + 2*sb[1,1,2] + sb[1,2,1] + sb[2,1,1]"
                      " + 2*z2*sb[2] + z3*sb[1] + z2*s[1,1] + s[3,1] - s[1,2,1] - s[2,1,1] + 4/5*z2^2"
                      " - z2*s[2] + 2*z3*s[1]";

CorpusFile shipped() { return load_corpus(HSUM_DATA_DIR "/reflection_w4.txt"); }

} // namespace

TEST_CASE("sample plan")
{
    SamplePlan p;
    auto a = p.points(kBits), b = p.points(kBits);
    REQUIRE(a.size() == 256);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(abs(a[i] - b[i]).to_double() == 0);
        double re = a[i].re().to_double(), im = a[i].im().to_double();
        CHECK(re >= -2.0);
        CHECK(re <= 1.0);
        CHECK(im >= 0.3);
        CHECK(im <= 2.0);
        CHECK(pole_distance(a[i]) >= 1e-2);
        CHECK(pole_distance(reflect_argument(a[i])) >= 1e-2);
    }
    p.seed = 1;
    CHECK(abs(p.points(kBits)[0] - a[0]).to_double() > 0);
    p.re_max = p.re_min;
    CHECK_THROWS_AS(p.points(kBits), std::invalid_argument);
}

TEST_CASE("record validation")
{
    IdentityRecord r = paper("1", "3", kS1S3);
    CHECK_NOTHROW(validate_record(r));
    CHECK(r.weight == 4);
    IdentityRecord bad = r;
    bad.weight = 3;
    CHECK_THROWS_AS(validate_record(bad), std::invalid_argument);
    bad = r;
    bad.right.add({Rational(1), ConstantMonomial(), SumRef{{3}, ArgTag::Z}});
    CHECK_THROWS_AS(validate_record(bad), std::invalid_argument);
    // Weight-3 terms in a weight-4 record.
    bad = r;
    bad.right = canonicalize(parse_expression("s[1,2] + z2*s[1]"));
    CHECK_THROWS_AS(validate_record(bad), std::invalid_argument);
}

TEST_CASE("printed records verify")
{
    EvalContext ctx(30);
    for (const IdentityRecord& r : {paper("1", "3", kS1S3), paper("1", "2,1", kS1S21), paper("1", "1,2", kS1S12)}) {
        VerifyReport rep = verify_identity(r, 20, 1e-10, 7, ctx);
        CHECK(rep.residuals.size() == 20);
        CHECK(rep.passed());
        CHECK(rep.max_residual < 1e-20);
    }
    // A perturbed coefficient is caught.
    IdentityRecord wrong = paper("1", "3", "8/5*z2^2 - z2*s[2] - z2*sb[2] + z3*s[1] + s[3,1] + sb[1,3]");
    CHECK_FALSE(verify_identity(wrong, 5, 1e-10, 7, ctx).passed());
}

TEST_CASE("reflection")
{
    EvalContext ctx(30);
    IdentityRecord r = paper("1", "2,1", kS1S21);
    IdentityRecord rr = reflect(r);
    CHECK(rr.provenance == Provenance::Reflected);
    CHECK(rr.right.size() == r.right.size());
    CHECK(rr.left[0].indices == IndexVector{2, 1});
    CHECK(rr.left[0].tag == ArgTag::Z);
    CHECK(rr.left[1].indices == IndexVector{1});
    CHECK(reflect(rr) == r);
    CHECK(verify_identity(rr, 20, 1e-10, 3, ctx).passed());
    // Direct check at one point: left of the reflected record at z is the
    // original left at -1-z.
    Complex z(0.37, 0.81, kBits);
    CHECK(abs(evaluate_left(rr, z, ctx) - evaluate_left(r, reflect_argument(z), ctx)).to_double() < 1e-25);
}

TEST_CASE("trilinear composition")
{
    EvalContext ctx(30);
    CorpusFile f = shipped();
    IdentityRecord c = compose_trilinear({1}, {1}, {2}, f.records);
    CHECK(c.provenance == Provenance::Composed);
    CHECK(c.weight == 4);
    CHECK(c.right == parse_expression(kS1S1S2));
    CHECK(c.right.size() == 16);
    std::mt19937_64 rng(10);
    for (int k = 0; k < 10; ++k) {
        Complex z(-2 + 3 * (rng() >> 11) * 0x1.0p-53, 0.3 + 1.7 * (rng() >> 11) * 0x1.0p-53, kBits);
        Complex zr = reflect_argument(z);
        Complex direct = evaluate({1}, z, ctx) * evaluate({1}, zr, ctx) * evaluate({2}, zr, ctx);
        CHECK(abs(direct - evaluate_expression(c.right, z, ctx)).to_double() < 1e-10);
    }
    // Reflected lookup: (a, d) absent but (d, a) present.
    std::vector<IdentityRecord> only_reflected;
    for (const IdentityRecord& r : f.records) only_reflected.push_back(reflect(r));
    CHECK(compose_trilinear({1}, {1}, {2}, only_reflected).right == c.right);
    CHECK_THROWS_AS(compose_trilinear({1}, {1}, {2}, {}), MissingBilinear);
    CHECK_THROWS_AS(compose_trilinear({1}, {2, 1}, {2}, f.records), MissingBilinear);
}

TEST_CASE("pole separation")
{
    EvalContext ctx(30);
    for (const IdentityRecord& r : {paper("1", "3", kS1S3), paper("1", "2,1", kS1S21)}) {
        for (int m : {1, 2}) {
            PoleReport p = pole_separation_check(r, m, ctx);
            CHECK(p.point == -m);
            CHECK(p.passed(1e-8));
            CHECK(abs(p.left[0]).to_double() < 1e-8);
            // S_b(-1-z) vanishes at z = -1 and cancels the simple pole of
            // S_1(z); at z = -2 it does not.
            if (m == 2) CHECK(abs(p.left[4]).to_double() > 0.1);
            if (m == 1) CHECK(abs(p.left[4]).to_double() < 1e-8);
        }
        PoleReport q = pole_separation_check(r, 1, ctx, true);
        CHECK(q.point == 0);
        CHECK(q.passed(1e-8));
    }
    CHECK_THROWS_AS(pole_separation_check(paper("1", "3", kS1S3), 0, ctx), std::invalid_argument);
}

TEST_CASE("dense QR and reconstruction helpers")
{
    std::mt19937_64 rng(4);
    Matrix a(9, 5, kBits);
    std::vector<Real> x;
    for (int j = 0; j < 5; ++j) x.emplace_back(static_cast<double>(j) - 1.5, kBits);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 5; ++j) a(i, j) = Real(static_cast<double>(rng() % 1000) / 37.0 - 12.0, kBits);
    std::vector<Real> b;
    for (int i = 0; i < 9; ++i) {
        Real s(0L, kBits);
        for (int j = 0; j < 5; ++j) s += a(i, j) * x[j];
        b.push_back(s);
    }
    PivotedQR qr(a);
    CHECK(qr.rank(1e-50) == 5);
    auto y = qr.solve(b);
    for (int j = 0; j < 5; ++j) CHECK(abs(y[j] - x[j]).to_double() < 1e-60);

    Matrix dep(6, 3, kBits);
    for (int i = 0; i < 6; ++i) {
        dep(i, 0) = Real(static_cast<double>(i + 1), kBits);
        dep(i, 1) = Real(static_cast<double>(i * i), kBits);
        dep(i, 2) = dep(i, 0) * 3L;
    }
    CHECK(PivotedQR(dep).rank(1e-40) == 2);

    Real q = Real(Rational(61, 40), kBits) + Real(1e-40, kBits);
    CHECK(best_rational(q, 1000) == Rational(61, 40));
    CHECK(best_rational(Real(Rational(-7, 3), kBits), 1000) == Rational(-7, 3));

    Real ln2 = constant_value(Constant::Ln2, kBits), z2 = constant_value(Constant::Zeta2, kBits);
    Real v = Real(Rational(3, 7), kBits) * ln2 - Real(Rational(5, 11), kBits) * z2;
    auto rel = pslq({v, ln2, z2}, Real(1e-60, kBits), 1e6);
    REQUIRE(rel.has_value());
    Integer m0 = (*rel)[0];
    CHECK(m0 != 0);
    CHECK(Rational(-(*rel)[1], m0) == Rational(3, 7));
    CHECK(Rational(-(*rel)[2], m0) == Rational(-5, 11));
    // pi^2/6 and ln 2 have no small relation.
    CHECK_FALSE(pslq({ln2, z2}, Real(1e-60, kBits), 1e6).has_value());
}

TEST_CASE("derivation columns")
{
    auto cols = derivation_columns(4);
    CHECK(cols.size() == 185);
    int constants = 0;
    for (const Term& t : cols) constants += !t.sum;
    CHECK(constants == 5);
}

TEST_CASE("low-weight derivation is verified independently")
{
    EvalContext ctx(60);
    SamplePlan plan;
    plan.count = 40;
    Deriver d(2, plan, ctx);
    CHECK(d.function_count() == 1 + 2 * (2 + 6));
    std::mt19937_64 rng(12);
    for (const auto& [a, b] : std::vector<std::pair<IndexVector, IndexVector>>{{{1}, {1}}, {{-1}, {1}}, {{-1}, {-1}}}) {
        IdentityRecord r = d.derive(a, b);
        CHECK_NOTHROW(validate_record(r));
        CHECK(r.provenance == Provenance::Derived);
        EvalContext vctx(30);
        for (int k = 0; k < 5; ++k) {
            Complex z(-2 + 3 * (rng() >> 11) * 0x1.0p-53, 0.3 + 1.7 * (rng() >> 11) * 0x1.0p-53, kBits);
            Complex lhs = evaluate(a, z, vctx) * evaluate(b, reflect_argument(z), vctx);
            CHECK(abs(lhs - evaluate_expression(r.right, z, vctx)).to_double() < 1e-20);
        }
    }
    CHECK_THROWS_AS(d.derive({1}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(Deriver(2, [] { SamplePlan p; p.count = 5; return p; }(), ctx), std::invalid_argument);
}

TEST_CASE("weight-4 system is ill-conditioned at 60 digits")
{
    SamplePlan plan;
    CHECK_THROWS_AS(Deriver(4, plan, EvalContext(60)), IllConditioned);
}
