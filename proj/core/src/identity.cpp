#include "hsum/identity.hpp"

#include "hsum/basis.hpp"
#include "hsum/errors.hpp"
#include "hsum/stuffle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hsum {

const char* provenance_name(Provenance p)
{
    switch (p) {
    case Provenance::Corpus: return "corpus";
    case Provenance::Derived: return "derived";
    case Provenance::Reflected: return "reflected";
    case Provenance::Composed: return "composed";
    }
    return "?";
}

IdentityRecord IdentityRecord::bilinear(const IndexVector& a, const IndexVector& b, Expression right, Provenance p)
{
    IdentityRecord r;
    r.left = {{a, ArgTag::Z}, {b, ArgTag::Refl}};
    r.right = canonicalize(right);
    r.weight = a.weight() + b.weight();
    r.provenance = p;
    return r;
}

bool IdentityRecord::is_bilinear() const
{
    return left.size() == 2 && left[0].tag == ArgTag::Z && left[1].tag == ArgTag::Refl;
}

std::pair<IndexVector, IndexVector> IdentityRecord::key() const
{
    if (!is_bilinear()) throw std::logic_error("key() of a non-bilinear record");
    return {left[0].indices, left[1].indices};
}

void validate_record(const IdentityRecord& r)
{
    if (r.left.empty()) throw std::invalid_argument("record has no left-hand factors");
    int w = 0;
    for (const Factor& f : r.left) w += f.indices.weight();
    if (w != r.weight)
        throw std::invalid_argument("left-hand weight " + std::to_string(w) + " differs from record weight " +
                                    std::to_string(r.weight));
    if (canonicalize(r.right) != r.right) throw std::invalid_argument("right-hand side is not canonical");
    if (r.right.empty()) throw std::invalid_argument("right-hand side is empty");
    for (const Term& t : r.right.terms()) {
        if (t.weight() != r.weight)
            throw std::invalid_argument("right-hand term of weight " + std::to_string(t.weight()) +
                                        " in a weight-" + std::to_string(r.weight) + " record");
        if (t.sum && !in_basis(t.sum->indices))
            throw std::invalid_argument("S_" + t.sum->indices.to_string() + " is not a basis sum");
    }
}

std::vector<Complex> SamplePlan::points(mpfr_prec_t bits) const
{
    if (count < 0) throw std::invalid_argument("SamplePlan: negative count");
    if (!(re_max > re_min) || !(im_max > im_min)) throw std::invalid_argument("SamplePlan: empty region");
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto far_from_integers = [&](double re, double im) {
        double d = std::hypot(re - std::round(re), im);
        return d >= exclusion;
    };
    std::vector<Complex> out;
    out.reserve(count);
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 100 * count + 1000) throw std::invalid_argument("SamplePlan: exclusion rejects the region");
        double re = uniform(re_min, re_max);
        double im = uniform(im_min, im_max);
        // -1-z is an integer exactly when z is, so one test covers both.
        if (!far_from_integers(re, im) || !far_from_integers(-1 - re, -im)) continue;
        out.emplace_back(re, im, bits);
    }
    return out;
}

Complex evaluate_left(const IdentityRecord& r, const Complex& z, const EvalContext& ctx)
{
    Complex acc(Real(1L, z.bits()), Real(0L, z.bits()));
    for (const Factor& f : r.left) {
        if (f.indices.is_unit()) continue;
        acc *= evaluate(f.indices, f.tag == ArgTag::Z ? z : reflect_argument(z), ctx);
    }
    return acc;
}

VerifyReport verify_identity(const IdentityRecord& r, int points, double tol, std::uint64_t seed,
                             const EvalContext& ctx)
{
    if (points < 1) throw std::invalid_argument("verify_identity: need at least one point");
    SamplePlan plan;
    plan.count = points;
    plan.seed = seed;
    VerifyReport rep;
    rep.tolerance = tol;
    for (const Complex& z : plan.points(digits_to_bits(ctx.digits()))) {
        Complex diff = evaluate_left(r, z, ctx) - evaluate_expression(r.right, z, ctx);
        double res = abs(diff).to_double();
        rep.residuals.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
    }
    return rep;
}

IdentityRecord reflect(const IdentityRecord& r)
{
    IdentityRecord out = r;
    for (Factor& f : out.left) f.tag = flip(f.tag);
    std::stable_sort(out.left.begin(), out.left.end(),
                     [](const Factor& a, const Factor& b) { return a.tag == ArgTag::Z && b.tag == ArgTag::Refl; });
    out.right = canonicalize(r.right.reflected());
    out.provenance = Provenance::Reflected;
    return out;
}

IdentityRecord compose_trilinear(const IndexVector& a, const IndexVector& b, const IndexVector& c,
                                 const std::vector<IdentityRecord>& corpus)
{
    auto find = [&](const IndexVector& x, const IndexVector& y) -> const IdentityRecord* {
        for (const IdentityRecord& r : corpus)
            if (r.is_bilinear() && r.left[0].indices == x && r.left[1].indices == y) return &r;
        return nullptr;
    };
    Expression out;
    const Expression bc = stuffle_product(b, c);
    for (const Term& t : bc.terms()) {
        if (!t.sum) throw MissingBilinear("quasi-shuffle produced a constant term");
        const IndexVector& d = t.sum->indices;
        Expression piece;
        if (const IdentityRecord* r = find(a, d)) {
            piece = r->right;
        } else if (const IdentityRecord* r2 = find(d, a)) {
            piece = reflect(*r2).right;
        } else {
            throw MissingBilinear("no bilinear identity for S_" + a.to_string() + "(z) S_" + d.to_string() +
                                  "(-1-z)");
        }
        piece *= t.coeff;
        out += piece;
    }
    IdentityRecord r;
    r.left = {{a, ArgTag::Z}, {b, ArgTag::Refl}, {c, ArgTag::Refl}};
    r.right = canonicalize(out);
    r.weight = a.weight() + b.weight() + c.weight();
    r.provenance = Provenance::Composed;
    return r;
}

PoleReport pole_separation_check(const IdentityRecord& r, int m, const EvalContext& ctx, bool reflected_side)
{
    if (m < 1) throw std::invalid_argument("pole_separation_check: m must be >= 1");
    PoleReport rep;
    rep.point = reflected_side ? m - 1 : -m;
    const ArgTag near = reflected_side ? ArgTag::Refl : ArgTag::Z;
    Expression near_part = r.right.filter_tag(near);
    Expression far_part = r.right.filter_tag(flip(near));

    auto lhs = [&](const Complex& z) { return evaluate_left(r, z, ctx); };
    auto near_f = [&](const Complex& z) { return evaluate_expression(near_part, z, ctx); };
    auto far_f = [&](const Complex& z) { return evaluate_expression(far_part, z, ctx); };
    rep.left = laurent_coefficients(lhs, rep.point, -5, -1, ctx);
    rep.near_side = laurent_coefficients(near_f, rep.point, -5, -1, ctx);
    rep.far_side = laurent_coefficients(far_f, rep.point, -5, -1, ctx);
    for (std::size_t i = 0; i < rep.left.size(); ++i) {
        rep.mismatch = std::max(rep.mismatch, abs(rep.left[i] - rep.near_side[i]).to_double());
        rep.far_singular = std::max(rep.far_singular, abs(rep.far_side[i]).to_double());
    }
    return rep;
}

} // namespace hsum
