#include "hsum/basis.hpp"
#include "hsum/errors.hpp"
#include "hsum/identity.hpp"
#include "hsum/linalg.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace hsum {

std::vector<Term> derivation_columns(int w)
{
    std::vector<Term> cols;
    auto ansatz = build_ansatz(w);
    for (const AnsatzEntry& e : ansatz) {
        Term t{Rational(1), e.cmono, std::nullopt};
        if (e.sum) t.sum = SumRef{*e.sum, ArgTag::Z};
        cols.push_back(std::move(t));
    }
    for (const AnsatzEntry& e : ansatz) {
        if (!e.sum) continue;
        cols.push_back(Term{Rational(1), e.cmono, SumRef{*e.sum, ArgTag::Refl}});
    }
    return cols;
}

namespace {

// A column function: the constant 1 or one sum at z or -1-z.
struct Function {
    std::optional<SumRef> sum;
    int weight() const { return sum ? sum->indices.weight() : 0; }
};

Complex column_value(const std::optional<SumRef>& sum, const PointValues& at_z, const PointValues& at_r,
                     mpfr_prec_t bits)
{
    if (!sum) return Complex(Real(1L, bits), Real(0L, bits));
    int i = universe_index(sum->indices);
    return sum->tag == ArgTag::Z ? at_z.values[i] : at_r.values[i];
}

void set_rounded(Real& dst, const Real& src) { mpfr_set(dst.raw(), src.raw(), MPFR_RNDN); }

} // namespace

struct Deriver::Impl {
    int weight;
    SamplePlan plan;
    EvalContext ctx;
    DeriveOptions opts;
    mpfr_prec_t bits;
    std::vector<Term> columns;
    std::vector<Function> functions;
    std::vector<Complex> points;
    std::vector<std::shared_ptr<const PointValues>> at_z, at_r;
    std::unique_ptr<PivotedQR> qr;
    mutable std::once_flag rank_once;
    mutable int column_rank = -1;

    Impl(int w, const SamplePlan& p, const EvalContext& c, DeriveOptions o)
        : weight(w), plan(p), ctx(c), opts(o), bits(digits_to_bits(c.digits()))
    {
    }

    Matrix build(const std::vector<std::function<Complex(std::size_t)>>& cols) const
    {
        Matrix a(static_cast<int>(2 * points.size()), static_cast<int>(cols.size()), bits);
        for (std::size_t p = 0; p < points.size(); ++p)
            for (std::size_t j = 0; j < cols.size(); ++j) {
                Complex v = cols[j](p);
                set_rounded(a(static_cast<int>(2 * p), static_cast<int>(j)), v.re());
                set_rounded(a(static_cast<int>(2 * p + 1), static_cast<int>(j)), v.im());
            }
        return a;
    }

    // Diagonal ratios above this count towards the rank; anything below is
    // indistinguishable from rounding at the working precision.
    double rank_threshold() const { return std::pow(10.0, -(ctx.digits() - 30)); }
    // Expected accuracy of the solved coefficients, from the precision and
    // the measured condition (with ten digits of slack).
    double coeff_tolerance = 0;

    std::vector<Rational> split(const Real& x, const std::vector<ConstantMonomial>& consts,
                                const std::string& what) const;
};

Deriver::Deriver(int weight, const SamplePlan& plan, const EvalContext& ctx, DeriveOptions opts)
    : impl_(std::make_unique<Impl>(weight, plan, ctx, opts))
{
    if (weight < 2 || weight > 4) throw std::invalid_argument("Deriver: weight must be in 2..4");
    Impl& d = *impl_;
    d.columns = derivation_columns(weight);

    d.functions.push_back({std::nullopt});
    for (ArgTag tag : {ArgTag::Z, ArgTag::Refl})
        for (int k = 1; k <= weight; ++k)
            for (const IndexVector& v : build_basis(k)) d.functions.push_back({SumRef{v, tag}});

    if (2 * plan.count < static_cast<int>(d.functions.size()) * 13 / 10)
        throw std::invalid_argument("Deriver: sample plan too small for " + std::to_string(d.functions.size()) +
                                    " unknowns");
    d.points = plan.points(d.bits);
    for (const Complex& z : d.points) {
        d.at_z.push_back(evaluate_all(z, ctx));
        d.at_r.push_back(evaluate_all(reflect_argument(z), ctx));
    }

    std::vector<std::function<Complex(std::size_t)>> cols;
    for (const Function& f : d.functions)
        cols.push_back([&d, f](std::size_t p) { return column_value(f.sum, *d.at_z[p], *d.at_r[p], d.bits); });
    d.qr = std::make_unique<PivotedQR>(d.build(cols));
    int r = d.qr->rank(d.rank_threshold());
    double cond = d.qr->log10_condition();
    if (r < d.qr->cols())
        throw IllConditioned("function system has numerical rank " + std::to_string(r) + " of " +
                             std::to_string(d.qr->cols()) + " at " + std::to_string(ctx.digits()) + " digits");
    double good_digits = ctx.digits() - cond - 10;
    if (good_digits < 40)
        throw IllConditioned("condition 1e" + std::to_string(static_cast<int>(cond)) + " leaves " +
                             std::to_string(static_cast<int>(good_digits)) + " reliable digits; need 40");
    d.coeff_tolerance = std::pow(10.0, -good_digits);
}

Deriver::~Deriver() = default;

int Deriver::weight() const { return impl_->weight; }
int Deriver::column_count() const { return static_cast<int>(impl_->columns.size()); }
int Deriver::function_count() const { return static_cast<int>(impl_->functions.size()); }
double Deriver::log10_condition() const { return impl_->qr->log10_condition(); }

int Deriver::column_rank() const
{
    Impl& d = *impl_;
    std::call_once(d.rank_once, [&d] {
        std::vector<std::function<Complex(std::size_t)>> cols;
        for (const Term& t : d.columns) {
            Real c = t.cmono.value(d.bits);
            cols.push_back([&d, t, c](std::size_t p) {
                return column_value(t.sum, *d.at_z[p], *d.at_r[p], d.bits) * c;
            });
        }
        PivotedQR full(d.build(cols));
        d.column_rank = full.rank(d.rank_threshold());
    });
    return d.column_rank;
}

std::vector<Rational> Deriver::Impl::split(const Real& x, const std::vector<ConstantMonomial>& consts,
                                           const std::string& what) const
{
    const double thr = coeff_tolerance;
    std::vector<Rational> q(consts.size(), Rational(0));
    if (std::fabs(x.to_double()) < thr) return q;
    const long maxden = opts.max_denominator;

    std::vector<Real> vals;
    for (const ConstantMonomial& c : consts) vals.push_back(c.value(bits));

    if (consts.size() == 1) {
        Real ratio = x / vals[0];
        q[0] = best_rational(ratio, maxden);
    } else {
        std::vector<Real> in;
        in.push_back(x);
        for (const Real& v : vals) in.push_back(v);
        // Denominators up to maxden with moderate numerators stay far inside
        // this bound; spurious relations that small need more digits than
        // the solve provides.
        double bound = static_cast<double>(maxden) * 1e4;
        auto rel = pslq(in, Real(thr * 1e3, bits), bound);
        if (!rel || (*rel)[0] == 0)
            throw ReconstructionFailed("no integer relation for the coefficient of " + what);
        for (std::size_t j = 0; j < consts.size(); ++j) q[j] = Rational(-(*rel)[j + 1], (*rel)[0]);
    }

    Real back(0L, bits);
    for (std::size_t j = 0; j < consts.size(); ++j) {
        if (boost::multiprecision::denominator(q[j]) > maxden)
            throw ReconstructionFailed("denominator bound exceeded for " + what);
        back += Real(q[j], bits) * vals[j];
    }
    double err = abs(back - x).to_double();
    if (!(err <= thr * std::max(1.0, std::fabs(x.to_double()))))
        throw ReconstructionFailed("coefficient of " + what + " is not a bounded rational combination (residual " +
                                   std::to_string(err) + ")");
    return q;
}

IdentityRecord Deriver::derive(const IndexVector& a, const IndexVector& b) const
{
    const Impl& d = *impl_;
    if (a.weight() + b.weight() != d.weight)
        throw std::invalid_argument("S_" + a.to_string() + " S_" + b.to_string() + " is not of weight " +
                                    std::to_string(d.weight));
    int ia = universe_index(a), ib = universe_index(b);
    if (ia < 0 || ib < 0) throw std::invalid_argument("left-hand sums must be basis sums");

    std::vector<Real> rhs;
    for (std::size_t p = 0; p < d.points.size(); ++p) {
        Complex v = d.at_z[p]->values[ia] * d.at_r[p]->values[ib];
        Real re(d.bits), im(d.bits);
        set_rounded(re, v.re());
        set_rounded(im, v.im());
        rhs.push_back(std::move(re));
        rhs.push_back(std::move(im));
    }
    std::vector<Real> x = d.qr->solve(rhs);

    Expression right;
    for (std::size_t i = 0; i < d.functions.size(); ++i) {
        const Function& f = d.functions[i];
        int cw = d.weight - f.weight();
        std::vector<ConstantMonomial> consts = cw == 0 ? std::vector<ConstantMonomial>{ConstantMonomial()}
                                                       : build_constants(cw);
        std::string what = f.sum ? (f.sum->tag == ArgTag::Z ? "s[" : "sb[") + f.sum->indices.to_string() + "]"
                                 : std::string("1");
        std::vector<Rational> q = d.split(x[i], consts, what);
        for (std::size_t j = 0; j < consts.size(); ++j)
            if (q[j] != 0) right.add(Term{q[j], consts[j], f.sum});
    }
    IdentityRecord rec = IdentityRecord::bilinear(a, b, right, Provenance::Derived);
    if (rec.right.empty()) throw ReconstructionFailed("all coefficients vanished");

    EvalContext vctx(30);
    VerifyReport rep =
        verify_identity(rec, d.opts.verify_points, d.opts.verify_tolerance, d.plan.seed ^ 0x5bd1e995ULL, vctx);
    if (!rep.passed()) {
        std::ostringstream os;
        os << "derived identity fails at fresh points (max residual " << rep.max_residual << ")";
        throw VerificationFailed(os.str());
    }
    return rec;
}

IdentityRecord derive_identity(const IndexVector& a, const IndexVector& b, const SamplePlan& plan,
                               const EvalContext& ctx)
{
    return Deriver(a.weight() + b.weight(), plan, ctx).derive(a, b);
}

} // namespace hsum
