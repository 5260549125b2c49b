// hsum: command-line front end for the harmonic-sum library.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
// 3 numeric-domain error, 4 reconstruction or solver failure.

#include "hsum/basis.hpp"
#include "hsum/errors.hpp"
#include "hsum/identity_db.hpp"
#include "hsum/stuffle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>

#ifndef HSUM_DEFAULT_CORPUS
#define HSUM_DEFAULT_CORPUS "reflection_w4.txt"
#endif

using namespace hsum;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kDomain = 3, kSolver = 4 };

struct Config {
    std::string format = "text";
    bool verbose = false;
    std::string corpus;
    bool structured() const { return format == "structured"; }
};

// Flag, then HSUM_CORPUS, then the build-time default.
std::string resolve_corpus(const std::string& flag)
{
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("HSUM_CORPUS"); env && *env) return env;
    return HSUM_DEFAULT_CORPUS;
}

std::string sci(double x)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << x;
    return os.str();
}

void print_record(const IdentityRecord& r, const Config& cfg)
{
    if (cfg.structured()) {
        CorpusFile f;
        f.weight = r.weight;
        f.records = {r};
        std::cout << serialize_structured(f);
    } else {
        std::cout << format_identity(r) << "\n";
    }
}

json expression_json(const Expression& e)
{
    // Reuse the record encoding through a throwaway single-record file.
    IdentityRecord r;
    r.right = e;
    CorpusFile f;
    f.records = {r};
    return json::parse(serialize_structured(f))["records"][0]["terms"];
}

int run(int argc, char** argv)
{
    CLI::App app{"Nested harmonic sums continued to complex arguments, and their reflection identities"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    app.add_flag("--verbose,-v", cfg.verbose, "Print the resolved configuration to stderr");

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate S_v(z)");
    std::string eval_indices, eval_z;
    int eval_digits = 30;
    eval->add_option("-i,--indices", eval_indices, "Comma-separated indices, e.g. -2,-1")->required();
    eval->add_option("-z", eval_z, "Complex argument, e.g. 0.3+0.7i")->required();
    eval->add_option("--digits", eval_digits, "Working precision in decimal digits")->check(CLI::Range(30, 2000));

    // verify
    auto* verify = app.add_subcommand("verify", "Verify every identity of a corpus numerically");
    int ver_points = 20, ver_digits = 30;
    double ver_tol = 1e-10;
    std::uint64_t ver_seed = SamplePlan{}.seed;
    bool ver_reflected = false;
    verify->add_option("--corpus", cfg.corpus, "Corpus file (default: $HSUM_CORPUS or the shipped corpus)");
    verify->add_option("--points", ver_points, "Sample points per identity")->check(CLI::PositiveNumber);
    verify->add_option("--tol", ver_tol, "Residual tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--seed", ver_seed, "Sample seed");
    verify->add_option("--digits", ver_digits, "Working precision")->check(CLI::Range(30, 2000));
    verify->add_flag("--reflected", ver_reflected, "Also verify the reflected records");

    // derive
    auto* derive = app.add_subcommand("derive", "Derive S_a(z) S_b(-1-z) by sampling and reconstruction");
    std::string der_left, der_right;
    int der_digits = 250, der_points = SamplePlan{}.count;
    std::uint64_t der_seed = SamplePlan{}.seed;
    derive->add_option("--left", der_left, "Indices a of S_a(z)")->required();
    derive->add_option("--right", der_right, "Indices b of S_b(-1-z)")->required();
    derive->add_option("--digits", der_digits, "Working precision")->check(CLI::Range(60, 2000));
    derive->add_option("--points", der_points, "Sample points")->check(CLI::PositiveNumber);
    derive->add_option("--seed", der_seed, "Sample seed");

    // shuffle
    auto* shuffle = app.add_subcommand("shuffle", "Quasi-shuffle product S_a S_b");
    std::string sh_a, sh_b;
    shuffle->add_option("--a", sh_a, "Indices a")->required();
    shuffle->add_option("--b", sh_b, "Indices b")->required();

    // reflect
    auto* reflect_cmd = app.add_subcommand("reflect", "Apply z <-> -1-z to every record of a corpus file");
    std::string refl_file;
    reflect_cmd->add_option("file", refl_file, "Corpus file")->required();

    // compose
    auto* compose = app.add_subcommand("compose", "S_a(z) S_b(-1-z) S_c(-1-z) from the bilinear corpus");
    std::string comp_a, comp_b, comp_c;
    compose->add_option("a", comp_a, "Indices a (argument z)")->required();
    compose->add_option("b", comp_b, "Indices b (argument -1-z)")->required();
    compose->add_option("c", comp_c, "Indices c (argument -1-z)")->required();
    compose->add_option("--corpus", cfg.corpus, "Corpus file");

    // basis
    auto* basis = app.add_subcommand("basis", "List the weight-w basis");
    int basis_weight = 4;
    bool basis_count = false;
    basis->add_option("--weight,-w", basis_weight, "Weight")->check(CLI::Range(1, 4));
    basis->add_flag("--count", basis_count, "Print only the number of elements");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    auto verbose = [&](const std::string& what) {
        if (cfg.verbose) std::cerr << "# " << what << " format=" << cfg.format << "\n";
    };

    if (*eval) {
        IndexVector v = IndexVector::parse(eval_indices);
        EvalContext ctx(eval_digits);
        Complex z = parse_complex(eval_z, digits_to_bits(eval_digits));
        verbose("eval indices=" + v.to_string() + " z=" + eval_z + " digits=" + std::to_string(eval_digits));
        Evaluation r = evaluate_with_error(v, z, ctx);
        if (cfg.structured()) {
            json j = {{"indices", v.indices()},
                      {"z", z.to_string(eval_digits)},
                      {"digits", eval_digits},
                      {"re", r.value.re().to_string(eval_digits)},
                      {"im", r.value.im().to_string(eval_digits)},
                      {"error", r.error}};
            std::cout << j.dump(1) << "\n";
        } else {
            std::cout << r.value.to_string(eval_digits) << "\n";
            std::cout << "error <= " << sci(r.error) << "\n";
        }
        return kOk;
    }

    if (*verify) {
        std::string path = resolve_corpus(cfg.corpus);
        verbose("verify corpus=" + path + " points=" + std::to_string(ver_points) + " tol=" + sci(ver_tol) +
                " seed=" + std::to_string(ver_seed) + " digits=" + std::to_string(ver_digits));
        CorpusFile f = load_corpus(path);
        EvalContext ctx(ver_digits);
        std::vector<IdentityRecord> todo = f.records;
        if (ver_reflected)
            for (const IdentityRecord& r : f.records) todo.push_back(reflect(r));
        int passed = 0;
        json rows = json::array();
        for (const IdentityRecord& r : todo) {
            VerifyReport rep = verify_identity(r, ver_points, ver_tol, ver_seed, ctx);
            passed += rep.passed();
            std::string lhs = format_identity(r);
            lhs = lhs.substr(0, lhs.find(" ="));
            if (cfg.structured()) {
                rows.push_back({{"left", lhs}, {"max_residual", rep.max_residual}, {"passed", rep.passed()}});
            } else {
                std::cout << std::left << std::setw(28) << lhs << " " << sci(rep.max_residual) << "  "
                          << (rep.passed() ? "ok" : "FAIL") << "\n";
            }
        }
        if (cfg.structured()) {
            std::cout << json{{"results", rows}, {"passed", passed}, {"total", todo.size()}}.dump(1) << "\n";
        } else {
            std::cout << passed << "/" << todo.size() << " passed\n";
        }
        return passed == static_cast<int>(todo.size()) ? kOk : kVerifyFailed;
    }

    if (*derive) {
        IndexVector a = IndexVector::parse(der_left), b = IndexVector::parse(der_right);
        SamplePlan plan;
        plan.count = der_points;
        plan.seed = der_seed;
        verbose("derive left=" + a.to_string() + " right=" + b.to_string() + " digits=" +
                std::to_string(der_digits) + " points=" + std::to_string(der_points) +
                " seed=" + std::to_string(der_seed));
        print_record(derive_identity(a, b, plan, EvalContext(der_digits)), cfg);
        return kOk;
    }

    if (*shuffle) {
        IndexVector a = IndexVector::parse(sh_a), b = IndexVector::parse(sh_b);
        verbose("shuffle a=" + a.to_string() + " b=" + b.to_string());
        Expression e = stuffle_product(a, b);
        if (cfg.structured()) {
            std::cout << json{{"a", a.indices()}, {"b", b.indices()}, {"terms", expression_json(e)}}.dump(1) << "\n";
        } else {
            std::cout << format_expression(e, false) << "\n";
        }
        return kOk;
    }

    if (*reflect_cmd) {
        verbose("reflect file=" + refl_file);
        CorpusFile f = load_corpus(refl_file);
        for (IdentityRecord& r : f.records) r = reflect(r);
        std::cout << serialize_corpus(f, cfg.structured() ? CorpusFormat::Structured : CorpusFormat::Text);
        return kOk;
    }

    if (*compose) {
        IndexVector a = IndexVector::parse(comp_a), b = IndexVector::parse(comp_b), c = IndexVector::parse(comp_c);
        std::string path = resolve_corpus(cfg.corpus);
        verbose("compose a=" + a.to_string() + " b=" + b.to_string() + " c=" + c.to_string() + " corpus=" + path);
        CorpusFile f = load_corpus(path);
        print_record(compose_trilinear(a, b, c, f.records), cfg);
        return kOk;
    }

    if (*basis) {
        verbose("basis weight=" + std::to_string(basis_weight));
        const auto& bs = build_basis(basis_weight);
        if (basis_count) {
            std::cout << bs.size() << "\n";
        } else if (cfg.structured()) {
            json list = json::array();
            for (const IndexVector& v : bs) list.push_back(v.indices());
            std::cout << json{{"weight", basis_weight}, {"basis", list}}.dump(1) << "\n";
        } else {
            for (const IndexVector& v : bs) std::cout << v.to_string() << "\n";
        }
        return kOk;
    }
    return kUsage;
}

} // namespace

int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const PoleProximity& e) {
        std::cerr << "pole: " << e.what() << "\n";
        return kDomain;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision: " << e.what() << "\n";
        return kDomain;
    } catch (const ReconstructionFailed& e) {
        std::cerr << "reconstruction: " << e.what() << "\n";
        return kSolver;
    } catch (const IllConditioned& e) {
        std::cerr << "solver: " << e.what() << "\n";
        return kSolver;
    } catch (const VerificationFailed& e) {
        std::cerr << "verification: " << e.what() << "\n";
        return kSolver;
    } catch (const MissingBilinear& e) {
        std::cerr << "compose: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const IoError& e) {
        std::cerr << "io: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "corpus: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const SyntaxError& e) {
        std::cerr << "syntax: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
}
