#include "hsum/identity_db.hpp"

#include "hsum/basis.hpp"
#include "hsum/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace hsum {

using nlohmann::json;

std::string format_sumref(const SumRef& s)
{
    return std::string(s.tag == ArgTag::Z ? "s[" : "sb[") + s.indices.to_string() + "]";
}

std::string format_expression(const Expression& e, bool spaced)
{
    if (e.empty()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : e.terms()) {
        bool neg = t.coeff < 0;
        Rational mag = neg ? Rational(-t.coeff) : t.coeff;
        if (first) {
            if (neg) out += "-";
        } else {
            out += spaced ? (neg ? " - " : " + ") : (neg ? "-" : "+");
        }
        first = false;
        std::string body;
        auto put = [&](const std::string& part) {
            if (!body.empty()) body += "*";
            body += part;
        };
        if (mag != 1 || (t.cmono.is_one() && !t.sum)) put(mag.str());
        if (!t.cmono.is_one()) put(t.cmono.to_string());
        if (t.sum) put(format_sumref(*t.sum));
        out += body;
    }
    return out;
}

std::string format_identity(const IdentityRecord& r)
{
    std::string out;
    for (const Factor& f : r.left) {
        if (!out.empty()) out += "*";
        out += format_sumref({f.indices, f.tag});
    }
    return out + " = " + format_expression(r.right);
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    IdentityRecord identity()
    {
        IdentityRecord r;
        r.left.push_back(factor());
        skip();
        while (peek() == '*') {
            ++pos_;
            r.left.push_back(factor());
            skip();
        }
        if (r.left.size() < 2) fail("expected '*' between left-hand factors");
        expect('=');
        r.right = expression();
        for (const Factor& f : r.left) r.weight += f.indices.weight();
        return r;
    }

    Expression expression()
    {
        skip();
        if (at_end()) fail("empty expression");
        Expression e;
        bool neg = false;
        if (peek() == '-' || peek() == '+') neg = s_[pos_++] == '-';
        e.add(term(neg));
        skip();
        while (!at_end()) {
            char c = peek();
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++pos_;
            e.add(term(c == '-'));
            skip();
        }
        return canonicalize(e);
    }

    void finish()
    {
        skip();
        if (!at_end()) fail("unexpected trailing text");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    void expect(char c)
    {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string digits()
    {
        std::size_t b = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (b == pos_) fail("expected a number");
        return std::string(s_.substr(b, pos_ - b));
    }

    std::string identifier()
    {
        std::size_t b = pos_;
        while (!at_end() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(b, pos_ - b));
    }

    IndexVector bracket()
    {
        expect('[');
        skip();
        std::vector<int> v;
        if (peek() == ']') {
            ++pos_;
            return IndexVector::unit();
        }
        for (;;) {
            skip();
            bool neg = false;
            if (peek() == '-') {
                neg = true;
                ++pos_;
            }
            std::size_t at = pos_;
            std::string d = digits();
            if (d.size() > 2 || std::stoi(d) == 0) throw SyntaxError("index out of range", at);
            v.push_back(neg ? -std::stoi(d) : std::stoi(d));
            skip();
            if (peek() == ']') break;
            if (peek() != ',') fail("expected ',' or ']'");
            ++pos_;
        }
        ++pos_;
        return IndexVector(std::move(v));
    }

    Factor factor()
    {
        skip();
        std::size_t at = pos_;
        std::string id = identifier();
        if (id == "s") return {bracket(), ArgTag::Z};
        if (id == "sb") return {bracket(), ArgTag::Refl};
        if (id.empty()) fail("expected s[...] or sb[...]");
        throw UnknownSymbol("unknown symbol '" + id + "'", at);
    }

    Term term(bool negative)
    {
        skip();
        Term t{Rational(1), ConstantMonomial(), std::nullopt};
        bool any = false;
        for (;;) {
            skip();
            std::size_t at = pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                if (any) fail("a rational coefficient must come first");
                Integer num(digits());
                Integer den(1);
                if (peek() == '/') {
                    ++pos_;
                    den = Integer(digits());
                    if (den == 0) throw SyntaxError("zero denominator", at);
                }
                t.coeff = Rational(num, den);
            } else {
                if (t.sum) fail("a sum must be the last factor");
                std::string id = identifier();
                if (id == "s" || id == "sb") {
                    t.sum = SumRef{bracket(), id == "s" ? ArgTag::Z : ArgTag::Refl};
                } else {
                    Constant c;
                    if (id == "ln2") c = Constant::Ln2;
                    else if (id == "z2") c = Constant::Zeta2;
                    else if (id == "z3") c = Constant::Zeta3;
                    else if (id == "Li4h") c = Constant::Li4Half;
                    else if (id.empty()) fail("expected a term");
                    else throw UnknownSymbol("unknown symbol '" + id + "'", at);
                    int power = 1;
                    skip();
                    if (peek() == '^') {
                        ++pos_;
                        skip();
                        std::size_t pat = pos_;
                        std::string d = digits();
                        if (d.size() > 2 || std::stoi(d) == 0) throw SyntaxError("bad exponent", pat);
                        power = std::stoi(d);
                    }
                    t.cmono = t.cmono * ConstantMonomial(c, power);
                }
            }
            any = true;
            skip();
            if (peek() != '*') break;
            ++pos_;
        }
        if (negative) t.coeff = -t.coeff;
        return t;
    }
};

const char* tag_name(ArgTag t) { return t == ArgTag::Z ? "Z" : "REFL"; }

ArgTag tag_from(const std::string& s)
{
    if (s == "Z") return ArgTag::Z;
    if (s == "REFL") return ArgTag::Refl;
    throw ValidationError("unknown arg_tag '" + s + "'");
}

Provenance provenance_from(const std::string& s)
{
    for (Provenance p : {Provenance::Corpus, Provenance::Derived, Provenance::Reflected, Provenance::Composed})
        if (s == provenance_name(p)) return p;
    throw ValidationError("unknown provenance '" + s + "'");
}

json integer_json(const Integer& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

Integer integer_from(const json& j)
{
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw ValidationError("expected an integer");
}

json record_json(const IdentityRecord& r)
{
    json left = json::array();
    for (const Factor& f : r.left) left.push_back({{"arg_tag", tag_name(f.tag)}, {"indices", f.indices.indices()}});
    json terms = json::array();
    for (const Term& t : r.right.terms()) {
        json ce = json::object();
        for (Constant c : kAllConstants) ce[constant_name(c)] = t.cmono.exponent(c);
        json jt = {{"num", integer_json(boost::multiprecision::numerator(t.coeff))},
                   {"den", integer_json(boost::multiprecision::denominator(t.coeff))},
                   {"const_exponents", ce}};
        if (t.sum) {
            jt["indices"] = t.sum->indices.indices();
            jt["arg_tag"] = tag_name(t.sum->tag);
        } else {
            jt["indices"] = nullptr;
            jt["arg_tag"] = nullptr;
        }
        terms.push_back(std::move(jt));
    }
    return {{"left", left}, {"terms", terms}, {"weight", r.weight}, {"provenance", provenance_name(r.provenance)}};
}

IdentityRecord record_from(const json& j)
{
    IdentityRecord r;
    for (const json& f : j.at("left")) {
        auto idx = f.at("indices").get<std::vector<int>>();
        r.left.push_back({idx.empty() ? IndexVector::unit() : IndexVector(idx), tag_from(f.at("arg_tag"))});
    }
    Expression e;
    for (const json& t : j.at("terms")) {
        std::array<int, 4> ex{};
        for (Constant c : kAllConstants) ex[static_cast<int>(c)] = t.at("const_exponents").value(constant_name(c), 0);
        Integer den = integer_from(t.at("den"));
        if (den <= 0) throw ValidationError("non-positive denominator");
        Term term{Rational(integer_from(t.at("num")), den), ConstantMonomial(ex), std::nullopt};
        if (!t.at("indices").is_null()) term.sum = SumRef{IndexVector(t.at("indices").get<std::vector<int>>()),
                                                          tag_from(t.at("arg_tag"))};
        e.add(std::move(term));
    }
    r.right = canonicalize(e);
    r.weight = j.at("weight").get<int>();
    r.provenance = provenance_from(j.value("provenance", std::string("corpus")));
    return r;
}

} // namespace

Expression parse_expression(std::string_view text)
{
    Parser p(text);
    Expression e = p.expression();
    p.finish();
    return e;
}

IdentityRecord parse_identity(std::string_view text)
{
    Parser p(text);
    IdentityRecord r = p.identity();
    p.finish();
    return r;
}

std::string serialize_text(const CorpusFile& f)
{
    std::string out = "version " + f.version + "\nweight " + std::to_string(f.weight) + "\n";
    for (const IdentityRecord& r : f.records) out += format_identity(r) + "\n";
    return out;
}

CorpusFile parse_text(std::string_view text)
{
    CorpusFile f;
    bool have_version = false, have_weight = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        std::string body = line.substr(b);
        while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.pop_back();
        if (body.rfind("version ", 0) == 0) {
            f.version = body.substr(8);
            have_version = true;
            continue;
        }
        if (body.rfind("weight ", 0) == 0) {
            try {
                f.weight = std::stoi(body.substr(7));
            } catch (const std::exception&) {
                throw ValidationError("line " + std::to_string(lineno) + ": bad weight header");
            }
            have_weight = true;
            continue;
        }
        try {
            f.records.push_back(parse_identity(body));
        } catch (const std::exception& e) {
            throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_version || !have_weight) throw ValidationError("missing 'version' or 'weight' header");
    return f;
}

std::string serialize_structured(const CorpusFile& f)
{
    json records = json::array();
    for (const IdentityRecord& r : f.records) records.push_back(record_json(r));
    json doc = {{"format", "hsum-identities"}, {"version", f.version}, {"weight", f.weight}, {"records", records}};
    return doc.dump(1) + "\n";
}

CorpusFile parse_structured(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
    try {
        if (doc.value("format", std::string()) != "hsum-identities") throw ValidationError("not an hsum-identities document");
        CorpusFile f;
        f.version = doc.at("version").get<std::string>();
        f.weight = doc.at("weight").get<int>();
        for (const json& r : doc.at("records")) f.records.push_back(record_from(r));
        return f;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad structure: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("bad record: ") + e.what());
    }
}

std::string serialize_corpus(const CorpusFile& f, CorpusFormat fmt)
{
    return fmt == CorpusFormat::Text ? serialize_text(f) : serialize_structured(f);
}

void validate_corpus(const CorpusFile& f)
{
    std::set<std::pair<IndexVector, IndexVector>> keys;
    for (std::size_t i = 0; i < f.records.size(); ++i) {
        const IdentityRecord& r = f.records[i];
        std::string where = "record " + std::to_string(i + 1) + ": ";
        try {
            validate_record(r);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(where + e.what());
        }
        if (r.weight != f.weight)
            throw ValidationError(where + "weight " + std::to_string(r.weight) + " in a weight-" +
                                  std::to_string(f.weight) + " corpus");
        if (!r.is_bilinear()) continue;
        auto k = r.key();
        if (!keys.insert(k).second)
            throw ValidationError(where + "duplicate pair s[" + k.first.to_string() + "]*sb[" +
                                  k.second.to_string() + "]");
    }
    if (f.weight != 4) return;

    std::set<std::pair<IndexVector, IndexVector>> want;
    for (const IndexVector& a : build_basis(1))
        for (const IndexVector& b : build_basis(3)) want.insert({a, b});
    if (keys.size() != 57) throw ValidationError("weight-4 corpus needs 57 bilinear records, found " +
                                                 std::to_string(keys.size()));
    std::set<std::pair<IndexVector, IndexVector>> pairs22;
    for (const auto& k : keys) {
        if (want.count(k)) continue;
        if (k.first.weight() != 2 || k.second.weight() != 2 || !in_basis(k.first) || !in_basis(k.second))
            throw ValidationError("unexpected pair s[" + k.first.to_string() + "]*sb[" + k.second.to_string() + "]");
        auto u = std::minmax(k.first, k.second);
        if (!pairs22.insert({u.first, u.second}).second)
            throw ValidationError("both orderings of s[" + k.first.to_string() + "], s[" + k.second.to_string() +
                                  "] present");
    }
    for (const auto& k : want)
        if (!keys.count(k))
            throw ValidationError("missing pair s[" + k.first.to_string() + "]*sb[" + k.second.to_string() + "]");
    if (pairs22.size() != 21) throw ValidationError("incomplete B2 x B2 pairs");
}

CorpusFile load_corpus(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    std::string text = ss.str();
    std::size_t b = text.find_first_not_of(" \t\r\n");
    bool structured = path.extension() == ".json" || (b != std::string::npos && text[b] == '{');
    if (b == std::string::npos) throw ValidationError(path.string() + ": empty corpus");
    CorpusFile f = structured ? parse_structured(text) : parse_text(text);
    validate_corpus(f);
    return f;
}

void save_corpus(const CorpusFile& f, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << serialize_corpus(f, path.extension() == ".json" ? CorpusFormat::Structured : CorpusFormat::Text);
    if (!out) throw IoError("write failed for " + path.string());
}

const IdentityRecord* find_bilinear(const CorpusFile& f, const IndexVector& a, const IndexVector& b)
{
    for (const IdentityRecord& r : f.records)
        if (r.is_bilinear() && r.left[0].indices == a && r.left[1].indices == b) return &r;
    return nullptr;
}

} // namespace hsum
