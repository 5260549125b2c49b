#pragma once

#include "hsum/identity.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hsum {

/// "s[1,2]", "sb[-3]", "sb[]" for the unit.
std::string format_sumref(const SumRef& s);

/// Compact notation: "8/5*z2^2 - z2*s[2] + s[3,1]". With `spaced` false the
/// separators lose their blanks ("s[1,2]+s[2,1]-s[3]"). "0" when empty.
std::string format_expression(const Expression& e, bool spaced = true);

/// "s[1]*sb[3] = ..."
std::string format_identity(const IdentityRecord& r);

/// Inverse of format_expression; accepts either spacing and constants in any
/// order. The result is canonicalized. Throws SyntaxError / UnknownSymbol.
Expression parse_expression(std::string_view text);

/// Inverse of format_identity. The left side needs at least two factors;
/// the weight is taken from it and provenance is Corpus. The right side is
/// canonicalized but not otherwise validated.
IdentityRecord parse_identity(std::string_view text);

struct CorpusFile {
    std::string version = "1";
    int weight = 4;
    std::vector<IdentityRecord> records;
};

enum class CorpusFormat { Text, Structured };

/// Text: "version 1", "weight 4", then one identity per line. Blank lines and
/// lines starting with '#' are skipped on input.
std::string serialize_text(const CorpusFile& f);
CorpusFile parse_text(std::string_view text);

/// JSON with sorted keys, one document per file.
std::string serialize_structured(const CorpusFile& f);
CorpusFile parse_structured(std::string_view text);

std::string serialize_corpus(const CorpusFile& f, CorpusFormat fmt);

/// Record validity, unique (a, b) keys, and at weight 4 completeness: the
/// bilinear keys are exactly B1 x B3 plus one ordering of each unordered
/// B2 x B2 pair. Throws ValidationError.
void validate_corpus(const CorpusFile& f);

/// Format by extension (.json is structured) or by a leading '{'.
/// Throws IoError, ValidationError (parse errors included, with line).
CorpusFile load_corpus(const std::filesystem::path& path);
void save_corpus(const CorpusFile& f, const std::filesystem::path& path);

/// Record for left-hand pair (a, b) or nullptr.
const IdentityRecord* find_bilinear(const CorpusFile& f, const IndexVector& a, const IndexVector& b);

} // namespace hsum
