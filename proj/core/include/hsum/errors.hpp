#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsum {

/// Argument within the exclusion radius of a pole.
struct PoleProximity : std::domain_error {
    using std::domain_error::domain_error;
};

/// The evaluator could not meet its error target at the requested precision.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A solved coefficient is not close to any admissible rational combination.
struct ReconstructionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Residual above tolerance at a verification point.
struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Least-squares system is (numerically) rank deficient.
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A bilinear identity needed for a composition is not in the corpus.
struct MissingBilinear : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed compact identity text. `position` is a 0-based byte offset.
struct SyntaxError : std::runtime_error {
    SyntaxError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos)
    {
    }
    std::size_t position;
};

/// Identifier that is neither a sum (s, sb) nor a known constant.
struct UnknownSymbol : SyntaxError {
    using SyntaxError::SyntaxError;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Corpus content violates a file-level invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hsum
