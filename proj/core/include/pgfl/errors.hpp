#pragma once

#include <stdexcept>
#include <string>

namespace pgfl {

/// A denominator functional/series has a vanishing constant term, so the
/// quotient and reciprocal rules are undefined.
struct ZeroConstantTermError : std::domain_error {
    explicit ZeroConstantTermError(const std::string& what) : std::domain_error(what) {}
};

/// Inputs that cannot be combined: different state spaces, different numeric
/// modes, or otherwise structurally incompatible operands.
struct CompatibilityError : std::invalid_argument {
    explicit CompatibilityError(const std::string& what) : std::invalid_argument(what) {}
};

/// A file or text input could not be parsed or fails schema validation.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pgfl
