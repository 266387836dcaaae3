#pragma once

#include <stdexcept>
#include <string>

namespace springer {

/// A stated precondition of an operation does not hold; carries the
/// numerical residual that witnessed the violation where one exists.
class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(const std::string& what, double residual = 0.0)
        : std::invalid_argument(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A rank or dimension came out different from what the construction
/// guarantees. Firing means the input left the regime where the
/// construction is valid (or the tolerances are off).
class NumericalDegeneracy : public std::runtime_error {
public:
    NumericalDegeneracy(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// An assertion that encodes a proved statement failed numerically.
/// This should never fire; when it does, it is a finding, not a bug
/// in the caller.
class LemmaViolation : public std::runtime_error {
public:
    LemmaViolation(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed textual input; position is a 0-based byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace springer
