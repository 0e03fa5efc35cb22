#pragma once

#include <stdexcept>
#include <string>

namespace submax {

/// Argument outside the mathematical domain of an operation
/// (index out of range, invalid parameters, precondition violated).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input too large for an exhaustive routine. Exhaustive routines refuse
/// rather than sample.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Malformed instance text. `where` names the line or field at fault.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Absolute tolerance for comparisons that are exact in principle.
inline constexpr double kEpsNum = 1e-9;

/// Largest ground set accepted by exhaustive checks over 2^n subsets.
inline constexpr int kMaxExhaustiveN = 14;

} // namespace submax
