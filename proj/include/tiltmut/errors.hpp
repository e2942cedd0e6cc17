#pragma once

#include <stdexcept>
#include <string>

namespace tiltmut {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input failed schema or invariant validation (CLI exit code 2).
struct SchemaError : Error {
    std::string pointer;  // JSON pointer to the offending node
    SchemaError(std::string ptr, const std::string& msg)
        : Error(ptr + ": " + msg), pointer(std::move(ptr)) {}
};

struct ValidationError : Error {
    using Error::Error;
};

struct CapExceeded : Error {
    using Error::Error;
};

/// A semisimple quotient contains a simple summand living over a proper
/// extension field; carries the extension degree that would split it.
struct NonSplitField : Error {
    int required_degree;
    explicit NonSplitField(int deg)
        : Error("computation requires a splitting field extension of degree " +
                std::to_string(deg)),
          required_degree(deg) {}
};

/// An enumeration ran out of its step or wall-clock budget (CLI exit code 3).
struct BudgetExceeded : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct NotInInertia : Error {
    using Error::Error;
};

struct BlockEscape : Error {
    using Error::Error;
};

struct AmbiguousCover : Error {
    using Error::Error;
};

struct NoCover : Error {
    using Error::Error;
};

/// Internal consistency oracle tripped: mutation-derived Hasse edges disagree
/// with covering relations of the partial order.
struct MutationOrderMismatch : Error {
    using Error::Error;
};

}  // namespace tiltmut
