#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dioph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A value violates a precondition (n out of range, index out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A search or enumeration ran out of its step budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// An argument the r_3 routine has no exact method for.
class UnsupportedShape : public Error {
public:
    using Error::Error;
};

/// A factor table entry failed its primality or product check.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace dioph
