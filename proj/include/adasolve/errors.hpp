#pragma once

#include <stdexcept>
#include <string>

namespace adasolve {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A domain object violates one of its invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; `line` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace adasolve
