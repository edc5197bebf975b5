#pragma once

#include <stdexcept>
#include <string>

namespace iwalg {

/// Machine-readable failure classes. The CLI maps these to exit codes.
enum class ErrorKind {
    parse,              // malformed IWM text
    validation,         // well-formed but inconsistent input (bad prime, arity, ...)
    ring_mismatch,
    precision,          // a value depends on data below the truncation threshold
    step_budget,        // rewriting or reduction exceeded its budget
    unsupported_mode,   // operation not available for rules-mode rings
    internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse error with a source location (1-based line and column).
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what)
        : Error(ErrorKind::parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace iwalg
