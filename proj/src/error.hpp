#pragma once

#include <stdexcept>
#include <string>

namespace utr {

// Categories mirror the status codes of the public C API (and the CLI's
// nonzero exit codes).
enum class ErrorCode {
    io = 2,
    parse = 3,
    domain = 4,
    internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string msg)
        : std::runtime_error(std::move(msg)), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class IoError : public Error {
public:
    explicit IoError(std::string msg) : Error(ErrorCode::io, std::move(msg)) {}
};

// Syntax or semantic error in an input text; carries source position.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& msg)
        : Error(ErrorCode::parse,
                "line " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// Violated precondition of an operation (empty language, sync multiplicity,
// out-of-range action, ...).
class DomainError : public Error {
public:
    explicit DomainError(std::string msg) : Error(ErrorCode::domain, std::move(msg)) {}
};

}  // namespace utr
