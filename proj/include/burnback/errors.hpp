#pragma once

#include <stdexcept>
#include <string>

namespace burnback {

// Malformed text input. `line` is 1-based, 0 when not attributable.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, int node)
        : std::runtime_error(what), node_(node) {}
    int node() const noexcept { return node_; }

private:
    int node_;
};

} // namespace burnback
