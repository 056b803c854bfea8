#pragma once

#include <stdexcept>
#include <string>

namespace gra {

// Every failure surfaced by the library carries one of these kinds; the CLI
// maps each kind to its own exit code.
enum class ErrorKind {
    usage,
    io,
    syntax,
    arity,
    vocabulary,
    invalid_structure,
    unsupported_operator,
    not_in_fragment,
    budget_exceeded,
    capacity,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace gra
