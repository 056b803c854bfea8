#include "gra/error.hpp"

namespace gra {

const char* to_string(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::usage: return "usage";
        case ErrorKind::io: return "io";
        case ErrorKind::syntax: return "syntax";
        case ErrorKind::arity: return "arity";
        case ErrorKind::vocabulary: return "vocabulary";
        case ErrorKind::invalid_structure: return "invalid-structure";
        case ErrorKind::unsupported_operator: return "unsupported-operator";
        case ErrorKind::not_in_fragment: return "not-in-fragment";
        case ErrorKind::budget_exceeded: return "budget-exceeded";
        case ErrorKind::capacity: return "capacity";
    }
    return "error";
}

}  // namespace gra
