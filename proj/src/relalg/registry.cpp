#include "gra/relalg/registry.hpp"

#include <array>
#include <cctype>

#include "gra/error.hpp"

namespace gra {

bool OperatorRegistry::is_builtin(std::string_view name) noexcept {
    static constexpr std::array<std::string_view, 14> builtins = {
        "e", "p", "s", "I", "not", "ex", "J", "cup", "cap", "minus", "sint", "H", "exists", "forall"};
    for (auto b : builtins) {
        if (b == name) return true;
    }
    return false;
}

void OperatorRegistry::add(OperatorDescriptor op) {
    if (op.name.empty() || !(std::isalpha(static_cast<unsigned char>(op.name[0])) || op.name[0] == '_')) {
        throw Error(ErrorKind::usage, "operator names must start with a letter");
    }
    for (char c : op.name) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            throw Error(ErrorKind::usage, "operator name '" + op.name + "' has invalid characters");
        }
    }
    if (is_builtin(op.name)) {
        throw Error(ErrorKind::usage, "operator name '" + op.name + "' collides with a built-in");
    }
    if (op.input_count == 0) {
        throw Error(ErrorKind::usage, "operator '" + op.name + "' needs at least one input");
    }
    if (!op.output_arity || !op.evaluate) {
        throw Error(ErrorKind::usage, "operator '" + op.name + "' lacks an arity or evaluation rule");
    }
    const std::string name = op.name;
    if (!ops_.emplace(name, std::move(op)).second) {
        throw Error(ErrorKind::usage, "operator '" + name + "' is already registered");
    }
}

const OperatorDescriptor* OperatorRegistry::find(std::string_view name) const {
    auto it = ops_.find(name);
    return it == ops_.end() ? nullptr : &it->second;
}

}  // namespace gra
