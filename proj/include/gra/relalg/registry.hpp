#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "gra/relalg/relation.hpp"

namespace gra {

// A user-defined relation operator. The output arity must depend only on the
// input arities, and evaluation must commute with domain isomorphisms.
struct OperatorDescriptor {
    std::string name;
    std::size_t input_count = 1;
    std::function<std::size_t(std::span<const std::size_t>)> output_arity;
    std::function<ADRelation(const Domain&, std::span<const ADRelation>)> evaluate;
};

class OperatorRegistry {
public:
    // Rejects names of built-in operators, duplicates, and incomplete descriptors.
    void add(OperatorDescriptor op);

    const OperatorDescriptor* find(std::string_view name) const;
    const std::map<std::string, OperatorDescriptor, std::less<>>& operators() const noexcept { return ops_; }

    static bool is_builtin(std::string_view name) noexcept;

private:
    std::map<std::string, OperatorDescriptor, std::less<>> ops_;
};

}  // namespace gra
