#pragma once

#include <map>
#include <string>
#include <vector>

#include "gra/relalg/relation.hpp"

namespace gra {

// Relation symbol name -> arity.
using Vocabulary = std::map<std::string, std::size_t>;

// Finite relational model: a domain plus an interpretation of each symbol.
class Structure {
public:
    explicit Structure(Domain domain) : domain_(std::move(domain)) {}

    const Domain& domain() const noexcept { return domain_; }

    void add_relation(const std::string& name, ADRelation rel);
    void add_relation(const std::string& name, std::size_t arity,
                      const std::vector<std::vector<std::string>>& tuples);

    const ADRelation* find(const std::string& name) const;
    ADRelation* find(const std::string& name);
    const ADRelation& relation(const std::string& name) const;
    const std::map<std::string, ADRelation>& relations() const noexcept { return relations_; }

    Vocabulary vocabulary() const;

    friend bool operator==(const Structure& a, const Structure& b) {
        return a.domain_ == b.domain_ && a.relations_ == b.relations_;
    }

private:
    Domain domain_;
    std::map<std::string, ADRelation> relations_;
};

// Structure file format: {"domain": [...], "relations": {name: {"arity": k, "tuples": [[...]]}}}.
Structure structure_from_json(const std::string& text);
std::string structure_to_json(const Structure& m);
Structure load_structure(const std::string& path);

}  // namespace gra
