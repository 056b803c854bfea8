#include "gra/relalg/structure.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gra/error.hpp"

namespace gra {

using nlohmann::json;

void Structure::add_relation(const std::string& name, ADRelation rel) {
    if (name.empty()) throw Error(ErrorKind::invalid_structure, "empty relation name");
    if (rel.domain_size() != domain_.size()) {
        throw Error(ErrorKind::invalid_structure, "relation '" + name + "' does not lie over the domain");
    }
    if (!relations_.emplace(name, std::move(rel)).second) {
        throw Error(ErrorKind::invalid_structure, "relation '" + name + "' interpreted twice");
    }
}

void Structure::add_relation(const std::string& name, std::size_t arity,
                             const std::vector<std::vector<std::string>>& tuples) {
    ADRelation rel(domain_.size(), arity);
    Tuple t;
    for (const auto& row : tuples) {
        if (row.size() != arity) {
            throw Error(ErrorKind::invalid_structure,
                        "relation '" + name + "' declared with arity " + std::to_string(arity) +
                            " has a tuple of length " + std::to_string(row.size()));
        }
        t.clear();
        for (const auto& atom : row) {
            auto e = domain_.find(atom);
            if (!e) {
                throw Error(ErrorKind::invalid_structure,
                            "relation '" + name + "' mentions '" + atom + "' outside the domain");
            }
            t.push_back(*e);
        }
        rel.insert(t);
    }
    add_relation(name, std::move(rel));
}

const ADRelation* Structure::find(const std::string& name) const {
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
}

ADRelation* Structure::find(const std::string& name) {
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
}

const ADRelation& Structure::relation(const std::string& name) const {
    if (const auto* r = find(name)) return *r;
    throw Error(ErrorKind::vocabulary, "symbol '" + name + "' is not interpreted by the structure");
}

Vocabulary Structure::vocabulary() const {
    Vocabulary v;
    for (const auto& [name, rel] : relations_) v.emplace(name, rel.arity());
    return v;
}

Structure structure_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::invalid_structure, std::string("malformed structure JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("domain")) {
            throw Error(ErrorKind::invalid_structure, "structure JSON needs a 'domain' list");
        }
        Structure m(Domain(doc.at("domain").get<std::vector<std::string>>()));
        if (doc.contains("relations")) {
            for (const auto& [name, body] : doc.at("relations").items()) {
                const auto arity = body.at("arity").get<long long>();
                if (arity < 0) {
                    throw Error(ErrorKind::invalid_structure, "relation '" + name + "' has negative arity");
                }
                auto tuples = body.value("tuples", json::array()).get<std::vector<std::vector<std::string>>>();
                m.add_relation(name, static_cast<std::size_t>(arity), tuples);
            }
        }
        return m;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::invalid_structure, std::string("bad structure JSON: ") + e.what());
    }
}

std::string structure_to_json(const Structure& m) {
    json doc;
    doc["domain"] = m.domain().names();
    json rels = json::object();
    for (const auto& [name, rel] : m.relations()) {
        json tuples = json::array();
        rel.for_each([&](std::span<const Element> t) {
            json row = json::array();
            for (auto e : t) row.push_back(m.domain().name(e));
            tuples.push_back(std::move(row));
        });
        rels[name] = {{"arity", rel.arity()}, {"tuples", std::move(tuples)}};
    }
    doc["relations"] = std::move(rels);
    return doc.dump(2);
}

Structure load_structure(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot read structure file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return structure_from_json(ss.str());
}

}  // namespace gra
