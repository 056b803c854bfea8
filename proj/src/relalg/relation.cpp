#include "gra/relalg/relation.hpp"

#include <bit>

#include "gra/error.hpp"

namespace gra {

Domain::Domain(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) {
        throw Error(ErrorKind::invalid_structure, "domain must not be empty");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], static_cast<Element>(i)).second) {
            throw Error(ErrorKind::invalid_structure, "duplicate domain element '" + names_[i] + "'");
        }
    }
}

Domain Domain::of_size(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    return Domain(std::move(names));
}

std::optional<Element> Domain::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t checked_cell_count(std::size_t domain_size, std::size_t arity) {
    std::size_t cells = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        if (domain_size != 0 && cells > ADRelation::max_cells / domain_size) {
            throw Error(ErrorKind::capacity, "relation of arity " + std::to_string(arity) +
                                                 " over a domain of size " + std::to_string(domain_size) +
                                                 " exceeds the dense representation limit");
        }
        cells *= domain_size;
    }
    if (cells > ADRelation::max_cells) {
        throw Error(ErrorKind::capacity, "relation exceeds the dense representation limit");
    }
    return cells;
}

ADRelation::ADRelation(std::size_t domain_size, std::size_t arity)
    : domain_size_(domain_size),
      arity_(arity),
      cells_(checked_cell_count(domain_size, arity)),
      words_((cells_ + 63) / 64, 0) {
    if (domain_size == 0) {
        throw Error(ErrorKind::invalid_structure, "relations live over non-empty domains");
    }
}

ADRelation ADRelation::full(std::size_t domain_size, std::size_t arity) {
    ADRelation r(domain_size, arity);
    for (auto& w : r.words_) w = ~std::uint64_t{0};
    r.clear_padding();
    return r;
}

void ADRelation::clear_padding() noexcept {
    const std::size_t tail = cells_ & 63;
    if (tail != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << tail) - 1;
    }
}

std::size_t ADRelation::size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool ADRelation::empty() const noexcept {
    for (auto w : words_) {
        if (w != 0) return false;
    }
    return true;
}

void ADRelation::check_tuple(std::span<const Element> tuple) const {
    if (tuple.size() != arity_) {
        throw Error(ErrorKind::arity, "tuple of length " + std::to_string(tuple.size()) +
                                          " in a relation of arity " + std::to_string(arity_));
    }
    for (auto e : tuple) {
        if (e >= domain_size_) {
            throw Error(ErrorKind::invalid_structure, "tuple entry outside the domain");
        }
    }
}

std::size_t ADRelation::encode(std::span<const Element> tuple) const {
    std::size_t cell = 0;
    for (auto e : tuple) cell = cell * domain_size_ + e;
    return cell;
}

void ADRelation::decode(std::size_t cell, std::span<Element> out) const noexcept {
    for (std::size_t i = arity_; i-- > 0;) {
        out[i] = static_cast<Element>(cell % domain_size_);
        cell /= domain_size_;
    }
}

bool ADRelation::contains(std::span<const Element> tuple) const {
    check_tuple(tuple);
    return test_cell(encode(tuple));
}

void ADRelation::insert(std::span<const Element> tuple) {
    check_tuple(tuple);
    set_cell(encode(tuple));
}

void ADRelation::erase(std::span<const Element> tuple) {
    check_tuple(tuple);
    reset_cell(encode(tuple));
}

std::vector<Tuple> ADRelation::tuples() const {
    std::vector<Tuple> out;
    for_each([&](std::span<const Element> t) { out.emplace_back(t.begin(), t.end()); });
    return out;
}

ADRelation complement_cells(const ADRelation& r) {
    ADRelation out = r;
    for (auto& w : out.words_) w = ~w;
    out.clear_padding();
    return out;
}

std::string to_string(const ADRelation& r, const Domain& d) {
    std::string s = "({";
    bool first = true;
    r.for_each([&](std::span<const Element> t) {
        if (!first) s += ", ";
        first = false;
        s += "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) s += ",";
            s += d.name(t[i]);
        }
        s += ")";
    });
    s += "}, " + std::to_string(r.arity()) + ")";
    return s;
}

}  // namespace gra
