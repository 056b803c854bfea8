#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace gra::testing {

// Reduced ordered binary decision diagrams with a shared unique table, so two
// functions are equal iff their nodes are equal.
class Bdd {
public:
    using Node = std::uint32_t;
    static constexpr Node zero = 0;
    static constexpr Node one = 1;

    Bdd();

    Node var(std::uint32_t v);
    Node ite(Node f, Node g, Node h);
    Node neg(Node f) { return ite(f, zero, one); }
    Node conj(Node f, Node g) { return ite(f, g, zero); }
    Node disj(Node f, Node g) { return ite(f, one, g); }

    // Value of f under an assignment of all variables.
    bool eval(Node f, const std::vector<bool>& values) const;
    std::size_t node_count() const noexcept { return nodes_.size(); }

private:
    using Key = std::array<std::uint32_t, 3>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = k[0];
            h = h * 0x9E3779B97F4A7C15ull ^ k[1];
            h = h * 0x9E3779B97F4A7C15ull ^ k[2];
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };
    struct Entry {
        std::uint32_t var;
        Node lo, hi;
    };

    Node make(std::uint32_t var, Node lo, Node hi);
    std::uint32_t top(Node f) const { return nodes_[f].var; }
    Node cofactor(Node f, std::uint32_t v, bool high) const;

    std::vector<Entry> nodes_;
    std::unordered_map<Key, Node, KeyHash> unique_;
    std::unordered_map<Key, Node, KeyHash> ite_cache_;
};

}  // namespace gra::testing
