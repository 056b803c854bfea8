#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace gra {

// Index of a domain element; domains are ordered, so element i is the i-th atom.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

// Finite, non-empty, ordered set of distinct atoms.
class Domain {
public:
    explicit Domain(std::vector<std::string> names);

    // Domain {"0", "1", ..., "n-1"}.
    static Domain of_size(std::size_t n);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(Element e) const { return names_.at(e); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<Element> find(const std::string& name) const;

    friend bool operator==(const Domain& a, const Domain& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Element> index_;
};

// Arity-definite relation over a domain of a fixed size.
//
// Tuples are stored as a dense bitset over all n^k index tuples, laid out
// in lexicographic order (first coordinate most significant). Iteration
// therefore always visits tuples lexicographically. Arity 0 has exactly one
// cell, the empty tuple, so the two nullary values are {()} and {}.
class ADRelation {
public:
    // Largest number of cells (n^k) a relation may occupy.
    static constexpr std::size_t max_cells = std::size_t{1} << 30;

    ADRelation(std::size_t domain_size, std::size_t arity);

    static ADRelation full(std::size_t domain_size, std::size_t arity);
    static ADRelation top0(std::size_t domain_size) { return full(domain_size, 0); }
    static ADRelation bottom0(std::size_t domain_size) { return ADRelation(domain_size, 0); }

    std::size_t arity() const noexcept { return arity_; }
    std::size_t domain_size() const noexcept { return domain_size_; }
    std::size_t cell_count() const noexcept { return cells_; }

    // Number of tuples.
    std::size_t size() const noexcept;
    bool empty() const noexcept;

    bool contains(std::span<const Element> tuple) const;
    void insert(std::span<const Element> tuple);
    void erase(std::span<const Element> tuple);

    bool test_cell(std::size_t cell) const noexcept {
        return (words_[cell >> 6] >> (cell & 63)) & 1u;
    }
    void set_cell(std::size_t cell) noexcept { words_[cell >> 6] |= std::uint64_t{1} << (cell & 63); }
    void reset_cell(std::size_t cell) noexcept {
        words_[cell >> 6] &= ~(std::uint64_t{1} << (cell & 63));
    }

    std::size_t encode(std::span<const Element> tuple) const;
    void decode(std::size_t cell, std::span<Element> out) const noexcept;

    // Calls f(std::span<const Element>) for every tuple, in lexicographic order.
    template <class F>
    void for_each(F&& f) const {
        Tuple buf(arity_);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int bit = __builtin_ctzll(bits);
                bits &= bits - 1;
                decode(w * 64 + static_cast<std::size_t>(bit), buf);
                f(std::span<const Element>(buf));
            }
        }
    }

    std::vector<Tuple> tuples() const;

    std::vector<std::uint64_t>& words() noexcept { return words_; }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    friend bool operator==(const ADRelation& a, const ADRelation& b) {
        return a.arity_ == b.arity_ && a.domain_size_ == b.domain_size_ && a.words_ == b.words_;
    }

private:
    void check_tuple(std::span<const Element> tuple) const;
    void clear_padding() noexcept;

    std::size_t domain_size_;
    std::size_t arity_;
    std::size_t cells_;
    std::vector<std::uint64_t> words_;

    friend ADRelation complement_cells(const ADRelation& r);
};

// n^k, throwing a capacity error when it exceeds ADRelation::max_cells.
std::size_t checked_cell_count(std::size_t domain_size, std::size_t arity);

std::string to_string(const ADRelation& r, const Domain& d);

}  // namespace gra
