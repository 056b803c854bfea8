#pragma once

#include <string>
#include <vector>

namespace gra::translate {

// A word over {p, s}; the leftmost letter is the outermost operator, so the
// word is applied to a relation from right to left.
struct PermWord {
    std::string word;
    std::size_t arity = 0;
    // sigma[i] is the 0-based position that the entry at position i moves to.
    std::vector<std::size_t> sigma;
};

// The permutation a word realizes on k-ary tuples.
std::vector<std::size_t> realized_permutation(const std::string& word, std::size_t k);

// Applies a word to a list of column labels, e.g. variables.
template <class T>
std::vector<T> permute_labels(const std::string& word, std::vector<T> labels) {
    const std::size_t k = labels.size();
    for (auto it = word.rbegin(); it != word.rend() && k >= 2; ++it) {
        if (*it == 'p') {
            T last = labels.back();
            labels.pop_back();
            labels.insert(labels.begin(), last);
        } else {
            std::swap(labels[k - 1], labels[k - 2]);
        }
    }
    return labels;
}

// Word realizing sigma on k-ary relations. Uses rotations and the last-pair
// swap directly when they suffice, otherwise a selection sort built from
// moving one entry left at a time (rotate it to the end, apply "ps" once per
// step, rotate back).
PermWord synthesize_permutation(const std::vector<std::size_t>& sigma);

// Word producing the arrangement in which position j holds the entry that
// currently sits at target[j].
PermWord arrange(const std::vector<std::size_t>& target);

// Removes "ss" and reduces runs of k or more p's until nothing changes.
std::string simplify_word(std::string word, std::size_t k);

}  // namespace gra::translate
