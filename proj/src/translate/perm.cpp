#include "gra/translate/perm.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "gra/error.hpp"

namespace gra::translate {

std::vector<std::size_t> realized_permutation(const std::string& word, std::size_t k) {
    std::vector<std::size_t> ids(k);
    std::iota(ids.begin(), ids.end(), 0);
    const auto moved = permute_labels(word, ids);
    std::vector<std::size_t> sigma(k);
    for (std::size_t j = 0; j < k; ++j) sigma[moved[j]] = j;
    return sigma;
}

std::string simplify_word(std::string word, std::size_t k) {
    if (k <= 1) return {};
    bool changed = true;
    while (changed) {
        changed = false;
        if (auto at = word.find("ss"); at != std::string::npos) {
            word.erase(at, 2);
            changed = true;
            continue;
        }
        for (std::size_t i = 0; i < word.size();) {
            if (word[i] != 'p') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < word.size() && word[j] == 'p') ++j;
            if (j - i >= k) {
                word.erase(i, (j - i) / k * k);
                changed = true;
                break;
            }
            i = j;
        }
    }
    return word;
}

namespace {

void check_bijection(const std::vector<std::size_t>& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (auto v : sigma) {
        if (v >= sigma.size() || seen[v]) throw Error(ErrorKind::usage, "not a permutation");
        seen[v] = true;
    }
}

// Rotation amount r with sigma[i] = (i + r) mod k, if sigma is a rotation.
std::optional<std::size_t> rotation_of(const std::vector<std::size_t>& sigma) {
    const std::size_t k = sigma.size();
    const std::size_t r = sigma[0];
    for (std::size_t i = 0; i < k; ++i) {
        if (sigma[i] != (i + r) % k) return std::nullopt;
    }
    return r;
}

bool is_last_swap(const std::vector<std::size_t>& sigma) {
    const std::size_t k = sigma.size();
    if (k < 2) return false;
    for (std::size_t i = 0; i + 2 < k; ++i) {
        if (sigma[i] != i) return false;
    }
    return sigma[k - 2] == k - 1 && sigma[k - 1] == k - 2;
}

}  // namespace

PermWord synthesize_permutation(const std::vector<std::size_t>& sigma) {
    check_bijection(sigma);
    const std::size_t k = sigma.size();
    PermWord out{{}, k, sigma};
    if (k <= 1) return out;
    if (is_last_swap(sigma)) {
        out.word = "s";
        return out;
    }
    if (auto r = rotation_of(sigma)) {
        out.word.assign(*r, 'p');
        return out;
    }

    // current[j] = original index of the entry now at position j.
    std::vector<std::size_t> current(k);
    std::iota(current.begin(), current.end(), 0);
    std::vector<std::size_t> wanted(k);
    for (std::size_t i = 0; i < k; ++i) wanted[sigma[i]] = i;

    std::string applied;  // in application order
    auto apply = [&](char c) {
        applied.push_back(c);
        current = permute_labels(std::string(1, c), current);
    };
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t c = static_cast<std::size_t>(
            std::find(current.begin(), current.end(), wanted[t]) - current.begin());
        if (c == t) continue;
        auto goal = current;
        goal.erase(goal.begin() + static_cast<std::ptrdiff_t>(c));
        goal.insert(goal.begin() + static_cast<std::ptrdiff_t>(t), wanted[t]);
        for (std::size_t i = c; i + 1 < k; ++i) apply('p');
        for (std::size_t i = 0; i < c - t; ++i) {
            apply('s');
            apply('p');
        }
        std::size_t guard = 0;
        while (current != goal) {
            apply('p');
            if (++guard > k) throw Error(ErrorKind::usage, "permutation synthesis failed");
        }
    }
    out.word = simplify_word(std::string(applied.rbegin(), applied.rend()), k);
    if (realized_permutation(out.word, k) != sigma) {
        throw Error(ErrorKind::usage, "permutation synthesis produced a wrong word");
    }
    return out;
}

PermWord arrange(const std::vector<std::size_t>& target) {
    std::vector<std::size_t> sigma(target.size());
    for (std::size_t j = 0; j < target.size(); ++j) sigma[target[j]] = j;
    return synthesize_permutation(sigma);
}

}  // namespace gra::translate
