#include "gra/relalg/operators.hpp"

#include "gra/error.hpp"

namespace gra {

namespace {

void require_same_domain(const ADRelation& r, const ADRelation& t) {
    if (r.domain_size() != t.domain_size()) {
        throw Error(ErrorKind::invalid_structure, "operands live over domains of different sizes");
    }
}

// Calls f(cell) for each set cell of r.
template <class F>
void for_each_cell(const ADRelation& r, F&& f) {
    const auto& words = r.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits != 0) {
            const int bit = __builtin_ctzll(bits);
            bits &= bits - 1;
            f(w * 64 + static_cast<std::size_t>(bit));
        }
    }
}

}  // namespace

std::size_t ipow(std::size_t n, std::size_t k) noexcept {
    std::size_t out = 1;
    while (k-- > 0) out *= n;
    return out;
}

ADRelation equality_relation(std::size_t n) {
    ADRelation out(n, 2);
    for (std::size_t a = 0; a < n; ++a) out.set_cell(a * n + a);
    return out;
}

ADRelation equality_relation(const Domain& d) { return equality_relation(d.size()); }

ADRelation apply_p(const ADRelation& r) {
    const std::size_t k = r.arity();
    if (k <= 1) return r;
    const std::size_t n = r.domain_size();
    const std::size_t head = ipow(n, k - 1);
    ADRelation out(n, k);
    for_each_cell(r, [&](std::size_t c) { out.set_cell((c % n) * head + c / n); });
    return out;
}

ADRelation apply_s(const ADRelation& r) {
    const std::size_t k = r.arity();
    if (k <= 1) return r;
    const std::size_t n = r.domain_size();
    ADRelation out(n, k);
    for_each_cell(r, [&](std::size_t c) {
        const std::size_t y = c % n;
        const std::size_t x = (c / n) % n;
        const std::size_t pre = c / (n * n);
        out.set_cell(pre * n * n + y * n + x);
    });
    return out;
}

ADRelation apply_I(const ADRelation& r) {
    const std::size_t k = r.arity();
    if (k <= 1) return r;
    const std::size_t n = r.domain_size();
    ADRelation out(n, k - 1);
    for_each_cell(r, [&](std::size_t c) {
        const std::size_t y = c % n;
        const std::size_t x = (c / n) % n;
        if (x == y) out.set_cell(c / n);
    });
    return out;
}

ADRelation complement(const ADRelation& r, const Domain& d) {
    if (r.domain_size() != d.size()) {
        throw Error(ErrorKind::invalid_structure, "relation does not lie over the given domain");
    }
    return complement(r);
}

ADRelation complement(const ADRelation& r) { return complement_cells(r); }

ADRelation join(const ADRelation& r, const ADRelation& t) {
    require_same_domain(r, t);
    ADRelation out(r.domain_size(), r.arity() + t.arity());
    const std::size_t width = t.cell_count();
    if (t.arity() == 0) {
        // t is either {()} or {}.
        return t.empty() ? out : ADRelation(r);
    }
    if (r.arity() == 0) {
        return r.empty() ? out : ADRelation(t);
    }
    for_each_cell(r, [&](std::size_t a) {
        for_each_cell(t, [&](std::size_t b) { out.set_cell(a * width + b); });
    });
    return out;
}

ADRelation project(const ADRelation& r) {
    const std::size_t k = r.arity();
    if (k == 0) return r;
    const std::size_t n = r.domain_size();
    ADRelation out(n, k - 1);
    for_each_cell(r, [&](std::size_t c) { out.set_cell(c / n); });
    return out;
}

ADRelation suffix_intersection(const ADRelation& r, const ADRelation& t) {
    require_same_domain(r, t);
    if (r.arity() == t.arity()) return set_intersection(r, t);
    const ADRelation& longer = r.arity() > t.arity() ? r : t;
    const ADRelation& shorter = r.arity() > t.arity() ? t : r;
    // Positions in front of the shorter input's suffix are constrained only by
    // the longer input, so filter the longer one by its suffix.
    const std::size_t width = shorter.cell_count();
    ADRelation out(longer.domain_size(), longer.arity());
    for_each_cell(longer, [&](std::size_t c) {
        if (shorter.test_cell(c % width)) out.set_cell(c);
    });
    return out;
}

ADRelation set_union(const ADRelation& r, const ADRelation& t) {
    require_same_domain(r, t);
    if (r.arity() != t.arity()) return ADRelation::bottom0(r.domain_size());
    ADRelation out = r;
    for (std::size_t i = 0; i < out.words().size(); ++i) out.words()[i] |= t.words()[i];
    return out;
}

ADRelation set_intersection(const ADRelation& r, const ADRelation& t) {
    require_same_domain(r, t);
    if (r.arity() != t.arity()) return ADRelation::bottom0(r.domain_size());
    ADRelation out = r;
    for (std::size_t i = 0; i < out.words().size(); ++i) out.words()[i] &= t.words()[i];
    return out;
}

ADRelation set_difference(const ADRelation& r, const ADRelation& t) {
    require_same_domain(r, t);
    if (r.arity() != t.arity()) return r;
    ADRelation out = r;
    for (std::size_t i = 0; i < out.words().size(); ++i) out.words()[i] &= ~t.words()[i];
    return out;
}

ADRelation equicardinality(const ADRelation& r, const ADRelation& t) {
    require_same_domain(r, t);
    return r.size() == t.size() ? ADRelation::top0(r.domain_size())
                                : ADRelation::bottom0(r.domain_size());
}

}  // namespace gra
