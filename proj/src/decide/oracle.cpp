#include "gra/decide/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

#include "gra/error.hpp"
#include "gra/relalg/operators.hpp"

namespace gra {

namespace {

enum class Tri : std::uint8_t { no, maybe, yes };

Tri tri_not(Tri v) { return v == Tri::yes ? Tri::no : v == Tri::no ? Tri::yes : Tri::maybe; }

// Lower and upper bound of a relation under a partial interpretation.
struct Bounds {
    ADRelation lo, hi;
    bool exact() const { return lo == hi; }
};

Bounds eval3(const Term& t, const Structure& lo, const Structure& hi) {
    const std::size_t n = lo.domain().size();
    auto both = [](auto&& f, const Bounds& a) { return Bounds{f(a.lo), f(a.hi)}; };
    auto both2 = [](auto&& f, const Bounds& a, const Bounds& b) { return Bounds{f(a.lo, b.lo), f(a.hi, b.hi)}; };
    switch (t->op) {
        case Op::Eq: {
            auto e = equality_relation(n);
            return {e, e};
        }
        case Op::Rel: return {lo.relation(t->name), hi.relation(t->name)};
        case Op::P: return both(apply_p, eval3(t->kids[0], lo, hi));
        case Op::S: return both(apply_s, eval3(t->kids[0], lo, hi));
        case Op::I: return both(apply_I, eval3(t->kids[0], lo, hi));
        case Op::Ex: return both(project, eval3(t->kids[0], lo, hi));
        case Op::Not: {
            auto a = eval3(t->kids[0], lo, hi);
            return {complement(a.hi), complement(a.lo)};
        }
        default: break;
    }
    if (t->op == Op::Custom) {
        std::vector<Bounds> in;
        for (const auto& k : t->kids) in.push_back(eval3(k, lo, hi));
        if (std::all_of(in.begin(), in.end(), [](const Bounds& b) { return b.exact(); })) {
            std::vector<ADRelation> args;
            for (auto& b : in) args.push_back(b.lo);
            ADRelation out = t->custom->evaluate(lo.domain(), args);
            if (out.arity() != t->arity || out.domain_size() != n) {
                throw Error(ErrorKind::arity, "operator '" + t->name + "' broke its declared output arity");
            }
            return {out, out};
        }
        return {ADRelation(n, t->arity), ADRelation::full(n, t->arity)};
    }
    const Bounds a = eval3(t->kids[0], lo, hi);
    const Bounds b = eval3(t->kids[1], lo, hi);
    switch (t->op) {
        case Op::J: return both2(join, a, b);
        case Op::Sint: return both2(suffix_intersection, a, b);
        case Op::Cup: return both2(set_union, a, b);
        case Op::Cap: return both2(set_intersection, a, b);
        case Op::Minus: return {set_difference(a.lo, b.hi), set_difference(a.hi, b.lo)};
        case Op::H: {
            if (a.exact() && b.exact()) {
                auto h = equicardinality(a.lo, b.lo);
                return {h, h};
            }
            const bool apart = a.hi.size() < b.lo.size() || b.hi.size() < a.lo.size();
            if (apart) return {ADRelation::bottom0(n), ADRelation::bottom0(n)};
            return {ADRelation::bottom0(n), ADRelation::top0(n)};
        }
        default: break;
    }
    throw Error(ErrorKind::unsupported_operator, "unknown operator");
}

// Set of interpretation bits, indexed as in the search layout.
class BitSet {
public:
    void set(std::size_t b) {
        if (b / 64 >= words_.size()) words_.resize(b / 64 + 1, 0);
        words_[b / 64] |= std::uint64_t{1} << (b % 64);
    }
    void reset(std::size_t b) {
        if (b / 64 < words_.size()) words_[b / 64] &= ~(std::uint64_t{1} << (b % 64));
    }
    bool test(std::size_t b) const { return b / 64 < words_.size() && ((words_[b / 64] >> (b % 64)) & 1u); }
    void unite(const BitSet& o) {
        if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
        for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    }
    void fill_below(std::size_t b) {
        for (std::size_t i = 0; i < b; ++i) set(i);
    }
    // Lowest member, or SIZE_MAX when empty.
    std::size_t lowest() const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
        }
        return std::numeric_limits<std::size_t>::max();
    }
    void clear() { words_.clear(); }

private:
    std::vector<std::uint64_t> words_;
};

struct Layout {
    std::vector<std::string> names;
    std::vector<std::size_t> offsets;  // first bit of each symbol
    std::vector<std::size_t> cells;
    std::size_t bits = 0;

    std::size_t offset_of(const std::string& name) const {
        const auto it = std::find(names.begin(), names.end(), name);
        return offsets[static_cast<std::size_t>(it - names.begin())];
    }
};

// Three-valued check of the input on a partial interpretation, read as the
// pair of structures with unknown bits set to 0 and to 1.
class Checker {
public:
    virtual ~Checker() = default;
    virtual Tri value() = 0;
    // Adds to `why` fixed bits whose values alone force the definite value v
    // that value() just returned. Returns false when no explanation is known.
    virtual bool explain(Tri v, BitSet& why) = 0;
};

class TermChecker : public Checker {
public:
    TermChecker(const Term& t, const Structure& lo, const Structure& hi) : t_(t), lo_(lo), hi_(hi) {}
    Tri value() override {
        const Bounds b = eval3(t_, lo_, hi_);
        if (!b.lo.empty()) return Tri::yes;
        return b.hi.empty() ? Tri::no : Tri::maybe;
    }
    bool explain(Tri, BitSet&) override { return false; }

private:
    const Term& t_;
    const Structure& lo_;
    const Structure& hi_;
};

// Formula compiled against a pair of partial structures.
class Formula3 : public Checker {
public:
    Formula3(const Formula& f, const Structure& lo, const Structure& hi, const Layout& layout)
        : n_(lo.domain().size()) {
        root_ = compile(f, lo, hi, layout);
        free_ = f->free;
        Var top = 0;
        for (Var v : all_variables(f)) top = std::max(top, v);
        assignment_.assign(top + 1, 0);
    }

    Tri value() override { return over_free(0); }

    bool explain(Tri v, BitSet& why) override {
        explain_free(0, v, why);
        return true;
    }

private:
    struct Node {
        FKind kind;
        const ADRelation* lo = nullptr;
        const ADRelation* hi = nullptr;
        std::size_t offset = 0;
        std::vector<Var> args;
        Var var = 0;
        int a = -1, b = -1;
    };

    int compile(const Formula& f, const Structure& lo, const Structure& hi, const Layout& layout) {
        Node node{f->kind};
        node.args = f->args;
        node.var = f->var;
        if (f->kind == FKind::Atom) {
            node.lo = &lo.relation(f->name);
            node.hi = &hi.relation(f->name);
            node.offset = layout.offset_of(f->name);
        }
        if (f->a) node.a = compile(f->a, lo, hi, layout);
        if (f->b) node.b = compile(f->b, lo, hi, layout);
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size() - 1);
    }

    std::size_t cell_of(const Node& x) const {
        std::size_t cell = 0;
        for (Var v : x.args) cell = cell * n_ + assignment_[v];
        return cell;
    }

    Tri over_free(std::size_t i) {
        if (i == free_.size()) return eval(root_);
        Tri best = Tri::no;
        for (Element e = 0; e < n_; ++e) {
            assignment_[free_[i]] = e;
            const Tri v = over_free(i + 1);
            if (v == Tri::yes) return v;
            if (v == Tri::maybe) best = v;
        }
        return best;
    }

    Tri eval(int id) {
        const Node& x = nodes_[static_cast<std::size_t>(id)];
        switch (x.kind) {
            case FKind::Atom: {
                const std::size_t cell = cell_of(x);
                if (x.lo->test_cell(cell)) return Tri::yes;
                return x.hi->test_cell(cell) ? Tri::maybe : Tri::no;
            }
            case FKind::Equal: return assignment_[x.args[0]] == assignment_[x.args[1]] ? Tri::yes : Tri::no;
            case FKind::Not: return tri_not(eval(x.a));
            case FKind::And: {
                const Tri l = eval(x.a);
                if (l == Tri::no) return l;
                const Tri r = eval(x.b);
                return std::min(l, r);
            }
            case FKind::Or: {
                const Tri l = eval(x.a);
                if (l == Tri::yes) return l;
                return std::max(l, eval(x.b));
            }
            case FKind::Implies: {
                const Tri l = tri_not(eval(x.a));
                if (l == Tri::yes) return l;
                return std::max(l, eval(x.b));
            }
            case FKind::Exists:
            case FKind::Forall: {
                const bool ex = x.kind == FKind::Exists;
                const Element saved = assignment_[x.var];
                Tri acc = ex ? Tri::no : Tri::yes;
                for (Element e = 0; e < n_; ++e) {
                    assignment_[x.var] = e;
                    const Tri v = eval(x.a);
                    acc = ex ? std::max(acc, v) : std::min(acc, v);
                    if (acc == (ex ? Tri::yes : Tri::no)) break;
                }
                assignment_[x.var] = saved;
                return acc;
            }
        }
        return Tri::maybe;
    }

    // Among alternatives that each force the value, keeps the explanation
    // whose earliest bit is latest, so the search can jump back further.
    template <class Try>
    void explain_one(std::size_t count, Try&& attempt, BitSet& why) {
        BitSet best;
        std::size_t best_low = 0;
        bool have = false;
        for (std::size_t i = 0; i < count; ++i) {
            BitSet r;
            if (!attempt(i, r)) continue;
            const std::size_t low = r.lowest();
            if (!have || low > best_low) {
                best = std::move(r);
                best_low = low;
                have = true;
            }
            if (best_low == std::numeric_limits<std::size_t>::max()) break;
        }
        why.unite(best);
    }

    void explain_free(std::size_t i, Tri v, BitSet& why) {
        if (i == free_.size()) {
            explain(root_, v, why);
            return;
        }
        const Var var = free_[i];
        if (v == Tri::no) {
            for (Element e = 0; e < n_; ++e) {
                assignment_[var] = e;
                explain_free(i + 1, v, why);
            }
            return;
        }
        explain_one(
            n_,
            [&](std::size_t e, BitSet& r) {
                assignment_[var] = static_cast<Element>(e);
                if (over_free(i + 1) != Tri::yes) return false;
                assignment_[var] = static_cast<Element>(e);
                explain_free(i + 1, v, r);
                return true;
            },
            why);
    }

    void explain(int id, Tri v, BitSet& why) {
        const Node& x = nodes_[static_cast<std::size_t>(id)];
        switch (x.kind) {
            case FKind::Atom: why.set(x.offset + cell_of(x)); return;
            case FKind::Equal: return;
            case FKind::Not: explain(x.a, tri_not(v), why); return;
            case FKind::And:
            case FKind::Or:
            case FKind::Implies: {
                // Values each side must take for v to follow from it alone.
                const Tri wa = x.kind == FKind::Implies ? tri_not(v) : v;
                const Tri wb = v;
                const bool both = (x.kind == FKind::And) == (v == Tri::yes);
                if (both) {
                    explain(x.a, wa, why);
                    explain(x.b, wb, why);
                    return;
                }
                const int kids[] = {x.a, x.b};
                const Tri wants[] = {wa, wb};
                explain_one(
                    2,
                    [&](std::size_t k, BitSet& r) {
                        if (eval(kids[k]) != wants[k]) return false;
                        explain(kids[k], wants[k], r);
                        return true;
                    },
                    why);
                return;
            }
            case FKind::Exists:
            case FKind::Forall: {
                const bool every = (x.kind == FKind::Exists) == (v == Tri::no);
                const Element saved = assignment_[x.var];
                if (every) {
                    for (Element e = 0; e < n_; ++e) {
                        assignment_[x.var] = e;
                        explain(x.a, v, why);
                    }
                } else {
                    explain_one(
                        n_,
                        [&](std::size_t e, BitSet& r) {
                            assignment_[x.var] = static_cast<Element>(e);
                            if (eval(x.a) != v) return false;
                            explain(x.a, v, r);
                            return true;
                        },
                        why);
                }
                assignment_[x.var] = saved;
                return;
            }
        }
    }

    std::size_t n_;
    std::vector<Node> nodes_;
    int root_ = -1;
    std::vector<Var> free_;
    std::vector<Element> assignment_;
};

// What the search needs to know about its input.
struct Target {
    Vocabulary vocab;
    std::function<bool(const Structure&)> holds;
    std::function<std::unique_ptr<Checker>(const Structure& lo, const Structure& hi, const Layout& layout)> bind;
};

Layout layout_for(const Vocabulary& vocab, std::size_t n) {
    Layout l;
    for (const auto& [name, arity] : vocab) {
        l.names.push_back(name);
        l.offsets.push_back(l.bits);
        const std::size_t c = checked_cell_count(n, arity);
        l.cells.push_back(c);
        l.bits += c;
    }
    return l;
}

Structure blank(const Vocabulary& vocab, std::size_t n, bool full) {
    Structure m(Domain::of_size(n));
    for (const auto& [name, arity] : vocab) {
        m.add_relation(name, full ? ADRelation::full(n, arity) : ADRelation(n, arity));
    }
    return m;
}

// Number of structures of a given bit width, saturating.
std::uint64_t count_for(std::size_t bits) {
    if (bits >= 63) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << bits;
}

std::string pow2_text(std::size_t bits) {
    if (bits < 63) return std::to_string(std::uint64_t{1} << bits);
    return "2^" + std::to_string(bits);
}

struct BudgetHit {};
struct Abandoned {};

class Search {
public:
    Search(const Target& target, const OracleOptions& opts)
        : target_(target), opts_(opts), budget_(opts.budget.value_or(default_oracle_budget())) {}

    SatVerdict run() {
        if (opts_.max_domain < 1) throw Error(ErrorKind::usage, "max domain must be at least 1");
        if (!opts_.prune) check_plain_budget();
        std::uint64_t spent = 0;
        for (std::size_t n = 1; n <= opts_.max_domain; ++n) {
            const Layout l = layout_for(target_.vocab, n);
            std::optional<Structure> found = opts_.prune ? pruned(n, l, spent) : plain(n, l);
            if (found) {
                SatVerdict v;
                v.kind = VerdictKind::sat;
                v.witness = std::move(found);
                v.bound = opts_.max_domain;
                v.method = "oracle";
                return v;
            }
        }
        SatVerdict v;
        v.kind = VerdictKind::unsat_up_to_bound;
        v.bound = opts_.max_domain;
        v.method = "oracle";
        return v;
    }

private:
    void check_plain_budget() const {
        std::uint64_t total = 0;
        std::size_t widest = 0;
        bool overflow = false;
        for (std::size_t n = 1; n <= opts_.max_domain; ++n) {
            const std::size_t bits = layout_for(target_.vocab, n).bits;
            widest = std::max(widest, bits);
            const std::uint64_t c = count_for(bits);
            if (c > std::numeric_limits<std::uint64_t>::max() - total) {
                overflow = true;
                break;
            }
            total += c;
        }
        if (overflow || total > budget_) {
            throw Error(ErrorKind::budget_exceeded,
                        "oracle refused to enumerate " + (overflow ? "at least " + pow2_text(widest) : std::to_string(total)) +
                            " structures (budget " + std::to_string(budget_) + ")");
        }
    }

    static void assign(Structure& m, const Layout& l, std::size_t bit, bool value) {
        std::size_t s = 0;
        while (s + 1 < l.offsets.size() && l.offsets[s + 1] <= bit) ++s;
        ADRelation* r = m.find(l.names[s]);
        const std::size_t cell = bit - l.offsets[s];
        if (value) {
            r->set_cell(cell);
        } else {
            r->reset_cell(cell);
        }
    }

    std::size_t workers(std::size_t tasks) const {
        return std::max<std::size_t>(1, std::min(opts_.jobs, tasks));
    }

    template <class Task>
    void run_tasks(std::size_t tasks, Task&& task) const {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < tasks; i = next++) task(i);
        };
        const std::size_t w = workers(tasks);
        if (w == 1) {
            worker();
            return;
        }
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < w; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::optional<Structure> plain(std::size_t n, const Layout& l) {
        const std::uint64_t total = count_for(l.bits);
        constexpr std::uint64_t chunk = 1024;
        const std::uint64_t chunks = (total + chunk - 1) / chunk;
        std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
        std::mutex mu;
        std::exception_ptr failure;
        run_tasks(chunks, [&](std::size_t c) {
            const std::uint64_t begin = c * chunk;
            if (begin > best.load()) return;
            try {
                Structure m = blank(target_.vocab, n, false);
                const std::uint64_t end = std::min(total, begin + chunk);
                for (std::uint64_t idx = begin; idx < end && idx < best.load(); ++idx) {
                    for (std::size_t b = 0; b < l.bits; ++b) assign(m, l, b, (idx >> (l.bits - 1 - b)) & 1u);
                    if (target_.holds(m)) {
                        std::uint64_t cur = best.load();
                        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
                        }
                        break;
                    }
                }
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
            }
        });
        if (failure) std::rethrow_exception(failure);
        if (best.load() == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
        Structure m = blank(target_.vocab, n, false);
        for (std::size_t b = 0; b < l.bits; ++b) assign(m, l, b, (best.load() >> (l.bits - 1 - b)) & 1u);
        return m;
    }

    // Outcome of searching below one setting of the split bits. Without a
    // witness, `conflict` holds split bits whose values alone rule one out.
    struct Subtree {
        enum class State { pending, done, covered, abandoned, budget } state = State::pending;
        std::uint64_t nodes = 0;
        std::optional<Structure> found;
        std::uint64_t conflict = 0;  // mask over task indices
    };

    // Depth-first search over the bits after the split. Returns true with a
    // witness in `lo`; otherwise `why` holds fixed bits whose values alone
    // leave no witness below this node, and the subtree whose branching bit
    // is not among them is skipped.
    bool dfs(std::size_t bit, const Layout& l, Structure& lo, Structure& hi, Checker& check, Subtree& out,
             const std::function<bool()>& abandon, BitSet& why) {
        if (++out.nodes > budget_) throw BudgetHit{};
        if (abandon()) throw Abandoned{};
        const Tri v = check.value();
        if (v == Tri::yes) {
            out.found = lo;
            return true;
        }
        if (v == Tri::no || bit == l.bits) {
            if (v != Tri::no || !check.explain(v, why)) why.fill_below(bit);
            return false;
        }
        assign(hi, l, bit, false);
        BitSet r0;
        if (dfs(bit + 1, l, lo, hi, check, out, abandon, r0)) return true;
        assign(hi, l, bit, true);
        if (!r0.test(bit)) {
            why.unite(r0);
            return false;
        }
        assign(lo, l, bit, true);
        BitSet r1;
        if (dfs(bit + 1, l, lo, hi, check, out, abandon, r1)) return true;
        assign(lo, l, bit, false);
        why.unite(r1);
        if (r1.test(bit)) {
            why.unite(r0);
            why.reset(bit);
        }
        return false;
    }

    std::optional<Structure> pruned(std::size_t n, const Layout& l, std::uint64_t& spent) {
        // A fixed split keeps node counts, and so budget failures, independent
        // of the number of workers.
        const std::size_t split = std::min<std::size_t>(l.bits, 6);
        const std::size_t tasks = std::size_t{1} << split;
        auto mask_of = [&](const BitSet& why) {
            std::uint64_t m = 0;
            for (std::size_t b = 0; b < split; ++b) {
                if (why.test(b)) m |= std::uint64_t{1} << (split - 1 - b);
            }
            return m;
        };
        std::vector<Subtree> results(tasks);
        std::mutex mu;
        std::atomic<std::size_t> best{tasks};
        auto solve = [&](std::size_t j, Subtree& out, const std::function<bool()>& abandon) {
            try {
                Structure lo = blank(target_.vocab, n, false);
                Structure hi = blank(target_.vocab, n, true);
                for (std::size_t b = 0; b < split; ++b) {
                    const bool v = (j >> (split - 1 - b)) & 1u;
                    assign(lo, l, b, v);
                    assign(hi, l, b, v);
                }
                auto check = target_.bind(lo, hi, l);
                BitSet why;
                if (dfs(split, l, lo, hi, *check, out, abandon, why)) {
                    std::size_t cur = best.load();
                    while (j < cur && !best.compare_exchange_weak(cur, j)) {
                    }
                } else {
                    out.conflict = mask_of(why);
                }
                out.state = Subtree::State::done;
            } catch (const BudgetHit&) {
                out.state = Subtree::State::budget;
            } catch (const Abandoned&) {
                out.state = Subtree::State::abandoned;
            }
        };
        // A finished task without a witness rules out every later task that
        // agrees with it on its conflict bits.
        auto covered = [&](std::size_t j) {
            for (std::size_t i = 0; i < j; ++i) {
                const Subtree& r = results[i];
                if (r.state == Subtree::State::done && !r.found && ((i ^ j) & r.conflict) == 0) return true;
            }
            return false;
        };
        const auto never = [] { return false; };
        if (workers(tasks) > 1) {
            std::exception_ptr failure;
            run_tasks(tasks, [&](std::size_t j) {
                {
                    std::lock_guard lock(mu);
                    if (j > best.load() || covered(j)) return;
                }
                Subtree local;
                try {
                    solve(j, local, [&] { return j > best.load(); });
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (!failure) failure = std::current_exception();
                    return;
                }
                std::lock_guard lock(mu);
                results[j] = std::move(local);
            });
            if (failure) std::rethrow_exception(failure);
        }
        // Replay in index order; this fixes the node count and the witness
        // whatever the workers did.
        for (std::size_t j = 0; j < tasks; ++j) {
            if (covered(j)) {
                results[j].state = Subtree::State::covered;
                continue;
            }
            if (results[j].state != Subtree::State::done && results[j].state != Subtree::State::budget) {
                results[j] = Subtree{};
                solve(j, results[j], never);
            }
            spent += results[j].nodes;
            if (results[j].state == Subtree::State::budget || spent > budget_) {
                throw Error(ErrorKind::budget_exceeded,
                            "oracle search exceeded its budget of " + std::to_string(budget_) +
                                " partial structures at domain size " + std::to_string(n) + " (" +
                                pow2_text(l.bits) + " interpretations)");
            }
            if (results[j].found) return std::move(results[j].found);
        }
        return std::nullopt;
    }

    const Target& target_;
    OracleOptions opts_;
    std::uint64_t budget_;
};

}  // namespace

std::uint64_t default_oracle_budget() {
    if (const char* env = std::getenv("GRA_MAX_ORACLE_STRUCTURES")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
    }
    return 10'000'000;
}

SatVerdict sat_oracle(const Term& t, const OracleOptions& opts) {
    Target target;
    target.vocab = term_vocabulary(t);
    target.holds = [&](const Structure& m) { return !evaluate(t, m).empty(); };
    target.bind = [&](const Structure& lo, const Structure& hi, const Layout&) -> std::unique_ptr<Checker> {
        return std::make_unique<TermChecker>(t, lo, hi);
    };
    return Search(target, opts).run();
}

SatVerdict sat_oracle(const Formula& f, const OracleOptions& opts) {
    Target target;
    target.vocab = formula_vocabulary(f);
    target.holds = [&](const Structure& m) { return !fo_evaluate(f, m).empty(); };
    target.bind = [&](const Structure& lo, const Structure& hi, const Layout& l) -> std::unique_ptr<Checker> {
        return std::make_unique<Formula3>(f, lo, hi, l);
    };
    return Search(target, opts).run();
}

}  // namespace gra
