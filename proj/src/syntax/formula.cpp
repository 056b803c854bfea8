#include "gra/syntax/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

#include "gra/error.hpp"
#include "gra/syntax/lexer.hpp"

namespace gra {

namespace fo {

namespace {

std::vector<Var> merge(const std::vector<Var>& a, const std::vector<Var>& b) {
    std::vector<Var> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Formula make(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

Formula binary(FKind k, Formula l, Formula r) {
    FormulaNode n{k};
    n.free = merge(l->free, r->free);
    n.size = 1 + l->size + r->size;
    n.a = std::move(l);
    n.b = std::move(r);
    return make(std::move(n));
}

Formula quant(FKind k, Var x, Formula f) {
    if (x == 0) throw Error(ErrorKind::syntax, "variables are numbered from v1");
    FormulaNode n{k};
    n.var = x;
    n.free = f->free;
    std::erase(n.free, x);
    n.size = 1 + f->size;
    n.a = std::move(f);
    return make(std::move(n));
}

}  // namespace

Formula atom(const std::string& name, std::vector<Var> args) {
    if (!valid_symbol_name(name)) {
        throw Error(ErrorKind::syntax, "'" + name + "' is not a valid relation symbol");
    }
    FormulaNode n{FKind::Atom};
    n.name = name;
    n.free = args;
    std::sort(n.free.begin(), n.free.end());
    n.free.erase(std::unique(n.free.begin(), n.free.end()), n.free.end());
    if (!n.free.empty() && n.free.front() == 0) throw Error(ErrorKind::syntax, "variables are numbered from v1");
    n.args = std::move(args);
    return make(std::move(n));
}

Formula eq(Var x, Var y) {
    if (x == 0 || y == 0) throw Error(ErrorKind::syntax, "variables are numbered from v1");
    FormulaNode n{FKind::Equal};
    n.args = {x, y};
    n.free = x == y ? std::vector<Var>{x} : std::vector<Var>{std::min(x, y), std::max(x, y)};
    return make(std::move(n));
}

Formula neg(Formula f) {
    FormulaNode n{FKind::Not};
    n.free = f->free;
    n.size = 1 + f->size;
    n.a = std::move(f);
    return make(std::move(n));
}

Formula conj(Formula l, Formula r) { return binary(FKind::And, std::move(l), std::move(r)); }
Formula disj(Formula l, Formula r) { return binary(FKind::Or, std::move(l), std::move(r)); }
Formula implies(Formula l, Formula r) { return binary(FKind::Implies, std::move(l), std::move(r)); }
Formula exists(Var x, Formula f) { return quant(FKind::Exists, x, std::move(f)); }
Formula forall(Var x, Formula f) { return quant(FKind::Forall, x, std::move(f)); }
Formula neq(Var x, Var y) { return neg(eq(x, y)); }

Formula conj_all(const std::vector<Formula>& parts) {
    if (parts.empty()) throw Error(ErrorKind::usage, "empty conjunction");
    Formula out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
    return out;
}

}  // namespace fo

bool equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->args != b->args || a->var != b->var) return false;
    if (static_cast<bool>(a->a) != static_cast<bool>(b->a) || static_cast<bool>(a->b) != static_cast<bool>(b->b)) {
        return false;
    }
    return (!a->a || equal(a->a, b->a)) && (!a->b || equal(a->b, b->b));
}

bool is_sentence(const Formula& f) { return f->free.empty(); }

std::vector<Var> all_variables(const Formula& f) {
    std::vector<Var> out;
    std::function<void(const Formula&)> walk = [&](const Formula& x) {
        out.insert(out.end(), x->args.begin(), x->args.end());
        if (x->var) out.push_back(x->var);
        if (x->a) walk(x->a);
        if (x->b) walk(x->b);
    };
    walk(f);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Var fresh_variable(const std::vector<Var>& used) {
    Var v = 1;
    for (Var u : used) {
        if (u == v) {
            ++v;
        } else if (u > v) {
            break;
        }
    }
    return v;
}

Vocabulary formula_vocabulary(const Formula& f) {
    Vocabulary v;
    std::function<void(const Formula&)> walk = [&](const Formula& x) {
        if (x->kind == FKind::Atom) {
            auto [it, fresh] = v.emplace(x->name, x->args.size());
            if (!fresh && it->second != x->args.size()) {
                throw Error(ErrorKind::arity, "symbol '" + x->name + "' used with arities " +
                                                  std::to_string(it->second) + " and " +
                                                  std::to_string(x->args.size()));
            }
        }
        if (x->a) walk(x->a);
        if (x->b) walk(x->b);
    };
    walk(f);
    return v;
}

Formula substitute(const Formula& f, Var from, Var to) {
    if (from == to || !std::binary_search(f->free.begin(), f->free.end(), from)) return f;
    switch (f->kind) {
        case FKind::Atom: {
            auto args = f->args;
            std::replace(args.begin(), args.end(), from, to);
            return fo::atom(f->name, std::move(args));
        }
        case FKind::Equal:
            return fo::eq(f->args[0] == from ? to : f->args[0], f->args[1] == from ? to : f->args[1]);
        case FKind::Not: return fo::neg(substitute(f->a, from, to));
        case FKind::And: return fo::conj(substitute(f->a, from, to), substitute(f->b, from, to));
        case FKind::Or: return fo::disj(substitute(f->a, from, to), substitute(f->b, from, to));
        case FKind::Implies: return fo::implies(substitute(f->a, from, to), substitute(f->b, from, to));
        case FKind::Exists:
        case FKind::Forall: {
            Var x = f->var;
            Formula body = f->a;
            if (x == to) {
                auto used = all_variables(body);
                used.push_back(from);
                used.push_back(to);
                std::sort(used.begin(), used.end());
                const Var y = fresh_variable(used);
                body = substitute(body, x, y);
                x = y;
            }
            body = substitute(body, from, to);
            return f->kind == FKind::Exists ? fo::exists(x, body) : fo::forall(x, body);
        }
    }
    return f;
}

namespace {

Formula negate(Formula f) { return f->kind == FKind::Not ? f->a : fo::neg(std::move(f)); }

}  // namespace

Formula normalize(const Formula& f) {
    switch (f->kind) {
        case FKind::Atom:
        case FKind::Equal: return f;
        case FKind::Not: return negate(normalize(f->a));
        case FKind::And: return fo::conj(normalize(f->a), normalize(f->b));
        case FKind::Or: return fo::neg(fo::conj(negate(normalize(f->a)), negate(normalize(f->b))));
        case FKind::Implies: return fo::neg(fo::conj(normalize(f->a), negate(normalize(f->b))));
        case FKind::Exists: return fo::exists(f->var, normalize(f->a));
        case FKind::Forall: return fo::neg(fo::exists(f->var, negate(normalize(f->a))));
    }
    return f;
}

bool is_normalized(const Formula& f) {
    switch (f->kind) {
        case FKind::Atom:
        case FKind::Equal: return true;
        case FKind::Not: return f->a->kind != FKind::Not && is_normalized(f->a);
        case FKind::And: return is_normalized(f->a) && is_normalized(f->b);
        case FKind::Exists: return is_normalized(f->a);
        default: return false;
    }
}

namespace {

void check_vocabulary(const Formula& f, const Structure& m) {
    for (const auto& [name, arity] : formula_vocabulary(f)) {
        const ADRelation* r = m.find(name);
        if (r == nullptr) {
            throw Error(ErrorKind::vocabulary, "symbol '" + name + "' is not interpreted by the structure");
        }
        if (r->arity() != arity) {
            throw Error(ErrorKind::arity, "symbol '" + name + "' has arity " + std::to_string(r->arity()) +
                                              " in the structure but " + std::to_string(arity) +
                                              " in the formula");
        }
    }
}

bool holds(const FormulaNode& f, const Structure& m, std::vector<Element>& asg, Tuple& buf) {
    switch (f.kind) {
        case FKind::Atom: {
            buf.resize(f.args.size());
            for (std::size_t i = 0; i < f.args.size(); ++i) buf[i] = asg[f.args[i]];
            const ADRelation& r = m.relation(f.name);
            return r.test_cell(r.encode(buf));
        }
        case FKind::Equal: return asg[f.args[0]] == asg[f.args[1]];
        case FKind::Not: return !holds(*f.a, m, asg, buf);
        case FKind::And: return holds(*f.a, m, asg, buf) && holds(*f.b, m, asg, buf);
        case FKind::Or: return holds(*f.a, m, asg, buf) || holds(*f.b, m, asg, buf);
        case FKind::Implies: return !holds(*f.a, m, asg, buf) || holds(*f.b, m, asg, buf);
        case FKind::Exists:
        case FKind::Forall: {
            const bool want = f.kind == FKind::Exists;
            const Element saved = asg[f.var];
            bool result = !want;
            for (Element a = 0; a < m.domain().size(); ++a) {
                asg[f.var] = a;
                if (holds(*f.a, m, asg, buf) == want) {
                    result = want;
                    break;
                }
            }
            asg[f.var] = saved;
            return result;
        }
    }
    return false;
}

}  // namespace

bool fo_holds(const Formula& f, const Structure& m, std::vector<Element>& assignment) {
    check_vocabulary(f, m);
    const auto vars = all_variables(f);
    if (!vars.empty() && assignment.size() <= vars.back()) assignment.resize(vars.back() + 1, 0);
    Tuple buf;
    return holds(*f, m, assignment, buf);
}

ADRelation fo_evaluate(const Formula& f, const Structure& m) {
    check_vocabulary(f, m);
    const std::size_t n = m.domain().size();
    const auto& free = f->free;
    const auto vars = all_variables(f);
    std::vector<Element> asg(vars.empty() ? 1 : vars.back() + 1, 0);
    ADRelation out(n, free.size());
    Tuple tuple(free.size()), buf;
    for (std::size_t cell = 0; cell < out.cell_count(); ++cell) {
        out.decode(cell, tuple);
        for (std::size_t i = 0; i < free.size(); ++i) asg[free[i]] = tuple[i];
        if (holds(*f, m, asg, buf)) out.set_cell(cell);
    }
    return out;
}

std::string var_name(Var v) { return "v" + std::to_string(v); }

namespace {

int precedence(const Formula& f) {
    switch (f->kind) {
        case FKind::Implies: return 1;
        case FKind::Or: return 2;
        case FKind::And: return 3;
        case FKind::Exists:
        case FKind::Forall: return 0;
        default: return 4;
    }
}

// A quantifier, possibly under negations, swallows everything to its right.
bool open_to_right(const Formula& f) {
    const FormulaNode* x = f.get();
    while (x->kind == FKind::Not) x = x->a.get();
    return x->kind == FKind::Exists || x->kind == FKind::Forall;
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parens, std::string& out) {
    if (parens) out += "(";
    print(f, out);
    if (parens) out += ")";
}

void print(const Formula& f, std::string& out) {
    switch (f->kind) {
        case FKind::Atom:
            out += f->name + "(";
            for (std::size_t i = 0; i < f->args.size(); ++i) {
                if (i) out += ",";
                out += var_name(f->args[i]);
            }
            out += ")";
            return;
        case FKind::Equal: out += var_name(f->args[0]) + " = " + var_name(f->args[1]); return;
        case FKind::Not:
            if (f->a->kind == FKind::Equal) {
                out += var_name(f->a->args[0]) + " != " + var_name(f->a->args[1]);
                return;
            }
            out += "~";
            print_operand(f->a, precedence(f->a) < 4 && precedence(f->a) > 0, out);
            return;
        case FKind::And:
        case FKind::Or:
        case FKind::Implies: {
            const int p = precedence(f);
            const bool left = open_to_right(f->a) || precedence(f->a) < p ||
                              (f->kind == FKind::Implies && f->a->kind == FKind::Implies);
            const bool right = open_to_right(f->b) || precedence(f->b) < p ||
                               (f->kind != FKind::Implies && f->b->kind == f->kind);
            print_operand(f->a, left, out);
            out += f->kind == FKind::And ? " & " : f->kind == FKind::Or ? " | " : " -> ";
            print_operand(f->b, right, out);
            return;
        }
        case FKind::Exists:
        case FKind::Forall:
            out += f->kind == FKind::Exists ? "exists " : "forall ";
            out += var_name(f->var) + ". ";
            print_operand(f->a, precedence(f->a) >= 1 && precedence(f->a) <= 3, out);
            return;
    }
}

class FormulaParser {
public:
    explicit FormulaParser(const std::string& text) : lex_(text) {}

    Formula parse() {
        Formula f = implication();
        lex_.expect_end();
        formula_vocabulary(f);
        return f;
    }

private:
    Formula implication() {
        Formula l = disjunction();
        if (lex_.accept("->")) return fo::implies(l, implication());
        return l;
    }

    Formula disjunction() {
        Formula l = conjunction();
        while (lex_.accept('|')) l = fo::disj(l, conjunction());
        return l;
    }

    Formula conjunction() {
        Formula l = unary();
        while (lex_.accept('&')) l = fo::conj(l, unary());
        return l;
    }

    Formula unary() {
        if (lex_.accept('~')) return fo::neg(unary());
        if (lex_.accept('(')) {
            Formula f = implication();
            lex_.expect(')');
            return f;
        }
        const std::size_t at = lex_.pos();
        const std::string id = lex_.identifier();
        if (id == "exists" || id == "forall") {
            const Var x = variable();
            lex_.expect('.');
            Formula body = implication();
            return id == "exists" ? fo::exists(x, body) : fo::forall(x, body);
        }
        if (auto v = as_variable(id)) {
            if (lex_.accept("!=")) return fo::neq(*v, variable());
            if (lex_.accept('=')) return fo::eq(*v, variable());
            lex_.fail(lex_.pos(), "expected '=' or '!=' after a variable");
        }
        if (!valid_symbol_name(id)) lex_.fail(at, "'" + id + "' is not a valid relation symbol");
        lex_.expect('(');
        std::vector<Var> args;
        if (!lex_.accept(')')) {
            args.push_back(variable());
            while (lex_.accept(',')) args.push_back(variable());
            lex_.expect(')');
        }
        return fo::atom(id, std::move(args));
    }

    static std::optional<Var> as_variable(const std::string& id) {
        if (id.size() < 2 || id[0] != 'v') return std::nullopt;
        Var v = 0;
        for (std::size_t i = 1; i < id.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(id[i]))) return std::nullopt;
            v = v * 10 + static_cast<Var>(id[i] - '0');
            if (v > 1000000) return std::nullopt;
        }
        return v;
    }

    Var variable() {
        const std::size_t at = lex_.pos();
        const std::string id = lex_.identifier();
        auto v = as_variable(id);
        if (!v) lex_.fail(at, "expected a variable vN, got '" + id + "'");
        if (*v == 0) lex_.fail(at, "variables are numbered from v1");
        return *v;
    }

    Lexer lex_;
};

}  // namespace

std::string print_formula(const Formula& f) {
    std::string out;
    print(f, out);
    return out;
}

Formula parse_formula(const std::string& text) { return FormulaParser(text).parse(); }

}  // namespace gra
