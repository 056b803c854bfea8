#include "gra/decide/reduce.hpp"

#include <sstream>

#include "gra/error.hpp"
#include "gra/syntax/lexer.hpp"

namespace gra {

namespace prop {
Prop var(std::size_t i) {
    if (i == 0) throw Error(ErrorKind::usage, "propositional variables start at p1");
    return std::make_shared<const PropNode>(PropNode{PropNode::Kind::var, i});
}
Prop neg(Prop a) { return std::make_shared<const PropNode>(PropNode{PropNode::Kind::neg, 0, std::move(a)}); }
Prop conj(Prop a, Prop b) {
    return std::make_shared<const PropNode>(PropNode{PropNode::Kind::conj, 0, std::move(a), std::move(b)});
}
Prop disj(Prop a, Prop b) {
    return std::make_shared<const PropNode>(PropNode{PropNode::Kind::disj, 0, std::move(a), std::move(b)});
}
Prop implies(Prop a, Prop b) {
    return std::make_shared<const PropNode>(PropNode{PropNode::Kind::implies, 0, std::move(a), std::move(b)});
}
}  // namespace prop

Cnf parse_dimacs(const std::string& text) {
    Cnf cnf;
    std::istringstream in(text);
    std::string line;
    std::vector<int> clause;
    bool header = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == 'c' || first[0] == '%') continue;
        if (first == "p") {
            std::string fmt;
            std::size_t clauses = 0;
            if (!(ls >> fmt >> cnf.variables >> clauses) || fmt != "cnf") {
                throw Error(ErrorKind::syntax, "malformed DIMACS header: " + line);
            }
            header = true;
            continue;
        }
        std::istringstream all(line);
        long long lit = 0;
        std::string tok;
        while (all >> tok) {
            try {
                std::size_t used = 0;
                lit = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw Error(ErrorKind::syntax, "bad DIMACS literal '" + tok + "'");
            }
            if (lit == 0) {
                cnf.clauses.push_back(clause);
                clause.clear();
                continue;
            }
            const std::size_t v = static_cast<std::size_t>(lit < 0 ? -lit : lit);
            if (!header) cnf.variables = std::max(cnf.variables, v);
            if (v > cnf.variables) throw Error(ErrorKind::syntax, "literal " + tok + " exceeds the declared variables");
            clause.push_back(static_cast<int>(lit));
        }
    }
    if (!clause.empty()) cnf.clauses.push_back(clause);
    return cnf;
}

std::string print_dimacs(const Cnf& cnf) {
    std::string out = "p cnf " + std::to_string(cnf.variables) + " " + std::to_string(cnf.clauses.size()) + "\n";
    for (const auto& c : cnf.clauses) {
        for (int l : c) out += std::to_string(l) + " ";
        out += "0\n";
    }
    return out;
}

namespace {

Prop parse_implies(Lexer& lx);

Prop parse_atom(Lexer& lx) {
    const std::size_t at = lx.pos();
    if (lx.accept('~')) return prop::neg(parse_atom(lx));
    if (lx.accept('(')) {
        Prop p = parse_implies(lx);
        lx.expect(')');
        return p;
    }
    if (lx.peek() == 'p') {
        lx.accept('p');
        if (lx.peek() < '0' || lx.peek() > '9') lx.fail(at, "expected a propositional variable p<N>");
        return prop::var(lx.number());
    }
    lx.fail(at, "expected a propositional variable p<N>, '~' or '('");
}

Prop parse_and(Lexer& lx) {
    Prop p = parse_atom(lx);
    while (lx.accept('&')) p = prop::conj(p, parse_atom(lx));
    return p;
}

Prop parse_or(Lexer& lx) {
    Prop p = parse_and(lx);
    while (lx.accept('|')) p = prop::disj(p, parse_and(lx));
    return p;
}

Prop parse_implies(Lexer& lx) {
    Prop p = parse_or(lx);
    if (lx.accept("->")) return prop::implies(p, parse_implies(lx));
    return p;
}

int precedence(PropNode::Kind k) {
    switch (k) {
        case PropNode::Kind::implies: return 1;
        case PropNode::Kind::disj: return 2;
        case PropNode::Kind::conj: return 3;
        default: return 4;
    }
}

void emit(const Prop& p, std::string& out, int context) {
    const int mine = precedence(p->kind);
    const bool paren = mine < context;
    if (paren) out += "(";
    switch (p->kind) {
        case PropNode::Kind::var: out += "p" + std::to_string(p->var); break;
        case PropNode::Kind::neg:
            out += "~";
            emit(p->a, out, 4);
            break;
        case PropNode::Kind::conj:
        case PropNode::Kind::disj:
            emit(p->a, out, mine);
            out += p->kind == PropNode::Kind::conj ? " & " : " | ";
            emit(p->b, out, mine + 1);
            break;
        case PropNode::Kind::implies:
            emit(p->a, out, mine + 1);
            out += " -> ";
            emit(p->b, out, mine);
            break;
    }
    if (paren) out += ")";
}

Prop negate(const Prop& p) { return p->kind == PropNode::Kind::neg ? p->a : prop::neg(p); }

template <class Leaf>
Term reduce(const Prop& p, Leaf&& leaf) {
    switch (p->kind) {
        case PropNode::Kind::var: return leaf(p->var);
        case PropNode::Kind::neg: return term::neg(reduce(p->a, leaf));
        case PropNode::Kind::conj: return term::J(reduce(p->a, leaf), reduce(p->b, leaf));
        default: break;
    }
    throw Error(ErrorKind::usage, "formula must be lowered to negation and conjunction");
}

std::string symbol(std::size_t i) { return "P" + std::to_string(i); }

}  // namespace

Prop parse_prop(const std::string& text) {
    Lexer lx(text);
    Prop p = parse_implies(lx);
    lx.expect_end();
    return p;
}

std::string print_prop(const Prop& p) {
    std::string out;
    emit(p, out, 0);
    return out;
}

Prop cnf_to_prop(const Cnf& cnf) {
    if (cnf.clauses.empty()) throw Error(ErrorKind::usage, "CNF has no clauses");
    Prop out;
    for (const auto& c : cnf.clauses) {
        if (c.empty()) throw Error(ErrorKind::usage, "CNF contains the empty clause");
        Prop inner;
        for (int l : c) {
            const Prop v = prop::var(static_cast<std::size_t>(l < 0 ? -l : l));
            const Prop negated = l < 0 ? v : prop::neg(v);
            inner = inner ? prop::conj(inner, negated) : negated;
        }
        const Prop clause = negate(inner);
        out = out ? prop::conj(out, clause) : clause;
    }
    return out;
}

Prop lower_prop(const Prop& p) {
    switch (p->kind) {
        case PropNode::Kind::var: return p;
        case PropNode::Kind::neg: return negate(lower_prop(p->a));
        case PropNode::Kind::conj: return prop::conj(lower_prop(p->a), lower_prop(p->b));
        case PropNode::Kind::disj: return prop::neg(prop::conj(negate(lower_prop(p->a)), negate(lower_prop(p->b))));
        case PropNode::Kind::implies: return prop::neg(prop::conj(lower_prop(p->a), negate(lower_prop(p->b))));
    }
    return p;
}

bool prop_holds(const Prop& p, const std::vector<bool>& assignment) {
    switch (p->kind) {
        case PropNode::Kind::var: return p->var < assignment.size() && assignment[p->var];
        case PropNode::Kind::neg: return !prop_holds(p->a, assignment);
        case PropNode::Kind::conj: return prop_holds(p->a, assignment) && prop_holds(p->b, assignment);
        case PropNode::Kind::disj: return prop_holds(p->a, assignment) || prop_holds(p->b, assignment);
        case PropNode::Kind::implies: return !prop_holds(p->a, assignment) || prop_holds(p->b, assignment);
    }
    return false;
}

Term reduce_sat_to_inj(const Prop& p) {
    Term t = reduce(lower_prop(p), [](std::size_t i) { return term::rel(symbol(i), 1); });
    while (t->arity > 1) t = term::I(t);
    return t;
}

Term reduce_sat_to_njex(const Prop& p) {
    return reduce(lower_prop(p), [](std::size_t i) { return term::neg(term::ex(term::neg(term::rel(symbol(i), 1)))); });
}

}  // namespace gra
