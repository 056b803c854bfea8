#include "gra/syntax/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "gra/error.hpp"
#include "gra/relalg/operators.hpp"
#include "gra/syntax/lexer.hpp"

namespace gra {

bool is_unary(Op op) noexcept {
    switch (op) {
        case Op::P:
        case Op::S:
        case Op::I:
        case Op::Not:
        case Op::Ex: return true;
        default: return false;
    }
}

bool is_binary(Op op) noexcept {
    switch (op) {
        case Op::J:
        case Op::Cup:
        case Op::Cap:
        case Op::Minus:
        case Op::Sint:
        case Op::H: return true;
        default: return false;
    }
}

const char* op_name(Op op) noexcept {
    switch (op) {
        case Op::Eq: return "e";
        case Op::Rel: return "rel";
        case Op::P: return "p";
        case Op::S: return "s";
        case Op::I: return "I";
        case Op::Not: return "not";
        case Op::Ex: return "ex";
        case Op::J: return "J";
        case Op::Cup: return "cup";
        case Op::Cap: return "cap";
        case Op::Minus: return "minus";
        case Op::Sint: return "sint";
        case Op::H: return "H";
        case Op::Custom: return "custom";
    }
    return "?";
}

namespace term {

namespace {

Term make(TermNode n) {
    n.size = 1;
    for (const auto& k : n.kids) n.size += k->size;
    return std::make_shared<const TermNode>(std::move(n));
}

}  // namespace

Term e() {
    TermNode n{Op::Eq, {}, {}, 2};
    return make(std::move(n));
}

Term rel(const std::string& name, std::size_t arity) {
    if (!valid_symbol_name(name)) {
        throw Error(ErrorKind::syntax, "'" + name + "' is not a valid relation symbol");
    }
    TermNode n{Op::Rel, name, {}, arity};
    return make(std::move(n));
}

Term unary(Op op, Term t) {
    if (!is_unary(op)) throw Error(ErrorKind::usage, std::string(op_name(op)) + " is not unary");
    const std::size_t k = t->arity;
    std::size_t ar = k;
    if (op == Op::I) ar = k >= 2 ? k - 1 : k;
    if (op == Op::Ex) ar = k >= 1 ? k - 1 : 0;
    TermNode n{op, {}, {std::move(t)}, ar};
    return make(std::move(n));
}

Term binary(Op op, Term l, Term r) {
    if (!is_binary(op)) throw Error(ErrorKind::usage, std::string(op_name(op)) + " is not binary");
    const std::size_t k = l->arity;
    const std::size_t m = r->arity;
    std::size_t ar = 0;
    switch (op) {
        case Op::J: ar = k + m; break;
        case Op::Cup:
        case Op::Cap: ar = k == m ? k : 0; break;
        case Op::Minus: ar = k; break;
        case Op::Sint: ar = std::max(k, m); break;
        default: ar = 0; break;
    }
    TermNode n{op, {}, {std::move(l), std::move(r)}, ar};
    return make(std::move(n));
}

Term custom(std::shared_ptr<const OperatorDescriptor> op, std::vector<Term> kids) {
    if (kids.size() != op->input_count) {
        throw Error(ErrorKind::arity, "operator '" + op->name + "' takes " +
                                          std::to_string(op->input_count) + " inputs, got " +
                                          std::to_string(kids.size()));
    }
    std::vector<std::size_t> arities;
    for (const auto& k : kids) arities.push_back(k->arity);
    TermNode n{Op::Custom, op->name, std::move(kids), op->output_arity(arities)};
    n.custom = std::move(op);
    return make(std::move(n));
}

Term apply_word(const std::string& word, Term t) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it == 'p') {
            t = p(std::move(t));
        } else if (*it == 's') {
            t = s(std::move(t));
        } else {
            throw Error(ErrorKind::usage, "permutation words use only p and s");
        }
    }
    return t;
}

Term top0() { return ex(ex(e())); }
Term bottom0() { return neg(top0()); }

}  // namespace term

bool equal(const Term& a, const Term& b) {
    if (a == b) return true;
    if (a->op != b->op || a->arity != b->arity || a->name != b->name || a->kids.size() != b->kids.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
        if (!equal(a->kids[i], b->kids[i])) return false;
    }
    return true;
}

Vocabulary term_vocabulary(const Term& t) {
    Vocabulary v;
    std::function<void(const Term&)> walk = [&](const Term& x) {
        if (x->op == Op::Rel) {
            auto [it, fresh] = v.emplace(x->name, x->arity);
            if (!fresh && it->second != x->arity) {
                throw Error(ErrorKind::arity, "symbol '" + x->name + "' used with arities " +
                                                  std::to_string(it->second) + " and " +
                                                  std::to_string(x->arity));
            }
        }
        for (const auto& k : x->kids) walk(k);
    };
    walk(t);
    return v;
}

TermSignature term_signature(const Term& t) {
    TermSignature sig;
    std::function<void(const Term&)> walk = [&](const Term& x) {
        if (x->op == Op::Eq) {
            sig.uses_e = true;
        } else if (x->op == Op::Rel) {
            sig.uses_relations = true;
        } else if (x->op == Op::Custom) {
            sig.ops.insert(x->name);
        } else {
            sig.ops.insert(op_name(x->op));
        }
        for (const auto& k : x->kids) walk(k);
    };
    walk(t);
    return sig;
}

bool within_signature(const Term& t, const std::set<std::string>& allowed) {
    const auto sig = term_signature(t);
    if (sig.uses_e && !allowed.contains("e")) return false;
    return std::all_of(sig.ops.begin(), sig.ops.end(), [&](const std::string& o) { return allowed.contains(o); });
}

ADRelation evaluate(const Term& t, const Structure& m) {
    const std::size_t n = m.domain().size();
    switch (t->op) {
        case Op::Eq: return equality_relation(n);
        case Op::Rel: {
            const ADRelation* r = m.find(t->name);
            if (r == nullptr) {
                throw Error(ErrorKind::vocabulary, "symbol '" + t->name + "' is not interpreted by the structure");
            }
            if (r->arity() != t->arity) {
                throw Error(ErrorKind::arity, "symbol '" + t->name + "' has arity " + std::to_string(r->arity()) +
                                                  " in the structure but " + std::to_string(t->arity) +
                                                  " in the term");
            }
            return *r;
        }
        case Op::P: return apply_p(evaluate(t->kids[0], m));
        case Op::S: return apply_s(evaluate(t->kids[0], m));
        case Op::I: return apply_I(evaluate(t->kids[0], m));
        case Op::Not: return complement(evaluate(t->kids[0], m), m.domain());
        case Op::Ex: return project(evaluate(t->kids[0], m));
        case Op::J: return join(evaluate(t->kids[0], m), evaluate(t->kids[1], m));
        case Op::Cup: return set_union(evaluate(t->kids[0], m), evaluate(t->kids[1], m));
        case Op::Cap: return set_intersection(evaluate(t->kids[0], m), evaluate(t->kids[1], m));
        case Op::Minus: return set_difference(evaluate(t->kids[0], m), evaluate(t->kids[1], m));
        case Op::Sint: return suffix_intersection(evaluate(t->kids[0], m), evaluate(t->kids[1], m));
        case Op::H: return equicardinality(evaluate(t->kids[0], m), evaluate(t->kids[1], m));
        case Op::Custom: {
            std::vector<ADRelation> in;
            in.reserve(t->kids.size());
            for (const auto& k : t->kids) in.push_back(evaluate(k, m));
            ADRelation out = t->custom->evaluate(m.domain(), in);
            if (out.arity() != t->arity || out.domain_size() != n) {
                throw Error(ErrorKind::arity, "operator '" + t->name + "' broke its declared output arity");
            }
            return out;
        }
    }
    throw Error(ErrorKind::unsupported_operator, "unknown operator");
}

std::string print_term(const Term& t) {
    std::set<std::string> declared;
    std::string out;
    std::function<void(const Term&)> emit = [&](const Term& x) {
        switch (x->op) {
            case Op::Eq: out += "e"; return;
            case Op::Rel:
                out += x->name;
                if (declared.insert(x->name).second) out += "/" + std::to_string(x->arity);
                return;
            default: break;
        }
        out += x->op == Op::Custom ? x->name : std::string(op_name(x->op));
        out += "(";
        for (std::size_t i = 0; i < x->kids.size(); ++i) {
            if (i) out += ", ";
            emit(x->kids[i]);
        }
        out += ")";
    };
    emit(t);
    return out;
}

namespace {

class TermParser {
public:
    TermParser(const std::string& text, const OperatorRegistry* registry) : lex_(text), registry_(registry) {}

    Term parse() {
        Term t = parse_node();
        lex_.expect_end();
        return t;
    }

private:
    Term parse_node() {
        const std::size_t at = lex_.pos();
        const std::string id = lex_.identifier();
        if (lex_.accept('(')) {
            std::vector<Term> args;
            args.push_back(parse_node());
            while (lex_.accept(',')) args.push_back(parse_node());
            lex_.expect(')');
            return build(id, std::move(args), at);
        }
        if (id == "e") return term::e();
        if (lex_.accept('/')) {
            const std::size_t k = lex_.number();
            auto [it, fresh] = arities_.emplace(id, k);
            if (!fresh && it->second != k) {
                throw Error(ErrorKind::arity, "symbol '" + id + "' declared with arities " +
                                                  std::to_string(it->second) + " and " + std::to_string(k));
            }
            return term::rel(id, k);
        }
        auto it = arities_.find(id);
        if (it == arities_.end()) {
            lex_.fail(at, "arity of '" + id + "' unknown; write " + id + "/k on first use");
        }
        return term::rel(id, it->second);
    }

    Term build(const std::string& id, std::vector<Term> args, std::size_t at) {
        static const std::map<std::string, Op> ops = {
            {"p", Op::P},     {"s", Op::S},         {"I", Op::I},     {"not", Op::Not},
            {"ex", Op::Ex},   {"J", Op::J},         {"cup", Op::Cup}, {"cap", Op::Cap},
            {"minus", Op::Minus}, {"sint", Op::Sint}, {"H", Op::H}};
        if (auto it = ops.find(id); it != ops.end()) {
            const std::size_t want = is_unary(it->second) ? 1 : 2;
            if (args.size() != want) {
                lex_.fail(at, "'" + id + "' takes " + std::to_string(want) + " argument(s)");
            }
            return want == 1 ? term::unary(it->second, std::move(args[0]))
                             : term::binary(it->second, std::move(args[0]), std::move(args[1]));
        }
        const OperatorDescriptor* d = registry_ ? registry_->find(id) : nullptr;
        if (d == nullptr) lex_.fail(at, "unknown operator '" + id + "'");
        return term::custom(std::make_shared<const OperatorDescriptor>(*d), std::move(args));
    }

    Lexer lex_;
    const OperatorRegistry* registry_;
    std::map<std::string, std::size_t> arities_;
};

}  // namespace

Term parse_term(const std::string& text, const OperatorRegistry* registry) {
    return TermParser(text, registry).parse();
}

}  // namespace gra
