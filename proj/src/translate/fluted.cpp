#include "gra/translate/fluted.hpp"

#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"

namespace gra::translate {

namespace {

Term fl_term(const Formula& f, Trace* trace) {
    Term out;
    switch (f->kind) {
        case FKind::Atom: out = term::rel(f->name, f->args.size()); break;
        case FKind::Not: out = term::neg(fl_term(f->a, trace)); break;
        case FKind::And: out = term::sint(fl_term(f->a, trace), fl_term(f->b, trace)); break;
        case FKind::Exists: out = term::ex(fl_term(f->a, trace)); break;
        default: throw Error(ErrorKind::not_in_fragment, "not a fluted formula");
    }
    if (trace) trace->step(print_formula(f) + "  =>  " + print_term(out));
    return out;
}

// Translation at variables v_m..v_k, where m = k - ar(t) + 1.
Formula fl_formula(const Term& t, std::size_t k, Trace* trace) {
    const std::size_t m = k + 1 - t->arity;
    Formula out;
    switch (t->op) {
        case Op::Rel: {
            std::vector<Var> args;
            for (std::size_t v = m; v <= k; ++v) args.push_back(v);
            out = fo::atom(t->name, args);
            break;
        }
        case Op::Not: out = fo::neg(fl_formula(t->kids[0], k, trace)); break;
        case Op::Sint: out = fo::conj(fl_formula(t->kids[0], k, trace), fl_formula(t->kids[1], k, trace)); break;
        case Op::Ex: out = fo::exists(k + 1, fl_formula(t->kids[0], k + 1, trace)); break;
        default:
            throw Error(ErrorKind::not_in_fragment,
                        std::string("operator '") + (t->op == Op::Custom ? t->name : op_name(t->op)) +
                            "' is outside {not, sint, ex}");
    }
    if (trace) trace->step(print_term(t) + " @ level " + std::to_string(k) + "  =>  " + print_formula(out));
    return out;
}

}  // namespace

Term fl_to_algebra(const Formula& f, Trace* trace) {
    const auto level = fluted_level(f);
    if (!level) throw Error(ErrorKind::not_in_fragment, "not a fluted formula");
    if (trace) trace->step("fluted at level " + std::to_string(*level));
    formula_vocabulary(f);
    return fl_term(normalize(f), trace);
}

Formula algebra_to_fl(const Term& t, Trace* trace) {
    term_vocabulary(t);
    return fl_formula(t, t->arity, trace);
}

}  // namespace gra::translate
