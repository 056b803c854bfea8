#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "gra/check/selftest.hpp"
#include "gra/decide/reduce.hpp"
#include "gra/decide/router.hpp"
#include "gra/error.hpp"
#include "gra/syntax/classify.hpp"
#include "gra/translate/fluted.hpp"
#include "gra/translate/fo2.hpp"
#include "gra/translate/guarded.hpp"
#include "gra/translate/translate.hpp"

using namespace gra;
using Json = nlohmann::ordered_json;

namespace {

enum Exit : int {
    exit_ok = 0,
    exit_unsat = 1,
    exit_bounded = 2,
    exit_usage = 3,
    exit_io = 4,
    exit_syntax = 5,
    exit_vocabulary = 6,
    exit_fragment = 7,
    exit_budget = 8,
    exit_unsupported = 9,
    exit_structure = 10,
    exit_capacity = 11,
    exit_internal = 12,
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::usage: return exit_usage;
        case ErrorKind::io: return exit_io;
        case ErrorKind::syntax: return exit_syntax;
        case ErrorKind::arity:
        case ErrorKind::vocabulary: return exit_vocabulary;
        case ErrorKind::not_in_fragment: return exit_fragment;
        case ErrorKind::budget_exceeded: return exit_budget;
        case ErrorKind::unsupported_operator: return exit_unsupported;
        case ErrorKind::invalid_structure: return exit_structure;
        case ErrorKind::capacity: return exit_capacity;
    }
    return exit_usage;
}

struct Options {
    std::string expr, expr_term, expr_formula, file;
    std::string structure;
    std::string format = "text";
    std::string from, to;
    bool trace = false;
    bool eliminate_i = false;
    std::string method = "auto";
    std::size_t max_domain = 3;
    std::size_t jobs = 1;
    bool no_prune = false;
    std::string witness;
    std::string reduce_to = "both";
    std::uint64_t seed = 1;
    std::size_t count = 50;
};

struct Input {
    std::optional<Term> term;
    std::optional<Formula> formula;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorKind::io, "cannot write '" + path + "'");
}

std::string trimmed(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

bool looks_like_formula(const std::string& text) {
    if (text.find_first_of("~&|=") != std::string::npos) return true;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        const bool boundary = i == 0 || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_');
        if (boundary && text[i] == 'v' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) return true;
    }
    return false;
}

// Exactly one expression source; --expr and --file guess the kind.
std::string source_text(const Options& o, char& kind) {
    const int given = !o.expr.empty() + !o.expr_term.empty() + !o.expr_formula.empty() + !o.file.empty();
    if (given != 1) throw Error(ErrorKind::usage, "give exactly one of --expr, --expr-term, --expr-formula, --file");
    kind = '?';
    if (!o.expr_term.empty()) {
        kind = 't';
        return o.expr_term;
    }
    if (!o.expr_formula.empty()) {
        kind = 'f';
        return o.expr_formula;
    }
    return o.file.empty() ? o.expr : trimmed(read_file(o.file));
}

Input read_input(const Options& o) {
    char kind = '?';
    const std::string text = source_text(o, kind);
    Input in;
    if (kind == 't') {
        in.term = parse_term(text);
    } else if (kind == 'f') {
        in.formula = parse_formula(text);
    } else {
        try {
            in.term = parse_term(text);
        } catch (const Error& term_error) {
            if (term_error.kind() != ErrorKind::syntax) throw;
            try {
                in.formula = parse_formula(text);
            } catch (const Error& formula_error) {
                if (formula_error.kind() != ErrorKind::syntax || looks_like_formula(text)) throw;
                throw term_error;
            }
        }
    }
    return in;
}

std::string tuple_text(std::span<const Element> t, const Domain& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ", ";
        s += d.name(t[i]);
    }
    return s + ")";
}

std::string vocabulary_text(const Vocabulary& v) {
    std::string s = "{";
    bool first = true;
    for (const auto& [name, arity] : v) {
        if (!first) s += ", ";
        first = false;
        s += name + "/" + std::to_string(arity);
    }
    return s + "}";
}

std::string set_text(const std::set<std::string>& items) {
    std::string s = "{";
    bool first = true;
    for (const auto& i : items) {
        if (!first) s += ", ";
        first = false;
        s += i;
    }
    return s + "}";
}

Json vocabulary_json(const Vocabulary& v) {
    Json j = Json::object();
    for (const auto& [name, arity] : v) j[name] = arity;
    return j;
}

int cmd_eval(const Options& o) {
    if (o.structure.empty()) throw Error(ErrorKind::usage, "eval needs --structure");
    const Input in = read_input(o);
    const Structure m = load_structure(o.structure);
    const ADRelation r = in.term ? evaluate(*in.term, m) : fo_evaluate(*in.formula, m);
    std::vector<std::string> columns;
    if (in.formula) {
        for (Var v : (*in.formula)->free) columns.push_back(var_name(v));
    }
    if (o.format == "json") {
        Json j;
        j["arity"] = r.arity();
        if (in.formula) j["columns"] = columns;
        Json tuples = Json::array();
        r.for_each([&](std::span<const Element> t) {
            Json row = Json::array();
            for (Element e : t) row.push_back(m.domain().name(e));
            tuples.push_back(row);
        });
        j["tuples"] = tuples;
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "arity: " << r.arity() << "\n";
    if (in.formula) {
        std::cout << "columns:";
        for (const auto& c : columns) std::cout << " " << c;
        std::cout << "\n";
    }
    std::cout << "tuples: " << r.size() << "\n";
    r.for_each([&](std::span<const Element> t) { std::cout << tuple_text(t, m.domain()) << "\n"; });
    return exit_ok;
}

int cmd_translate(const Options& o) {
    static const std::set<std::string> formula_sources = {"fo", "gf", "fo2", "fl", "cqe", "cq", "eqfree"};
    static const std::set<std::string> term_sources = {"gra", "ggra", "f2alg", "flalg", "cqealg"};
    static const std::map<std::string, std::string> forward = {{"fo", "gra"},     {"eqfree", "gra"},   {"gf", "ggra"},
                                                               {"fo2", "f2alg"},  {"fl", "flalg"},     {"cqe", "cqealg"},
                                                               {"cq", "cqealg"}};
    static const std::map<std::string, std::set<std::string>> backward = {
        {"gra", {"fo", "gra"}}, {"ggra", {"gf"}}, {"f2alg", {"fo2"}}, {"flalg", {"fl"}}, {"cqealg", {"cqe", "cq"}}};
    const bool from_formula = formula_sources.count(o.from) > 0;
    if (!from_formula && !term_sources.count(o.from)) throw Error(ErrorKind::usage, "unknown --from '" + o.from + "'");
    const bool pair_ok = from_formula ? forward.at(o.from) == o.to : backward.at(o.from).count(o.to) > 0;
    if (!pair_ok) throw Error(ErrorKind::usage, "cannot translate from '" + o.from + "' to '" + o.to + "'");
    if (o.from == "gra" && o.to == "gra" && !o.eliminate_i) {
        throw Error(ErrorKind::usage, "gra to gra needs --eliminate-i");
    }

    Options src = o;
    if (!o.expr.empty()) {
        if (from_formula) {
            src.expr_formula = o.expr;
        } else {
            src.expr_term = o.expr;
        }
        src.expr.clear();
    }
    if (!o.file.empty()) {
        (from_formula ? src.expr_formula : src.expr_term) = trimmed(read_file(o.file));
        src.file.clear();
    }
    const Input in = read_input(src);
    if (from_formula != in.formula.has_value()) {
        throw Error(ErrorKind::usage, std::string("--from ") + o.from + " expects a " + (from_formula ? "formula" : "term"));
    }

    translate::Trace trace;
    translate::Trace* tp = o.trace ? &trace : nullptr;
    std::string input_text, result;
    if (from_formula) {
        const Formula& f = *in.formula;
        input_text = print_formula(f);
        Term t;
        if (o.from == "fo") {
            t = translate::fo_to_gra(normalize(f), tp);
        } else if (o.from == "eqfree") {
            t = translate::fo_to_gra_equality_free(normalize(f), tp);
        } else if (o.from == "gf") {
            t = translate::gf_to_algebra(f, tp);
        } else if (o.from == "fo2") {
            t = translate::fo2_to_algebra(f, tp);
        } else if (o.from == "fl") {
            t = translate::fl_to_algebra(f, tp);
        } else {
            t = translate::cqe_to_algebra(f, o.from == "cq", tp);
        }
        if (o.eliminate_i) t = translate::eliminate_I(t);
        result = print_term(t);
    } else {
        const Term& t = *in.term;
        input_text = print_term(t);
        if (o.to == "gra") {
            result = print_term(translate::eliminate_I(t));
        } else {
            const Term src_term = o.eliminate_i ? translate::eliminate_I(t) : t;
            Formula f;
            if (o.from == "gra") {
                f = translate::gra_to_fo(src_term, tp);
            } else if (o.from == "ggra") {
                f = translate::algebra_to_gf(src_term, tp);
            } else if (o.from == "f2alg") {
                f = translate::algebra_to_fo2(src_term, tp);
            } else if (o.from == "flalg") {
                f = translate::algebra_to_fl(src_term, tp);
            } else {
                f = translate::algebra_to_cqe(src_term, o.to == "cq", tp);
            }
            result = print_formula(f);
        }
    }

    if (o.format == "json") {
        Json j;
        j["from"] = o.from;
        j["to"] = o.to;
        j["input"] = input_text;
        j["result"] = result;
        if (o.trace) j["trace"] = trace.lines();
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    if (o.trace) {
        std::cout << "trace:\n";
        for (const auto& l : trace.lines()) std::cout << "  " << l << "\n";
        std::cout << "result: " << result << "\n";
    } else {
        std::cout << result << "\n";
    }
    return exit_ok;
}

int cmd_classify(const Options& o) {
    const Input in = read_input(o);
    Json j;
    std::vector<std::pair<std::string, bool>> flags;
    if (in.term) {
        const Term& t = *in.term;
        const TermReport r = classify_term(t);
        std::set<std::string> sig = r.signature.ops;
        if (r.signature.uses_e) sig.insert("e");
        j["kind"] = "term";
        j["expression"] = print_term(t);
        j["arity"] = t->arity;
        j["signature"] = sig;
        j["vocabulary"] = vocabulary_json(term_vocabulary(t));
        flags = report_flags(r);
    } else {
        const Formula& f = *in.formula;
        const FragmentReport r = classify_formula(f);
        std::vector<std::string> free;
        for (Var v : f->free) free.push_back(var_name(v));
        j["kind"] = "formula";
        j["expression"] = print_formula(f);
        j["free"] = free;
        j["vocabulary"] = vocabulary_json(formula_vocabulary(f));
        flags = report_flags(r);
        if (r.fluted_level) {
            j["fluted-level"] = *r.fluted_level;
        } else {
            j["fluted-level"] = nullptr;
        }
    }
    Json fj = Json::object();
    for (const auto& [name, value] : flags) fj[name] = value;
    j["flags"] = fj;

    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "kind: " << j["kind"].get<std::string>() << "\n";
    std::cout << "expression: " << j["expression"].get<std::string>() << "\n";
    if (in.term) {
        std::cout << "arity: " << (*in.term)->arity << "\n";
        std::cout << "signature: " << set_text(j["signature"].get<std::set<std::string>>()) << "\n";
        std::cout << "vocabulary: " << vocabulary_text(term_vocabulary(*in.term)) << "\n";
    } else {
        std::cout << "free:";
        for (Var v : (*in.formula)->free) std::cout << " " << var_name(v);
        std::cout << "\n";
        std::cout << "vocabulary: " << vocabulary_text(formula_vocabulary(*in.formula)) << "\n";
        const auto& level = j["fluted-level"];
        std::cout << "fluted-level: " << (level.is_null() ? std::string("none") : std::to_string(level.get<std::size_t>()))
                  << "\n";
    }
    for (const auto& [name, value] : flags) std::cout << name << ": " << (value ? "true" : "false") << "\n";
    return exit_ok;
}

int report_verdict(const Options& o, const SatVerdict& v) {
    if (v.witness && !o.witness.empty()) write_file(o.witness, structure_to_json(*v.witness) + "\n");
    if (o.format == "json") {
        Json j;
        j["verdict"] = to_string(v.kind);
        j["method"] = v.method;
        if (v.bound) j["bound"] = *v.bound;
        if (!v.note.empty()) j["note"] = v.note;
        if (v.witness) j["witness"] = Json::parse(structure_to_json(*v.witness));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verdict: " << to_string(v.kind) << "\n";
        std::cout << "method: " << v.method << "\n";
        if (v.bound) std::cout << "bound: " << *v.bound << "\n";
        if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
        if (v.witness) std::cout << "witness:\n" << structure_to_json(*v.witness) << "\n";
    }
    switch (v.kind) {
        case VerdictKind::sat: return exit_ok;
        case VerdictKind::unsat: return exit_unsat;
        case VerdictKind::unsat_up_to_bound: return exit_bounded;
    }
    return exit_usage;
}

OracleOptions oracle_options(const Options& o) {
    OracleOptions opts;
    opts.max_domain = o.max_domain;
    opts.jobs = o.jobs;
    opts.prune = !o.no_prune;
    return opts;
}

int cmd_sat(const Options& o) {
    const auto method = parse_sat_method(o.method);
    if (!method) throw Error(ErrorKind::usage, "unknown --method '" + o.method + "'");
    const Input in = read_input(o);
    const OracleOptions opts = oracle_options(o);
    return report_verdict(o, in.term ? sat_router(*in.term, *method, opts) : sat_router(*in.formula, *method, opts));
}

int cmd_oracle(const Options& o) {
    const Input in = read_input(o);
    const OracleOptions opts = oracle_options(o);
    return report_verdict(o, in.term ? sat_oracle(*in.term, opts) : sat_oracle(*in.formula, opts));
}

int cmd_reduce(const Options& o) {
    if (!o.expr_term.empty() || !o.expr_formula.empty()) {
        throw Error(ErrorKind::usage, "reduce reads a propositional formula or DIMACS CNF via --expr or --file");
    }
    if (o.expr.empty() == o.file.empty()) throw Error(ErrorKind::usage, "give exactly one of --expr, --file");
    const std::string text = o.file.empty() ? o.expr : trimmed(read_file(o.file));
    const bool dimacs = text.find("p cnf") != std::string::npos ||
                        (!text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-'));
    const Prop p = dimacs ? cnf_to_prop(parse_dimacs(text)) : parse_prop(text);
    if (o.reduce_to != "both" && o.reduce_to != "inj" && o.reduce_to != "njex") {
        throw Error(ErrorKind::usage, "--to must be inj, njex or both");
    }
    Json j;
    j["input"] = print_prop(p);
    if (o.reduce_to != "njex") j["inj"] = print_term(reduce_sat_to_inj(p));
    if (o.reduce_to != "inj") j["njex"] = print_term(reduce_sat_to_njex(p));
    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "input: " << j["input"].get<std::string>() << "\n";
    if (j.contains("inj")) std::cout << "inj: " << j["inj"].get<std::string>() << "\n";
    if (j.contains("njex")) std::cout << "njex: " << j["njex"].get<std::string>() << "\n";
    return exit_ok;
}

int cmd_selftest(const Options& o) {
    const auto results = check::run_selftest(o.seed, o.count);
    bool all = true;
    Json j = Json::array();
    for (const auto& r : results) {
        all = all && r.passed == r.total;
        Json s;
        s["suite"] = r.name;
        s["passed"] = r.passed;
        s["total"] = r.total;
        if (!r.first_failure.empty()) s["first_failure"] = r.first_failure;
        j.push_back(s);
    }
    if (o.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << r.name << ": " << r.passed << "/" << r.total << "\n";
            if (!r.first_failure.empty()) std::cout << "  first failure: " << r.first_failure << "\n";
        }
    }
    return all ? exit_ok : exit_unsat;
}

void add_source(CLI::App* c, Options& o) {
    c->add_option("--expr", o.expr, "Term or formula (kind detected)");
    c->add_option("--expr-term", o.expr_term, "Algebra term");
    c->add_option("--expr-formula", o.expr_formula, "First-order formula");
    c->add_option("--file", o.file, "Read the expression from a file");
}

void add_format(CLI::App* c, Options& o) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

void add_search(CLI::App* c, Options& o) {
    c->add_option("--max-domain", o.max_domain, "Largest domain size searched")->check(CLI::Range(1, 64));
    c->add_option("--jobs", o.jobs, "Oracle worker threads")->check(CLI::Range(1, 256));
    c->add_flag("--no-prune", o.no_prune, "Enumerate every interpretation without three-valued pruning");
    c->add_option("--witness", o.witness, "Write the witness structure to this JSON file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relation algebra toolkit: evaluation, translation, classification and satisfiability"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "Evaluate a term or formula on a structure");
    add_source(eval, o);
    add_format(eval, o);
    eval->add_option("--structure", o.structure, "Structure JSON file")->required();

    auto* tr = app.add_subcommand("translate", "Translate between logics and algebra fragments");
    add_source(tr, o);
    add_format(tr, o);
    tr->add_option("--from", o.from, "fo, gf, fo2, fl, cqe, cq, eqfree, gra, ggra, f2alg, flalg, cqealg")->required();
    tr->add_option("--to", o.to, "gra, ggra, f2alg, flalg, cqealg, fo, gf, fo2, fl, cqe, cq")->required();
    tr->add_flag("--emit-proof-trace", o.trace, "Print every rewrite step");
    tr->add_flag("--eliminate-i", o.eliminate_i, "Rewrite I away in the algebra side");

    auto* cl = app.add_subcommand("classify", "Report fragment membership");
    add_source(cl, o);
    add_format(cl, o);

    auto* sat = app.add_subcommand("sat", "Decide satisfiability");
    add_source(sat, o);
    add_format(sat, o);
    add_search(sat, o);
    sat->add_option("--method", o.method, "auto, automaton, cqe, qf, herbrand, fragment-f, oracle");

    auto* orc = app.add_subcommand("oracle", "Bounded model search");
    add_source(orc, o);
    add_format(orc, o);
    add_search(orc, o);

    auto* red = app.add_subcommand("reduce", "Reduce propositional satisfiability to algebra terms");
    add_source(red, o);
    add_format(red, o);
    red->add_option("--to", o.reduce_to, "inj, njex or both");

    auto* st = app.add_subcommand("selftest", "Run randomized invariant checks");
    add_format(st, o);
    st->add_option("--seed", o.seed, "Random seed");
    st->add_option("--count", o.count, "Inputs per suite")->check(CLI::Range(1, 100000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (*eval) return cmd_eval(o);
        if (*tr) return cmd_translate(o);
        if (*cl) return cmd_classify(o);
        if (*sat) return cmd_sat(o);
        if (*orc) return cmd_oracle(o);
        if (*red) return cmd_reduce(o);
        if (*st) return cmd_selftest(o);
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: invalid-structure: " << e.what() << "\n";
        return exit_structure;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_usage;
}
