#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "grapheq/grapheq.hpp"

using namespace grapheq;

namespace {

/// Exit codes: 0 yes, 1 definitive no or failed check, 2 unknown at bound, 3 bad input, 4 anything else.
enum Exit { Ok = 0, No = 1, Unknown = 2, BadInput = 3, Failure = 4 };

int exit_for(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NotAnIntegerSolution:
    case ErrorKind::NotASolution:
    case ErrorKind::DecodeInconsistency:
        return No;
    case ErrorKind::ParseError:
    case ErrorKind::UnknownVertex:
    case ErrorKind::UnknownVariable:
    case ErrorKind::IncompleteAssignment:
    case ErrorKind::InvalidInstance:
    case ErrorKind::PresentationMismatch:
    case ErrorKind::NotFlattened:
    case ErrorKind::RankTooSmall:
    case ErrorKind::AbelianTarget:
    case ErrorKind::InfiniteAbelianisation:
    case ErrorKind::NotCyclicallyReduced:
    case ErrorKind::FiniteOrderVertexInSupport:
    case ErrorKind::IdentityElement:
    case ErrorKind::NotAbelianPrimitive:
    case ErrorKind::RadiusCapExceeded:
        return BadInput;
    default:
        return Failure;
    }
}

std::string join(const std::vector<std::string> &parts)
{
    std::string out;
    for (auto &s : parts)
        out += (out.empty() ? "" : " ") + s;
    return out;
}

void write_or_print(const std::string &path, const std::string &text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
    out << text;
}

std::string tuple_text(const CompiledReduction &cr, const IntAssignment &x)
{
    std::string out = "(";
    for (std::size_t i = 0; i < cr.atoms.source_variables.size(); ++i)
        out += (i ? "," : "") + x.at(cr.atoms.source_variables[i]).str();
    return out + ")";
}

IntAssignment parse_values(const CompiledReduction &cr, const std::vector<std::string> &toks)
{
    IntAssignment x;
    auto &names = cr.atoms.source_variables;
    std::vector<std::string> items;
    for (auto &t : toks) {
        std::string s = t;
        for (char c : {'(', ')'})
            std::erase(s, c);
        std::stringstream ss(s);
        std::string piece;
        while (std::getline(ss, piece, ','))
            if (!piece.empty())
                items.push_back(piece);
    }
    std::size_t positional = 0;
    for (auto &it : items) {
        auto eq = it.find('=');
        std::string name, value = it;
        if (eq != std::string::npos) {
            name = it.substr(0, eq);
            value = it.substr(eq + 1);
        } else {
            if (positional >= names.size())
                throw Error(ErrorKind::ParseError, "too many values");
            name = names[positional++];
        }
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw Error(ErrorKind::UnknownVariable, "unknown integer variable '" + name + "'");
        x[name] = detail::parse_big(value, 0);
    }
    return x;
}

struct Options {
    std::size_t bound = 3;
    std::size_t cap = default_radius_cap;
    unsigned threads = 1;
    std::string mode = "pure-ab";
    std::string format = "text";
    std::string out;
    std::string sidecar;
    std::vector<std::string> args;
    std::vector<std::string> hint;
};

CompiledReduction load_compiled(const std::string &inst_path, const std::string &sidecar_path)
{
    auto inst = read_instance(inst_path);
    return parse_sidecar(detail::read_file(sidecar_path), inst);
}

int run(const std::string &cmd, const Options &o)
{
    auto &a = o.args;
    auto need = [&](std::size_t n) {
        if (a.size() < n)
            throw Error(ErrorKind::ParseError, cmd + ": expected at least " + std::to_string(n) + " arguments");
    };
    auto word_from = [&](const Presentation &p, std::size_t from) {
        return parse_word(p, join(std::vector<std::string>(a.begin() + static_cast<std::ptrdiff_t>(from), a.end())));
    };

    if (cmd == "normalize" || cmd == "length") {
        need(1);
        auto p = read_presentation(a[0]);
        auto w = word_from(p, 1);
        if (cmd == "normalize")
            std::cout << to_string(p, w) << "\n";
        else
            std::cout << geodesic_length(p, w) << "\n";
        return Ok;
    }
    if (cmd == "absum") {
        need(2);
        auto p = read_presentation(a[0]);
        auto v = p.find(a[1]);
        if (!v)
            throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + a[1] + "'");
        require_abelian_primitive(p, *v);
        std::cout << exponent_sum(p, word_from(p, 2), *v) << "\n";
        return Ok;
    }
    if (cmd == "weak-modules" || cmd == "decompose") {
        need(1);
        auto p = read_presentation(a[0]);
        auto sets = cmd == "weak-modules" ? weak_modules(p) : direct_product_decomposition(p);
        for (auto &s : sets)
            std::cout << to_string(p, s) << "\n";
        return Ok;
    }
    if (cmd == "centralizer") {
        need(2);
        auto p = read_presentation(a[0]);
        auto c = centralizer_generators(p, word_from(p, 1));
        std::cout << "conjugator " << to_string(p, c.conjugator) << "\n";
        for (std::size_t i = 0; i < c.cyclic_parts.size(); ++i)
            std::cout << "root " << to_string(p, c.cyclic_parts[i]) << " exponent " << c.exponents[i] << "\n";
        std::cout << "link " << to_string(p, c.link_vertices) << "\n";
        return Ok;
    }
    if (cmd == "flatten" || cmd == "reduce-finite-ab") {
        need(1);
        auto inst = read_instance(a[0]);
        write_or_print(o.out, to_text(cmd == "flatten" ? flatten(inst) : reduce_finite_ab(inst)));
        return Ok;
    }
    if (cmd == "shadow") {
        need(1);
        auto inst = read_instance(a[0]);
        auto systems = abelian_shadow(inst);
        bool any = false;
        for (std::size_t i = 0; i < systems.size(); ++i) {
            auto r = solve_linear_system(systems[i]);
            bool sat = r.status == Solvability::Sat;
            any = any || sat;
            std::cout << "disjunct " << i << " " << (sat ? "sat" : "unsat") << "\n" << to_string(systems[i]);
        }
        return any ? Ok : No;
    }
    if (cmd == "solve") {
        need(1);
        auto inst = read_instance(a[0]);
        SearchOptions so;
        so.cap = o.cap;
        so.threads = o.threads;
        auto rep = search(inst, o.bound, so);
        std::cerr << stats_line(rep.stats) << "\n";
        switch (rep.verdict) {
        case Verdict::Witness:
            std::cout << to_text(inst, rep.witness);
            return Ok;
        case Verdict::UnsatByShadow:
            std::cout << "unsat by abelian shadow\n";
            return No;
        case Verdict::NoSolutionUpToBound:
            std::cout << "no solution up to bound " << o.bound << "\n";
            return Unknown;
        }
    }
    if (cmd == "compile-h10" || cmd == "compile-h10-raag") {
        need(2);
        auto h = read_h10(a[0]);
        auto p = read_presentation(a[1]);
        auto cr = cmd == "compile-h10" ? compile_h10_free(h, p, parse_mode(o.mode)) : compile_h10_raag(h, p);
        write_or_print(o.out, to_text(cr.instance));
        if (!o.sidecar.empty())
            write_or_print(o.sidecar, sidecar_text(cr));
        return Ok;
    }
    if (cmd == "witness") {
        need(3);
        auto cr = load_compiled(a[0], a[1]);
        auto asg = witness_h10(cr, parse_values(cr, std::vector<std::string>(a.begin() + 2, a.end())));
        write_or_print(o.out, to_text(cr.instance, asg));
        return Ok;
    }
    if (cmd == "decode") {
        need(3);
        auto cr = load_compiled(a[0], a[1]);
        auto asg = parse_assignment(cr.instance, detail::read_file(a[2]));
        std::cout << tuple_text(cr, decode_solution(cr, asg)) << "\n";
        return Ok;
    }
    if (cmd == "verify") {
        need(2);
        auto cr = load_compiled(a[0], a[1]);
        Assignment asg;
        if (!o.hint.empty()) {
            asg = witness_h10(cr, parse_values(cr, o.hint));
        } else {
            SearchOptions so;
            so.cap = o.cap;
            so.threads = o.threads;
            auto rep = search(cr.instance, o.bound, so);
            std::cerr << stats_line(rep.stats) << "\n";
            if (rep.verdict == Verdict::UnsatByShadow) {
                std::cout << "unsat by abelian shadow\n";
                return No;
            }
            if (rep.verdict == Verdict::NoSolutionUpToBound) {
                std::cout << "no solution up to bound " << o.bound << "\n";
                return Unknown;
            }
            asg = rep.witness;
        }
        if (!evaluate(cr.instance, asg).satisfied)
            throw Error(ErrorKind::NotASolution, "assignment fails the compiled instance");
        auto x = decode_solution(cr, asg);
        if (!o.hint.empty() && x != parse_values(cr, o.hint))
            throw Error(ErrorKind::DecodeInconsistency, "decoded " + tuple_text(cr, x) + " differs from the hint");
        std::cout << tuple_text(cr, x) << "\nOK\n";
        return Ok;
    }
    throw Error(ErrorKind::ParseError, "unknown command '" + cmd + "'");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Equations in graph products of cyclic groups"};
    app.require_subcommand(1);
    Options o;

    struct CommandInfo {
        const char *name;
        const char *help;
        const char *args;
    };
    const std::vector<CommandInfo> commands = {
        {"normalize", "normal form of a word", "GRAPH WORD..."},
        {"length", "geodesic length of a word", "GRAPH WORD..."},
        {"absum", "exponent sum at a vertex", "GRAPH VERTEX WORD..."},
        {"weak-modules", "weak modules, one per line", "GRAPH"},
        {"decompose", "direct factors, one per line", "GRAPH"},
        {"centralizer", "centralizer description", "GRAPH WORD..."},
        {"flatten", "rewrite into short equations", "INSTANCE"},
        {"shadow", "abelian shadow systems", "INSTANCE"},
        {"solve", "bounded search", "INSTANCE"},
        {"compile-h10", "polynomial equations into a free group", "H10 GRAPH"},
        {"compile-h10-raag", "polynomial equations into a RAAG", "H10 GRAPH"},
        {"reduce-finite-ab", "replace abelian constraints by cosets", "INSTANCE"},
        {"witness", "compiled assignment from integers", "INSTANCE SIDECAR VALUES..."},
        {"decode", "integers from a compiled assignment", "INSTANCE SIDECAR ASSIGNMENT"},
        {"verify", "compile, solve or witness, then decode", "INSTANCE SIDECAR"},
    };
    for (auto &c : commands) {
        auto *sub = app.add_subcommand(c.name, c.help);
        sub->add_option("args", o.args, c.args)->required();
        sub->add_option("--bound", o.bound, "search radius");
        sub->add_option("--cap", o.cap, "largest accepted radius");
        sub->add_option("--threads", o.threads, "search threads, 0 for all cores");
        sub->add_option("--mode", o.mode, "pure-ab or native-expsum")
            ->check(CLI::IsMember({"pure-ab", "native-expsum"}));
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text"}));
        sub->add_option("--out", o.out, "write the main output here");
        sub->add_option("--sidecar", o.sidecar, "write the decode sidecar here");
        sub->add_option("--hint", o.hint, "integer solution, e.g. 2,3,6")->delimiter(',');
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return BadInput;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), o);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
}
