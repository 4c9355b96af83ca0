#pragma once

#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "instance.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace grapheq {

namespace detail {

enum class Tok { Ident, Int, Sym, Newline, Path, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 0, col = 0;
    bool glued = false; // no whitespace before this token
};

inline std::vector<Token> lex(const std::string &src)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    bool glued = false;
    auto err = [&](const std::string &m) {
        throw Error(ErrorKind::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": " + m);
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                ++i;
            continue;
        }
        if (c == '\n') {
            out.push_back({Tok::Newline, "\n", line, col, false});
            ++i;
            ++line;
            col = 1;
            glued = false;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            glued = false;
            continue;
        }
        Token t{Tok::Sym, std::string(1, c), line, col, glued};
        if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && is_ident_char(src[j]))
                ++j;
            t.kind = Tok::Ident;
            t.text = src.substr(i, j - i);
        } else if (c >= '0' && c <= '9') {
            std::size_t j = i;
            while (j < src.size() && src[j] >= '0' && src[j] <= '9')
                ++j;
            t.kind = Tok::Int;
            t.text = src.substr(i, j - i);
        } else if (std::string("^()={};:*|+-',").find(c) == std::string::npos) {
            err(std::string("unexpected character '") + c + "'");
        }
        col += t.text.size();
        i += t.text.size();
        bool at_line_start = out.empty() || out.back().kind == Tok::Newline;
        out.push_back(t);
        glued = true;
        if (t.kind == Tok::Ident && t.text == "group" && at_line_start) {
            std::size_t j = i;
            while (j < src.size() && src[j] != '\n' && src[j] != '#')
                ++j;
            std::string path = src.substr(i, j - i);
            auto a = path.find_first_not_of(" \t\r");
            auto b = path.find_last_not_of(" \t\r");
            if (a == std::string::npos)
                err("'group' needs a file path");
            out.push_back({Tok::Path, path.substr(a, b - a + 1), line, col + a, false});
            col += j - i;
            i = j;
        }
    }
    out.push_back({Tok::End, "", line, col, false});
    return out;
}

class InstanceParser {
public:
    InstanceParser(const std::string &text, std::filesystem::path base) : toks_(lex(text)), base_(std::move(base)) {}

    /// Parse only terms against an existing instance context.
    InstanceParser(const std::string &text, const Instance &ctx) : toks_(lex(text))
    {
        inst_.presentation = ctx.presentation;
        inst_.variables = ctx.variables;
        have_group_ = true;
    }

    Instance parse()
    {
        skip_newlines();
        while (peek().kind != Tok::End) {
            auto &t = peek();
            if (t.kind != Tok::Ident)
                fail(t, "expected a statement");
            if (t.text == "group")
                parse_group();
            else if (t.text == "vertex" || t.text == "edge")
                parse_graph();
            else if (t.text == "vars")
                parse_vars();
            else if (t.text == "disjunct")
                parse_disjunct();
            else
                fail(t, "unknown statement '" + t.text + "'");
            skip_newlines();
        }
        if (inst_.disjuncts.empty())
            fail(peek(), "instance has no disjunct");
        validate(inst_);
        return inst_;
    }

    GroupTerm parse_term_only()
    {
        auto t = parse_term();
        if (peek().kind != Tok::End && peek().kind != Tok::Newline)
            fail(peek(), "trailing input after term");
        return t;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::filesystem::path base_;
    Instance inst_;
    bool have_group_ = false;
    bool inline_group_ = false;

    const Token &peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token &take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const Token &t, const std::string &m, ErrorKind k = ErrorKind::ParseError) const
    {
        throw Error(k, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + m);
    }

    bool is_sym(const Token &t, char c) const { return t.kind == Tok::Sym && t.text[0] == c; }

    void expect_sym(char c)
    {
        if (!is_sym(peek(), c))
            fail(peek(), std::string("expected '") + c + "'");
        take();
    }

    void skip_newlines()
    {
        while (peek().kind == Tok::Newline)
            take();
    }

    void end_of_line()
    {
        if (peek().kind != Tok::Newline && peek().kind != Tok::End)
            fail(peek(), "unexpected '" + peek().text + "'");
    }

    void parse_group()
    {
        auto &kw = take();
        if (have_group_)
            fail(kw, "group declared twice");
        auto &path = take();
        std::filesystem::path f = path.text;
        if (f.is_relative())
            f = base_ / f;
        try {
            inst_.presentation = read_presentation(f.string());
        } catch (const Error &e) {
            fail(path, e.what());
        }
        have_group_ = true;
        end_of_line();
    }

    void parse_graph()
    {
        auto &kw = peek();
        if (have_group_ && !inline_group_)
            fail(kw, "inline graph after group declaration");
        if (!inst_.variables.empty() || !inst_.disjuncts.empty())
            fail(kw, "graph lines must precede vars and disjuncts");
        std::vector<std::string> words;
        while (peek().kind != Tok::Newline && peek().kind != Tok::End)
            words.push_back(take().text);
        try {
            parse_graph_line(inst_.presentation, words, kw.line);
        } catch (const Error &e) {
            fail(kw, e.what(), e.kind());
        }
        have_group_ = inline_group_ = true;
    }

    void parse_vars()
    {
        auto &kw = take();
        if (!have_group_)
            fail(kw, "vars before group");
        while (peek().kind == Tok::Ident) {
            auto &v = take();
            if (inst_.presentation.find(v.text))
                fail(v, "variable '" + v.text + "' clashes with a vertex name");
            if (std::find(inst_.variables.begin(), inst_.variables.end(), v.text) != inst_.variables.end())
                fail(v, "variable '" + v.text + "' declared twice");
            inst_.variables.push_back(v.text);
        }
        end_of_line();
    }

    void parse_disjunct()
    {
        auto &kw = take();
        if (!have_group_)
            fail(kw, "disjunct before group");
        expect_sym('{');
        Disjunct d;
        for (;;) {
            while (peek().kind == Tok::Newline || is_sym(peek(), ';'))
                take();
            if (is_sym(peek(), '}')) {
                take();
                break;
            }
            if (peek().kind == Tok::End)
                fail(peek(), "unterminated disjunct");
            parse_item(d);
            if (!(peek().kind == Tok::Newline || is_sym(peek(), ';') || is_sym(peek(), '}')))
                fail(peek(), "unexpected '" + peek().text + "'");
        }
        if (d.equations.empty() && d.constraints.empty())
            fail(kw, "empty disjunct");
        inst_.disjuncts.push_back(std::move(d));
    }

    void parse_item(Disjunct &d)
    {
        auto &kw = peek();
        if (kw.kind != Tok::Ident)
            fail(kw, "expected eq, ab:, expsum:, len: or coset:");
        if (kw.text == "eq") {
            take();
            auto lhs = parse_term();
            expect_sym('=');
            auto rhs = parse_term();
            d.equations.push_back(term_concat(inst_.presentation, {lhs, term_inverse(inst_.presentation, rhs)}));
            return;
        }
        take();
        expect_sym(':');
        if (kw.text == "ab") {
            AbEq a;
            a.lhs = parse_term();
            expect_sym('=');
            a.rhs = parse_term();
            d.constraints.push_back(std::move(a));
        } else if (kw.text == "expsum") {
            d.constraints.push_back(parse_expsum());
        } else if (kw.text == "len") {
            d.constraints.push_back(parse_len());
        } else if (kw.text == "coset") {
            auto &v = take();
            require_var(v);
            auto &in = take();
            if (in.kind != Tok::Ident || in.text != "in")
                fail(in, "expected 'in'");
            GroupTerm rep;
            while (!is_sym(peek(), '*')) {
                if (peek().kind == Tok::Int && peek().text == "1" && is_sym(peek(1), '*')) {
                    take();
                    continue;
                }
                parse_factor(rep, false);
            }
            take();
            auto &g = take();
            if (g.kind != Tok::Ident || g.text != "G")
                fail(g, "expected G'");
            expect_sym('\'');
            auto t = canonical_term(inst_.presentation, rep);
            for (auto &a : t)
                if (a.is_variable())
                    fail(v, "coset representative must be constant");
            d.constraints.push_back(Coset{v.text, t.empty() ? NormalWord{} : t[0].constant});
        } else {
            fail(kw, "unknown item '" + kw.text + "'");
        }
    }

    void require_var(const Token &t)
    {
        if (t.kind != Tok::Ident)
            fail(t, "expected a variable");
        if (std::find(inst_.variables.begin(), inst_.variables.end(), t.text) == inst_.variables.end())
            fail(t, "unknown variable '" + t.text + "'", ErrorKind::UnknownVariable);
    }

    std::int64_t parse_int_token(const Token &t)
    {
        if (t.kind != Tok::Int)
            fail(t, "expected an integer");
        try {
            return std::stoll(t.text);
        } catch (const std::exception &) {
            fail(t, "integer out of range");
        }
    }

    std::int64_t parse_signed_int()
    {
        bool neg = false;
        if (is_sym(peek(), '-') || is_sym(peek(), '+'))
            neg = take().text == "-";
        auto v = parse_int_token(take());
        return neg ? -v : v;
    }

    GroupTerm parse_term()
    {
        GroupTerm t;
        if (peek().kind == Tok::Int && peek().text == "1" && !is_sym(peek(1), '*')) {
            take();
            return t;
        }
        parse_factor(t, true);
        while (peek().kind == Tok::Ident || is_sym(peek(), '(') || peek().kind == Tok::Int)
            parse_factor(t, true);
        return canonical_term(inst_.presentation, t);
    }

    /// [INT '*'] primary ['^' [-] INT]
    void parse_factor(GroupTerm &out, bool allow_vars)
    {
        std::int64_t mult = 1;
        if (peek().kind == Tok::Int && is_sym(peek(1), '*')) {
            mult = parse_int_token(take());
            take();
        }
        GroupTerm prim;
        auto &t = peek();
        if (is_sym(t, '(')) {
            take();
            while (!is_sym(peek(), ')')) {
                if (peek().kind == Tok::End || peek().kind == Tok::Newline)
                    fail(peek(), "unclosed '('");
                parse_factor(prim, allow_vars);
            }
            take();
        } else if (t.kind == Tok::Int && t.text == "1") {
            take();
        } else if (t.kind == Tok::Ident) {
            take();
            if (std::find(inst_.variables.begin(), inst_.variables.end(), t.text) != inst_.variables.end()) {
                if (!allow_vars)
                    fail(t, "variable not allowed here");
                prim.push_back(var_atom(t.text));
            } else if (auto v = inst_.presentation.find(t.text)) {
                prim.push_back(const_atom(generator(inst_.presentation, *v)));
            } else {
                fail(t, "unknown identifier '" + t.text + "'", ErrorKind::UnknownVariable);
            }
        } else {
            fail(t, "expected a variable, vertex or '('");
        }
        std::int64_t e = 1;
        if (is_sym(peek(), '^')) {
            take();
            e = parse_signed_int();
        }
        e *= mult;
        auto &p = inst_.presentation;
        GroupTerm base = e < 0 ? term_inverse(p, prim) : prim;
        for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i)
            out.insert(out.end(), base.begin(), base.end());
    }

    /// [sign] [INT ['*']] '|' X '|' ['_' vertex]  or  [sign] INT
    template <class Fn>
    void parse_lin_terms(Fn &&on_term, std::int64_t &constant, std::int64_t side)
    {
        bool first = true;
        for (;;) {
            auto &t = peek();
            bool sign = is_sym(t, '+') || is_sym(t, '-');
            if (!first && !sign)
                break;
            std::int64_t s = side;
            if (sign)
                s = take().text == "-" ? -side : side;
            first = false;
            std::int64_t coef = 1;
            bool have_int = false;
            if (peek().kind == Tok::Int) {
                coef = parse_int_token(take());
                have_int = true;
                if (is_sym(peek(), '*'))
                    take();
            }
            if (!is_sym(peek(), '|')) {
                if (!have_int)
                    fail(peek(), "expected |X| or an integer");
                constant -= s * coef;
                continue;
            }
            take();
            auto &v = take();
            require_var(v);
            auto &close = take();
            if (!is_sym(close, '|'))
                fail(close, "expected '|'");
            std::optional<Vertex> vertex;
            if (peek().kind == Tok::Ident && peek().glued && peek().text.size() > 1 && peek().text[0] == '_') {
                auto &vt = take();
                auto name = vt.text.substr(1);
                auto idx = inst_.presentation.find(name);
                if (!idx)
                    fail(vt, "unknown vertex '" + name + "'", ErrorKind::UnknownVertex);
                vertex = *idx;
            }
            on_term(s * coef, v.text, vertex, v);
        }
    }

    ExpSumEq parse_expsum()
    {
        ExpSumEq e;
        std::int64_t constant = 0;
        auto add = [&](std::int64_t c, const std::string &var, std::optional<Vertex> v, const Token &t) {
            if (!v)
                fail(t, "expsum needs |X|_v");
            e.terms.push_back({c, var, *v});
        };
        parse_lin_terms(add, constant, 1);
        expect_sym('=');
        parse_lin_terms(add, constant, -1);
        e.constant = constant;
        return e;
    }

    LengthEq parse_len()
    {
        LengthEq e;
        std::int64_t constant = 0;
        auto add = [&](std::int64_t c, const std::string &var, std::optional<Vertex> v, const Token &t) {
            if (v)
                fail(t, "len takes |X| without a vertex");
            e.terms.push_back({c, var});
        };
        parse_lin_terms(add, constant, 1);
        expect_sym('=');
        parse_lin_terms(add, constant, -1);
        e.constant = constant;
        return e;
    }
};

} // namespace detail

/// `base` resolves relative `group` paths.
inline Instance parse_instance(const std::string &text, const std::filesystem::path &base = ".")
{
    return detail::InstanceParser(text, base).parse();
}

inline Instance read_instance(const std::string &path)
{
    return parse_instance(detail::read_file(path), std::filesystem::path(path).parent_path());
}

/// Parses a term over the instance's presentation and variables.
inline GroupTerm parse_term(const Instance &ctx, const std::string &text)
{
    return detail::InstanceParser(text, ctx).parse_term_only();
}

inline std::string to_string(const Presentation &p, const GroupTerm &t)
{
    if (t.empty())
        return "1";
    std::string out;
    for (auto &a : t) {
        if (!out.empty())
            out += ' ';
        if (a.is_variable()) {
            out += a.var;
            if (a.power != 1)
                out += '^' + std::to_string(a.power);
        } else {
            out += to_string(p, a.constant);
        }
    }
    return out;
}

namespace detail {

inline std::string signed_coef(std::int64_t c, bool first)
{
    if (first)
        return std::to_string(c) + "*";
    return (c < 0 ? "-" + std::to_string(-c) : "+" + std::to_string(c)) + "*";
}

} // namespace detail

inline std::string to_string(const Presentation &p, const Constraint &c)
{
    if (auto *a = std::get_if<AbEq>(&c))
        return "ab: " + to_string(p, a->lhs) + " = " + to_string(p, a->rhs);
    if (auto *e = std::get_if<ExpSumEq>(&c)) {
        std::string out = "expsum:";
        bool first = true;
        for (auto &t : e->terms) {
            out += ' ' + detail::signed_coef(t.coefficient, first) + '|' + t.var + "|_" + p.name(t.vertex);
            first = false;
        }
        if (first)
            out += " 0";
        return out + " = " + std::to_string(e->constant);
    }
    if (auto *l = std::get_if<LengthEq>(&c)) {
        std::string out = "len:";
        bool first = true;
        for (auto &t : l->terms) {
            out += ' ' + detail::signed_coef(t.coefficient, first) + '|' + t.var + '|';
            first = false;
        }
        if (first)
            out += " 0";
        return out + " = " + std::to_string(l->constant);
    }
    auto &k = std::get<Coset>(c);
    return "coset: " + k.var + " in " + to_string(p, k.representative) + "*G'";
}

inline std::string to_text(const Instance &inst)
{
    auto &p = inst.presentation;
    std::string out = to_text(p);
    out += "vars";
    for (auto &v : inst.variables)
        out += ' ' + v;
    out += '\n';
    for (auto &d : inst.disjuncts) {
        out += "disjunct {\n";
        for (auto &e : d.equations)
            out += "  eq " + to_string(p, e) + " = 1\n";
        for (auto &c : d.constraints)
            out += "  " + to_string(p, c) + '\n';
        out += "}\n";
    }
    return out;
}

/// One `X = word` line per variable, in declaration order.
inline std::string to_text(const Instance &inst, const Assignment &asg)
{
    std::string out;
    for (auto &v : inst.variables)
        out += v + " = " + to_string(inst.presentation, detail::value_of(asg, v)) + "\n";
    return out;
}

inline Assignment parse_assignment(const Instance &inst, const std::string &text)
{
    Assignment asg;
    std::size_t line_no = 0, pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = detail::strip_comment(text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos));
        pos = nl == std::string::npos ? text.size() : nl + 1;
        ++line_no;
        auto eq = line.find('=');
        if (detail::split_ws(line).empty())
            continue;
        if (eq == std::string::npos)
            throw Error(ErrorKind::ParseError, "assignment line " + std::to_string(line_no) + ": expected 'X = word'");
        auto name = detail::split_ws(line.substr(0, eq));
        if (name.size() != 1)
            throw Error(ErrorKind::ParseError, "assignment line " + std::to_string(line_no) + ": expected one variable");
        if (std::find(inst.variables.begin(), inst.variables.end(), name[0]) == inst.variables.end())
            throw Error(ErrorKind::UnknownVariable, "assignment line " + std::to_string(line_no) + ": unknown variable '" + name[0] + "'");
        asg[name[0]] = parse_word(inst.presentation, line.substr(eq + 1));
    }
    return asg;
}

} // namespace grapheq
