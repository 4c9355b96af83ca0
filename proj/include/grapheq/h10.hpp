#pragma once

// Integer polynomial equations and their decomposition into +/* atoms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "linear_system.hpp"
#include "presentation.hpp"

namespace grapheq {

struct Monomial {
    std::int64_t coefficient = 0;
    std::vector<std::pair<std::string, unsigned>> powers;
    bool operator==(const Monomial &) const = default;
};

/// sum of monomials = 0
struct Polynomial {
    std::vector<Monomial> monomials;
    bool operator==(const Polynomial &) const = default;
};

struct H10Instance {
    std::vector<Polynomial> equations;

    /// Variables in order of first appearance.
    std::vector<std::string> variables() const
    {
        std::vector<std::string> out;
        for (auto &e : equations)
            for (auto &m : e.monomials)
                for (auto &[v, k] : m.powers)
                    if (std::find(out.begin(), out.end(), v) == out.end())
                        out.push_back(v);
        return out;
    }
    bool operator==(const H10Instance &) const = default;
};

using IntAssignment = std::map<std::string, BigInt>;

inline BigInt evaluate(const Polynomial &poly, const IntAssignment &x)
{
    BigInt sum = 0;
    for (auto &m : poly.monomials) {
        BigInt t = m.coefficient;
        for (auto &[v, k] : m.powers) {
            auto it = x.find(v);
            if (it == x.end())
                throw Error(ErrorKind::IncompleteAssignment, "no value for integer variable '" + v + "'");
            for (unsigned i = 0; i < k; ++i)
                t *= it->second;
        }
        sum += t;
    }
    return sum;
}

inline bool is_solution(const H10Instance &h, const IntAssignment &x)
{
    for (auto &e : h.equations)
        if (evaluate(e, x) != 0)
            return false;
    return true;
}

namespace detail {

inline Monomial parse_monomial(const std::string &tok, bool negate, std::size_t line)
{
    auto bad = [&](const std::string &why) {
        return Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + why + " in '" + tok + "'");
    };
    Monomial m;
    std::size_t i = 0;
    bool neg = negate;
    while (i < tok.size() && (tok[i] == '+' || tok[i] == '-')) {
        if (tok[i] == '-')
            neg = !neg;
        ++i;
    }
    if (i == tok.size())
        throw bad("empty monomial");
    std::int64_t coef = 1;
    std::vector<std::string> factors;
    std::size_t start = i;
    for (std::size_t j = i; j <= tok.size(); ++j) {
        if (j == tok.size() || tok[j] == '*') {
            factors.push_back(tok.substr(start, j - start));
            start = j + 1;
        }
    }
    bool first = true;
    for (auto &f : factors) {
        if (f.empty())
            throw bad("empty factor");
        if (std::isdigit(static_cast<unsigned char>(f[0]))) {
            if (!first)
                throw bad("coefficient must come first");
            if (!std::all_of(f.begin(), f.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw bad("malformed coefficient");
            try {
                coef = std::stoll(f);
            } catch (const std::out_of_range &) {
                throw Error(ErrorKind::Overflow, "line " + std::to_string(line) + ": coefficient out of range");
            }
        } else {
            auto caret = f.find('^');
            auto name = f.substr(0, caret);
            if (!is_identifier(name))
                throw bad("bad variable name");
            unsigned k = 1;
            if (caret != std::string::npos) {
                auto e = f.substr(caret + 1);
                if (e.empty() || !std::all_of(e.begin(), e.end(), [](char c) {
                        return std::isdigit(static_cast<unsigned char>(c));
                    }))
                    throw bad("malformed exponent");
                k = static_cast<unsigned>(std::stoul(e));
                if (k == 0 || k > 64)
                    throw bad("exponent out of range");
            }
            m.powers.push_back({name, k});
        }
        first = false;
    }
    m.coefficient = neg ? -coef : coef;
    return m;
}

} // namespace detail

/// One equation per line: signed monomials `c*x*y^2` on either side of '='.
inline H10Instance parse_h10(const std::string &text)
{
    H10Instance h;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto line = detail::strip_comment(raw);
        auto toks = detail::split_ws(line);
        if (toks.empty())
            continue;
        Polynomial poly;
        bool rhs = false, seen_eq = false, pending_neg = false, pending = false;
        std::size_t lhs_count = 0, rhs_count = 0;
        for (auto &t : toks) {
            if (t == "=") {
                if (seen_eq)
                    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": more than one '='");
                if (pending)
                    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": dangling sign");
                seen_eq = rhs = true;
                continue;
            }
            if (t == "+" || t == "-") {
                pending_neg = pending_neg != (t == "-");
                pending = true;
                continue;
            }
            auto m = detail::parse_monomial(t, pending_neg != rhs, line_no);
            pending = pending_neg = false;
            (rhs ? rhs_count : lhs_count)++;
            if (m.coefficient != 0)
                poly.monomials.push_back(std::move(m));
        }
        if (!seen_eq || lhs_count == 0 || rhs_count == 0 || pending)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected '<monomials> = <monomials>'");
        h.equations.push_back(std::move(poly));
    }
    if (h.equations.empty())
        throw Error(ErrorKind::InvalidInstance, "no equations");
    return h;
}

inline H10Instance read_h10(const std::string &path) { return parse_h10(detail::read_file(path)); }

inline std::string to_string(const Polynomial &poly)
{
    std::string out;
    for (auto &m : poly.monomials) {
        if (!out.empty())
            out += ' ';
        out += std::to_string(m.coefficient);
        for (auto &[v, k] : m.powers)
            out += "*" + v + (k == 1 ? "" : "^" + std::to_string(k));
    }
    if (out.empty())
        out = "0";
    return out + " = 0";
}

inline std::string to_text(const H10Instance &h)
{
    std::string out;
    for (auto &e : h.equations)
        out += to_string(e) + "\n";
    return out;
}

enum class AtomOp { Const, Add, Mul };

/// target = value | target = lhs (+) rhs | target = lhs (*) rhs
struct H10Atom {
    AtomOp op = AtomOp::Const;
    std::string target, lhs, rhs;
    std::int64_t value = 0;
    bool operator==(const H10Atom &) const = default;
};

struct AtomizedH10 {
    std::vector<std::string> source_variables;
    std::vector<std::string> variables;
    std::vector<H10Atom> atoms;
};

inline std::string to_string(const H10Atom &a)
{
    switch (a.op) {
    case AtomOp::Const: return a.target + " = " + std::to_string(a.value);
    case AtomOp::Add: return a.target + " = " + a.lhs + " + " + a.rhs;
    case AtomOp::Mul: return a.target + " = " + a.lhs + " * " + a.rhs;
    }
    return {};
}

namespace detail {

class Atomizer {
public:
    explicit Atomizer(const H10Instance &h)
    {
        out_.source_variables = h.variables();
        out_.variables = out_.source_variables;
        taken_.insert(out_.variables.begin(), out_.variables.end());
    }

    AtomizedH10 run(const H10Instance &h)
    {
        for (auto &e : h.equations) {
            std::vector<Monomial> pos, neg;
            for (auto &m : e.monomials) {
                if (m.coefficient > 0) {
                    pos.push_back(m);
                } else {
                    auto n = m;
                    n.coefficient = -m.coefficient;
                    neg.push_back(n);
                }
            }
            auto l = side(pos);
            auto r = side(neg);
            equate(l, r);
        }
        return out_;
    }

private:
    struct Operand {
        std::optional<std::string> var;
        std::int64_t value = 0;
    };

    AtomizedH10 out_;
    std::set<std::string> taken_;
    std::set<std::string> fresh_;
    std::map<std::string, std::size_t> defined_by_;
    std::size_t counter_ = 0;

    std::string fresh()
    {
        std::string v;
        do
            v = "_t" + std::to_string(counter_++);
        while (taken_.count(v));
        taken_.insert(v);
        fresh_.insert(v);
        out_.variables.push_back(v);
        return v;
    }

    std::string emit(AtomOp op, const std::string &a, const std::string &b)
    {
        auto t = fresh();
        defined_by_[t] = out_.atoms.size();
        out_.atoms.push_back({op, t, a, b, 0});
        return t;
    }

    std::string materialize(const Operand &o)
    {
        if (o.var)
            return *o.var;
        auto t = fresh();
        defined_by_[t] = out_.atoms.size();
        out_.atoms.push_back({AtomOp::Const, t, {}, {}, o.value});
        return t;
    }

    Operand monomial(const Monomial &m)
    {
        if (m.powers.empty())
            return {std::nullopt, m.coefficient};
        std::vector<std::string> factors;
        if (m.coefficient != 1)
            factors.push_back(materialize({std::nullopt, m.coefficient}));
        for (auto &[v, k] : m.powers)
            for (unsigned i = 0; i < k; ++i)
                factors.push_back(v);
        if (factors.size() == 1)
            return {factors[0], 0};
        auto acc = factors[0];
        for (std::size_t i = 1; i < factors.size(); ++i)
            acc = emit(AtomOp::Mul, acc, factors[i]);
        return {acc, 0};
    }

    Operand side(const std::vector<Monomial> &ms)
    {
        std::vector<std::string> vars;
        std::int64_t constant = 0;
        bool have_const = false;
        for (auto &m : ms) {
            auto o = monomial(m);
            if (o.var) {
                vars.push_back(*o.var);
            } else {
                if (__builtin_add_overflow(constant, o.value, &constant))
                    throw Error(ErrorKind::Overflow, "constant term overflow");
                have_const = true;
            }
        }
        if (vars.empty())
            return {std::nullopt, constant};
        if (have_const && constant != 0)
            vars.push_back(materialize({std::nullopt, constant}));
        if (vars.size() == 1)
            return {vars[0], 0};
        auto acc = vars[0];
        for (std::size_t i = 1; i < vars.size(); ++i)
            acc = emit(AtomOp::Add, acc, vars[i]);
        return {acc, 0};
    }

    void retarget(const std::string &from, const std::string &to)
    {
        auto idx = defined_by_.at(from);
        out_.atoms[idx].target = to;
        defined_by_.erase(from);
        fresh_.erase(from);
        out_.variables.erase(std::find(out_.variables.begin(), out_.variables.end(), from));
    }

    void equate(const Operand &l, const Operand &r)
    {
        if (!l.var && !r.var) {
            auto t = materialize(l);
            out_.atoms.push_back({AtomOp::Const, t, {}, {}, r.value});
            return;
        }
        if (l.var && !r.var) {
            out_.atoms.push_back({AtomOp::Const, *l.var, {}, {}, r.value});
            return;
        }
        if (!l.var && r.var) {
            out_.atoms.push_back({AtomOp::Const, *r.var, {}, {}, l.value});
            return;
        }
        if (*l.var == *r.var)
            return;
        if (fresh_.count(*l.var) && defined_by_.count(*l.var)) {
            retarget(*l.var, *r.var);
            return;
        }
        if (fresh_.count(*r.var) && defined_by_.count(*r.var)) {
            retarget(*r.var, *l.var);
            return;
        }
        auto zero = materialize({std::nullopt, 0});
        out_.atoms.push_back({AtomOp::Add, *l.var, *r.var, zero, 0});
    }
};

} // namespace detail

/// Decomposes every equation into Const/Add/Mul atoms over source and fresh `_t<n>` variables.
inline AtomizedH10 atomize(const H10Instance &h)
{
    return detail::Atomizer(h).run(h);
}

/// Values for all atom variables from values of the source variables, or nullopt if an atom fails.
inline std::optional<IntAssignment> extend_atoms(const AtomizedH10 &a, const IntAssignment &source)
{
    IntAssignment x;
    for (auto &v : a.source_variables) {
        auto it = source.find(v);
        if (it == source.end())
            throw Error(ErrorKind::IncompleteAssignment, "no value for integer variable '" + v + "'");
        x[v] = it->second;
    }
    for (auto &at : a.atoms) {
        BigInt val;
        switch (at.op) {
        case AtomOp::Const: val = at.value; break;
        case AtomOp::Add: val = x.at(at.lhs) + x.at(at.rhs); break;
        case AtomOp::Mul: val = x.at(at.lhs) * x.at(at.rhs); break;
        }
        auto it = x.find(at.target);
        if (it == x.end())
            x[at.target] = val;
        else if (it->second != val)
            return std::nullopt;
    }
    return x;
}

inline bool atom_holds(const H10Atom &at, const IntAssignment &x)
{
    switch (at.op) {
    case AtomOp::Const: return x.at(at.target) == at.value;
    case AtomOp::Add: return x.at(at.target) == x.at(at.lhs) + x.at(at.rhs);
    case AtomOp::Mul: return x.at(at.target) == x.at(at.lhs) * x.at(at.rhs);
    }
    return false;
}

} // namespace grapheq
