#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "abelian.hpp"
#include "error.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace grapheq {

/// A variable raised to `power`, or a constant word (power unused).
struct TermAtom {
    std::string var;
    std::int64_t power = 1;
    NormalWord constant;

    bool is_variable() const { return !var.empty(); }
    bool operator==(const TermAtom &) const = default;
};

using GroupTerm = std::vector<TermAtom>;

inline TermAtom var_atom(std::string name, std::int64_t power = 1) { return {std::move(name), power, {}}; }
inline TermAtom const_atom(NormalWord w) { return {{}, 1, std::move(w)}; }

/// ab(lhs) = ab(rhs)
struct AbEq {
    GroupTerm lhs, rhs;
    bool operator==(const AbEq &) const = default;
};

struct ExpSumTerm {
    std::int64_t coefficient = 1;
    std::string var;
    Vertex vertex = 0;
    bool operator==(const ExpSumTerm &) const = default;
};

/// sum c |X|_v = constant
struct ExpSumEq {
    std::vector<ExpSumTerm> terms;
    std::int64_t constant = 0;
    bool operator==(const ExpSumEq &) const = default;
};

struct LengthTerm {
    std::int64_t coefficient = 1;
    std::string var;
    bool operator==(const LengthTerm &) const = default;
};

/// sum c |X| = constant
struct LengthEq {
    std::vector<LengthTerm> terms;
    std::int64_t constant = 0;
    bool operator==(const LengthEq &) const = default;
};

/// X in representative * G'
struct Coset {
    std::string var;
    NormalWord representative;
    bool operator==(const Coset &) const = default;
};

using Constraint = std::variant<AbEq, ExpSumEq, LengthEq, Coset>;

struct Disjunct {
    std::vector<GroupTerm> equations; // each required to equal 1
    std::vector<Constraint> constraints;
    bool operator==(const Disjunct &) const = default;
};

struct Instance {
    Presentation presentation;
    std::vector<std::string> variables;
    std::vector<Disjunct> disjuncts;
    bool operator==(const Instance &) const = default;
};

using Assignment = std::map<std::string, NormalWord>;

/// Folds adjacent constants, merges adjacent powers of one variable, drops trivial atoms.
inline GroupTerm canonical_term(const Presentation &p, const GroupTerm &t)
{
    GroupTerm out;
    for (auto a : t) {
        if (a.is_variable()) {
            if (a.power == 0)
                continue;
            if (!out.empty() && out.back().var == a.var) {
                out.back().power = detail::add_exponents(out.back().power, a.power);
                if (out.back().power == 0)
                    out.pop_back();
                continue;
            }
            out.push_back(var_atom(a.var, a.power));
        } else {
            if (a.constant.is_identity())
                continue;
            if (!out.empty() && !out.back().is_variable()) {
                out.back().constant = multiply(p, out.back().constant, a.constant);
                if (out.back().constant.is_identity())
                    out.pop_back();
                continue;
            }
            out.push_back(const_atom(a.constant));
        }
    }
    return out;
}

inline GroupTerm term_inverse(const Presentation &p, const GroupTerm &t)
{
    GroupTerm out;
    for (auto it = t.rbegin(); it != t.rend(); ++it)
        out.push_back(it->is_variable() ? var_atom(it->var, -it->power) : const_atom(invert(p, it->constant)));
    return out;
}

inline GroupTerm term_concat(const Presentation &p, std::initializer_list<GroupTerm> parts)
{
    GroupTerm out;
    for (auto &t : parts)
        out.insert(out.end(), t.begin(), t.end());
    return canonical_term(p, out);
}

/// x y x^-1 y^-1 as a term.
inline GroupTerm commutator_term(const Presentation &p, const GroupTerm &x, const GroupTerm &y)
{
    return term_concat(p, {x, y, term_inverse(p, x), term_inverse(p, y)});
}

inline std::vector<std::string> term_variables(const GroupTerm &t)
{
    std::vector<std::string> out;
    for (auto &a : t)
        if (a.is_variable() && std::find(out.begin(), out.end(), a.var) == out.end())
            out.push_back(a.var);
    return out;
}

inline std::vector<std::string> constraint_variables(const Constraint &c)
{
    std::vector<std::string> out;
    auto add = [&](const std::string &v) {
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    };
    if (auto *a = std::get_if<AbEq>(&c)) {
        for (auto &v : term_variables(a->lhs))
            add(v);
        for (auto &v : term_variables(a->rhs))
            add(v);
    } else if (auto *e = std::get_if<ExpSumEq>(&c)) {
        for (auto &t : e->terms)
            add(t.var);
    } else if (auto *l = std::get_if<LengthEq>(&c)) {
        for (auto &t : l->terms)
            add(t.var);
    } else {
        add(std::get<Coset>(c).var);
    }
    return out;
}

inline NormalWord evaluate_term(const Presentation &p, const GroupTerm &t, const Assignment &asg)
{
    RawWord raw;
    for (auto &a : t) {
        if (!a.is_variable()) {
            raw.insert(raw.end(), a.constant.syllables().begin(), a.constant.syllables().end());
            continue;
        }
        auto it = asg.find(a.var);
        if (it == asg.end())
            throw Error(ErrorKind::IncompleteAssignment, "no value for variable " + a.var);
        auto &val = it->second.syllables();
        auto reps = a.power < 0 ? -a.power : a.power;
        for (std::int64_t r = 0; r < reps; ++r) {
            if (a.power > 0)
                raw.insert(raw.end(), val.begin(), val.end());
            else
                for (auto s = val.rbegin(); s != val.rend(); ++s)
                    raw.push_back({s->vertex, -s->exponent});
        }
    }
    return normalize(p, raw);
}

namespace detail {

inline const NormalWord &value_of(const Assignment &asg, const std::string &v)
{
    auto it = asg.find(v);
    if (it == asg.end())
        throw Error(ErrorKind::IncompleteAssignment, "no value for variable " + v);
    return it->second;
}

} // namespace detail

inline bool equation_holds(const Presentation &p, const GroupTerm &eq, const Assignment &asg)
{
    return evaluate_term(p, eq, asg).is_identity();
}

inline bool constraint_holds(const Presentation &p, const Constraint &c, const Assignment &asg)
{
    if (auto *a = std::get_if<AbEq>(&c))
        return abelianize(p, evaluate_term(p, a->lhs, asg)) == abelianize(p, evaluate_term(p, a->rhs, asg));
    if (auto *e = std::get_if<ExpSumEq>(&c)) {
        std::int64_t sum = 0;
        for (auto &t : e->terms)
            sum += t.coefficient * exponent_sum(p, detail::value_of(asg, t.var), t.vertex);
        return sum == e->constant;
    }
    if (auto *l = std::get_if<LengthEq>(&c)) {
        std::int64_t sum = 0;
        for (auto &t : l->terms)
            sum += t.coefficient * geodesic_length(p, detail::value_of(asg, t.var));
        return sum == l->constant;
    }
    auto &k = std::get<Coset>(c);
    return abelianize(p, detail::value_of(asg, k.var)) == abelianize(p, k.representative);
}

struct DisjunctReport {
    std::vector<bool> equations;
    std::vector<bool> constraints;
    bool satisfied = false;
};

struct EvalReport {
    bool satisfied = false;
    std::optional<std::size_t> first_satisfied;
    std::vector<DisjunctReport> disjuncts;
};

inline EvalReport evaluate(const Instance &inst, const Assignment &asg)
{
    auto &p = inst.presentation;
    for (auto &v : inst.variables) {
        auto it = asg.find(v);
        if (it == asg.end())
            throw Error(ErrorKind::IncompleteAssignment, "no value for variable " + v);
        check_word(p, it->second);
    }
    EvalReport rep;
    for (std::size_t i = 0; i < inst.disjuncts.size(); ++i) {
        auto &d = inst.disjuncts[i];
        DisjunctReport dr;
        dr.satisfied = true;
        for (auto &e : d.equations) {
            dr.equations.push_back(equation_holds(p, e, asg));
            dr.satisfied = dr.satisfied && dr.equations.back();
        }
        for (auto &c : d.constraints) {
            dr.constraints.push_back(constraint_holds(p, c, asg));
            dr.satisfied = dr.satisfied && dr.constraints.back();
        }
        if (dr.satisfied && !rep.first_satisfied)
            rep.first_satisfied = i;
        rep.disjuncts.push_back(std::move(dr));
    }
    rep.satisfied = rep.first_satisfied.has_value();
    return rep;
}

/// Checks the well-formedness invariants; throws InvalidInstance or UnknownVariable.
inline void validate(const Instance &inst)
{
    auto &p = inst.presentation;
    if (inst.disjuncts.empty())
        throw Error(ErrorKind::InvalidInstance, "instance has no disjunct");
    std::set<std::string> declared;
    for (auto &v : inst.variables) {
        if (!detail::is_identifier(v))
            throw Error(ErrorKind::InvalidInstance, "bad variable name '" + v + "'");
        if (p.find(v))
            throw Error(ErrorKind::InvalidInstance, "variable '" + v + "' clashes with a vertex name");
        if (!declared.insert(v).second)
            throw Error(ErrorKind::InvalidInstance, "variable '" + v + "' declared twice");
    }
    auto need = [&](const std::string &v) {
        if (!declared.count(v))
            throw Error(ErrorKind::UnknownVariable, "undeclared variable '" + v + "'");
    };
    auto check_term = [&](const GroupTerm &t) {
        for (auto &a : t) {
            if (a.is_variable())
                need(a.var);
            else
                check_word(p, a.constant);
        }
    };
    for (auto &d : inst.disjuncts) {
        for (auto &e : d.equations)
            check_term(e);
        for (auto &c : d.constraints) {
            for (auto &v : constraint_variables(c))
                need(v);
            if (auto *a = std::get_if<AbEq>(&c)) {
                check_term(a->lhs);
                check_term(a->rhs);
            } else if (auto *e = std::get_if<ExpSumEq>(&c)) {
                for (auto &t : e->terms)
                    require_abelian_primitive(p, t.vertex);
            } else if (auto *k = std::get_if<Coset>(&c)) {
                if (!p.all_finite())
                    throw Error(ErrorKind::InvalidInstance, "coset constraint needs a finite abelianisation");
                check_word(p, k->representative);
            }
        }
    }
}

/// Fresh names `<prefix><n>` avoiding every existing variable and vertex.
class NameSupply {
public:
    explicit NameSupply(const Instance &inst)
    {
        for (auto &v : inst.variables)
            used_.insert(v);
        for (auto &n : inst.presentation.names())
            used_.insert(n);
    }

    explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

    std::string next(const std::string &prefix)
    {
        for (;;) {
            auto name = prefix + std::to_string(counters_[prefix]++);
            if (used_.insert(name).second)
                return name;
        }
    }

    void reserve(const std::string &name) { used_.insert(name); }

private:
    std::set<std::string> used_;
    std::map<std::string, std::size_t> counters_;
};

} // namespace grapheq
