#pragma once

// Positive-existential interpretations and rewriting of flattened instances through them.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "flatten.hpp"
#include "instance.hpp"

namespace grapheq {

/// A disjunction of systems over the source group with named parameters and existential locals.
struct Formula {
    std::vector<std::string> parameters;
    std::vector<std::string> locals;
    std::vector<Disjunct> disjuncts;
};

struct Interpretation {
    Presentation source;
    Presentation target;
    Formula domain;         // (x)
    Formula multiplication; // (x, y, z): z = x y
    Formula equality;       // (x, y)
    std::map<std::string, Formula> relations;
    std::function<NormalWord(const NormalWord &)> constant;
};

namespace detail {

inline std::string renamed(const std::map<std::string, std::string> &m, const std::string &v)
{
    auto it = m.find(v);
    if (it == m.end())
        throw Error(ErrorKind::InvalidInstance, "formula uses undeclared variable '" + v + "'");
    return it->second;
}

inline GroupTerm rename_term(const GroupTerm &t, const std::map<std::string, std::string> &m)
{
    GroupTerm out = t;
    for (auto &a : out)
        if (a.is_variable())
            a.var = renamed(m, a.var);
    return out;
}

inline Constraint rename_constraint(const Constraint &c, const std::map<std::string, std::string> &m)
{
    if (auto *a = std::get_if<AbEq>(&c))
        return AbEq{rename_term(a->lhs, m), rename_term(a->rhs, m)};
    if (auto *e = std::get_if<ExpSumEq>(&c)) {
        auto r = *e;
        for (auto &t : r.terms)
            t.var = renamed(m, t.var);
        return r;
    }
    if (auto *l = std::get_if<LengthEq>(&c)) {
        auto r = *l;
        for (auto &t : r.terms)
            t.var = renamed(m, t.var);
        return r;
    }
    auto k = std::get<Coset>(c);
    k.var = renamed(m, k.var);
    return k;
}

class Rewriter {
public:
    Rewriter(const Interpretation &i, const Instance &target) : i_(i), in_(target), names_(taken(i, target))
    {
        out_.presentation = i.source;
        out_.variables = target.variables;
    }

    Instance run()
    {
        for (auto &d : in_.disjuncts) {
            std::vector<Disjunct> acc{Disjunct{}};
            for (auto &v : in_.variables)
                conjoin(acc, instantiate(i_.domain, {v}));
            for (auto &eq : d.equations)
                conjoin(acc, equation(eq));
            for (auto &c : d.constraints)
                conjoin(acc, relation(c));
            for (auto &x : acc)
                out_.disjuncts.push_back(std::move(x));
        }
        validate(out_);
        return out_;
    }

private:
    const Interpretation &i_;
    const Instance &in_;
    Instance out_;
    NameSupply names_;

    static std::set<std::string> taken(const Interpretation &i, const Instance &t)
    {
        std::set<std::string> s(t.variables.begin(), t.variables.end());
        for (auto &n : i.source.names())
            s.insert(n);
        return s;
    }

    std::vector<Disjunct> instantiate(const Formula &f, const std::vector<std::string> &args)
    {
        if (args.size() != f.parameters.size())
            throw Error(ErrorKind::InvalidInstance, "formula arity mismatch");
        std::map<std::string, std::string> m;
        for (std::size_t k = 0; k < args.size(); ++k)
            m[f.parameters[k]] = args[k];
        for (auto &l : f.locals) {
            auto v = names_.next("_i");
            out_.variables.push_back(v);
            m[l] = v;
        }
        std::vector<Disjunct> out;
        for (auto &d : f.disjuncts) {
            Disjunct r;
            for (auto &e : d.equations)
                r.equations.push_back(rename_term(e, m));
            for (auto &c : d.constraints)
                r.constraints.push_back(rename_constraint(c, m));
            out.push_back(std::move(r));
        }
        return out;
    }

    static void conjoin(std::vector<Disjunct> &acc, const std::vector<Disjunct> &f)
    {
        std::vector<Disjunct> next;
        for (auto &a : acc)
            for (auto &b : f) {
                auto c = a;
                c.equations.insert(c.equations.end(), b.equations.begin(), b.equations.end());
                c.constraints.insert(c.constraints.end(), b.constraints.begin(), b.constraints.end());
                next.push_back(std::move(c));
            }
        acc = std::move(next);
    }

    std::vector<Disjunct> constant(const std::string &x, const NormalWord &h)
    {
        auto c = names_.next("_i");
        out_.variables.push_back(c);
        Disjunct d;
        d.equations.push_back(canonical_term(i_.source, {var_atom(c), const_atom(invert(i_.source, i_.constant(h)))}));
        std::vector<Disjunct> acc{d};
        conjoin(acc, instantiate(i_.equality, {x, c}));
        return acc;
    }

    std::vector<Disjunct> equation(const GroupTerm &t)
    {
        auto &tp = in_.presentation;
        auto unit = [](const TermAtom &a, std::int64_t pw) { return a.is_variable() && a.power == pw; };
        if (t.empty())
            return {Disjunct{}};
        if (t.size() == 3 && unit(t[0], 1) && unit(t[1], 1) && unit(t[2], -1))
            return instantiate(i_.multiplication, {t[0].var, t[1].var, t[2].var});
        if (t.size() == 2 && unit(t[0], 2) && unit(t[1], -1))
            return instantiate(i_.multiplication, {t[0].var, t[0].var, t[1].var});
        if (t.size() == 2 && unit(t[0], 1) && unit(t[1], -1))
            return instantiate(i_.equality, {t[0].var, t[1].var});
        if (t.size() == 1 && unit(t[0], 1))
            return constant(t[0].var, NormalWord{});
        if (t.size() == 2 && unit(t[0], 1) && !t[1].is_variable())
            return constant(t[0].var, invert(tp, t[1].constant));
        throw Error(ErrorKind::NotFlattened, "equation is not in short form");
    }

    std::vector<Disjunct> relation(const Constraint &c)
    {
        auto *ab = std::get_if<AbEq>(&c);
        if (!ab)
            throw Error(ErrorKind::InvalidInstance, "interpretation covers only ab relations");
        auto single = [](const GroupTerm &t) { return t.size() == 1 && t[0].is_variable() && t[0].power == 1; };
        if (!single(ab->lhs) || !single(ab->rhs))
            throw Error(ErrorKind::NotFlattened, "relation argument is not a variable");
        auto it = i_.relations.find("ab");
        if (it == i_.relations.end())
            throw Error(ErrorKind::InvalidInstance, "interpretation has no ab relation");
        return instantiate(it->second, {ab->lhs[0].var, ab->rhs[0].var});
    }
};

} // namespace detail

/// Source-group instance whose solutions correspond to the target instance's solutions.
inline Instance rewrite_under_interpretation(const Interpretation &i, const Instance &target)
{
    if (!(target.presentation == i.target))
        throw Error(ErrorKind::PresentationMismatch, "instance is not over the interpreted structure");
    if (!is_flattened(target))
        throw Error(ErrorKind::NotFlattened, "instance must be flattened first");
    return detail::Rewriter(i, target).run();
}

/// (Z, +) as the cyclic subgroup <s> of a free group; the target is Z on one vertex `t`.
inline Interpretation integers_in_free_group(const Presentation &free, Vertex s)
{
    if (free.edge_count() != 0 || !free.all_infinite())
        throw Error(ErrorKind::InvalidInstance, "source is not a free group");
    if (s >= free.size())
        throw Error(ErrorKind::UnknownVertex, "no such generator");
    Interpretation i;
    i.source = free;
    i.target.add_vertex("t", Presentation::infinite);
    auto g = generator(free, s);
    i.domain.parameters = {"x"};
    i.domain.disjuncts = {Disjunct{{commutator_term(free, {var_atom("x")}, {const_atom(g)})}, {}}};
    i.multiplication.parameters = {"x", "y", "z"};
    i.multiplication.disjuncts = {Disjunct{{{var_atom("x"), var_atom("y"), var_atom("z", -1)}}, {}}};
    i.equality.parameters = {"x", "y"};
    i.equality.disjuncts = {Disjunct{{{var_atom("x"), var_atom("y", -1)}}, {}}};
    i.relations["ab"] = i.equality;
    i.constant = [free, s](const NormalWord &h) {
        std::int64_t k = 0;
        for (auto &syl : h.syllables())
            k += syl.exponent;
        return generator(free, s, k);
    };
    return i;
}

} // namespace grapheq
