#pragma once

// Exhaustive solution enumeration without the search engine's pruning,
// plus projection of transformed instances back onto source variables.

#include <functional>
#include <set>
#include <vector>

#include <grapheq/grapheq.hpp>

namespace oracle {

using Tuple = std::vector<grapheq::NormalWord>;

/// Every assignment of `vars` from the ball, passed to fn.
inline void for_each_tuple(const std::vector<grapheq::NormalWord> &ball, std::size_t n,
                           const std::function<void(const Tuple &)> &fn)
{
    std::vector<std::size_t> idx(n, 0);
    Tuple t(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i)
            t[i] = ball[idx[i]];
        fn(t);
        std::size_t k = 0;
        while (k < n && ++idx[k] == ball.size())
            idx[k++] = 0;
        if (k == n)
            return;
    }
}

/// Solutions of `inst` with every variable in the ball, by plain evaluation.
inline std::set<Tuple> naive_solutions(const grapheq::Instance &inst, std::size_t bound)
{
    auto ball = grapheq::enumerate_ball(inst.presentation, bound);
    std::set<Tuple> out;
    for_each_tuple(ball, inst.variables.size(), [&](const Tuple &t) {
        grapheq::Assignment a;
        for (std::size_t i = 0; i < t.size(); ++i)
            a[inst.variables[i]] = t[i];
        if (grapheq::evaluate(inst, a).satisfied)
            out.insert(t);
    });
    return out;
}

/// Fills in variables forced by equations with a single unknown occurrence of power +-1.
inline bool extend_disjunct(const grapheq::Presentation &p, const grapheq::Disjunct &d, grapheq::Assignment &a)
{
    using namespace grapheq;
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto &eq : d.equations) {
            std::vector<std::size_t> unknown;
            for (std::size_t i = 0; i < eq.size(); ++i)
                if (eq[i].is_variable() && !a.count(eq[i].var))
                    unknown.push_back(i);
            if (unknown.size() != 1)
                continue;
            auto &at = eq[unknown[0]];
            if (at.power != 1 && at.power != -1)
                continue;
            GroupTerm pre(eq.begin(), eq.begin() + static_cast<std::ptrdiff_t>(unknown[0]));
            GroupTerm post(eq.begin() + static_cast<std::ptrdiff_t>(unknown[0]) + 1, eq.end());
            auto x = invert(p, multiply(p, evaluate_term(p, post, a), evaluate_term(p, pre, a)));
            a[at.var] = at.power > 0 ? x : invert(p, x);
            progress = true;
        }
    }
    for (auto &eq : d.equations)
        for (auto &v : term_variables(eq))
            if (!a.count(v))
                return false;
    for (auto &c : d.constraints)
        for (auto &v : constraint_variables(c))
            if (!a.count(v))
                return false;
    for (auto &eq : d.equations)
        if (!equation_holds(p, eq, a))
            return false;
    for (auto &c : d.constraints)
        if (!constraint_holds(p, c, a))
            return false;
    return true;
}

/// Source-variable tuples from the ball that extend to a solution of `inst` through forced variables.
inline std::set<Tuple> projected_solutions(const grapheq::Instance &inst, const std::vector<std::string> &source,
                                           std::size_t bound)
{
    auto ball = grapheq::enumerate_ball(inst.presentation, bound);
    std::set<Tuple> out;
    for_each_tuple(ball, source.size(), [&](const Tuple &t) {
        for (auto &d : inst.disjuncts) {
            grapheq::Assignment a;
            for (std::size_t i = 0; i < t.size(); ++i)
                a[source[i]] = t[i];
            if (extend_disjunct(inst.presentation, d, a)) {
                out.insert(t);
                return;
            }
        }
    });
    return out;
}

} // namespace oracle
