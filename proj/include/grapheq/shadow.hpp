#pragma once

#include <map>
#include <string>
#include <vector>

#include "abelian.hpp"
#include "instance.hpp"
#include "linear_system.hpp"

namespace grapheq {

/// Unknown name for the v-coordinate of ab(X).
inline std::string shadow_unknown(const Presentation &p, const std::string &var, Vertex v)
{
    return var + "." + p.name(v);
}

namespace detail {

struct AbLinear {
    // per vertex: coefficient per variable, plus a constant
    std::vector<std::vector<std::pair<std::string, std::int64_t>>> coef;
    std::vector<std::int64_t> constant;

    explicit AbLinear(std::size_t n) : coef(n), constant(n, 0) {}

    void add_var(Vertex v, const std::string &x, std::int64_t c)
    {
        for (auto &t : coef[v])
            if (t.first == x) {
                t.second += c;
                return;
            }
        coef[v].push_back({x, c});
    }

    void add_term(const Presentation &p, const GroupTerm &t, std::int64_t sign)
    {
        for (auto &a : t) {
            if (a.is_variable()) {
                for (Vertex v = 0; v < p.size(); ++v)
                    add_var(v, a.var, sign * a.power);
            } else {
                auto ab = abelianize(p, a.constant);
                for (Vertex v = 0; v < p.size(); ++v)
                    constant[v] += sign * ab[v];
            }
        }
    }

    /// Emits "expression = 0" per vertex.
    void emit(const Presentation &p, LinearSystem &sys) const
    {
        for (Vertex v = 0; v < p.size(); ++v) {
            LinearEquation e;
            for (auto &t : coef[v])
                if (t.second != 0)
                    e.terms.push_back({shadow_unknown(p, t.first, v), BigInt(t.second)});
            std::int64_t c = -constant[v];
            if (p.is_finite(v)) {
                e.modulus = p.order(v);
                c = AbelVector::residue(p, v, c);
            }
            e.constant = c;
            if (e.terms.empty() && c == 0)
                continue;
            sys.equations.push_back(std::move(e));
        }
    }
};

} // namespace detail

/// Linear system over the ab-coordinates of the variables, one per disjunct.
inline std::vector<LinearSystem> abelian_shadow(const Instance &inst)
{
    auto &p = inst.presentation;
    std::vector<LinearSystem> out;
    for (auto &d : inst.disjuncts) {
        LinearSystem sys;
        for (auto &e : d.equations) {
            detail::AbLinear l(p.size());
            l.add_term(p, e, 1);
            l.emit(p, sys);
        }
        for (auto &c : d.constraints) {
            if (auto *a = std::get_if<AbEq>(&c)) {
                detail::AbLinear l(p.size());
                l.add_term(p, a->lhs, 1);
                l.add_term(p, a->rhs, -1);
                l.emit(p, sys);
            } else if (auto *x = std::get_if<ExpSumEq>(&c)) {
                LinearEquation e;
                for (auto &t : x->terms) {
                    auto name = shadow_unknown(p, t.var, t.vertex);
                    auto it = std::find_if(e.terms.begin(), e.terms.end(), [&](auto &q) { return q.first == name; });
                    if (it == e.terms.end())
                        e.terms.push_back({name, BigInt(t.coefficient)});
                    else
                        it->second += t.coefficient;
                }
                std::erase_if(e.terms, [](auto &q) { return q.second == 0; });
                e.constant = x->constant;
                if (!e.terms.empty() || x->constant != 0)
                    sys.equations.push_back(std::move(e));
            } else if (auto *k = std::get_if<Coset>(&c)) {
                auto ab = abelianize(p, k->representative);
                for (Vertex v = 0; v < p.size(); ++v) {
                    LinearEquation e;
                    e.terms.push_back({shadow_unknown(p, k->var, v), BigInt(1)});
                    e.constant = ab[v];
                    if (p.is_finite(v))
                        e.modulus = p.order(v);
                    sys.equations.push_back(std::move(e));
                }
            }
        }
        out.push_back(std::move(sys));
    }
    return out;
}

} // namespace grapheq
