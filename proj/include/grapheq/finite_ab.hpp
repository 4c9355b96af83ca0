#pragma once

// Abelian constraints as commutator-coset constraints when every vertex has finite order.

#include "abelian.hpp"
#include "error.hpp"
#include "instance.hpp"

namespace grapheq {

/// Every AbEq becomes Z = (variable part) plus Coset(Z, representative of the constant part).
inline Instance reduce_finite_ab(const Instance &inst)
{
    auto &p = inst.presentation;
    if (!p.all_finite())
        throw Error(ErrorKind::InfiniteAbelianisation, "abelianisation is infinite");
    Instance out = inst;
    NameSupply names(inst);
    for (auto &d : out.disjuncts) {
        std::vector<Constraint> kept;
        for (auto &c : d.constraints) {
            auto *ab = std::get_if<AbEq>(&c);
            if (!ab) {
                kept.push_back(c);
                continue;
            }
            GroupTerm vars;
            AbelVector alpha(p.size());
            for (auto &a : ab->lhs) {
                if (a.is_variable())
                    vars.push_back(a);
                else
                    alpha = alpha.plus(p, abelianize(p, a.constant).negated(p));
            }
            for (auto it = ab->rhs.rbegin(); it != ab->rhs.rend(); ++it) {
                if (it->is_variable())
                    vars.push_back(var_atom(it->var, -it->power));
                else
                    alpha = alpha.plus(p, abelianize(p, it->constant));
            }
            auto z = names.next("_z");
            out.variables.push_back(z);
            vars.push_back(var_atom(z, -1));
            d.equations.push_back(canonical_term(p, vars));
            kept.push_back(Coset{z, ab_representative(p, alpha)});
        }
        d.constraints = std::move(kept);
    }
    validate(out);
    return out;
}

} // namespace grapheq
