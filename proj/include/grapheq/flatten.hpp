#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "instance.hpp"

namespace grapheq {

enum class ShortForm { Product, Equality, Constant, None };

/// Classifies a canonical term as z = x y, x = y, x = h, or none of these.
inline ShortForm short_form(const GroupTerm &t)
{
    if (t.empty())
        return ShortForm::Equality;
    auto unit = [](const TermAtom &a, std::int64_t pw) { return a.is_variable() && a.power == pw; };
    if (t.size() == 3 && unit(t[0], 1) && unit(t[1], 1) && unit(t[2], -1))
        return ShortForm::Product;
    if (t.size() == 2 && unit(t[0], 2) && unit(t[1], -1))
        return ShortForm::Product;
    if (t.size() == 2 && unit(t[0], 1) && unit(t[1], -1))
        return ShortForm::Equality;
    if (t.size() == 1 && unit(t[0], 1))
        return ShortForm::Constant;
    if (t.size() == 2 && unit(t[0], 1) && !t[1].is_variable())
        return ShortForm::Constant;
    return ShortForm::None;
}

inline bool is_flattened(const Instance &inst)
{
    for (auto &d : inst.disjuncts) {
        for (auto &e : d.equations)
            if (short_form(e) == ShortForm::None)
                return false;
        for (auto &c : d.constraints)
            if (auto *a = std::get_if<AbEq>(&c)) {
                auto single = [](const GroupTerm &t) { return t.size() == 1 && t[0].is_variable() && t[0].power == 1; };
                if (!single(a->lhs) || !single(a->rhs))
                    return false;
            }
    }
    return true;
}

namespace detail {

class Flattener {
public:
    explicit Flattener(const Instance &inst) : in_(inst), out_(inst), names_(inst)
    {
        out_.disjuncts.clear();
    }

    Instance run()
    {
        for (auto &d : in_.disjuncts) {
            inverses_.clear();
            Disjunct nd;
            for (auto &e : d.equations)
                flatten_equation(e, nd);
            for (auto &c : d.constraints) {
                if (auto *a = std::get_if<AbEq>(&c)) {
                    AbEq na{single(a->lhs, nd), single(a->rhs, nd)};
                    nd.constraints.push_back(na);
                } else {
                    nd.constraints.push_back(c);
                }
            }
            if (nd.equations.empty() && nd.constraints.empty())
                nd.equations.push_back({});
            out_.disjuncts.push_back(std::move(nd));
        }
        return out_;
    }

private:
    const Instance &in_;
    Instance out_;
    NameSupply names_;
    std::optional<std::string> identity_;
    std::map<std::string, std::string> inverses_;

    const Presentation &p() const { return in_.presentation; }

    std::string fresh()
    {
        auto v = names_.next("_f");
        out_.variables.push_back(v);
        return v;
    }

    void emit(Disjunct &d, GroupTerm t) { d.equations.push_back(canonical_term(p(), t)); }

    std::string identity_var(Disjunct &d)
    {
        if (!identity_)
            identity_ = fresh();
        if (std::find(d.equations.begin(), d.equations.end(), GroupTerm{var_atom(*identity_)}) == d.equations.end())
            emit(d, {var_atom(*identity_)});
        return *identity_;
    }

    std::string inverse_of(const std::string &x, Disjunct &d)
    {
        auto it = inverses_.find(x);
        if (it != inverses_.end())
            return it->second;
        auto e = identity_var(d);
        auto i = fresh();
        emit(d, {var_atom(i), var_atom(x), var_atom(e, -1)});
        inverses_[x] = i;
        return i;
    }

    void flatten_equation(const GroupTerm &t, Disjunct &d)
    {
        if (t.empty())
            return;
        if (short_form(t) != ShortForm::None) {
            emit(d, t);
            return;
        }
        std::vector<std::string> ops;
        for (auto &a : t) {
            if (!a.is_variable()) {
                auto c = fresh();
                emit(d, {var_atom(c), const_atom(invert(p(), a.constant))});
                ops.push_back(c);
                continue;
            }
            auto n = a.power < 0 ? -a.power : a.power;
            for (std::int64_t k = 0; k < n; ++k)
                ops.push_back(a.power > 0 ? a.var : inverse_of(a.var, d));
        }
        std::string acc = ops[0];
        for (std::size_t i = 1; i < ops.size(); ++i) {
            auto z = fresh();
            emit(d, {var_atom(acc), var_atom(ops[i]), var_atom(z, -1)});
            acc = z;
        }
        emit(d, {var_atom(acc)});
    }

    GroupTerm single(const GroupTerm &t, Disjunct &d)
    {
        if (t.size() == 1 && t[0].is_variable() && t[0].power == 1)
            return t;
        auto w = fresh();
        GroupTerm eq = t;
        eq.push_back(var_atom(w, -1));
        flatten_equation(canonical_term(p(), eq), d);
        return {var_atom(w)};
    }
};

} // namespace detail

/// Rewrites every equation into z = x y, x = y or x = h, and every AbEq argument into a variable.
inline Instance flatten(const Instance &inst)
{
    return detail::Flattener(inst).run();
}

} // namespace grapheq
