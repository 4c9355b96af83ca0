#pragma once

// Random small instances with a planted solution so solution sets are rarely empty.

#include <random>

#include <grapheq/grapheq.hpp>

namespace oracle {

struct RandomInstanceOptions {
    std::size_t max_vars = 2;
    std::size_t constant_radius = 2;
    std::size_t planted_radius = 1;
    bool ab_constraints = false;
    bool other_constraints = false;
};

inline grapheq::Instance random_instance(const grapheq::Presentation &p, std::mt19937 &rng,
                                         const RandomInstanceOptions &opt = {})
{
    using namespace grapheq;
    auto consts = enumerate_ball(p, opt.constant_radius);
    auto planted_ball = enumerate_ball(p, opt.planted_radius);
    auto pick = [&](const std::vector<NormalWord> &v) {
        return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };
    auto coin = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng) == 0; };
    Instance inst;
    inst.presentation = p;
    auto n = std::uniform_int_distribution<std::size_t>(1, opt.max_vars)(rng);
    Assignment planted;
    for (std::size_t i = 0; i < n; ++i) {
        auto v = std::string(1, static_cast<char>('X' + i));
        inst.variables.push_back(v);
        planted[v] = pick(planted_ball);
    }
    auto random_var = [&]() { return inst.variables[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]; };
    auto random_power = [&]() {
        static const std::int64_t powers[] = {1, -1, 2, -2, 1, -1};
        return powers[std::uniform_int_distribution<int>(0, 5)(rng)];
    };
    Disjunct d;
    auto neq = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int e = 0; e < neq; ++e) {
        GroupTerm t;
        auto atoms = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int k = 0; k < atoms; ++k) {
            if (k > 0 && coin(3))
                t.push_back(const_atom(pick(consts)));
            else
                t.push_back(var_atom(random_var(), random_power()));
        }
        auto value = evaluate_term(p, t, planted);
        auto fix = invert(p, value);
        if (geodesic_length(p, fix) <= static_cast<std::int64_t>(opt.constant_radius) && !coin(6))
            t.push_back(const_atom(fix));
        else
            t.push_back(const_atom(pick(consts)));
        d.equations.push_back(canonical_term(p, t));
    }
    if (opt.ab_constraints) {
        auto nab = std::uniform_int_distribution<int>(1, 2)(rng);
        for (int k = 0; k < nab; ++k) {
            GroupTerm lhs{var_atom(random_var(), random_power())};
            GroupTerm rhs{var_atom(random_var(), random_power())};
            auto diff = abelianize(p, evaluate_term(p, lhs, planted))
                            .plus(p, abelianize(p, evaluate_term(p, rhs, planted)).negated(p));
            auto fix = ab_representative(p, diff);
            if (geodesic_length(p, fix) <= static_cast<std::int64_t>(opt.constant_radius) && !coin(6))
                rhs.push_back(const_atom(fix));
            else if (coin(2))
                rhs.push_back(const_atom(pick(consts)));
            d.constraints.push_back(AbEq{canonical_term(p, lhs), canonical_term(p, rhs)});
        }
    }
    if (opt.other_constraints && coin(2)) {
        auto v = random_var();
        d.constraints.push_back(LengthEq{{{1, v}}, static_cast<std::int64_t>(geodesic_length(p, planted[v]))});
    }
    inst.disjuncts.push_back(std::move(d));
    if (coin(4)) {
        Disjunct alt;
        alt.equations.push_back(canonical_term(p, {var_atom(random_var(), 2), const_atom(pick(consts))}));
        inst.disjuncts.push_back(std::move(alt));
    }
    validate(inst);
    return inst;
}

} // namespace oracle
