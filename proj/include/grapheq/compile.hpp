#pragma once

// Compilers from integer polynomial equations to equations with abelian constraints,
// in free groups and in non-abelian RAAGs, with witness recipes and decoding.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "abelian.hpp"
#include "conjugacy.hpp"
#include "error.hpp"
#include "graph_analysis.hpp"
#include "h10.hpp"
#include "instance.hpp"
#include "instance_io.hpp"

namespace grapheq {

enum class CompileMode { PureAb, NativeExpSum, Raag };

inline std::string mode_name(CompileMode m)
{
    switch (m) {
    case CompileMode::PureAb: return "pure-ab";
    case CompileMode::NativeExpSum: return "native-expsum";
    case CompileMode::Raag: return "raag";
    }
    return {};
}

inline CompileMode parse_mode(const std::string &s)
{
    if (s == "pure-ab")
        return CompileMode::PureAb;
    if (s == "native-expsum")
        return CompileMode::NativeExpSum;
    if (s == "raag")
        return CompileMode::Raag;
    throw Error(ErrorKind::ParseError, "unknown mode '" + s + "'");
}

/// Exponent of a power step: an integer variable's value, an exponent sum, or a literal.
struct ExponentSource {
    enum class Kind { Integer, ExponentSum, Literal };
    Kind kind = Kind::Literal;
    std::string name;
    GroupTerm term;
    Vertex vertex = 0;
    std::int64_t value = 0;
    bool operator==(const ExponentSource &) const = default;
};

/// var := eval(base)^k
struct PowerStep {
    std::string var;
    ExponentSource exponent;
    GroupTerm base;
    bool operator==(const PowerStep &) const = default;
};

/// vars get ab(eval(term)) split by centers: coordinate v goes to the first var whose center has v in its star.
struct CoverStep {
    std::vector<std::string> vars;
    std::vector<Vertex> centers;
    GroupTerm term;
    bool operator==(const CoverStep &) const = default;
};

using RecipeStep = std::variant<PowerStep, CoverStep>;

struct DecodeEntry {
    std::string int_var;
    std::string group_var;
    Vertex vertex = 0;
    bool operator==(const DecodeEntry &) const = default;
};

struct CompiledReduction {
    Instance instance;
    H10Instance source;
    AtomizedH10 atoms;
    CompileMode mode = CompileMode::PureAb;
    std::vector<DecodeEntry> decode;
    std::vector<RecipeStep> recipe;
};

namespace detail {

class GadgetBuilder {
public:
    GadgetBuilder(const Presentation &p, const AtomizedH10 &atoms)
    {
        out_.instance.presentation = p;
        out_.instance.disjuncts.resize(1);
        out_.atoms = atoms;
        for (auto &n : p.names())
            used_.insert(n);
    }

    const Presentation &p() const { return out_.instance.presentation; }
    Disjunct &d() { return out_.instance.disjuncts[0]; }

    std::string fresh(const std::string &prefix)
    {
        std::string v;
        do
            v = prefix + std::to_string(counters_[prefix]++);
        while (used_.count(v));
        return declare(v);
    }

    /// `want`, or `want_<n>` if taken.
    std::string named(const std::string &want)
    {
        if (!used_.count(want))
            return declare(want);
        return fresh(want + "_");
    }

    NormalWord gen(Vertex v, std::int64_t e = 1) const { return generator(p(), v, e); }

    NormalWord product_of(VertexSet s) const
    {
        RawWord r;
        for (auto v : s.elements())
            r.push_back({v, 1});
        return normalize(p(), r);
    }

    void equation(const GroupTerm &t) { d().equations.push_back(canonical_term(p(), t)); }

    /// [x, g] = 1
    void commutes(const std::string &x, const NormalWord &g)
    {
        equation(commutator_term(p(), {var_atom(x)}, {const_atom(g)}));
    }

    void ab_equal(const GroupTerm &l, const GroupTerm &r)
    {
        d().constraints.push_back(AbEq{canonical_term(p(), l), canonical_term(p(), r)});
    }

    void expsum_zero(const std::vector<std::pair<GroupTerm, Vertex>> &parts)
    {
        ExpSumEq e;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            auto &[t, v] = parts[k];
            for (auto &a : t) {
                if (!a.is_variable())
                    throw Error(ErrorKind::Internal, "exponent-sum gadget over a constant");
                auto c = k == 0 ? a.power : -a.power;
                auto it = std::find_if(e.terms.begin(), e.terms.end(),
                                       [&](const ExpSumTerm &x) { return x.var == a.var && x.vertex == v; });
                if (it == e.terms.end())
                    e.terms.push_back({c, a.var, v});
                else
                    it->coefficient += c;
            }
        }
        std::erase_if(e.terms, [](const ExpSumTerm &x) { return x.coefficient == 0; });
        d().constraints.push_back(e);
    }

    void power_step(const std::string &var, ExponentSource src, GroupTerm base)
    {
        out_.recipe.push_back(PowerStep{var, std::move(src), canonical_term(p(), base)});
    }

    void cover_step(std::vector<std::string> vars, std::vector<Vertex> centers, const GroupTerm &term)
    {
        out_.recipe.push_back(CoverStep{std::move(vars), std::move(centers), canonical_term(p(), term)});
    }

    static ExponentSource integer(const std::string &x) { return {ExponentSource::Kind::Integer, x, {}, 0, 0}; }
    static ExponentSource expsum(GroupTerm t, Vertex v) { return {ExponentSource::Kind::ExponentSum, {}, std::move(t), v, 0}; }
    static ExponentSource literal(std::int64_t k) { return {ExponentSource::Kind::Literal, {}, {}, 0, k}; }

    CompiledReduction out_;

private:
    std::set<std::string> used_;
    std::map<std::string, std::size_t> counters_;

    std::string declare(const std::string &v)
    {
        used_.insert(v);
        out_.instance.variables.push_back(v);
        return v;
    }
};

/// Shared atom-level driver; subclasses provide the gadgets.
class H10Compiler : protected GadgetBuilder {
public:
    using GadgetBuilder::GadgetBuilder;
    virtual ~H10Compiler() = default;

    CompiledReduction compile(const H10Instance &h, CompileMode mode)
    {
        out_.source = h;
        out_.mode = mode;
        for (auto &at : out_.atoms.atoms) {
            switch (at.op) {
            case AtomOp::Const: {
                auto x = int_var(at.target);
                equation({var_atom(x), const_atom(invert(p(), power(p(), unit(), at.value)))});
                break;
            }
            case AtomOp::Add: {
                auto y = int_var(at.lhs);
                auto z = int_var(at.rhs);
                auto x = int_var(at.target);
                zero_unit({var_atom(y), var_atom(z), var_atom(x, -1)});
                break;
            }
            case AtomOp::Mul: multiplication(at); break;
            }
        }
        validate(out_.instance);
        return out_;
    }

protected:
    std::map<std::string, std::string> group_of_;

    virtual NormalWord unit() const = 0;
    virtual Vertex unit_vertex() const = 0;
    virtual void domain(const std::string &a) = 0;
    virtual void zero_unit(const GroupTerm &t) = 0;
    virtual void multiplication(const H10Atom &at) = 0;

    std::string int_var(const std::string &x)
    {
        auto it = group_of_.find(x);
        if (it != group_of_.end())
            return it->second;
        auto a = named("A_" + x);
        group_of_[x] = a;
        out_.decode.push_back({x, a, unit_vertex()});
        power_step(a, integer(x), {const_atom(unit())});
        domain(a);
        return a;
    }
};

class FreeCompiler : public H10Compiler {
public:
    FreeCompiler(const Presentation &p, const AtomizedH10 &atoms, bool native) : H10Compiler(p, atoms), native_(native)
    {
        if (p.size() < 2)
            throw Error(ErrorKind::RankTooSmall, "free target needs at least two generators");
        if (p.edge_count() != 0 || !p.all_infinite())
            throw Error(ErrorKind::InvalidInstance, "target is not a free group");
    }

    using H10Compiler::compile;

private:
    bool native_;
    static constexpr Vertex s1 = 0, s2 = 1;

    NormalWord unit() const override { return gen(s1); }
    Vertex unit_vertex() const override { return s1; }

    void domain(const std::string &a) override { commutes(a, gen(s1)); }

    /// |t|_{s_i} = 0 through witnesses in the other generators' centralisers.
    void zero_at(Vertex i, const GroupTerm &t)
    {
        if (native_) {
            expsum_zero({{t, i}});
            return;
        }
        std::vector<std::string> ys;
        std::vector<Vertex> centers;
        GroupTerm prod;
        for (Vertex j = 0; j < p().size(); ++j) {
            if (j == i)
                continue;
            auto y = fresh("_k");
            commutes(y, gen(j));
            ys.push_back(y);
            centers.push_back(j);
            prod.push_back(var_atom(y));
        }
        ab_equal(t, prod);
        cover_step(ys, centers, t);
    }

    void zero_unit(const GroupTerm &t) override { zero_at(s1, t); }

    /// |x|_{s_i} = |y|_{s_i}
    void same(Vertex i, const GroupTerm &x, const GroupTerm &y)
    {
        if (native_) {
            expsum_zero({{x, i}, {y, i}});
            return;
        }
        auto w = fresh("_w");
        commutes(w, gen(i));
        std::vector<std::string> zs, us;
        std::vector<Vertex> centers;
        for (Vertex j = 0; j < p().size(); ++j) {
            if (j == i)
                continue;
            auto z = fresh("_z");
            commutes(z, gen(j));
            zs.push_back(z);
            centers.push_back(j);
        }
        for (Vertex j = 0; j < p().size(); ++j) {
            if (j == i)
                continue;
            auto u = fresh("_u");
            commutes(u, gen(j));
            us.push_back(u);
        }
        GroupTerm wz{var_atom(w)}, wu{var_atom(w)};
        for (auto &z : zs)
            wz.push_back(var_atom(z));
        for (auto &u : us)
            wu.push_back(var_atom(u));
        ab_equal(x, wz);
        ab_equal(y, wu);
        power_step(w, expsum(x, i), {const_atom(gen(i))});
        cover_step(zs, centers, term_concat(p(), {x, {var_atom(w, -1)}}));
        cover_step(us, centers, term_concat(p(), {y, {var_atom(w, -1)}}));
    }

    /// |x|_{s_i} = |y|_{s_j}
    void cross(Vertex i, Vertex j, const GroupTerm &x, const GroupTerm &y)
    {
        if (native_) {
            expsum_zero({{x, i}, {y, j}});
            return;
        }
        auto z = fresh("_x");
        auto base = multiply(p(), gen(i), gen(j));
        commutes(z, base);
        power_step(z, expsum(x, i), {const_atom(base)});
        same(i, x, {var_atom(z)});
        same(j, y, {var_atom(z)});
    }

    void multiplication(const H10Atom &at) override
    {
        auto a1 = int_var(at.lhs);
        auto b = fresh("_b");
        commutes(b, gen(s2));
        power_step(b, integer(at.lhs), {const_atom(gen(s2))});
        cross(s1, s2, {var_atom(a1)}, {var_atom(b)});
        auto c = fresh("_c");
        equation(commutator_term(p(), {var_atom(c)}, {const_atom(gen(s1)), var_atom(b)}));
        power_step(c, integer(at.rhs), {const_atom(gen(s1)), var_atom(b)});
        auto a2 = int_var(at.rhs);
        same(s1, {var_atom(a2)}, {var_atom(c)});
        auto a3 = int_var(at.target);
        cross(s1, s2, {var_atom(a3)}, {var_atom(c)});
    }
};

class RaagCompiler : public H10Compiler {
public:
    RaagCompiler(const Presentation &p, const AtomizedH10 &atoms) : H10Compiler(p, atoms)
    {
        if (!p.all_infinite())
            throw Error(ErrorKind::InvalidInstance, "RAAG target must have only infinite-order vertices");
        std::optional<VertexSet> factor;
        for (auto &comp : direct_product_decomposition(p)) {
            if (!is_clique(p, comp)) {
                factor = comp;
                break;
            }
        }
        if (!factor)
            throw Error(ErrorKind::AbelianTarget, "target RAAG is abelian");
        factor_ = *factor;
        std::vector<Vertex> map;
        auto q = induced(p, factor_, &map);
        auto pair = nonadjacent_weak_module_pair(q);
        if (!pair)
            throw Error(ErrorKind::Internal, "no pair of non-adjacent weak modules in an indecomposable factor");
        for (auto v : pair->first.elements())
            m1_.insert(map[v]);
        for (auto v : pair->second.elements())
            m2_.insert(map[v]);
        h1_ = product_of(m1_);
        h2_ = product_of(m2_);
        cover1_ = star_cover(m1_);
        cover2_ = star_cover(m2_);
    }

    VertexSet factor() const { return factor_; }
    VertexSet module1() const { return m1_; }
    VertexSet module2() const { return m2_; }
    const std::vector<Vertex> &cover1() const { return cover1_; }
    const std::vector<Vertex> &cover2() const { return cover2_; }

private:
    VertexSet factor_, m1_, m2_;
    NormalWord h1_, h2_;
    std::vector<Vertex> cover1_, cover2_;

    /// Vertices outside star(S) whose stars cover everything but S, chosen greedily.
    std::vector<Vertex> star_cover(VertexSet s) const
    {
        auto st = star_link(p(), s).star;
        auto candidates = p().all() - st;
        auto uncovered = p().all() - s;
        std::vector<Vertex> out;
        while (!uncovered.empty()) {
            std::optional<Vertex> best;
            std::size_t gain = 0;
            for (auto u : candidates.elements()) {
                auto g = (star(p(), u) & uncovered).size();
                if (g > gain) {
                    gain = g;
                    best = u;
                }
            }
            if (!best)
                throw Error(ErrorKind::Internal, "stars outside star(S) do not cover the complement of S");
            out.push_back(*best);
            uncovered = uncovered - star(p(), *best);
            candidates.erase(*best);
        }
        return out;
    }

    NormalWord unit() const override { return h1_; }
    Vertex unit_vertex() const override { return m1_.front(); }

    /// |t|_s = 0 for every s in the module.
    void zero(VertexSet s, const GroupTerm &t)
    {
        auto &cover = s == m1_ ? cover1_ : cover2_;
        std::vector<std::string> ys;
        GroupTerm prod;
        for (auto u : cover) {
            auto y = fresh("_y");
            commutes(y, gen(u));
            ys.push_back(y);
            prod.push_back(var_atom(y));
        }
        ab_equal(t, prod);
        cover_step(ys, cover, t);
    }

    void same(VertexSet s, const GroupTerm &x, const GroupTerm &y)
    {
        zero(s, term_concat(p(), {x, term_inverse(p(), y)}));
    }

    /// Equal exponent sums across the module s, via an element of C(prod(s) u) with u in the other module.
    void diag(VertexSet s, VertexSet other, const GroupTerm &x)
    {
        if (s.size() == 1)
            return;
        auto h = fresh("_h");
        auto base = multiply(p(), product_of(s), gen(other.front()));
        commutes(h, base);
        power_step(h, expsum(x, s.front()), {const_atom(base)});
        same(s, x, {var_atom(h)});
    }

    void in_diagonal(const std::string &x)
    {
        diag(m1_, m2_, {var_atom(x)});
        diag(m2_, m1_, {var_atom(x)});
    }

    /// |x|_{h1} = |y|_{h2}
    void cross(const GroupTerm &x, const GroupTerm &y)
    {
        auto z = fresh("_x");
        auto base = multiply(p(), h1_, h2_);
        commutes(z, base);
        power_step(z, expsum(x, m1_.front()), {const_atom(base)});
        same(m1_, x, {var_atom(z)});
        same(m2_, y, {var_atom(z)});
    }

    void domain(const std::string &a) override { in_diagonal(a); }
    void zero_unit(const GroupTerm &t) override { zero(m1_, t); }

    void multiplication(const H10Atom &at) override
    {
        auto a1 = int_var(at.lhs);
        auto b = fresh("_b");
        power_step(b, integer(at.lhs), {const_atom(h2_)});
        in_diagonal(b);
        zero(m1_, {var_atom(b)});
        cross({var_atom(a1)}, {var_atom(b)});
        auto c1 = fresh("_c");
        equation(commutator_term(p(), {var_atom(c1)}, {const_atom(h1_), var_atom(b)}));
        power_step(c1, integer(at.rhs), {const_atom(h1_), var_atom(b)});
        in_diagonal(c1);
        auto c2 = fresh("_k");
        power_step(c2, literal(0), {});
        zero(m1_, {var_atom(c2)});
        zero(m2_, {var_atom(c2)});
        auto c = fresh("_c");
        equation({var_atom(c1), var_atom(c2), var_atom(c, -1)});
        power_step(c, literal(1), {var_atom(c1), var_atom(c2)});
        auto a2 = int_var(at.rhs);
        same(m1_, {var_atom(a2)}, {var_atom(c)});
        auto a3 = int_var(at.target);
        cross({var_atom(a3)}, {var_atom(c)});
    }
};

} // namespace detail

/// Hilbert-10 instance to equations with abelian (pure-ab) or exponent-sum (native-expsum) constraints in a free group.
inline CompiledReduction compile_h10_free(const H10Instance &h, const Presentation &target,
                                          CompileMode mode = CompileMode::PureAb)
{
    if (mode == CompileMode::Raag)
        throw Error(ErrorKind::InvalidInstance, "free compiler takes pure-ab or native-expsum");
    auto atoms = atomize(h);
    detail::FreeCompiler c(target, atoms, mode == CompileMode::NativeExpSum);
    return c.compile(h, mode);
}

/// Hilbert-10 instance to equations with abelian constraints in a non-abelian RAAG.
inline CompiledReduction compile_h10_raag(const H10Instance &h, const Presentation &target)
{
    auto atoms = atomize(h);
    detail::RaagCompiler c(target, atoms);
    return c.compile(h, CompileMode::Raag);
}

/// The factor and weak modules the RAAG compiler works with.
struct RaagPlan {
    VertexSet factor, module1, module2;
    std::vector<Vertex> cover1, cover2;
};

inline RaagPlan raag_plan(const Presentation &target)
{
    AtomizedH10 none;
    detail::RaagCompiler c(target, none);
    return {c.factor(), c.module1(), c.module2(), c.cover1(), c.cover2()};
}

namespace detail {

inline std::int64_t to_int64(const BigInt &x)
{
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorKind::Overflow, "integer value out of range");
    return static_cast<std::int64_t>(x);
}

inline void run_step(const Presentation &p, const PowerStep &s, const IntAssignment &ints, Assignment &asg)
{
    std::int64_t k = 0;
    switch (s.exponent.kind) {
    case ExponentSource::Kind::Integer: k = to_int64(ints.at(s.exponent.name)); break;
    case ExponentSource::Kind::ExponentSum:
        k = exponent_sum(p, evaluate_term(p, s.exponent.term, asg), s.exponent.vertex);
        break;
    case ExponentSource::Kind::Literal: k = s.exponent.value; break;
    }
    auto base = evaluate_term(p, s.base, asg);
    auto cr = cyclically_reduce(p, base);
    asg[s.var] = conjugate(p, power(p, cr.core, k), invert(p, cr.conjugator));
}

inline void run_step(const Presentation &p, const CoverStep &s, Assignment &asg)
{
    auto a = abelianize(p, evaluate_term(p, s.term, asg));
    std::vector<RawWord> parts(s.vars.size());
    for (Vertex v = 0; v < p.size(); ++v) {
        if (a[v] == 0)
            continue;
        std::size_t i = 0;
        while (i < s.centers.size() && !star(p, s.centers[i]).contains(v))
            ++i;
        if (i == s.centers.size())
            throw Error(ErrorKind::Internal, "cover step cannot place vertex " + p.name(v));
        parts[i].push_back({v, a[v]});
    }
    for (std::size_t i = 0; i < s.vars.size(); ++i)
        asg[s.vars[i]] = normalize(p, parts[i]);
}

} // namespace detail

/// Builds a satisfying assignment of the compiled instance from an integer solution of the source.
inline Assignment witness_h10(const CompiledReduction &cr, const IntAssignment &solution)
{
    for (auto &v : cr.source.variables())
        if (!solution.count(v))
            throw Error(ErrorKind::NotAnIntegerSolution, "no value for '" + v + "'");
    if (!is_solution(cr.source, solution))
        throw Error(ErrorKind::NotAnIntegerSolution, "values do not solve the source equations");
    auto ints = extend_atoms(cr.atoms, solution);
    if (!ints)
        throw Error(ErrorKind::Internal, "atoms reject a solution of the source equations");
    auto &p = cr.instance.presentation;
    Assignment asg;
    for (auto &step : cr.recipe) {
        if (auto *ps = std::get_if<PowerStep>(&step))
            detail::run_step(p, *ps, *ints, asg);
        else
            detail::run_step(p, std::get<CoverStep>(step), asg);
    }
    for (auto &v : cr.instance.variables)
        if (!asg.count(v))
            throw Error(ErrorKind::Internal, "recipe leaves '" + v + "' unassigned");
    if (!evaluate(cr.instance, asg).satisfied)
        throw Error(ErrorKind::Internal, "recipe assignment fails the compiled instance");
    return asg;
}

/// Reads integers back as exponent sums and checks them against the source equations.
inline IntAssignment decode_solution(const CompiledReduction &cr, const Assignment &asg)
{
    if (!evaluate(cr.instance, asg).satisfied)
        throw Error(ErrorKind::NotASolution, "assignment does not satisfy the compiled instance");
    auto &p = cr.instance.presentation;
    IntAssignment all;
    for (auto &e : cr.decode)
        all[e.int_var] = exponent_sum(p, asg.at(e.group_var), e.vertex);
    for (auto &at : cr.atoms.atoms)
        if (!atom_holds(at, all))
            throw Error(ErrorKind::DecodeInconsistency, "decoded values violate atom " + to_string(at));
    IntAssignment out;
    for (auto &v : cr.atoms.source_variables)
        out[v] = all.at(v);
    if (!is_solution(cr.source, out))
        throw Error(ErrorKind::DecodeInconsistency, "decoded values do not solve the source equations");
    return out;
}

// Sidecar: mode, source equations, decode table and recipe, one item per line.

inline std::string sidecar_text(const CompiledReduction &cr)
{
    auto &p = cr.instance.presentation;
    std::string out = "mode " + mode_name(cr.mode) + "\n";
    for (auto &e : cr.source.equations)
        out += "source " + to_string(e) + "\n";
    for (auto &a : cr.atoms.atoms)
        out += "# atom " + to_string(a) + "\n";
    for (auto &d : cr.decode)
        out += "decode " + d.int_var + " " + d.group_var + " " + p.name(d.vertex) + "\n";
    for (auto &step : cr.recipe) {
        if (auto *s = std::get_if<PowerStep>(&step)) {
            out += "pow " + s->var + " ";
            switch (s->exponent.kind) {
            case ExponentSource::Kind::Integer: out += "int " + s->exponent.name; break;
            case ExponentSource::Kind::Literal: out += "lit " + std::to_string(s->exponent.value); break;
            case ExponentSource::Kind::ExponentSum:
                out += "exp " + p.name(s->exponent.vertex) + " ; " + to_string(p, s->exponent.term);
                break;
            }
            out += " ; " + to_string(p, s->base) + "\n";
        } else {
            auto &c = std::get<CoverStep>(step);
            out += "cover";
            for (std::size_t i = 0; i < c.vars.size(); ++i)
                out += " " + c.vars[i] + ":" + p.name(c.centers[i]);
            out += " ; " + to_string(p, c.term) + "\n";
        }
    }
    return out;
}

inline CompiledReduction parse_sidecar(const std::string &text, const Instance &inst)
{
    CompiledReduction cr;
    cr.instance = inst;
    auto &p = cr.instance.presentation;
    std::string source;
    std::size_t line_no = 0;
    bool have_mode = false;
    auto fail = [&](const std::string &why) {
        return Error(ErrorKind::ParseError, "sidecar line " + std::to_string(line_no) + ": " + why);
    };
    auto split = [](const std::string &s) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (;;) {
            auto k = s.find(" ; ", start);
            parts.push_back(s.substr(start, k == std::string::npos ? std::string::npos : k - start));
            if (k == std::string::npos)
                return parts;
            start = k + 3;
        }
    };
    auto vertex = [&](const std::string &n) {
        auto v = p.find(n);
        if (!v)
            throw Error(ErrorKind::UnknownVertex, "sidecar line " + std::to_string(line_no) + ": unknown vertex '" + n + "'");
        return *v;
    };
    auto variable = [&](const std::string &n) {
        if (std::find(inst.variables.begin(), inst.variables.end(), n) == inst.variables.end())
            throw Error(ErrorKind::UnknownVariable, "sidecar line " + std::to_string(line_no) + ": unknown variable '" + n + "'");
        return n;
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        auto sp = line.find(' ');
        auto key = line.substr(0, sp);
        auto rest = sp == std::string::npos ? std::string{} : line.substr(sp + 1);
        if (key == "mode") {
            cr.mode = parse_mode(rest);
            have_mode = true;
        } else if (key == "source") {
            source += rest + "\n";
        } else if (key == "decode") {
            auto t = detail::split_ws(rest);
            if (t.size() != 3)
                throw fail("decode takes three fields");
            cr.decode.push_back({t[0], variable(t[1]), vertex(t[2])});
        } else if (key == "pow") {
            auto parts = split(rest);
            auto head = detail::split_ws(parts[0]);
            PowerStep s;
            if (head.size() < 2)
                throw fail("malformed pow step");
            s.var = variable(head[0]);
            if (head[1] == "int" && head.size() == 3 && parts.size() == 2) {
                s.exponent = {ExponentSource::Kind::Integer, head[2], {}, 0, 0};
            } else if (head[1] == "lit" && head.size() == 3 && parts.size() == 2) {
                try {
                    s.exponent = {ExponentSource::Kind::Literal, {}, {}, 0, std::stoll(head[2])};
                } catch (const std::exception &) {
                    throw fail("bad literal");
                }
            } else if (head[1] == "exp" && head.size() == 3 && parts.size() == 3) {
                s.exponent = {ExponentSource::Kind::ExponentSum, {}, parse_term(inst, parts[1]), vertex(head[2]), 0};
            } else {
                throw fail("malformed pow step");
            }
            s.base = parse_term(inst, parts.back());
            cr.recipe.push_back(std::move(s));
        } else if (key == "cover") {
            auto parts = split(rest);
            if (parts.size() != 2)
                throw fail("malformed cover step");
            CoverStep s;
            for (auto &vc : detail::split_ws(parts[0])) {
                auto colon = vc.find(':');
                if (colon == std::string::npos)
                    throw fail("cover entries are var:center");
                s.vars.push_back(variable(vc.substr(0, colon)));
                s.centers.push_back(vertex(vc.substr(colon + 1)));
            }
            s.term = parse_term(inst, parts[1]);
            cr.recipe.push_back(std::move(s));
        } else {
            throw fail("unknown item '" + key + "'");
        }
    }
    if (!have_mode || source.empty())
        throw Error(ErrorKind::ParseError, "sidecar needs a mode and source equations");
    cr.source = parse_h10(source);
    cr.atoms = atomize(cr.source);
    for (auto &v : cr.atoms.source_variables)
        if (std::none_of(cr.decode.begin(), cr.decode.end(), [&](const DecodeEntry &e) { return e.int_var == v; }))
            throw Error(ErrorKind::ParseError, "sidecar has no decode entry for '" + v + "'");
    return cr;
}

} // namespace grapheq
