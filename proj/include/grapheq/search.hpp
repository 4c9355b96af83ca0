#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "error.hpp"
#include "instance.hpp"
#include "linear_system.hpp"
#include "shadow.hpp"
#include "word.hpp"

namespace grapheq {

inline constexpr std::size_t default_radius_cap = 10;

/// All elements of length <= radius, length-then-lex.
inline std::vector<NormalWord> enumerate_ball(const Presentation &p, std::size_t radius,
                                              std::size_t cap = default_radius_cap)
{
    if (radius > cap)
        throw Error(ErrorKind::RadiusCapExceeded,
                    "radius " + std::to_string(radius) + " exceeds cap " + std::to_string(cap));
    std::vector<NormalWord> out;
    for (auto &s : spheres(p, radius))
        out.insert(out.end(), s.begin(), s.end());
    return out;
}

struct SearchOptions {
    std::size_t cap = default_radius_cap;
    unsigned threads = 1;        // 0 picks hardware concurrency
    bool use_shadow = true;
    bool enumerate_unused = false; // variables absent from a disjunct range over the ball too
};

enum class Verdict { Witness, NoSolutionUpToBound, UnsatByShadow };

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t millis = 0;
};

struct SearchReport {
    Verdict verdict = Verdict::NoSolutionUpToBound;
    Assignment witness;
    std::size_t bound = 0;
    SearchStats stats;
};

namespace detail {

using IndexVec = std::vector<std::size_t>;

class DisjunctSearch {
public:
    DisjunctSearch(const Instance &inst, const Disjunct &d, const std::vector<NormalWord> &ball,
                   const std::map<NormalWord, std::size_t> &index, bool enumerate_unused)
        : inst_(inst), d_(d), ball_(ball), index_(index)
    {
        auto &vars = inst.variables;
        std::size_t n = vars.size();
        for (std::size_t i = 0; i < n; ++i)
            pos_[vars[i]] = i;
        std::vector<bool> used(n, false);
        auto add_item = [&](bool is_eq, std::size_t k, const std::vector<std::string> &vs) {
            Item it{is_eq, k, {}, 0};
            for (auto &v : vs) {
                auto q = pos_.at(v);
                it.positions.push_back(q);
                used[q] = true;
                it.last = std::max(it.last, q);
            }
            items_.push_back(it);
        };
        for (std::size_t k = 0; k < d.equations.size(); ++k)
            add_item(true, k, term_variables(d.equations[k]));
        for (std::size_t k = 0; k < d.constraints.size(); ++k)
            add_item(false, k, constraint_variables(d.constraints[k]));

        domains_.assign(n, {});
        checks_.assign(n, {});
        propagator_.assign(n, std::nullopt);
        Assignment scratch;
        for (std::size_t q = 0; q < n; ++q) {
            if (!used[q] && !enumerate_unused) {
                domains_[q] = {0};
                continue;
            }
            std::vector<const Item *> unary;
            for (auto &it : items_)
                if (it.positions.size() == 1 && it.positions[0] == q)
                    unary.push_back(&it);
            for (std::size_t b = 0; b < ball.size(); ++b) {
                scratch[vars[q]] = ball[b];
                bool ok = true;
                for (auto *it : unary)
                    ok = ok && holds(*it, scratch);
                if (ok)
                    domains_[q].push_back(b);
            }
            scratch.erase(vars[q]);
        }
        member_.assign(n, std::vector<char>(ball.size(), 0));
        for (std::size_t q = 0; q < n; ++q)
            for (auto b : domains_[q])
                member_[q][b] = 1;
        for (auto &it : items_) {
            if (it.positions.empty()) {
                if (!holds(it, scratch))
                    dead_ = true;
            } else if (it.positions.size() > 1) {
                checks_[it.last].push_back(&it);
            }
        }
        for (std::size_t k = 0; k < d.equations.size(); ++k)
            find_propagator(k);
    }

    bool dead() const { return dead_; }
    std::size_t first_domain_size() const { return domains_.empty() ? 0 : domains_[0].size(); }

    /// Depth-first search; `first` restricts position 0 to one domain slot.
    template <class Fn>
    void run(Fn &&on_solution, std::atomic<std::uint64_t> &nodes, std::optional<std::size_t> first = std::nullopt)
    {
        if (dead_)
            return;
        if (inst_.variables.empty()) {
            on_solution(IndexVec{});
            return;
        }
        Assignment asg;
        IndexVec idx(inst_.variables.size(), 0);
        dfs(0, asg, idx, on_solution, nodes, first);
    }

private:
    struct Item {
        bool is_eq;
        std::size_t k;
        std::vector<std::size_t> positions;
        std::size_t last;
    };

    struct Propagator {
        std::size_t eq;
        std::size_t atom;
    };

    const Instance &inst_;
    const Disjunct &d_;
    const std::vector<NormalWord> &ball_;
    const std::map<NormalWord, std::size_t> &index_;
    std::map<std::string, std::size_t> pos_;
    std::vector<Item> items_;
    std::vector<IndexVec> domains_;
    std::vector<std::vector<char>> member_;
    std::vector<std::vector<const Item *>> checks_;
    std::vector<std::optional<Propagator>> propagator_;
    bool dead_ = false;

    bool holds(const Item &it, const Assignment &asg) const
    {
        auto &p = inst_.presentation;
        return it.is_eq ? equation_holds(p, d_.equations[it.k], asg)
                        : constraint_holds(p, d_.constraints[it.k], asg);
    }

    void find_propagator(std::size_t k)
    {
        auto &t = d_.equations[k];
        for (std::size_t a = 0; a < t.size(); ++a) {
            if (!t[a].is_variable() || (t[a].power != 1 && t[a].power != -1))
                continue;
            auto q = pos_.at(t[a].var);
            bool ok = true;
            for (std::size_t b = 0; b < t.size() && ok; ++b)
                if (b != a && t[b].is_variable())
                    ok = pos_.at(t[b].var) < q;
            if (ok && !propagator_[q])
                propagator_[q] = Propagator{k, a};
        }
    }

    std::optional<std::size_t> propagate(std::size_t q, const Assignment &asg) const
    {
        auto &pr = *propagator_[q];
        auto &p = inst_.presentation;
        auto &t = d_.equations[pr.eq];
        GroupTerm pre(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(pr.atom));
        GroupTerm post(t.begin() + static_cast<std::ptrdiff_t>(pr.atom) + 1, t.end());
        auto a = evaluate_term(p, pre, asg);
        auto b = evaluate_term(p, post, asg);
        auto x = invert(p, multiply(p, b, a));
        if (t[pr.atom].power < 0)
            x = invert(p, x);
        auto it = index_.find(x);
        if (it == index_.end() || !member_[q][it->second])
            return std::nullopt;
        return it->second;
    }

    template <class Fn>
    bool dfs(std::size_t q, Assignment &asg, IndexVec &idx, Fn &on_solution, std::atomic<std::uint64_t> &nodes,
             std::optional<std::size_t> first)
    {
        auto &name = inst_.variables[q];
        auto visit = [&](std::size_t b) -> bool {
            nodes.fetch_add(1, std::memory_order_relaxed);
            asg[name] = ball_[b];
            idx[q] = b;
            for (auto *it : checks_[q])
                if (!holds(*it, asg))
                    return true;
            if (q + 1 == inst_.variables.size())
                return on_solution(static_cast<const IndexVec &>(idx));
            return dfs(q + 1, asg, idx, on_solution, nodes, std::nullopt);
        };
        bool go = true;
        if (q == 0 && first) {
            go = visit(domains_[0][*first]);
        } else if (propagator_[q]) {
            if (auto b = propagate(q, asg))
                go = visit(*b);
        } else {
            for (auto b : domains_[q]) {
                go = visit(b);
                if (!go)
                    break;
            }
        }
        asg.erase(name);
        return go;
    }
};

inline Assignment to_assignment(const Instance &inst, const std::vector<NormalWord> &ball, const IndexVec &idx)
{
    Assignment a;
    for (std::size_t i = 0; i < inst.variables.size(); ++i)
        a[inst.variables[i]] = ball[idx[i]];
    return a;
}

inline std::optional<IndexVec> first_solution(DisjunctSearch &ds, unsigned threads,
                                              std::atomic<std::uint64_t> &nodes)
{
    std::size_t width = ds.first_domain_size();
    if (threads <= 1 || width <= 1) {
        std::optional<IndexVec> found;
        ds.run(
            [&](const IndexVec &v) {
                found = v;
                return false;
            },
            nodes);
        return found;
    }
    std::vector<std::optional<IndexVec>> per(width);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    auto worker = [&] {
        for (;;) {
            auto slot = next.fetch_add(1);
            if (slot >= width || slot > best.load())
                return;
            ds.run(
                [&](const IndexVec &v) {
                    per[slot] = v;
                    auto cur = best.load();
                    while (slot < cur && !best.compare_exchange_weak(cur, slot)) {
                    }
                    return false;
                },
                nodes, slot);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    for (auto &r : per)
        if (r)
            return r;
    return std::nullopt;
}

struct Prepared {
    std::vector<NormalWord> ball;
    std::map<NormalWord, std::size_t> index;
    std::vector<bool> live;
    bool all_shadow_unsat = false;
};

inline Prepared prepare(const Instance &inst, std::size_t bound, const SearchOptions &opt)
{
    Prepared pr;
    pr.ball = enumerate_ball(inst.presentation, bound, opt.cap);
    for (std::size_t i = 0; i < pr.ball.size(); ++i)
        pr.index[pr.ball[i]] = i;
    pr.live.assign(inst.disjuncts.size(), true);
    if (opt.use_shadow) {
        auto systems = abelian_shadow(inst);
        bool any = false;
        for (std::size_t i = 0; i < systems.size(); ++i) {
            pr.live[i] = solve_linear_system(systems[i]).status == Solvability::Sat;
            any = any || pr.live[i];
        }
        pr.all_shadow_unsat = !any;
    }
    return pr;
}

} // namespace detail

/// First satisfying assignment (all values in the radius-`bound` ball) in enumeration order.
inline SearchReport search(const Instance &inst, std::size_t bound, SearchOptions opt = {})
{
    auto start = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.bound = bound;
    if (bound > opt.cap)
        throw Error(ErrorKind::RadiusCapExceeded,
                    "bound " + std::to_string(bound) + " exceeds cap " + std::to_string(opt.cap));
    auto pr = detail::prepare(inst, bound, opt);
    std::atomic<std::uint64_t> nodes{0};
    if (pr.all_shadow_unsat) {
        rep.verdict = Verdict::UnsatByShadow;
    } else {
        unsigned threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
        std::optional<detail::IndexVec> best;
        for (std::size_t i = 0; i < inst.disjuncts.size(); ++i) {
            if (!pr.live[i])
                continue;
            detail::DisjunctSearch ds(inst, inst.disjuncts[i], pr.ball, pr.index, opt.enumerate_unused);
            auto r = detail::first_solution(ds, threads, nodes);
            if (r && (!best || *r < *best))
                best = r;
        }
        if (best) {
            rep.verdict = Verdict::Witness;
            rep.witness = detail::to_assignment(inst, pr.ball, *best);
            if (!evaluate(inst, rep.witness).satisfied)
                throw Error(ErrorKind::Internal, "search produced an assignment that fails evaluation");
        } else {
            rep.verdict = Verdict::NoSolutionUpToBound;
        }
    }
    rep.stats.nodes = nodes.load();
    rep.stats.millis = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    return rep;
}

/// Every satisfying assignment within the ball, in enumeration order, up to `limit`.
inline std::vector<Assignment> search_all(const Instance &inst, std::size_t bound, SearchOptions opt = {},
                                          std::size_t limit = std::numeric_limits<std::size_t>::max())
{
    auto pr = detail::prepare(inst, bound, opt);
    std::set<detail::IndexVec> found;
    std::atomic<std::uint64_t> nodes{0};
    for (std::size_t i = 0; i < inst.disjuncts.size(); ++i) {
        if (!pr.live[i])
            continue;
        detail::DisjunctSearch ds(inst, inst.disjuncts[i], pr.ball, pr.index, opt.enumerate_unused);
        ds.run(
            [&](const detail::IndexVec &v) {
                found.insert(v);
                return found.size() < limit;
            },
            nodes);
    }
    std::vector<Assignment> out;
    for (auto &v : found) {
        if (out.size() >= limit)
            break;
        out.push_back(detail::to_assignment(inst, pr.ball, v));
    }
    return out;
}

inline std::string stats_line(const SearchStats &s)
{
    return "stats nodes=" + std::to_string(s.nodes) + " millis=" + std::to_string(s.millis);
}

} // namespace grapheq
