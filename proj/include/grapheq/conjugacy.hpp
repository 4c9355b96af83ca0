#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace grapheq {

struct CyclicReduction {
    NormalWord core;
    NormalWord conjugator; // core = conjugator^-1 g conjugator
};

struct Block {
    NormalWord root;
    std::int64_t exponent = 1;
};

struct BlockDecomposition {
    std::vector<Block> blocks;
};

/// C(g) = h (prod <root_i> x <link>) h^-1
struct CentralizerDesc {
    NormalWord conjugator;
    std::vector<NormalWord> cyclic_parts;
    std::vector<std::int64_t> exponents;
    VertexSet link_vertices;

    bool contains(const Presentation &p, const NormalWord &x) const;
};

namespace detail {

struct MergePair {
    Vertex vertex;
    std::int64_t exponent; // exponent of the front piece
};

inline std::vector<std::size_t> front_pieces(const Presentation &p, const std::vector<Syllable> &s)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j)
            ok = p.adjacent(s[j].vertex, s[i].vertex);
        if (ok)
            out.push_back(i);
    }
    return out;
}

inline std::vector<std::size_t> end_pieces(const Presentation &p, const std::vector<Syllable> &s)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        bool ok = true;
        for (std::size_t j = i + 1; j < s.size() && ok; ++j)
            ok = p.adjacent(s[j].vertex, s[i].vertex);
        if (ok)
            out.push_back(i);
    }
    return out;
}

/// A front piece and a distinct end piece on one vertex whose merge shortens the cyclic word.
inline std::optional<MergePair> find_cyclic_merge(const Presentation &p, const NormalWord &w)
{
    auto &s = w.syllables();
    auto fronts = front_pieces(p, s);
    auto ends = end_pieces(p, s);
    std::optional<MergePair> best;
    for (auto f : fronts)
        for (auto l : ends) {
            if (f == l || s[f].vertex != s[l].vertex)
                continue;
            auto v = s[f].vertex;
            auto merged = syllable_cost(p, v, add_exponents(s[f].exponent, s[l].exponent));
            if (merged < syllable_cost(p, v, s[f].exponent) + syllable_cost(p, v, s[l].exponent))
                if (!best || v < best->vertex)
                    best = MergePair{v, s[f].exponent};
        }
    return best;
}

inline std::size_t conjugator_search_budget() { return 200000; }

} // namespace detail

inline bool is_cyclically_reduced(const Presentation &p, const NormalWord &g)
{
    return !detail::find_cyclic_merge(p, g);
}

inline CyclicReduction cyclically_reduce(const Presentation &p, const NormalWord &g)
{
    check_word(p, g);
    NormalWord w = g;
    NormalWord h;
    while (auto m = detail::find_cyclic_merge(p, w)) {
        auto x = generator(p, m->vertex, m->exponent);
        w = conjugate(p, w, x);
        h = multiply(p, h, x);
    }
    if (h.is_identity())
        return {w, h};
    auto target = geodesic_length(p, w);
    auto limit = static_cast<std::size_t>(geodesic_length(p, h));
    std::size_t seen = 0;
    std::vector<NormalWord> layer{NormalWord{}};
    auto lets = letters(p);
    for (std::size_t r = 0; r <= limit; ++r) {
        if (r > 0) {
            std::set<NormalWord> next;
            for (auto &u : layer)
                for (auto l : lets) {
                    auto x = multiply(p, u, normalize(p, {l}));
                    if (static_cast<std::size_t>(geodesic_length(p, x)) == r)
                        next.insert(std::move(x));
                }
            layer.assign(next.begin(), next.end());
        }
        for (auto &x : layer) {
            auto c = conjugate(p, g, x);
            if (geodesic_length(p, c) == target)
                return {c, x};
        }
        seen += layer.size();
        if (seen > detail::conjugator_search_budget())
            break;
    }
    return {w, h};
}

namespace detail {

inline void require_infinite_support(const Presentation &p, const NormalWord &g)
{
    for (auto v : support(g).elements())
        if (p.is_finite(v))
            throw Error(ErrorKind::FiniteOrderVertexInSupport,
                        "vertex " + p.name(v) + " has finite order");
}

/// Components of the non-commutation graph on `s`, ordered by least vertex.
inline std::vector<VertexSet> noncommuting_components(const Presentation &p, VertexSet s)
{
    std::vector<VertexSet> out;
    VertexSet left = s;
    while (!left.empty()) {
        VertexSet comp = VertexSet::single(left.front());
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            for (auto v : frontier.elements())
                next |= (s - p.neighbours(v)) - VertexSet::single(v);
            next = next - comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        left = left - comp;
    }
    return out;
}

struct Letter {
    Vertex vertex;
    int sign;
    bool operator==(const Letter &) const = default;
};

inline std::vector<Letter> expand_letters(const NormalWord &u)
{
    std::vector<Letter> out;
    for (auto &s : u.syllables()) {
        int sign = s.exponent > 0 ? 1 : -1;
        for (std::int64_t i = 0; i < (s.exponent > 0 ? s.exponent : -s.exponent); ++i)
            out.push_back({s.vertex, sign});
    }
    return out;
}

/// Largest n with u = r^n, trying the unique prefix ideal for each divisor.
inline Block extract_root(const Presentation &p, const NormalWord &u)
{
    auto lets = expand_letters(u);
    std::size_t len = lets.size();
    std::vector<std::pair<Letter, std::size_t>> counts;
    for (auto l : lets) {
        auto it = std::find_if(counts.begin(), counts.end(), [&](auto &c) { return c.first == l; });
        if (it == counts.end())
            counts.push_back({l, 1});
        else
            ++it->second;
    }
    for (std::size_t n = len; n >= 2; --n) {
        if (len % n != 0)
            continue;
        bool divisible = true;
        for (auto &c : counts)
            divisible = divisible && c.second % n == 0;
        if (!divisible)
            continue;
        std::vector<std::pair<Letter, std::size_t>> want;
        for (auto &c : counts)
            want.push_back({c.first, c.second / n});
        RawWord r;
        for (auto l : lets) {
            auto it = std::find_if(want.begin(), want.end(), [&](auto &c) { return c.first == l; });
            if (it->second > 0) {
                --it->second;
                r.push_back({l.vertex, l.sign});
            }
        }
        auto root = normalize(p, r);
        if (power(p, root, static_cast<std::int64_t>(n)) == u)
            return {root, static_cast<std::int64_t>(n)};
    }
    return {u, 1};
}

} // namespace detail

inline BlockDecomposition block_decomposition(const Presentation &p, const NormalWord &c)
{
    check_word(p, c);
    detail::require_infinite_support(p, c);
    if (!is_cyclically_reduced(p, c))
        throw Error(ErrorKind::NotCyclicallyReduced, to_string(p, c));
    BlockDecomposition out;
    for (auto comp : detail::noncommuting_components(p, support(c)))
        out.blocks.push_back(detail::extract_root(p, project(p, c, comp)));
    return out;
}

/// Vertices adjacent to every vertex of `s`.
inline VertexSet link_of(const Presentation &p, VertexSet s)
{
    VertexSet l = p.all();
    for (auto v : s.elements())
        l &= p.neighbours(v);
    return l;
}

inline CentralizerDesc centralizer_generators(const Presentation &p, const NormalWord &g)
{
    check_word(p, g);
    if (g.is_identity())
        throw Error(ErrorKind::IdentityElement, "centralizer of the identity is the whole group");
    detail::require_infinite_support(p, g);
    auto cr = cyclically_reduce(p, g);
    auto bd = block_decomposition(p, cr.core);
    CentralizerDesc d;
    d.conjugator = cr.conjugator;
    for (auto &b : bd.blocks) {
        d.cyclic_parts.push_back(b.root);
        d.exponents.push_back(b.exponent);
    }
    d.link_vertices = link_of(p, support(cr.core));
    return d;
}

inline bool CentralizerDesc::contains(const Presentation &p, const NormalWord &x) const
{
    auto y = conjugate(p, x, conjugator);
    VertexSet allowed = link_vertices;
    for (auto &r : cyclic_parts)
        allowed |= support(r);
    if (!support(y).subset_of(allowed))
        return false;
    for (auto &r : cyclic_parts) {
        auto yi = project(p, y, support(r));
        if (yi.is_identity())
            continue;
        auto ly = geodesic_length(p, yi);
        auto lr = geodesic_length(p, r);
        if (ly % lr != 0)
            return false;
        auto k = ly / lr;
        if (power(p, r, k) != yi && power(p, r, -k) != yi)
            return false;
    }
    return true;
}

inline bool is_in_centralizer(const Presentation &p, const NormalWord &g, const NormalWord &x)
{
    return commutator(p, x, g).is_identity();
}

} // namespace grapheq
