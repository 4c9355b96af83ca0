#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "presentation.hpp"

namespace grapheq {

struct StarLink {
    VertexSet star;
    VertexSet link;
};

inline StarLink star_link(const Presentation &p, VertexSet s)
{
    if (s.empty())
        throw Error(ErrorKind::EmptySet, "star/link of the empty set");
    if (!s.subset_of(p.all()))
        throw Error(ErrorKind::UnknownVertex, "vertex set outside presentation");
    VertexSet link = p.all();
    for (auto v : s.elements())
        link &= p.neighbours(v);
    return {s | link, link};
}

inline VertexSet star(const Presentation &p, Vertex v)
{
    return p.neighbours(v) | VertexSet::single(v);
}

/// v <= u iff star(v) is contained in star(u).
inline bool vertex_leq(const Presentation &p, Vertex v, Vertex u)
{
    p.check(v);
    p.check(u);
    return star(p, v).subset_of(star(p, u));
}

inline VertexSet minimal_vertices(const Presentation &p)
{
    VertexSet out;
    for (Vertex v = 0; v < p.size(); ++v) {
        bool minimal = true;
        for (Vertex u = 0; u < p.size() && minimal; ++u)
            if (u != v && star(p, u).subset_of(star(p, v)) && star(p, u) != star(p, v))
                minimal = false;
        if (minimal)
            out.insert(v);
    }
    return out;
}

/// Minimal vertices grouped by star, ordered by least member.
inline std::vector<VertexSet> weak_modules(const Presentation &p)
{
    std::vector<VertexSet> out;
    auto mins = minimal_vertices(p);
    VertexSet left = mins;
    while (!left.empty()) {
        auto v = left.front();
        VertexSet module;
        for (auto u : left.elements())
            if (star(p, u) == star(p, v))
                module.insert(u);
        out.push_back(module);
        left = left - module;
    }
    return out;
}

inline std::optional<std::pair<VertexSet, VertexSet>> nonadjacent_weak_module_pair(const Presentation &p)
{
    auto mods = weak_modules(p);
    for (std::size_t i = 0; i < mods.size(); ++i)
        for (std::size_t j = i + 1; j < mods.size(); ++j) {
            bool apart = true;
            for (auto v : mods[i].elements())
                apart = apart && (p.neighbours(v) & mods[j]).empty();
            if (apart)
                return std::make_pair(mods[i], mods[j]);
        }
    return std::nullopt;
}

/// Connected components of the complement graph, ordered by least vertex.
inline std::vector<VertexSet> direct_product_decomposition(const Presentation &p)
{
    std::vector<VertexSet> out;
    VertexSet left = p.all();
    while (!left.empty()) {
        VertexSet comp = VertexSet::single(left.front());
        VertexSet frontier = comp;
        while (!frontier.empty()) {
            VertexSet next;
            for (auto v : frontier.elements())
                next |= p.all() - star(p, v);
            next = next - comp;
            comp |= next;
            frontier = next;
        }
        out.push_back(comp);
        left = left - comp;
    }
    return out;
}

inline bool is_clique(const Presentation &p, VertexSet s)
{
    for (auto v : s.elements())
        if (!(s - VertexSet::single(v)).subset_of(p.neighbours(v)))
            return false;
    return true;
}

} // namespace grapheq
