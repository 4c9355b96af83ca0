#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "error.hpp"
#include "presentation.hpp"
#include "word.hpp"

namespace grapheq {

/// Image in G^ab. One coordinate per vertex; finite-order coordinates kept in [0, k).
class AbelVector {
public:
    AbelVector() = default;
    explicit AbelVector(std::size_t n) : c_(n, 0) {}

    std::size_t size() const { return c_.size(); }
    std::int64_t operator[](Vertex v) const { return c_.at(v); }
    const std::vector<std::int64_t> &coordinates() const { return c_; }
    bool is_zero() const
    {
        for (auto x : c_)
            if (x != 0)
                return false;
        return true;
    }

    static AbelVector from(const Presentation &p, std::vector<std::int64_t> c)
    {
        if (c.size() != p.size())
            throw Error(ErrorKind::PresentationMismatch, "abelian vector size mismatch");
        AbelVector a(p.size());
        for (Vertex v = 0; v < p.size(); ++v)
            a.c_[v] = residue(p, v, c[v]);
        return a;
    }

    AbelVector plus(const Presentation &p, const AbelVector &o) const
    {
        auto c = c_;
        for (Vertex v = 0; v < c.size(); ++v)
            c[v] = detail::add_exponents(c[v], o.c_.at(v));
        return from(p, std::move(c));
    }

    AbelVector scaled(const Presentation &p, std::int64_t k) const
    {
        auto c = c_;
        for (auto &x : c)
            if (__builtin_mul_overflow(x, k, &x))
                throw Error(ErrorKind::Overflow, "abelian coordinate overflow");
        return from(p, std::move(c));
    }

    AbelVector negated(const Presentation &p) const { return scaled(p, -1); }

    bool operator==(const AbelVector &) const = default;

    static std::int64_t residue(const Presentation &p, Vertex v, std::int64_t x)
    {
        auto k = p.order(v);
        if (k == Presentation::infinite)
            return x;
        auto r = x % k;
        return r < 0 ? r + k : r;
    }

private:
    std::vector<std::int64_t> c_;
};

inline AbelVector abelianize(const Presentation &p, const NormalWord &a)
{
    std::vector<std::int64_t> c(p.size(), 0);
    for (auto &s : a.syllables()) {
        p.check(s.vertex);
        c[s.vertex] = detail::add_exponents(c[s.vertex], s.exponent);
    }
    return AbelVector::from(p, std::move(c));
}

/// Canonical element with the given abelian image: prod v^{a_v} in vertex order.
inline NormalWord ab_representative(const Presentation &p, const AbelVector &a)
{
    RawWord r;
    for (Vertex v = 0; v < p.size(); ++v)
        if (a[v] != 0)
            r.push_back({v, a[v]});
    return normalize(p, r);
}

/// Vertex v is abelian-primitive iff its order is infinite.
inline bool is_abelian_primitive(const Presentation &p, Vertex v)
{
    return !p.is_finite(v);
}

inline void require_abelian_primitive(const Presentation &p, Vertex v)
{
    if (!is_abelian_primitive(p, v))
        throw Error(ErrorKind::NotAbelianPrimitive, "vertex " + p.name(v) + " has finite order");
}

inline std::int64_t exponent_sum(const Presentation &p, const NormalWord &a, Vertex v)
{
    require_abelian_primitive(p, v);
    std::int64_t n = 0;
    for (auto &s : a.syllables())
        if (s.vertex == v)
            n = detail::add_exponents(n, s.exponent);
    return n;
}

inline bool in_K(const Presentation &p, const NormalWord &a, VertexSet s)
{
    for (auto v : s.elements())
        require_abelian_primitive(p, v);
    for (auto v : s.elements())
        if (exponent_sum(p, a, v) != 0)
            return false;
    return true;
}

/// |g|_x = |h|_x for every x in the set.
struct RelSame {
    VertexSet vertices;
    NormalWord g, h;
};

/// |g|_s = |h|_t
struct RelCross {
    Vertex s = 0, t = 0;
    NormalWord g, h;
};

/// |g|_v = |g|_u for all v, u in the set.
struct RelDiag {
    VertexSet vertices;
    NormalWord g;
};

using Relation = std::variant<RelSame, RelCross, RelDiag>;

inline bool relation_holds(const Presentation &p, const Relation &rel)
{
    if (auto *r = std::get_if<RelSame>(&rel)) {
        for (auto v : r->vertices.elements())
            require_abelian_primitive(p, v);
        for (auto v : r->vertices.elements())
            if (exponent_sum(p, r->g, v) != exponent_sum(p, r->h, v))
                return false;
        return true;
    }
    if (auto *r = std::get_if<RelCross>(&rel))
        return exponent_sum(p, r->g, r->s) == exponent_sum(p, r->h, r->t);
    auto &r = std::get<RelDiag>(rel);
    auto vs = r.vertices.elements();
    for (auto v : vs)
        require_abelian_primitive(p, v);
    for (auto v : vs)
        if (exponent_sum(p, r.g, v) != exponent_sum(p, r.g, vs.front()))
            return false;
    return true;
}

inline std::string to_string(const Presentation &p, const AbelVector &a)
{
    std::string out;
    for (Vertex v = 0; v < p.size(); ++v) {
        if (!out.empty())
            out += ' ';
        out += p.name(v) + ':' + std::to_string(a[v]);
    }
    return out;
}

} // namespace grapheq
