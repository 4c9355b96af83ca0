#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "presentation.hpp"

namespace grapheq {

struct Syllable {
    Vertex vertex = 0;
    std::int64_t exponent = 0;

    auto operator<=>(const Syllable &) const = default;
};

/// Unreduced input word: any exponents, zeros allowed.
using RawWord = std::vector<Syllable>;

/// Canonical geodesic representative. Build with normalize().
class NormalWord {
public:
    NormalWord() = default;

    const std::vector<Syllable> &syllables() const { return syl_; }
    bool is_identity() const { return syl_.empty(); }
    std::size_t syllable_count() const { return syl_.size(); }

    /// Wraps syllables already known to be canonical.
    static NormalWord trusted(std::vector<Syllable> s)
    {
        NormalWord w;
        w.syl_ = std::move(s);
        return w;
    }

    auto operator<=>(const NormalWord &) const = default;
    bool operator==(const NormalWord &) const = default;

private:
    std::vector<Syllable> syl_;
};

/// Exponent reduced into {-(ceil(k/2)-1), ..., floor(k/2)} for finite k.
inline std::int64_t reduce_exponent(const Presentation &p, Vertex v, std::int64_t e)
{
    auto k = p.order(v);
    if (k == Presentation::infinite)
        return e;
    auto r = e % k;
    if (r < 0)
        r += k;
    if (r > k / 2)
        r -= k;
    return r;
}

inline std::int64_t syllable_cost(const Presentation &p, Vertex v, std::int64_t e)
{
    auto k = p.order(v);
    auto a = e < 0 ? -e : e;
    if (k == Presentation::infinite)
        return a;
    a %= k;
    return std::min(a, k - a);
}

namespace detail {

inline std::int64_t add_exponents(std::int64_t a, std::int64_t b)
{
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "exponent overflow");
    return r;
}

/// Merges `s` into a reduced syllable list.
inline void push_reduced(const Presentation &p, std::vector<Syllable> &out, Syllable s)
{
    s.exponent = reduce_exponent(p, s.vertex, s.exponent);
    if (s.exponent == 0)
        return;
    for (std::size_t i = out.size(); i > 0; --i) {
        auto &t = out[i - 1];
        if (t.vertex == s.vertex) {
            auto e = reduce_exponent(p, s.vertex, add_exponents(t.exponent, s.exponent));
            if (e == 0)
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i - 1));
            else
                t.exponent = e;
            return;
        }
        if (!p.adjacent(t.vertex, s.vertex))
            break;
    }
    out.push_back(s);
}

/// Lex-least linear extension of the dependence order on a reduced syllable list.
inline std::vector<Syllable> canonical_order(const Presentation &p, const std::vector<Syllable> &in)
{
    std::size_t n = in.size();
    std::vector<Syllable> out;
    out.reserve(n);
    std::vector<int> indeg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!p.commute(in[j].vertex, in[i].vertex))
                ++indeg[i];
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && indeg[i] == 0 && (best == n || in[i].vertex < in[best].vertex))
                best = i;
        done[best] = true;
        out.push_back(in[best]);
        for (std::size_t i = best + 1; i < n; ++i)
            if (!done[i] && !p.commute(in[best].vertex, in[i].vertex))
                --indeg[i];
    }
    return out;
}

} // namespace detail

inline NormalWord normalize(const Presentation &p, const RawWord &w)
{
    std::vector<Syllable> red;
    red.reserve(w.size());
    for (auto s : w) {
        p.check(s.vertex);
        detail::push_reduced(p, red, s);
    }
    return NormalWord::trusted(detail::canonical_order(p, red));
}

/// Throws PresentationMismatch unless `a` is a canonical word over `p`.
inline void check_word(const Presentation &p, const NormalWord &a)
{
    for (auto &s : a.syllables()) {
        if (s.vertex >= p.size())
            throw Error(ErrorKind::PresentationMismatch, "word uses vertex outside presentation");
        if (s.exponent == 0 || reduce_exponent(p, s.vertex, s.exponent) != s.exponent)
            throw Error(ErrorKind::PresentationMismatch, "exponent out of range for vertex " + p.name(s.vertex));
    }
}

inline NormalWord multiply(const Presentation &p, const NormalWord &a, const NormalWord &b)
{
    check_word(p, a);
    check_word(p, b);
    std::vector<Syllable> red = a.syllables();
    for (auto s : b.syllables())
        detail::push_reduced(p, red, s);
    return NormalWord::trusted(detail::canonical_order(p, red));
}

inline NormalWord invert(const Presentation &p, const NormalWord &a)
{
    check_word(p, a);
    RawWord r;
    r.reserve(a.syllable_count());
    for (auto it = a.syllables().rbegin(); it != a.syllables().rend(); ++it)
        r.push_back({it->vertex, -it->exponent});
    return normalize(p, r);
}

/// a^n for any integer n.
inline NormalWord power(const Presentation &p, const NormalWord &a, std::int64_t n)
{
    NormalWord base = n < 0 ? invert(p, a) : a;
    std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    NormalWord result;
    while (m != 0) {
        if (m & 1u)
            result = multiply(p, result, base);
        m >>= 1;
        if (m != 0)
            base = multiply(p, base, base);
    }
    return result;
}

inline NormalWord generator(const Presentation &p, Vertex v, std::int64_t e = 1)
{
    return normalize(p, {{v, e}});
}

inline NormalWord product(const Presentation &p, const std::vector<NormalWord> &ws)
{
    RawWord r;
    for (auto &w : ws)
        r.insert(r.end(), w.syllables().begin(), w.syllables().end());
    return normalize(p, r);
}

/// h^-1 g h
inline NormalWord conjugate(const Presentation &p, const NormalWord &g, const NormalWord &h)
{
    return product(p, {invert(p, h), g, h});
}

/// x y x^-1 y^-1
inline NormalWord commutator(const Presentation &p, const NormalWord &x, const NormalWord &y)
{
    return product(p, {x, y, invert(p, x), invert(p, y)});
}

inline std::int64_t geodesic_length(const Presentation &p, const NormalWord &a)
{
    std::int64_t n = 0;
    for (auto &s : a.syllables())
        n += syllable_cost(p, s.vertex, s.exponent);
    return n;
}

inline VertexSet support(const NormalWord &a)
{
    VertexSet s;
    for (auto &x : a.syllables())
        s.insert(x.vertex);
    return s;
}

/// Image under the retraction killing every vertex outside `keep`.
inline NormalWord project(const Presentation &p, const NormalWord &a, VertexSet keep)
{
    RawWord r;
    for (auto &s : a.syllables())
        if (keep.contains(s.vertex))
            r.push_back(s);
    return normalize(p, r);
}

/// Length first, then lexicographic on syllables.
inline bool shortlex_less(const Presentation &p, const NormalWord &a, const NormalWord &b)
{
    auto la = geodesic_length(p, a);
    auto lb = geodesic_length(p, b);
    if (la != lb)
        return la < lb;
    return a < b;
}

/// Generators and inverses, one entry per distinct element.
inline std::vector<Syllable> letters(const Presentation &p)
{
    std::vector<Syllable> out;
    for (Vertex v = 0; v < p.size(); ++v) {
        out.push_back({v, 1});
        if (p.order(v) != 2)
            out.push_back({v, -1});
    }
    return out;
}

/// Spheres of radius 0..radius, each sorted lexicographically.
inline std::vector<std::vector<NormalWord>> spheres(const Presentation &p, std::size_t radius)
{
    std::vector<std::vector<NormalWord>> out;
    out.push_back({NormalWord{}});
    auto lets = letters(p);
    for (std::size_t r = 1; r <= radius; ++r) {
        std::set<NormalWord> next;
        for (auto &w : out.back())
            for (auto l : lets) {
                auto x = multiply(p, w, normalize(p, {l}));
                if (static_cast<std::size_t>(geodesic_length(p, x)) == r)
                    next.insert(std::move(x));
            }
        out.emplace_back(next.begin(), next.end());
    }
    return out;
}

inline std::string to_string(const Presentation &p, const NormalWord &a)
{
    if (a.is_identity())
        return "1";
    std::string out;
    for (auto &s : a.syllables()) {
        if (!out.empty())
            out += ' ';
        out += p.name(s.vertex);
        if (s.exponent != 1)
            out += '^' + std::to_string(s.exponent);
    }
    return out;
}

/// Whitespace separated `name`, `name^k`, `name^-k`; `1` is the identity.
inline RawWord parse_raw_word(const Presentation &p, const std::string &text)
{
    RawWord out;
    for (auto &tok : detail::split_ws(text)) {
        if (tok == "1")
            continue;
        auto caret = tok.find('^');
        std::string name = tok.substr(0, caret);
        std::int64_t e = 1;
        if (caret != std::string::npos) {
            auto es = tok.substr(caret + 1);
            try {
                std::size_t used = 0;
                e = std::stoll(es, &used);
                if (used != es.size())
                    throw std::invalid_argument(es);
            } catch (const std::exception &) {
                throw Error(ErrorKind::ParseError, "bad exponent in '" + tok + "'");
            }
        }
        out.push_back({p.index(name), e});
    }
    return out;
}

inline NormalWord parse_word(const Presentation &p, const std::string &text)
{
    return normalize(p, parse_raw_word(p, text));
}

} // namespace grapheq
