#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace grapheq {

using Vertex = std::uint32_t;

inline constexpr std::size_t max_vertices = 64;

/// Set of vertex indices, at most 64 of them.
class VertexSet {
public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr VertexSet single(Vertex v) { return VertexSet(std::uint64_t{1} << v); }
    static constexpr VertexSet first_n(std::size_t n)
    {
        return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr bool contains(Vertex v) const { return (bits_ >> v) & 1u; }
    constexpr void insert(Vertex v) { bits_ |= std::uint64_t{1} << v; }
    constexpr void erase(Vertex v) { bits_ &= ~(std::uint64_t{1} << v); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr Vertex front() const { return static_cast<Vertex>(std::countr_zero(bits_)); }

    constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
    constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
    constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
    constexpr VertexSet &operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
    constexpr VertexSet &operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
    constexpr auto operator<=>(const VertexSet &) const = default;

    std::vector<Vertex> elements() const
    {
        std::vector<Vertex> out;
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(static_cast<Vertex>(std::countr_zero(b)));
        return out;
    }

private:
    std::uint64_t bits_ = 0;
};

/// Graph with cyclic vertex groups. Order 0 means infinite.
class Presentation {
public:
    static constexpr std::int64_t infinite = 0;

    Vertex add_vertex(std::string name, std::int64_t order = infinite)
    {
        if (name.empty())
            throw Error(ErrorKind::ParseError, "empty vertex name");
        if (find(name))
            throw Error(ErrorKind::ParseError, "duplicate vertex '" + name + "'");
        if (order != infinite && order < 2)
            throw Error(ErrorKind::ParseError, "vertex order must be inf or >= 2");
        if (names_.size() >= max_vertices)
            throw Error(ErrorKind::ParseError, "too many vertices");
        names_.push_back(std::move(name));
        orders_.push_back(order);
        adjacency_.emplace_back();
        return static_cast<Vertex>(names_.size() - 1);
    }

    void add_edge(Vertex u, Vertex v)
    {
        check(u);
        check(v);
        if (u == v)
            throw Error(ErrorKind::ParseError, "loop at vertex '" + names_[u] + "'");
        adjacency_[u].insert(v);
        adjacency_[v].insert(u);
    }

    void add_edge(std::string_view u, std::string_view v) { add_edge(index(u), index(v)); }

    std::size_t size() const { return names_.size(); }
    const std::string &name(Vertex v) const { check(v); return names_[v]; }
    const std::vector<std::string> &names() const { return names_; }
    std::int64_t order(Vertex v) const { check(v); return orders_[v]; }
    bool is_finite(Vertex v) const { return order(v) != infinite; }
    bool adjacent(Vertex u, Vertex v) const { check(u); return adjacency_[u].contains(v); }
    bool commute(Vertex u, Vertex v) const { return u == v || adjacent(u, v); }
    VertexSet neighbours(Vertex v) const { check(v); return adjacency_[v]; }
    VertexSet all() const { return VertexSet::first_n(size()); }

    bool all_infinite() const
    {
        for (auto o : orders_)
            if (o != infinite)
                return false;
        return true;
    }

    bool all_finite() const
    {
        for (auto o : orders_)
            if (o == infinite)
                return false;
        return true;
    }

    std::size_t edge_count() const
    {
        std::size_t n = 0;
        for (auto &a : adjacency_)
            n += a.size();
        return n / 2;
    }

    std::optional<Vertex> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return static_cast<Vertex>(i);
        return std::nullopt;
    }

    Vertex index(std::string_view name) const
    {
        if (auto v = find(name))
            return *v;
        throw Error(ErrorKind::UnknownVertex, "unknown vertex '" + std::string(name) + "'");
    }

    VertexSet set_of(const std::vector<std::string> &names) const
    {
        VertexSet s;
        for (auto &n : names)
            s.insert(index(n));
        return s;
    }

    void check(Vertex v) const
    {
        if (v >= names_.size())
            throw Error(ErrorKind::UnknownVertex, "vertex index " + std::to_string(v) + " out of range");
    }

    bool operator==(const Presentation &) const = default;

private:
    std::vector<std::string> names_;
    std::vector<std::int64_t> orders_;
    std::vector<VertexSet> adjacency_;
};

/// Subgraph induced on `keep`, vertices in the original order.
/// `map` receives the original index of each new vertex.
inline Presentation induced(const Presentation &p, VertexSet keep, std::vector<Vertex> *map = nullptr)
{
    Presentation q;
    auto verts = keep.elements();
    for (auto v : verts)
        q.add_vertex(p.name(v), p.order(v));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (p.adjacent(verts[i], verts[j]))
                q.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    if (map)
        *map = verts;
    return q;
}

namespace detail {

inline bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

inline bool is_identifier(std::string_view s)
{
    if (s.empty() || !is_ident_start(s[0]))
        return false;
    for (char c : s)
        if (!is_ident_char(c))
            return false;
    return true;
}

inline std::string strip_comment(const std::string &line)
{
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::int64_t parse_order(const std::string &tok, std::size_t line)
{
    if (tok == "inf")
        return Presentation::infinite;
    std::int64_t k = 0;
    try {
        std::size_t used = 0;
        k = std::stoll(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument(tok);
    } catch (const std::exception &) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad order '" + tok + "'");
    }
    return k;
}

/// Handles one `vertex` / `edge` line. Returns false if the keyword is neither.
inline bool parse_graph_line(Presentation &p, const std::vector<std::string> &toks, std::size_t line)
{
    auto where = [&] { return "line " + std::to_string(line) + ": "; };
    if (toks[0] == "vertex") {
        if (toks.size() != 3 || !is_identifier(toks[1]))
            throw Error(ErrorKind::ParseError, where() + "expected 'vertex <name> <order|inf>'");
        try {
            p.add_vertex(toks[1], parse_order(toks[2], line));
        } catch (const Error &e) {
            throw Error(ErrorKind::ParseError, where() + e.what());
        }
        return true;
    }
    if (toks[0] == "edge") {
        if (toks.size() != 3)
            throw Error(ErrorKind::ParseError, where() + "expected 'edge <u> <v>'");
        auto u = p.find(toks[1]);
        auto v = p.find(toks[2]);
        if (!u || !v)
            throw Error(ErrorKind::UnknownVertex, where() + "edge uses undeclared vertex");
        if (*u == *v)
            throw Error(ErrorKind::ParseError, where() + "loop edge");
        p.add_edge(*u, *v);
        return true;
    }
    return false;
}

inline std::vector<std::string> split_ws(const std::string &s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

} // namespace detail

inline Presentation parse_presentation(const std::string &text)
{
    Presentation p;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        auto toks = detail::split_ws(detail::strip_comment(raw));
        if (toks.empty())
            continue;
        if (!detail::parse_graph_line(p, toks, line))
            throw Error(ErrorKind::ParseError,
                        "line " + std::to_string(line) + ": unknown keyword '" + toks[0] + "'");
    }
    return p;
}

inline Presentation read_presentation(const std::string &path)
{
    return parse_presentation(detail::read_file(path));
}

inline std::string to_text(const Presentation &p)
{
    std::ostringstream out;
    for (Vertex v = 0; v < p.size(); ++v) {
        out << "vertex " << p.name(v) << ' ';
        if (p.is_finite(v))
            out << p.order(v);
        else
            out << "inf";
        out << '\n';
    }
    for (Vertex u = 0; u < p.size(); ++u)
        for (Vertex v = u + 1; v < p.size(); ++v)
            if (p.adjacent(u, v))
                out << "edge " << p.name(u) << ' ' << p.name(v) << '\n';
    return out.str();
}

inline std::string to_string(const Presentation &p, VertexSet s)
{
    std::string out = "{";
    bool first = true;
    for (auto v : s.elements()) {
        if (!first)
            out += ',';
        out += p.name(v);
        first = false;
    }
    return out + "}";
}

/// Free group on the given generator names.
inline Presentation free_group(const std::vector<std::string> &names)
{
    Presentation p;
    for (auto &n : names)
        p.add_vertex(n);
    return p;
}

} // namespace grapheq
