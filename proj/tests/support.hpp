#pragma once

#include <random>
#include <string>
#include <vector>

#include <grapheq/grapheq.hpp>

namespace fixtures {

using namespace grapheq;

inline Presentation graph(const std::string &text) { return parse_presentation(text); }

inline Presentation gamma1()
{
    return graph("vertex a inf\nvertex b inf\nvertex c inf\nvertex d inf\nedge a b\nedge b c\nedge c d\n");
}

inline Presentation gamma2()
{
    return graph("vertex a inf\nvertex b inf\nvertex c inf\nvertex d inf\n"
                 "edge a b\nedge a c\nedge b c\nedge c d\n");
}

inline Presentation pentagon()
{
    return graph("vertex a 2\nvertex b 2\nvertex c 2\nvertex d 2\nvertex e 2\n"
                 "edge a b\nedge b c\nedge c d\nedge d e\nedge e a\n");
}

inline Presentation f2() { return free_group({"a", "b"}); }
inline Presentation fxy() { return free_group({"x", "y"}); }
inline Presentation z2() { return graph("vertex a inf\nvertex b inf\nedge a b\n"); }
inline Presentation k3() { return graph("vertex a inf\nvertex b inf\nvertex c inf\nedge a b\nedge a c\nedge b c\n"); }
inline Presentation f2xz() { return graph("vertex a inf\nvertex b inf\nvertex c inf\nedge a c\nedge b c\n"); }
inline Presentation racg2() { return graph("vertex a 2\nvertex b 2\n"); }

/// Graph product with mixed orders, used for finite-order coverage.
inline Presentation mixed()
{
    return graph("vertex a 3\nvertex b inf\nvertex c 4\nedge a b\nedge b c\n");
}

inline NormalWord w(const Presentation &p, const std::string &s) { return parse_word(p, s); }

inline RawWord random_raw(const Presentation &p, std::mt19937 &rng, std::size_t max_len)
{
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<Vertex> vert(0, static_cast<Vertex>(p.size() - 1));
    std::uniform_int_distribution<int> ex(-3, 3);
    RawWord r;
    auto n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
        int e = 0;
        while (e == 0)
            e = ex(rng);
        r.push_back({vert(rng), e});
    }
    return r;
}

inline NormalWord random_word(const Presentation &p, std::mt19937 &rng, std::size_t max_len)
{
    return normalize(p, random_raw(p, rng, max_len));
}

} // namespace fixtures
