#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace grapheq;
using namespace fixtures;

namespace {

std::int64_t brute_min_conjugate_length(const Presentation &p, const NormalWord &g, std::size_t radius)
{
    auto best = geodesic_length(p, g);
    for (auto &h : enumerate_ball(p, radius))
        best = std::min(best, geodesic_length(p, conjugate(p, g, h)));
    return best;
}

/// Shortlex-first h in the ball whose conjugate reaches the given length.
NormalWord brute_first_conjugator(const Presentation &p, const NormalWord &g, std::int64_t len, std::size_t radius)
{
    for (auto &h : enumerate_ball(p, radius))
        if (geodesic_length(p, conjugate(p, g, h)) == len)
            return h;
    return NormalWord{};
}

} // namespace

TEST(CyclicReduce, OneStepConjugation)
{
    auto p = fxy();
    auto r = cyclically_reduce(p, w(p, "x y x^-1"));
    EXPECT_EQ(to_string(p, r.core), "y");
    EXPECT_EQ(to_string(p, r.conjugator), "x");
}

TEST(CyclicReduce, AlreadyReduced)
{
    auto p = fxy();
    auto r = cyclically_reduce(p, w(p, "x y"));
    EXPECT_EQ(to_string(p, r.core), "x y");
    EXPECT_TRUE(r.conjugator.is_identity());
}

TEST(CyclicReduce, ConjugatorInPath)
{
    auto p = gamma1();
    auto g = w(p, "b a c a^-1 b^-1");
    auto r = cyclically_reduce(p, g);
    EXPECT_EQ(to_string(p, r.core), "c");
    EXPECT_EQ(r.conjugator, brute_first_conjugator(p, g, 1, 2));
    EXPECT_EQ(to_string(p, r.conjugator), "a");
}

TEST(CyclicReduce, MatchesExhaustiveSearch)
{
    for (auto p : {gamma1(), f2(), mixed(), pentagon()}) {
        for (auto &g : enumerate_ball(p, 3)) {
            auto r = cyclically_reduce(p, g);
            EXPECT_EQ(conjugate(p, g, r.conjugator), r.core);
            auto radius = static_cast<std::size_t>(geodesic_length(p, g));
            auto best = brute_min_conjugate_length(p, g, radius);
            ASSERT_EQ(geodesic_length(p, r.core), best) << to_string(p, g);
            EXPECT_EQ(r.conjugator, brute_first_conjugator(p, g, best, radius)) << to_string(p, g);
        }
    }
}

TEST(Blocks, CommutingPowers)
{
    auto p = gamma1();
    auto bd = block_decomposition(p, w(p, "a^2 b^3"));
    ASSERT_EQ(bd.blocks.size(), 2u);
    EXPECT_EQ(to_string(p, bd.blocks[0].root), "a");
    EXPECT_EQ(bd.blocks[0].exponent, 2);
    EXPECT_EQ(to_string(p, bd.blocks[1].root), "b");
    EXPECT_EQ(bd.blocks[1].exponent, 3);
}

TEST(Blocks, PrimitiveFreeWord)
{
    auto p = fxy();
    auto bd = block_decomposition(p, w(p, "x y"));
    ASSERT_EQ(bd.blocks.size(), 1u);
    EXPECT_EQ(to_string(p, bd.blocks[0].root), "x y");
    EXPECT_EQ(bd.blocks[0].exponent, 1);
}

TEST(Blocks, SquareOfNonCommutingPair)
{
    auto p = gamma1();
    auto c = w(p, "a c a c");
    auto bd = block_decomposition(p, c);
    ASSERT_EQ(bd.blocks.size(), 1u);
    EXPECT_EQ(to_string(p, bd.blocks[0].root), "a c");
    EXPECT_EQ(bd.blocks[0].exponent, 2);
    // no shorter word squares to c
    for (auto &r : enumerate_ball(p, 1))
        EXPECT_NE(power(p, r, 4), c);
}

TEST(Blocks, Errors)
{
    auto p = fxy();
    try {
        block_decomposition(p, w(p, "x y x^-1"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotCyclicallyReduced);
    }
    auto q = pentagon();
    try {
        block_decomposition(q, w(q, "a c"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::FiniteOrderVertexInSupport);
    }
}

TEST(Blocks, ReassembleAndRootsPrimitive)
{
    for (auto p : {gamma1(), gamma2(), f2()}) {
        auto ball = enumerate_ball(p, 4);
        for (auto &g : ball) {
            auto core = cyclically_reduce(p, g).core;
            auto bd = block_decomposition(p, core);
            NormalWord acc;
            for (std::size_t i = 0; i < bd.blocks.size(); ++i) {
                auto &b = bd.blocks[i];
                acc = multiply(p, acc, power(p, b.root, b.exponent));
                for (std::size_t j = 0; j < bd.blocks.size(); ++j)
                    EXPECT_TRUE(is_in_centralizer(p, b.root, bd.blocks[j].root));
                auto len = geodesic_length(p, b.root);
                for (auto &r : ball)
                    for (std::int64_t n = 2; n <= len; ++n)
                        if (geodesic_length(p, r) * n == len) {
                            EXPECT_NE(power(p, r, n), b.root) << to_string(p, b.root);
                        }
            }
            EXPECT_EQ(acc, core) << to_string(p, g);
        }
    }
}

TEST(Centralizer, GeneratorOfPath)
{
    auto p = gamma1();
    auto d = centralizer_generators(p, w(p, "a"));
    ASSERT_EQ(d.cyclic_parts.size(), 1u);
    EXPECT_EQ(to_string(p, d.cyclic_parts[0]), "a");
    EXPECT_EQ(to_string(p, d.link_vertices), "{b}");
}

TEST(Centralizer, ProductOfEndpoints)
{
    auto p = gamma1();
    auto g = w(p, "a d");
    auto d = centralizer_generators(p, g);
    ASSERT_EQ(d.cyclic_parts.size(), 1u);
    EXPECT_EQ(to_string(p, d.cyclic_parts[0]), "a d");
    EXPECT_TRUE(d.link_vertices.empty());
    for (auto &x : enumerate_ball(p, 4))
        EXPECT_EQ(d.contains(p, x), is_in_centralizer(p, g, x)) << to_string(p, x);
}

TEST(Centralizer, SquareHasRootCentralizer)
{
    auto p = fxy();
    auto d = centralizer_generators(p, w(p, "x^2"));
    ASSERT_EQ(d.cyclic_parts.size(), 1u);
    EXPECT_EQ(to_string(p, d.cyclic_parts[0]), "x");
    EXPECT_EQ(d.exponents[0], 2);
    EXPECT_TRUE(d.link_vertices.empty());
    EXPECT_TRUE(d.contains(p, w(p, "x")));
}

TEST(Centralizer, Errors)
{
    auto p = gamma1();
    EXPECT_THROW(centralizer_generators(p, NormalWord{}), Error);
    auto q = mixed();
    try {
        centralizer_generators(q, w(q, "a b"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::FiniteOrderVertexInSupport);
    }
}

TEST(Centralizer, CommutatorTest)
{
    auto p = gamma1();
    EXPECT_TRUE(is_in_centralizer(p, w(p, "a"), w(p, "b")));
    EXPECT_FALSE(is_in_centralizer(p, w(p, "a"), w(p, "c")));
    auto g = w(p, "a c b^-1");
    EXPECT_TRUE(is_in_centralizer(p, g, g));
}

TEST(Centralizer, DescriptionAgreesWithCommutatorTest)
{
    for (auto p : {gamma2(), f2(), z2()}) {
        auto ball = enumerate_ball(p, 2);
        auto wide = enumerate_ball(p, 3);
        for (auto &g : ball) {
            if (g.is_identity())
                continue;
            auto d = centralizer_generators(p, g);
            for (auto &x : wide)
                EXPECT_EQ(d.contains(p, x), is_in_centralizer(p, g, x)) << to_string(p, g) << " / " << to_string(p, x);
        }
    }
}

TEST(Centralizer, GeneratedProductsCommute)
{
    auto p = gamma1();
    for (auto &g : enumerate_ball(p, 3)) {
        if (g.is_identity())
            continue;
        auto d = centralizer_generators(p, g);
        std::vector<NormalWord> link_words;
        for (auto &x : enumerate_ball(p, 2))
            if (support(x).subset_of(d.link_vertices))
                link_words.push_back(x);
        std::vector<NormalWord> cores{NormalWord{}};
        for (auto &r : d.cyclic_parts) {
            std::vector<NormalWord> next;
            for (auto &c : cores)
                for (std::int64_t k = -2; k <= 2; ++k)
                    next.push_back(multiply(p, c, power(p, r, k)));
            cores = std::move(next);
        }
        auto hinv = invert(p, d.conjugator);
        for (auto &c : cores)
            for (auto &l : link_words) {
                auto x = product(p, {d.conjugator, c, l, hinv});
                EXPECT_TRUE(is_in_centralizer(p, g, x));
                EXPECT_TRUE(d.contains(p, x));
            }
    }
}
