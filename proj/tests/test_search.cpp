#include <gtest/gtest.h>

#include "oracle/cayley_oracle.hpp"
#include "oracle/enumeration.hpp"
#include "oracle/random_instance.hpp"
#include "support.hpp"

using namespace grapheq;
using namespace fixtures;

namespace {

Instance load(const std::string &name) { return read_instance(std::string(GRAPHEQ_DATA_DIR) + "/" + name); }

SearchOptions full()
{
    SearchOptions o;
    o.enumerate_unused = true;
    return o;
}

std::set<oracle::Tuple> as_tuples(const Instance &inst, const std::vector<Assignment> &all)
{
    std::set<oracle::Tuple> out;
    for (auto &a : all) {
        oracle::Tuple t;
        for (auto &v : inst.variables)
            t.push_back(a.at(v));
        out.insert(t);
    }
    return out;
}

/// First tuple of `sols` when tuples are ordered by ball position, first variable most significant.
std::optional<oracle::Tuple> ball_first(const std::vector<NormalWord> &ball, const std::set<oracle::Tuple> &sols)
{
    std::map<NormalWord, std::size_t> pos;
    for (std::size_t i = 0; i < ball.size(); ++i)
        pos[ball[i]] = i;
    std::optional<std::vector<std::size_t>> best;
    std::optional<oracle::Tuple> out;
    for (auto &t : sols) {
        std::vector<std::size_t> k;
        for (auto &x : t)
            k.push_back(pos.at(x));
        if (!best || k < *best) {
            best = k;
            out = t;
        }
    }
    return out;
}

} // namespace

TEST(Ball, MatchesCayleyOracle)
{
    for (auto p : {f2(), gamma1(), pentagon(), mixed()}) {
        oracle::CayleyOracle o(p);
        for (std::size_t r = 0; r <= 3; ++r) {
            auto ball = enumerate_ball(p, r);
            auto dist = o.ball(static_cast<int>(r));
            EXPECT_EQ(ball.size(), dist.size());
            std::set<std::string> mine, theirs;
            for (auto &g : ball)
                mine.insert(to_string(p, g));
            for (auto &[word, d] : dist)
                theirs.insert(to_string(p, normalize(p, oracle::to_raw(word))));
            EXPECT_EQ(mine, theirs);
        }
    }
}

TEST(Ball, RadiusCap)
{
    try {
        search(load("x1sq.inst"), 11);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::RadiusCapExceeded);
    }
    EXPECT_THROW(enumerate_ball(f2(), 4, 3), Error);
}

TEST(Search, SquareRoot)
{
    auto inst = load("x1sq.inst");
    auto rep = search(inst, 2);
    ASSERT_EQ(rep.verdict, Verdict::Witness);
    EXPECT_EQ(to_string(inst.presentation, rep.witness.at("X1")), "a b");
    EXPECT_EQ(search(inst, 1).verdict, Verdict::NoSolutionUpToBound);
}

TEST(Search, LengthItemWitness)
{
    auto inst = load("length_item.inst");
    auto rep = search(inst, 3);
    ASSERT_EQ(rep.verdict, Verdict::Witness);
    EXPECT_TRUE(evaluate(inst, rep.witness).satisfied);
    auto &p = inst.presentation;
    EXPECT_EQ(geodesic_length(p, rep.witness.at("X")), geodesic_length(p, rep.witness.at("Y")) + 2);
}

TEST(Search, ShadowRefutations)
{
    EXPECT_EQ(search(load("expsum_item.inst"), 3).verdict, Verdict::UnsatByShadow);
    EXPECT_EQ(search(load("ab_item.inst"), 3).verdict, Verdict::UnsatByShadow);
    SearchOptions o;
    o.use_shadow = false;
    EXPECT_EQ(search(load("ab_item.inst"), 2, o).verdict, Verdict::NoSolutionUpToBound);
}

TEST(Search, AgreesWithNaiveEnumeration)
{
    std::mt19937 rng(99);
    oracle::RandomInstanceOptions opt;
    opt.ab_constraints = true;
    opt.other_constraints = true;
    for (auto p : {f2(), gamma1(), pentagon(), mixed()}) {
        auto ball = enumerate_ball(p, 2);
        for (int i = 0; i < 10; ++i) {
            auto inst = oracle::random_instance(p, rng, opt);
            auto naive = oracle::naive_solutions(inst, 2);
            EXPECT_EQ(as_tuples(inst, search_all(inst, 2, full())), naive) << to_text(inst);
            auto rep = search(inst, 2, full());
            if (naive.empty()) {
                EXPECT_NE(rep.verdict, Verdict::Witness);
                continue;
            }
            ASSERT_EQ(rep.verdict, Verdict::Witness) << to_text(inst);
            oracle::Tuple got;
            for (auto &v : inst.variables)
                got.push_back(rep.witness.at(v));
            EXPECT_EQ(got, *ball_first(ball, naive)) << to_text(inst);
        }
    }
}

TEST(Search, ThreadCountDoesNotChangeWitness)
{
    std::mt19937 rng(3);
    for (int i = 0; i < 10; ++i) {
        auto inst = oracle::random_instance(gamma1(), rng);
        SearchOptions one, many;
        many.threads = 4;
        auto a = search(inst, 2, one);
        auto b = search(inst, 2, many);
        EXPECT_EQ(a.verdict, b.verdict);
        EXPECT_EQ(a.witness, b.witness);
    }
}

TEST(Search, UnusedVariableIsIdentity)
{
    auto inst = parse_instance("vertex a inf\nvars X Y\ndisjunct { eq X a^-1 = 1 }\n");
    auto rep = search(inst, 1);
    ASSERT_EQ(rep.verdict, Verdict::Witness);
    EXPECT_TRUE(rep.witness.at("Y").is_identity());
    EXPECT_EQ(search_all(inst, 1).size(), 1u);
    EXPECT_EQ(search_all(inst, 1, full()).size(), 3u);
}

TEST(Search, UnsatShadowMeansNoSolutionAtSmallBounds)
{
    std::mt19937 rng(17);
    oracle::RandomInstanceOptions opt;
    opt.ab_constraints = true;
    int refuted = 0;
    for (int i = 0; i < 40 && refuted < 6; ++i) {
        auto inst = oracle::random_instance(f2(), rng, opt);
        if (search(inst, 1).verdict != Verdict::UnsatByShadow)
            continue;
        ++refuted;
        SearchOptions o;
        o.use_shadow = false;
        for (std::size_t b = 0; b <= 3; ++b)
            EXPECT_EQ(search(inst, b, o).verdict, Verdict::NoSolutionUpToBound) << to_text(inst);
    }
    EXPECT_GT(refuted, 0);
}

TEST(Search, StatsLine)
{
    auto rep = search(load("x1sq.inst"), 2);
    EXPECT_GT(rep.stats.nodes, 0u);
    EXPECT_EQ(stats_line(rep.stats).rfind("stats nodes=", 0), 0u);
}
