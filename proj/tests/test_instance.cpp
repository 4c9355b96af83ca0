#include <gtest/gtest.h>

#include <random>

#include "oracle/enumeration.hpp"
#include "support.hpp"

using namespace grapheq;
using namespace fixtures;

namespace {

const std::string data = GRAPHEQ_DATA_DIR;

Instance load(const std::string &name) { return read_instance(data + "/" + name); }

const std::string f2_inline = "vertex a inf\nvertex b inf\n";

} // namespace

TEST(Parse, SquareEquation)
{
    auto inst = load("x1sq.inst");
    ASSERT_EQ(inst.disjuncts.size(), 1u);
    EXPECT_EQ(inst.disjuncts[0].equations.size(), 1u);
    EXPECT_TRUE(inst.disjuncts[0].constraints.empty());
    EXPECT_EQ(to_string(inst.presentation, inst.disjuncts[0].equations[0]), "X1^2 b^-1 a^-1 b^-1 a^-1");
}

TEST(Parse, EmptyDisjunctRejected)
{
    try {
        parse_instance(f2_inline + "vars X\ndisjunct {\n}\n");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    }
    EXPECT_THROW(parse_instance(f2_inline + "vars X\n"), Error);
}

TEST(Parse, ScaledAbelianConstraint)
{
    auto inst = load("ab_item.inst");
    auto &c = std::get<AbEq>(inst.disjuncts[0].constraints.at(0));
    EXPECT_EQ(c.lhs, (GroupTerm{var_atom("X")}));
    EXPECT_EQ(c.rhs, (GroupTerm{var_atom("Y", 3)}));
}

TEST(Parse, ErrorKindsAndPositions)
{
    try {
        parse_instance(f2_inline + "vars X\ndisjunct {\n  eq X q = 1\n}\n");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownVariable);
        EXPECT_NE(std::string(e.what()).find("5:8"), std::string::npos) << e.what();
    }
    try {
        parse_instance(f2_inline + "vars X\ndisjunct {\n  expsum: |X|_z = 0\n}\n");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownVertex);
    }
    EXPECT_THROW(parse_instance(f2_inline + "vars a\ndisjunct { eq a = 1 }\n"), Error);
    EXPECT_THROW(parse_instance(f2_inline + "vars X\ndisjunct { eq X ^ = 1 }\n"), Error);
    EXPECT_THROW(parse_instance(f2_inline + "vars X\ndisjunct { eq X = 1\n"), Error);
    EXPECT_THROW(parse_instance(f2_inline + "vars X\ndisjunct { coset: X in a*G' }\n"), Error);
    EXPECT_THROW(parse_instance("vertex a 2\nvars X\ndisjunct { expsum: |X|_a = 0 }\n"), Error);
}

TEST(Parse, RoundTripThroughPrinter)
{
    for (auto name : {"x1sq.inst", "length_item.inst", "expsum_item.inst", "ab_item.inst", "pentagon_ab.inst"}) {
        auto inst = load(name);
        auto text = to_text(inst);
        auto again = parse_instance(text);
        EXPECT_EQ(again, inst) << name;
        EXPECT_EQ(to_text(again), text);
    }
}

TEST(Parse, AllItemKindsInline)
{
    auto inst = parse_instance("vertex a 2\nvertex b 2\nvars X Y\n"
                               "disjunct { eq X (a b)^2 Y^-1 = a ; ab: X Y = 2*b ; len: 2*|X| - |Y| = 1 - 2 }\n"
                               "disjunct {\n  coset: X in a b*G'\n  coset: Y in 1*G'\n}\n");
    ASSERT_EQ(inst.disjuncts.size(), 2u);
    EXPECT_EQ(inst.disjuncts[0].constraints.size(), 2u);
    auto &len = std::get<LengthEq>(inst.disjuncts[0].constraints[1]);
    EXPECT_EQ(len.constant, -1);
    EXPECT_EQ(len.terms.size(), 2u);
    EXPECT_EQ(std::get<Coset>(inst.disjuncts[1].constraints[1]).representative, NormalWord{});
    EXPECT_EQ(parse_instance(to_text(inst)), inst);
}

TEST(Evaluate, SquareRoot)
{
    auto inst = load("x1sq.inst");
    auto &p = inst.presentation;
    EXPECT_TRUE(evaluate(inst, {{"X1", w(p, "a b")}}).satisfied);
    EXPECT_FALSE(evaluate(inst, {{"X1", w(p, "a")}}).satisfied);
    try {
        evaluate(inst, {});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::IncompleteAssignment);
    }
}

TEST(Evaluate, LengthConstraint)
{
    auto inst = load("length_item.inst");
    auto &p = inst.presentation;
    auto rep = evaluate(inst, {{"X", w(p, "b^-1 a^-1")}, {"Y", NormalWord{}}});
    EXPECT_TRUE(rep.satisfied);
    EXPECT_EQ(rep.first_satisfied, 0u);
    auto bad = evaluate(inst, {{"X", w(p, "b^-2 a^-1")}, {"Y", w(p, "b")}});
    EXPECT_TRUE(bad.satisfied);
    auto wrong = evaluate(inst, {{"X", w(p, "b^-1 a^-1")}, {"Y", w(p, "a")}});
    EXPECT_FALSE(wrong.satisfied);
    EXPECT_EQ(wrong.disjuncts[0].equations, std::vector<bool>{false});
}

TEST(Evaluate, ReportsFirstSatisfiedDisjunct)
{
    auto inst = load("pentagon_ab.inst");
    auto &p = inst.presentation;
    auto rep = evaluate(inst, {{"X", w(p, "c")}, {"Y", NormalWord{}}});
    EXPECT_TRUE(rep.satisfied);
    EXPECT_EQ(rep.first_satisfied, 1u);
    EXPECT_FALSE(rep.disjuncts[0].satisfied);
    auto rep2 = evaluate(inst, {{"X", w(p, "a b")}, {"Y", w(p, "a b")}});
    EXPECT_EQ(rep2.first_satisfied, 0u);
}

TEST(Evaluate, RepresentativeInvariance)
{
    auto a = parse_instance("vertex a inf\nvertex b inf\nedge a b\nvars X\ndisjunct { eq X (a b a^-1) = 1 }\n");
    auto b = parse_instance("vertex a inf\nvertex b inf\nedge a b\nvars X\ndisjunct { eq X b = 1 }\n");
    EXPECT_EQ(a, b);
    auto &p = a.presentation;
    for (auto &x : enumerate_ball(p, 2))
        EXPECT_EQ(evaluate(a, {{"X", x}}).satisfied, evaluate(b, {{"X", normalize(p, x.syllables())}}).satisfied);
}

TEST(Shadow, AbelianItemUnsat)
{
    auto inst = load("ab_item.inst");
    auto sys = abelian_shadow(inst);
    ASSERT_EQ(sys.size(), 1u);
    EXPECT_EQ(to_string(sys[0]), "1 X.a 1 Y.a = -1\n1 X.b 1 Y.b = -1\n1 X.a -3 Y.a = 0\n1 X.b -3 Y.b = 0\n");
    EXPECT_EQ(solve_linear_system(sys[0]).status, Solvability::Unsat);
}

TEST(Shadow, ExpSumItemUnsat)
{
    auto sys = abelian_shadow(load("expsum_item.inst"));
    EXPECT_EQ(solve_linear_system(sys[0]).status, Solvability::Unsat);
}

TEST(Shadow, TrivialEquation)
{
    auto inst = parse_instance(f2_inline + "vars X\ndisjunct { eq X = 1 }\n");
    auto sys = abelian_shadow(inst);
    EXPECT_EQ(to_string(sys[0]), "1 X.a = 0\n1 X.b = 0\n");
    EXPECT_EQ(solve_linear_system(sys[0]).status, Solvability::Sat);
}

TEST(Shadow, CongruencesForFiniteVertices)
{
    auto inst = load("pentagon_ab.inst");
    auto sys = abelian_shadow(inst);
    ASSERT_EQ(sys.size(), 2u);
    for (auto &e : sys[0].equations)
        EXPECT_EQ(e.modulus, 2);
}

TEST(Shadow, UnsatShadowMeansNoSolutions)
{
    std::mt19937 rng(8);
    auto p = f2();
    int unsat = 0;
    for (int i = 0; i < 60; ++i) {
        Instance inst;
        inst.presentation = p;
        inst.variables = {"X", "Y"};
        Disjunct d;
        GroupTerm t{var_atom("X", 1 + i % 2), const_atom(random_word(p, rng, 2)), var_atom("Y", (i % 3) - 1)};
        d.equations.push_back(canonical_term(p, t));
        d.constraints.push_back(AbEq{{var_atom("X")}, {var_atom("Y", 2 + i % 3)}});
        inst.disjuncts.push_back(d);
        if (solve_linear_system(abelian_shadow(inst)[0]).status == Solvability::Sat)
            continue;
        ++unsat;
        EXPECT_TRUE(oracle::naive_solutions(inst, 2).empty());
    }
    EXPECT_GT(unsat, 5);
}
