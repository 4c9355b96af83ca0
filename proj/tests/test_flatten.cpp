#include <gtest/gtest.h>

#include "oracle/enumeration.hpp"
#include "oracle/random_instance.hpp"
#include "support.hpp"

using namespace grapheq;
using namespace fixtures;

namespace {

Instance f2_instance(const std::string &body)
{
    return parse_instance("vertex a inf\nvertex b inf\nvars X Y Z\n" + body);
}

std::set<oracle::Tuple> projected(const Instance &flat, const Instance &orig, std::size_t bound)
{
    return oracle::projected_solutions(flat, orig.variables, bound);
}

} // namespace

TEST(ShortForm, Classification)
{
    EXPECT_EQ(short_form({var_atom("z"), var_atom("y"), var_atom("x", -1)}), ShortForm::Product);
    EXPECT_EQ(short_form({var_atom("x", 2), var_atom("z", -1)}), ShortForm::Product);
    EXPECT_EQ(short_form({var_atom("x"), var_atom("y", -1)}), ShortForm::Equality);
    EXPECT_EQ(short_form({var_atom("x")}), ShortForm::Constant);
    EXPECT_EQ(short_form({var_atom("x"), const_atom(NormalWord::trusted({{0, 1}}))}), ShortForm::Constant);
    EXPECT_EQ(short_form({var_atom("x"), var_atom("y")}), ShortForm::None);
    EXPECT_EQ(short_form({var_atom("x", -1), var_atom("y", -1), var_atom("z")}), ShortForm::None);
}

TEST(Flatten, TripleProduct)
{
    auto inst = f2_instance("disjunct { eq X Y Z = 1 }\n");
    auto flat = flatten(inst);
    EXPECT_TRUE(is_flattened(flat));
    EXPECT_FALSE(is_flattened(inst));
    ASSERT_EQ(flat.disjuncts[0].equations.size(), 3u);
    EXPECT_EQ(to_string(flat.presentation, flat.disjuncts[0].equations[0]), "X Y _f0^-1");
    EXPECT_EQ(to_string(flat.presentation, flat.disjuncts[0].equations[1]), "_f0 Z _f1^-1");
    EXPECT_EQ(to_string(flat.presentation, flat.disjuncts[0].equations[2]), "_f1");
    EXPECT_EQ(projected(flat, inst, 2), oracle::naive_solutions(inst, 2));
}

TEST(Flatten, ShortEquationsUnchanged)
{
    auto inst = f2_instance("disjunct { eq X Y^-1 = 1 ; eq X = a b }\n");
    EXPECT_TRUE(is_flattened(inst));
    EXPECT_EQ(flatten(inst), inst);
}

TEST(Flatten, AbelianArgument)
{
    auto inst = f2_instance("disjunct { ab: X Y = Z }\n");
    auto flat = flatten(inst);
    EXPECT_TRUE(is_flattened(flat));
    auto &d = flat.disjuncts[0];
    ASSERT_EQ(d.constraints.size(), 1u);
    auto &ab = std::get<AbEq>(d.constraints[0]);
    EXPECT_EQ(ab.rhs, (GroupTerm{var_atom("Z")}));
    ASSERT_EQ(ab.lhs.size(), 1u);
    EXPECT_EQ(ab.lhs[0].var.rfind("_f", 0), 0u);
    EXPECT_EQ(projected(flat, inst, 2), oracle::naive_solutions(inst, 2));
}

TEST(Flatten, InversesAndConstants)
{
    auto inst = f2_instance("disjunct { eq X^-1 a Y^2 b X^-1 = 1 }\ndisjunct { eq X^-2 b = 1 ; len: |Y| = 1 }\n");
    auto flat = flatten(inst);
    EXPECT_TRUE(is_flattened(flat));
    EXPECT_EQ(flat.disjuncts.size(), 2u);
    EXPECT_EQ(projected(flat, inst, 2), oracle::naive_solutions(inst, 2));
}

TEST(Flatten, FreshNamesAvoidExistingVariables)
{
    auto inst = parse_instance("vertex a inf\nvars _f0 X\ndisjunct { eq _f0 X _f0 = 1 }\n");
    auto flat = flatten(inst);
    std::set<std::string> names(flat.variables.begin(), flat.variables.end());
    EXPECT_EQ(names.size(), flat.variables.size());
    EXPECT_EQ(projected(flat, inst, 2), oracle::naive_solutions(inst, 2));
}

TEST(Flatten, Deterministic)
{
    auto inst = read_instance(std::string(GRAPHEQ_DATA_DIR) + "/length_item.inst");
    EXPECT_EQ(to_text(flatten(inst)), to_text(flatten(inst)));
    EXPECT_EQ(parse_instance(to_text(flatten(inst))), flatten(inst));
}

TEST(Flatten, RandomProjectionEquality)
{
    std::mt19937 rng(21);
    oracle::RandomInstanceOptions opt;
    opt.ab_constraints = true;
    opt.other_constraints = true;
    int nonempty = 0;
    for (auto p : {f2(), gamma1(), pentagon()}) {
        for (int i = 0; i < 8; ++i) {
            auto inst = oracle::random_instance(p, rng, opt);
            auto flat = flatten(inst);
            ASSERT_TRUE(is_flattened(flat));
            auto expected = oracle::naive_solutions(inst, 2);
            nonempty += !expected.empty();
            EXPECT_EQ(projected(flat, inst, 2), expected) << to_text(inst);
        }
    }
    EXPECT_GE(nonempty, 12);
}

TEST(Flatten, SearchOnFlattenedProjectsIntoOriginal)
{
    std::mt19937 rng(5);
    for (int i = 0; i < 6; ++i) {
        auto inst = oracle::random_instance(f2(), rng);
        auto orig = oracle::naive_solutions(inst, 2);
        for (auto &a : search_all(flatten(inst), 2)) {
            oracle::Tuple t;
            for (auto &v : inst.variables)
                t.push_back(a.at(v));
            EXPECT_TRUE(orig.count(t)) << to_text(inst);
        }
    }
}
