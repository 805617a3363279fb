#include <gtest/gtest.h>

#include <random>

#include "judgment/formula.hpp"
#include "judgment/prop_space.hpp"
#include "support/oracle.hpp"

namespace judgment {
namespace {

Proposition parse(const std::string& text, const SpacePtr& space) { return parse_formula(text, space); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::Infeasible;
}

TEST(BuildSpace, EnumeratesAllAssignments) {
  EXPECT_EQ(build_space({"a", "b"})->world_count(), 4u);
  EXPECT_EQ(build_space({"r", "b", "h"})->world_count(), 8u);
  auto space = build_space({"a", "b"});
  // world 1: a true, b false
  EXPECT_TRUE(space->holds(1, 0));
  EXPECT_FALSE(space->holds(1, 1));
}

TEST(BuildSpace, RejectsBadAtomLists) {
  EXPECT_EQ(kind_of([] { build_space({"a", "a"}); }), ErrorKind::DuplicateAtom);
  EXPECT_EQ(kind_of([] { build_space({}); }), ErrorKind::EmptyAtomList);
  std::vector<std::string> many;
  for (int i = 0; i < 25; ++i) many.push_back("x" + std::to_string(i));
  EXPECT_EQ(kind_of([&] { build_space(many); }), ErrorKind::TooManyAtoms);
  many.pop_back();
  EXPECT_EQ(build_space(many)->world_count(), 1u << 24);
  EXPECT_EQ(kind_of([] { build_space({""}); }), ErrorKind::InvalidAtomName);
  EXPECT_EQ(kind_of([] { build_space({"true"}); }), ErrorKind::InvalidAtomName);
  EXPECT_EQ(kind_of([] { build_space({"1a"}); }), ErrorKind::InvalidAtomName);
}

TEST(ParseFormula, Examples) {
  auto space = build_space({"a", "b"});
  auto p = parse("a & ~b", space);
  EXPECT_EQ(p.worlds(), std::vector<WorldIndex>{1});
  EXPECT_EQ(parse("b | ~a", space).count(), 3u);
  EXPECT_FALSE(parse("b | ~a", space).contains(1));
  EXPECT_EQ(parse("a -> b", space), parse("~a | b", space));
  EXPECT_EQ(parse("true", space), Proposition::top(space));
  EXPECT_EQ(parse("false", space), Proposition::bottom(space));
}

TEST(ParseFormula, Precedence) {
  auto space = build_space({"a", "b", "c"});
  EXPECT_EQ(parse("a | b & c", space), parse("a | (b & c)", space));
  EXPECT_EQ(parse("~a & b", space), parse("(~a) & b", space));
  EXPECT_EQ(parse("a -> b -> c", space), parse("a -> (b -> c)", space));
  EXPECT_NE(parse("a -> b -> c", space), parse("(a -> b) -> c", space));
  EXPECT_EQ(parse("a & b -> c | a", space), parse("(a & b) -> (c | a)", space));
  EXPECT_EQ(parse("~~a", space), parse("a", space));
}

TEST(ParseFormula, Errors) {
  auto space = build_space({"a", "b"});
  EXPECT_EQ(kind_of([&] { parse("a & z", space); }), ErrorKind::UnknownAtom);
  EXPECT_EQ(kind_of([&] { parse("a &", space); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse("(a", space); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse("a b", space); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse("", space); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([&] { parse("a - b", space); }), ErrorKind::SyntaxError);
  try {
    parse("a & )", space);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
  }
}

TEST(ParseFormula, Bindings) {
  auto space = build_space({"a", "b"});
  Bindings names;
  names.emplace("law", parse("a -> b", space));
  EXPECT_EQ(parse_formula("law & a", space, &names), parse("a & b", space));
}

TEST(ParseFormula, MatchesTruthTableOnRandomFormulas) {
  const std::vector<std::string> atoms{"p", "q", "r"};
  auto space = build_space(atoms);
  std::mt19937 rng(20261017);
  for (int i = 0; i < 500; ++i) {
    const std::string text = testing::random_formula(rng, atoms, 4);
    testing::TruthTable table(text, atoms);
    std::vector<WorldIndex> expected;
    for (unsigned w : table.models()) expected.push_back(w);
    EXPECT_EQ(parse(text, space).worlds(), expected) << text;
  }
}

TEST(Entails, Examples) {
  auto space = build_space({"a", "b"});
  EXPECT_TRUE(entails(parse("a & b", space), parse("b", space)));
  EXPECT_FALSE(entails(parse("b", space), parse("a & b", space)));
  EXPECT_TRUE(entails(Proposition::bottom(space), parse("a", space)));
  auto other = build_space({"x", "y"});
  EXPECT_EQ(kind_of([&] { entails(parse("a", space), parse("x", other)); }), ErrorKind::SpaceMismatch);
}

TEST(BooleanAlgebra, LawsOverAllPropositionsOfTwoAtoms) {
  auto space = build_space({"a", "b"});
  const auto props = testing::all_propositions(space);
  for (const auto& p : props) {
    EXPECT_EQ(~~p, p);
    for (const auto& q : props) {
      EXPECT_EQ(~(p & q), ~p | ~q);
      EXPECT_EQ(~(p | q), ~p & ~q);
      EXPECT_EQ(entails(p, q) && entails(q, p), p == q);
      EXPECT_EQ(p & q, q & p);
    }
  }
}

TEST(Lift, KeepsWorldSetOverExtendedSpace) {
  auto small = build_space({"a", "b"});
  auto big = build_space({"a", "b", "c"});
  auto lifted = lift(parse("a & ~b", small), big);
  EXPECT_EQ(lifted, parse_formula("a & ~b", big));
  EXPECT_THROW(lift(parse("a", big), small), Error);
}

}  // namespace
}  // namespace judgment
