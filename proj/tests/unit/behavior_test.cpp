#include <gtest/gtest.h>

#include "gen.hpp"
#include "oracles.hpp"
#include "procm/behavior.hpp"
#include "procm/encoders.hpp"
#include "procm/formats.hpp"
#include "procm/parser.hpp"

using namespace procm;

namespace {

FiniteLts lts(std::size_t n, const std::vector<std::tuple<std::size_t, Action, std::size_t>>& edges) {
  FiniteLts l;
  for (std::size_t k = 0; k < n; ++k) l.add_state();
  for (const auto& [a, act, b] : edges) l.add_transition(a, act, b);
  return l;
}

Action tau() { return Action::tau(); }

}  // namespace

TEST(Explore, NilProgram) {
  FiniteLts l = explore_lts(parse_program("main := 0"), {});
  EXPECT_EQ(l.num_states(), 2u);
  EXPECT_EQ(l.num_transitions(), 1u);
  EXPECT_FALSE(l.edges(0)[0].action.visible);
}

TEST(Explore, IdentityBranchesOnInputs) {
  FiniteLts l = explore_lts(parse_program("input i; output o; main := i?x.o!x.0"), {""_w, "0"_w});
  ASSERT_EQ(l.edges(l.initial()).size(), 2u);
  for (const auto& e : l.edges(l.initial())) {
    EXPECT_EQ(e.action.channel, "i");
    ASSERT_EQ(l.edges(e.target).size(), 1u);
    EXPECT_EQ(l.edges(e.target)[0].action, Action::io("o", e.action.word));
  }
}

TEST(Explore, DivergingRecursion) {
  FiniteLts l = explore_lts(parse_program(read_file(PROCM_FIXTURES "/programs/diverge.proc")), {});
  EXPECT_FALSE(divergent_states(l).divergent.empty());
}

TEST(Explore, TruncationMarksFrontier) {
  FiniteLts l = explore_lts(parse_program("D(x) := D<0:x>; main := D<\"\">"), {}, {5, std::nullopt});
  EXPECT_TRUE(l.any_truncated());
}

TEST(FunctionalLts, Shapes) {
  EXPECT_EQ(functional_lts({{Word(), Word()}}).num_states(), 3u);
  FiniteLts two = functional_lts({{"0"_w, "1"_w}, {"1"_w, Word()}});
  EXPECT_EQ(two.num_states(), 5u);
  EXPECT_EQ(two.edges(two.initial()).size(), 2u);
  FiniteLts none = functional_lts({});
  EXPECT_EQ(none.num_states(), 1u);
  EXPECT_EQ(none.num_transitions(), 0u);
}

TEST(Divergence, Examples) {
  EXPECT_EQ(divergent_states(lts(1, {{0, tau(), 0}})).divergent, std::set<std::size_t>{0});
  EXPECT_TRUE(divergent_states(lts(3, {{0, tau(), 1}, {1, tau(), 2}})).divergent.empty());
  auto d = divergent_states(lts(3, {{0, tau(), 1}, {1, tau(), 2}, {2, tau(), 1}})).divergent;
  EXPECT_EQ(d, (std::set<std::size_t>{0, 1, 2}));
}

TEST(Divergence, TruncatedIsUnknown) {
  FiniteLts l = lts(2, {{0, tau(), 1}});
  l.mark_truncated(1);
  auto d = divergent_states(l);
  EXPECT_TRUE(d.unknown.count(0));
}

TEST(Bisim, Examples) {
  FiniteLts loop = lts(1, {{0, tau(), 0}});
  FiniteLts dead = lts(1, {});
  EXPECT_TRUE(weak_bisim(loop, dead, false).equivalent());
  EXPECT_FALSE(weak_bisim(loop, dead, true).equivalent());
  EXPECT_TRUE(weak_bisim(loop, loop, true).equivalent());

  auto v = weak_bisim(functional_lts({{Word(), "0"_w}}), functional_lts({{Word(), "1"_w}}), true);
  EXPECT_EQ(v.outcome, BisimVerdict::Outcome::NotEquivalent);
  EXPECT_FALSE(v.reason.empty());
}

TEST(Bisim, TauPrefixIsWeak) {
  Action a = Action::io("o", "1"_w);
  EXPECT_TRUE(weak_bisim(lts(2, {{0, a, 1}}), lts(3, {{0, tau(), 1}, {1, a, 2}}), true).equivalent());
  // tau.a + tau.b is not a + b
  Action b = Action::io("o", "0"_w);
  FiniteLts committed = lts(5, {{0, tau(), 1}, {0, tau(), 2}, {1, a, 3}, {2, b, 4}});
  FiniteLts free = lts(3, {{0, a, 1}, {0, b, 2}});
  EXPECT_FALSE(weak_bisim(committed, free, false).equivalent());
}

TEST(Bisim, TruncationIsInconclusive) {
  FiniteLts l = lts(2, {{0, tau(), 1}});
  l.mark_truncated(1);
  EXPECT_EQ(weak_bisim(l, l, false).outcome, BisimVerdict::Outcome::Inconclusive);
}

TEST(CheckFunctional, Examples) {
  Program id = parse_program("input i; output o; main := i?x.o!x.0");
  EXPECT_TRUE(check_functional(id, {{Word(), Word()}, {"0"_w, "0"_w}, {"1"_w, "1"_w}}).equivalent());
  Program loops = parse_program("input i; output o; L() := L<>; main := i?x.o!x.L<>");
  EXPECT_FALSE(check_functional(loops, {{Word(), Word()}}).equivalent());

  TmSpec inc = parse_tm(read_file(PROCM_FIXTURES "/machines/inc.tm"));
  FunTable t;
  for (std::string s : {"", "0", "1", "11", "01"}) t[Word(s)] = Word(*oracle::run_tm(inc, s).output);
  EXPECT_TRUE(check_functional(encode_tm(inc), t, 200000).equivalent());
}

TEST(BehaviorProperty, DivergenceMatchesPathOracle) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 300; ++round) {
    std::size_t n = 1 + rng() % 7;
    FiniteLts l;
    for (std::size_t k = 0; k < n; ++k) l.add_state();
    std::size_t m = rng() % (2 * n + 1);
    for (std::size_t k = 0; k < m; ++k)
      l.add_transition(rng() % n, rng() % 3 ? Action::tau() : Action::io("o", Word()), rng() % n);
    auto expect = oracle::divergent_by_paths(l);
    auto got = divergent_states(l).divergent;
    for (std::size_t s = 0; s < n; ++s) EXPECT_EQ(got.count(s) == 1, expect[s]) << "round " << round;
  }
}

TEST(BehaviorProperty, BisimReflexiveSymmetricTransitive) {
  std::mt19937_64 rng(5);
  auto random_lts = [&] {
    std::size_t n = 1 + rng() % 4;
    FiniteLts l;
    for (std::size_t k = 0; k < n; ++k) l.add_state();
    std::size_t m = rng() % (2 * n + 1);
    for (std::size_t k = 0; k < m; ++k) {
      Action a = rng() % 3 == 0 ? Action::tau() : Action::io("o", Word(rng() % 2 ? "1" : "0"));
      l.add_transition(rng() % n, a, rng() % n);
    }
    return l;
  };
  for (int round = 0; round < 200; ++round) {
    FiniteLts a = random_lts(), b = random_lts(), c = random_lts();
    for (bool div : {false, true}) {
      EXPECT_TRUE(weak_bisim(a, a, div).equivalent());
      EXPECT_EQ(weak_bisim(a, b, div).outcome, weak_bisim(b, a, div).outcome);
      if (weak_bisim(a, b, div).equivalent() && weak_bisim(b, c, div).equivalent())
        EXPECT_TRUE(weak_bisim(a, c, div).equivalent());
    }
  }
}
