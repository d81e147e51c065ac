#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "monosq/monosq.hpp"
#include "support/oracles.hpp"

namespace monosq {
namespace {

std::vector<std::tuple<Int, Int, Int>> as_tuples(const NaeInstance& inst) {
  std::vector<std::tuple<Int, Int, Int>> out;
  for (const auto& t : inst.triples) out.emplace_back(t.x, t.y, t.z);
  return out;
}

TEST(Instance, Examples) {
  EXPECT_EQ(as_tuples(build_instance(1, 4)), (std::vector<std::tuple<Int, Int, Int>>{{1, 3, 2}}));
  EXPECT_TRUE(build_instance(5, 7).triples.empty());
  const std::vector<std::tuple<Int, Int, Int>> ten = {{1, 3, 2}, {1, 8, 3}, {2, 7, 3}, {3, 6, 3},
                                                      {4, 5, 3}, {6, 10, 4}, {7, 9, 4}, {8, 8, 4}};
  EXPECT_EQ(as_tuples(build_instance(1, 10)), ten);
  EXPECT_EQ(build_instance(1, 10, false).triples.size(), 9u);
  EXPECT_THROW(build_instance(5, 4), PreconditionError);
  EXPECT_THROW(build_instance(1, kMaxInstanceElement + 1), CapacityError);
}

TEST(Instance, MatchesColourBlindOracleScan) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Int N = 1 + rng() % 30;
    const Int M = N + rng() % 2000;
    const auto inst = build_instance(N, M);
    std::vector<std::tuple<Int, Int, Int>> want;
    for (const auto& s : enumerate_solutions(make_constant(Interval(N, M), Colour::plus)))
      want.emplace_back(s.x, s.y, s.z);
    ASSERT_EQ(as_tuples(inst), want);
  }
}

TEST(Avoidable, SmallExamples) {
  const auto inst = build_instance(1, 4);
  const auto out = is_avoidable(inst);
  ASSERT_TRUE(out.assignment);
  EXPECT_EQ((*out.assignment)[0], Colour::plus);
  EXPECT_TRUE(avoids_all(inst, *out.assignment));
  EXPECT_TRUE(enumerate_solutions(witness_colouring(1, *out.assignment)).empty());

  const auto empty = is_avoidable(build_instance(5, 7));
  ASSERT_TRUE(empty.assignment);
  for (Colour c : *empty.assignment) EXPECT_EQ(c, Colour::plus);

  EXPECT_FALSE(is_avoidable(build_instance(1, 2, false)).assignment);
}

struct Pinned {
  Int N, S;
};
// regressions from exhaustive search, cross-checked by enumeration and an
// external CDCL solver
constexpr Pinned kPinned[] = {{1, 32}, {2, 32}, {3, 32}, {4, 113}, {5, 132}, {6, 226}, {7, 313}};

TEST(SearchS, PinnedValues) {
  for (auto [N, S] : kPinned) {
    const auto r = search_S(N, 1000);
    ASSERT_TRUE(r.S) << N;
    EXPECT_EQ(*r.S, S) << N;
    EXPECT_FALSE(r.cap_exceeded);
    EXPECT_EQ(r.last_avoidable, S - 1);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->domain(), Interval(N, S - 1));
    EXPECT_TRUE(enumerate_solutions(*r.witness).empty());
    EXPECT_FALSE(is_avoidable(build_instance(N, S)).assignment);
    if (N >= 3) {
      EXPECT_GT(S, N * N * N * N / 27);
    }
  }
}

TEST(SearchS, LowerBoundFromTheExtremalColouring) {
  for (Int N = 3; N <= 7; ++N) {
    const auto spec = avoidance_spec(N);
    const auto src = avoidance_colouring(N);
    std::vector<Colour> colours;
    for (Int n = N; n <= spec.top; ++n) colours.push_back(src.colour_at(n));
    EXPECT_TRUE(avoids_all(build_instance(N, spec.top), colours)) << N;
  }
}

TEST(SearchS, CapExceededIsAnOutcome) {
  const auto r = search_S(4, 50);
  EXPECT_TRUE(r.cap_exceeded);
  EXPECT_FALSE(r.S);
  EXPECT_EQ(r.last_avoidable, 50u);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(enumerate_solutions(*r.witness).empty());
  EXPECT_EQ(to_json(r)["status"], "cap_exceeded");
}

TEST(SearchS, TrivialSolutionCountedDegenerates) {
  EXPECT_EQ(search_S(1, 100, {.exclude_trivial = false}).S, 2u);
  EXPECT_EQ(search_S(3, 100, {.exclude_trivial = false}).S, 32u);
  EXPECT_THROW(search_S(0, 10), PreconditionError);
  EXPECT_THROW(search_S(5, 4), PreconditionError);
}

TEST(SearchS, ParallelAgreesWithSequential) {
  for (auto [N, S] : kPinned) {
    const auto seq = search_S(N, 1000);
    const auto par = search_S(N, 1000, {.jobs = 4});
    EXPECT_EQ(par.S, seq.S);
    ASSERT_TRUE(par.witness);
    EXPECT_TRUE(enumerate_solutions(*par.witness).empty());
    EXPECT_EQ(serialize(*par.witness), serialize(*seq.witness));
  }
}

TEST(SearchS, ParallelDecisionMatchesOnFullSearches) {
  for (Int N = 1; N <= 6; ++N)
    for (Int M : {N + 40, N + 120, N + 260}) {
      const auto inst = build_instance(N, M);
      const auto a = is_avoidable(inst, 1);
      const auto b = is_avoidable(inst, 3);
      ASSERT_EQ(a.assignment.has_value(), b.assignment.has_value()) << N << " " << M;
      if (a.assignment) {
        EXPECT_EQ(*a.assignment, *b.assignment);
      }
    }
}

TEST(Backtracker, AgreesWithEnumerationUpToTwentyTwoElements) {
  for (Int N = 1; N <= 6; ++N)
    for (Int M = N; M - N + 1 <= 22; ++M)
      for (bool excl : {true, false})
        ASSERT_EQ(is_avoidable(build_instance(N, M, excl)).assignment.has_value(),
                  testing::brute_force_avoidable(N, M, excl))
            << N << " " << M;
}

// Random dense NAE instances reach unsatisfiable verdicts at small size.
TEST(Backtracker, AgreesWithEnumerationOnRandomInstances) {
  std::mt19937_64 rng(17);
  int unsat = 0;
  for (int trial = 0; trial < 300; ++trial) {
    NaeInstance inst{5, 5 + 4 + rng() % 14, {}};
    const Int count = rng() % (3 * inst.size());
    for (Int i = 0; i < count; ++i) {
      auto e = [&] { return inst.N + rng() % inst.size(); };
      inst.triples.push_back({e(), e(), e()});
    }
    const bool want = testing::brute_force_avoidable(inst);
    unsat += !want;
    const auto got = is_avoidable(inst);
    ASSERT_EQ(got.assignment.has_value(), want) << trial;
    if (got.assignment) {
      EXPECT_TRUE(avoids_all(inst, *got.assignment));
    }
  }
  EXPECT_GT(unsat, 20);
}

TEST(Backtracker, UnavoidabilityIsMonotoneInM) {
  for (auto [N, S] : kPinned) {
    for (Int M = S; M <= S + 15; ++M) EXPECT_FALSE(is_avoidable(build_instance(N, M)).assignment) << N << " " << M;
  }
}

TEST(Backtracker, NodeCountsAreReproducible) {
  const auto a = search_S(5, 1000);
  const auto b = search_S(5, 1000);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_GT(a.nodes_explored, 0u);
}

TEST(Json, ResultRecord) {
  const auto r = search_S(3, 1000);
  const auto j = to_json(r);
  EXPECT_EQ(j["N"], 3);
  EXPECT_EQ(j["S"], 32);
  EXPECT_EQ(j["status"], "found");
  EXPECT_EQ(j["method"], "backtracking");
  EXPECT_TRUE(enumerate_solutions(colouring_from_json(j["witness"])).empty());
}

}  // namespace
}  // namespace monosq
