#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "monosq/extremal.hpp"
#include "monosq/oracle.hpp"
#include "support/oracles.hpp"

namespace monosq {
namespace {

using Triples = std::vector<std::tuple<Int, Int, Int>>;

Triples triples_of(const std::vector<Solution>& v) {
  Triples out;
  for (const auto& s : v) out.emplace_back(s.x, s.y, s.z);
  return out;
}

TEST(Enumerate, AllPlusOneToTenExcludingTrivial) {
  auto s = make_constant(Interval(1, 10), Colour::plus);
  const Triples want = {{1, 3, 2}, {1, 8, 3}, {2, 7, 3}, {3, 6, 3}, {4, 5, 3}, {6, 10, 4}, {7, 9, 4}, {8, 8, 4}};
  EXPECT_EQ(triples_of(enumerate_solutions(s, true)), want);
}

TEST(Enumerate, AllPlusOneToTenIncludingTrivial) {
  auto s = make_constant(Interval(1, 10), Colour::plus);
  auto all = enumerate_solutions(s, false);
  ASSERT_EQ(all.size(), 9u);
  EXPECT_EQ(all[1], (Solution{2, 2, 2, Colour::plus}));
  EXPECT_EQ(all[0], (Solution{1, 3, 2, Colour::plus}));
}

TEST(Enumerate, ExtremalFourIsSolutionFree) {
  auto s = make_piecewise(Interval(4, 9), {{Interval(4, 5), Colour::plus}, {Interval(6, 9), Colour::minus}});
  EXPECT_TRUE(enumerate_solutions(s).empty());
}

TEST(Enumerate, LimitTruncates) {
  auto s = make_constant(Interval(1, 10), Colour::plus);
  EXPECT_EQ(enumerate_solutions(s, true, 3).size(), 3u);
  EXPECT_THROW(enumerate_solutions(s, true, 0), PreconditionError);
}

TEST(Enumerate, CapacityErrorAboveTwoToThe28) {
  auto s = make_random(Interval(1, kMaxScannable + 1), 1);
  EXPECT_THROW(enumerate_solutions(s), CapacityError);
  EXPECT_THROW(find_any_solution(s), CapacityError);
}

TEST(FindAny, FirstInScanOrder) {
  EXPECT_EQ(find_any_solution(make_constant(Interval(1, 10), Colour::plus)),
            (Solution{1, 3, 2, Colour::plus}));
  EXPECT_FALSE(find_any_solution(avoidance_colouring(4)).has_value());
  EXPECT_FALSE(find_any_solution(make_constant(Interval(5, 7), Colour::plus)).has_value());
}

TEST(Verify, BandSolutionAtSeventeen) {
  auto s = make_constant(Interval(17, upper_end(17)), Colour::plus);
  EXPECT_EQ(289u + 23120u, 153u * 153u);
  EXPECT_TRUE(verify_solution(s, {289, 23120, 153, Colour::plus}));
}

TEST(Verify, RejectsEachViolation) {
  auto s = make_bitmap(Interval(1, 10), std::vector<Colour>{Colour::plus, Colour::plus, Colour::minus, Colour::plus,
                                                             Colour::plus, Colour::plus, Colour::plus, Colour::plus,
                                                             Colour::plus, Colour::plus});
  // colours of 1, 3, 2 are +, -, +
  EXPECT_EQ(verify_solution(s, {1, 3, 2, Colour::plus}).reason, VerifyReason::not_monochromatic);
  EXPECT_EQ(verify_solution(s, {2, 2, 2, Colour::plus}, true).reason, VerifyReason::trivial);
  EXPECT_TRUE(verify_solution(s, {2, 2, 2, Colour::plus}, false));
  EXPECT_EQ(verify_solution(s, {1, 4, 2, Colour::plus}).reason, VerifyReason::not_a_solution);
  EXPECT_EQ(verify_solution(s, {5, 4, 3, Colour::plus}).reason, VerifyReason::not_canonical);
  EXPECT_EQ(verify_solution(s, {6, 10, 4, Colour::minus}).reason, VerifyReason::wrong_colour);
  EXPECT_EQ(verify_solution(s, {7, 18, 5, Colour::plus}).reason, VerifyReason::out_of_domain);
  EXPECT_EQ(verify_solution(s, {~Int{0}, 1, 1, Colour::plus}).reason, VerifyReason::not_a_solution);
}

TEST(OracleProperty, MatchesNaiveDoubleLoopAndVerifies) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const Int lo = 1 + rng() % 40;
    const Int hi = lo + rng() % 1500;
    ColouringSource s = make_random(Interval(lo, hi), rng());
    if (trial % 3 == 1) s = make_periodic(Interval(lo, hi), {Colour::plus, Colour::minus, Colour::minus}, 2);
    const bool excl = trial % 5 != 0;
    const auto got = enumerate_solutions(s, excl);
    std::set<std::tuple<Int, Int, Int>> mine;
    for (const auto& sol : got) {
      ASSERT_TRUE(verify_solution(s, sol, excl)) << sol.x << " " << sol.y << " " << sol.z;
      mine.insert({sol.x, sol.y, sol.z});
    }
    EXPECT_EQ(mine.size(), got.size());
    EXPECT_EQ(mine, testing::naive_solutions(s, excl)) << "trial " << trial;
  }
}

TEST(OracleProperty, OutputIsInZThenXOrder) {
  auto got = enumerate_solutions(make_random(Interval(1, 3000), 5));
  for (std::size_t i = 1; i < got.size(); ++i)
    ASSERT_TRUE(std::tie(got[i - 1].z, got[i - 1].x) < std::tie(got[i].z, got[i].x));
}

// Recolouring one element changes only solutions that contain it.
TEST(OracleProperty, RecolouringIsLocal) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const Interval d(1 + rng() % 20, 200 + rng() % 800);
    std::vector<Colour> cs(d.size());
    for (auto& c : cs) c = rng() & 1 ? Colour::plus : Colour::minus;
    const auto before = enumerate_solutions(make_bitmap(d, cs));
    const Int e = d.lo() + rng() % d.size();
    cs[e - d.lo()] = -cs[e - d.lo()];
    const auto after = enumerate_solutions(make_bitmap(d, cs));
    std::set<std::tuple<Int, Int, Int>> a, b;
    for (const auto& s : before) a.insert({s.x, s.y, s.z});
    for (const auto& s : after) b.insert({s.x, s.y, s.z});
    std::vector<std::tuple<Int, Int, Int>> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    for (auto [x, y, z] : diff) ASSERT_TRUE(x == e || y == e || z == e);
  }
}

TEST(OracleProperty, DiagonalSolutionsAreReported) {
  auto all = enumerate_solutions(make_constant(Interval(1, 10), Colour::plus));
  EXPECT_EQ(std::count_if(all.begin(), all.end(), [](const Solution& s) { return s.diagonal(); }), 1);
}

}  // namespace
}  // namespace monosq
