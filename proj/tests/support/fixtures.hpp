#pragma once

// Curated colourings of [N, 10^4 N^4] that drive each case of the finder.

#include <map>
#include <optional>

#include "monosq/monosq.hpp"
#include "support/oracles.hpp"

namespace monosq::testing {

// Classes mod 2k+1 coloured -1 below the given breaking point and +1 from
// it on; classes not listed are entirely -1. Constant +1 above (k+1)^2 - N.
inline ColouringSource class_fixture(Int N, Int k, const std::map<Int, Int>& breaking) {
  StructuredPlan plan{N, k, std::vector<std::optional<Int>>(2 * k + 1)};
  for (auto [j, f] : breaking) plan.breaking[j - N] = f;
  return structured_colouring(plan);
}

// Two classes whose breaking points sum to k^2 exactly; class k itself is
// plus so that c(k) = +1.
inline ColouringSource interval_sum_fixture() {
  return class_fixture(17, 153, {{20, 3090}, {57, 20319}, {153, 153}});
}

// Every class represented in [ceil(0.2k), floor(0.8k)] is plus throughout,
// as is the class of k; the rest are minus.
inline ColouringSource final_k_fixture(Int k = 153) {
  std::map<Int, Int> b;
  const auto [lo, hi] = m_range(k);
  for (Int j = lo; j <= hi; ++j) b[j] = j;
  b[k] = k;
  return class_fixture(17, k, b);
}

inline ColouringSource all_minus_fixture() { return make_constant(Interval(17, upper_end(17)), Colour::minus); }

// -1 exactly at `at`, +1 elsewhere.
inline ColouringSource single_minus(Int N, Int at) { return pointwise(N, Colour::plus, {at}); }

}  // namespace monosq::testing
