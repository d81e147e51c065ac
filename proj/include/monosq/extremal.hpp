#pragma once

// Two-band colouring of [N, N^4/27] with no monochromatic solution:
// +1 on [N, N^2/3], -1 on (N^2/3, N^4/27]. Inside the first band
// z^2 >= N^2 > 2 floor(N^2/3) >= x + y; inside the second
// z^2 > N^4/9 > 2 N^4/27 >= x + y.

#include "monosq/checked.hpp"
#include "monosq/colouring.hpp"
#include "monosq/oracle.hpp"

namespace monosq {

struct AvoidanceSpec {
  Int N;
  Int split;  // floor(N^2 / 3)
  Int top;    // floor(N^4 / 27)
};

inline AvoidanceSpec avoidance_spec(Int N) {
  if (N < 3) throw PreconditionError("avoidance colouring needs N >= 3");
  const Int sq = checked_square(N);
  return {N, sq / 3, checked_square(sq) / 27};
}

inline ColouringSource avoidance_colouring(Int N) {
  const auto s = avoidance_spec(N);
  const Interval domain(N, s.top);
  if (s.split >= s.top) return make_constant(domain, Colour::plus);
  return make_piecewise(domain, {Segment{Interval(N, s.split), Colour::plus},
                                 Segment{Interval(s.split + 1, s.top), Colour::minus}});
}

// Exhaustive check that the two-band colouring has no solution.
inline bool verify_avoidance(Int N) {
  const auto src = avoidance_colouring(N);
  detail::require_scannable(src.domain());
  return enumerate_solutions(src, true, 1).empty();
}

// Integer forms of the two band inequalities, without enumeration:
// 2 floor(N^2/3) < N^2 and 2 floor(N^4/27) < (floor(N^2/3) + 1)^2.
inline bool band_certificates_hold(Int N) {
  using Wide = unsigned __int128;
  const Wide sq = Wide{N} * N;
  const Wide split = sq / 3;
  const Wide top = sq * sq / 27;
  return 2 * split < sq && 2 * top < (split + 1) * (split + 1);
}

}  // namespace monosq
