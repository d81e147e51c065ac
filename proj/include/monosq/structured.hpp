#pragma once

// Colourings of [N, 10^4 N^4] that defeat both pair-sum scans at a chosen
// pivot k, which forces the finder into the residue stage.
//
// With c(k) = +1 and c(k+1) = -1, the scans fail exactly when, for every
// class j mod 2k+1 and its partner p = k^2 - j,
//   f(j) + f(p) > k^2              (no plus pair summing to k^2)
//   g(j) + g(p) < (k+1)^2          (no minus pair summing to (k+1)^2)
// where the class is coloured -1 below its breaking point f and +1 from f
// on. Breaking points are chosen pairwise with f(j) + f(p) in
// {(k+1)^2, (k+1)^2 + (2k+1)}, or with one class all plus and the other all
// minus.

#include <cstdint>
#include <optional>
#include <vector>

#include "monosq/checked.hpp"
#include "monosq/colouring.hpp"
#include "monosq/finder.hpp"

namespace monosq {

struct StructuredPlan {
  Int N = 0;
  Int k = 0;
  std::vector<std::optional<Int>> breaking;  // f per representative, index j - N
};

namespace detail {

class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return mix64(state_++ * 0x9e3779b97f4a7c15ULL); }
  Int below(Int n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// Smallest element >= lo congruent to j mod `mod` (lo may be below j).
inline Int align_up(Int lo, Int j, Int mod) {
  if (lo <= j) return j;
  return j + (lo - j + mod - 1) / mod * mod;
}

inline Int align_down(Int hi, Int j, Int mod) { return j + (hi - j) / mod * mod; }

}  // namespace detail

// Checks both scan-defeating conditions directly on the breaking points.
inline bool plan_defeats_scans(const StructuredPlan& plan) {
  ResidueTable shape;
  shape.N = plan.N;
  shape.k = plan.k;
  shape.modulus = 2 * plan.k + 1;
  const Int k2 = plan.k * plan.k;
  const Int s0 = (plan.k + 1) * (plan.k + 1);
  for (Int j = plan.N; j < plan.N + shape.modulus; ++j) {
    const Int p = shape.rep_of(k2 - j);
    const auto& fj = plan.breaking[j - plan.N];
    const auto& fp = plan.breaking[p - plan.N];
    if (fj && fp && *fj + *fp <= k2) return false;
    auto g = [&](Int rep, const std::optional<Int>& f) -> std::optional<Int> {
      if (!f) return class_top(plan.N, plan.k, rep);
      if (*f == rep) return std::nullopt;
      return *f - shape.modulus;
    };
    const auto gj = g(j, fj);
    const auto gp = g(p, fp);
    if (gj && gp && *gj + *gp >= s0) return false;
  }
  return true;
}

// Breaking points for pivot k, or nullopt when the forced colours
// (plus on [9N, k], minus at k+1) admit no consistent choice.
inline std::optional<StructuredPlan> make_structured_plan(Int N, Int k, std::uint64_t seed) {
  if (N < 3 || k < 9 * N || k + 1 >= checked_mul(80, checked_square(N)))
    throw PreconditionError("pivot k must lie in [9N, 80N^2 - 2]");
  StructuredPlan plan{N, k, {}};
  ResidueTable shape;
  shape.N = N;
  shape.k = k;
  shape.modulus = 2 * k + 1;
  const Int mod = shape.modulus;
  const Int k2 = k * k;
  const Int s0 = (k + 1) * (k + 1);
  const Int s1 = s0 + mod;
  plan.breaking.assign(mod, std::nullopt);
  std::vector<bool> done(mod, false);
  detail::SplitMix rng(seed);

  auto forced_plus = [&](Int j) { return 9 * N <= j && j <= k; };
  auto forced_minus = [&](Int j) { return j == k + 1; };
  auto in_class = [&](Int v, Int rep) { return v >= rep && (v - rep) % mod == 0 && v <= class_top(N, k, rep); };
  auto set = [&](Int j, std::optional<Int> f) {
    plan.breaking[j - N] = f;
    done[j - N] = true;
  };

  for (Int j = N; j < N + mod; ++j) {
    if (done[j - N]) continue;
    const Int p = shape.rep_of(k2 - j);
    if (p == j) {
      if (forced_plus(j)) return std::nullopt;
      const Int s = s0 % 2 == 0 ? s0 : s1;
      set(j, s / 2);
      continue;
    }
    if (forced_plus(j) && forced_plus(p)) return std::nullopt;
    if (forced_plus(j) || forced_plus(p)) {
      const Int a = forced_plus(j) ? j : p;
      const Int b = a == j ? p : j;
      set(a, a);
      const Int fb = s0 - a;
      if (rng.below(2) == 0 && in_class(fb, b) && !(forced_minus(b) && fb <= b))
        set(b, fb);
      else
        set(b, std::nullopt);
      continue;
    }
    bool placed = false;
    if (rng.below(4) != 0) {
      const Int first = rng.below(2);
      for (Int attempt = 0; attempt < 2 && !placed; ++attempt) {
        const Int s = (first + attempt) % 2 == 0 ? s0 : s1;
        const Int top_j = class_top(N, k, j);
        const Int top_p = class_top(N, k, p);
        Int lo = std::max(j + (forced_minus(j) ? 1 : 0), s > top_p ? s - top_p : Int{0});
        if (s < p) continue;
        Int hi = std::min(top_j, s - p - (forced_minus(p) ? 1 : 0));
        if (lo > hi) continue;
        lo = detail::align_up(lo, j, mod);
        if (lo > hi) continue;
        hi = detail::align_down(hi, j, mod);
        const Int fj = lo + rng.below((hi - lo) / mod + 1) * mod;
        set(j, fj);
        set(p, s - fj);
        placed = true;
      }
    }
    if (!placed) {
      // One class all plus, its partner all minus.
      Int plus_side = rng.below(2) == 0 ? j : p;
      if (forced_minus(plus_side)) plus_side = plus_side == j ? p : j;
      set(plus_side, plus_side);
      set(plus_side == j ? p : j, std::nullopt);
    }
  }
  if (!plan_defeats_scans(plan)) return std::nullopt;
  return plan;
}

// Materializes a plan: classes coloured by their breaking points up to
// (k+1)^2 - N, constant +1 above.
inline ColouringSource structured_colouring(const StructuredPlan& plan) {
  const Int N = plan.N;
  const Int mod = 2 * plan.k + 1;
  const Int span_end = (plan.k + 1) * (plan.k + 1) - N;
  ResidueTable shape;
  shape.N = N;
  shape.k = plan.k;
  shape.modulus = mod;
  std::vector<Colour> head(span_end - N + 1);
  for (Int n = N; n <= span_end; ++n) {
    const auto& f = plan.breaking[shape.rep_of(n) - N];
    head[n - N] = f && n >= *f ? Colour::plus : Colour::minus;
  }
  const Interval domain(N, upper_end(N));
  std::vector<Segment> segs;
  Int start = N;
  for (std::size_t i = 1; i <= head.size(); ++i) {
    if (i == head.size() || head[i] != head[i - 1]) {
      segs.push_back({Interval(start, N + i - 1), head[i - 1]});
      start = N + i;
    }
  }
  if (segs.back().colour == Colour::plus)
    segs.back().range = Interval(segs.back().range.lo(), domain.hi());
  else
    segs.push_back({Interval(span_end + 1, domain.hi()), Colour::plus});
  return make_piecewise(domain, std::move(segs));
}

// Seeded structured colouring of [N, 10^4 N^4] with pivot in [9N, 9N + 40],
// flipped with probability 1/2.
inline ColouringSource structured_fuzz_colouring(Int N, std::uint64_t seed) {
  detail::SplitMix rng(seed ^ 0x5bd1e9955bd1e995ULL);
  const bool flip = rng.below(2) == 1;
  Int k = 9 * N + rng.below(41);
  std::optional<StructuredPlan> plan;
  for (int tries = 0; tries < 64 && !plan; ++tries) {
    plan = make_structured_plan(N, k, rng.next());
    if (!plan) k = 9 * N + rng.below(41);
  }
  if (!plan) plan = make_structured_plan(N, 9 * N, seed);
  if (!plan) throw ContradictionError("no structured plan at pivot 9N");
  auto src = structured_colouring(*plan);
  return flip ? make_flip(std::move(src)) : src;
}

}  // namespace monosq
