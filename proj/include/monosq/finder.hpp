#pragma once

// Constructive search for a monochromatic solution of x + y = z^2 in any
// 2-colouring of [N, 10^4 N^4].
//
// Outline of the case analysis, in the order it is executed:
//   1. If [9N, 80N^2] is monochromatic, (N^2, 80N^2, 9N) is a solution.
//      Otherwise take the least k there with c(k) != c(k+1) and normalize
//      colours so that c(k) = +1, c(k+1) = -1.
//   2. A plus pair summing to k^2 gives a solution with z = k.
//   3. A minus pair summing to (k+1)^2 gives a solution with z = k+1.
//   When neither exists, every residue class mod 2k+1 below k^2 - N is
//   coloured -1,...,-1,+1,...,+1 along the progression. The table records,
//   per class, the first plus element f and the last minus element g.
//   4. f(j) + f(k^2 - j) <= k^2 gives a plus pair summing to k^2.
//   5. Otherwise more than half the classes start late, so for each m in
//      [0.2k, 0.8k] two such classes contain a minus pair summing to m^2;
//      any minus m closes a solution.
//   6. Otherwise all those m are plus, and so are their whole classes;
//      two of them cover the residue of k^2.
// Steps 4 and 6 produce pairs that step 2 would already have found, so once
// steps 2 and 3 scan their full ranges, every input terminates in steps 1, 2,
// 3 or 5. Steps 4 and 6 are kept and exposed as independent witness
// constructions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "monosq/checked.hpp"
#include "monosq/colouring.hpp"
#include "monosq/errors.hpp"
#include "monosq/oracle.hpp"

namespace monosq {

// Least N for which every inequality used by the case analysis holds for
// every admissible pivot k. Confirmed by audit_proof_inequalities.
constexpr Int min_valid_N() noexcept { return 17; }

// ceil(0.2k) .. floor(0.8k)
constexpr std::pair<Int, Int> m_range(Int k) noexcept { return {(k + 4) / 5, 4 * k / 5}; }

inline Int k_square_residue(Int k) {
  if (k < 1) throw PreconditionError("k must be >= 1");
  return checked_square(k) % checked_add(checked_mul(2, k), 1);
}

struct InequalityAudit {
  bool ok = true;
  Int k = 0;                  // pivot at which the first check failed
  std::string failed;         // name of that check
};

// Checks, for every pivot k in [9N, 80N^2 - 1], the inequalities the case
// analysis relies on, in exact integer form.
inline InequalityAudit audit_proof_inequalities(Int N) {
  auto fail = [](Int k, std::string what) { return InequalityAudit{false, k, std::move(what)}; };
  if (N < 3) return fail(0, "trivial solution (2,2,2) out of range");
  if (N * N < 9 * N) return fail(0, "N^2 >= 9N");
  const Int hi = upper_end(N);
  const Int band_top = checked_mul(80, checked_square(N));
  if (checked_square(band_top) - N > hi) return fail(0, "(80N^2)^2 - N <= 10^4 N^4");
  for (Int k = 9 * N; k < band_top; ++k) {
    const Int mod = 2 * k + 1;
    const Int k2 = k * k;
    const Int rep_max = N + 2 * k;
    const auto [m_lo, m_hi] = m_range(k);
    if (rep_max > k2 - N) return fail(k, "N + 2k <= k^2 - N");
    if (!(N < k)) return fail(k, "2(N + 2k) < 6k");
    if (!(150 * k < k2)) return fail(k, "6k < (0.2k)^2");
    if (!(2 * rep_max <= m_lo * m_lo)) return fail(k, "j1 + j2 <= m^2");
    if (!(m_lo >= N)) return fail(k, "0.2k >= N");
    if (!(m_lo <= m_hi && m_hi <= rep_max)) return fail(k, "m is a class representative");
    if (!(16 * k2 < 25 * (k2 - 2 * k - 1))) return fail(k, "k^2 - 2k - 1 > (0.8k)^2");
    if (!(2 * rep_max < (k + 1) * (k + 1))) return fail(k, "set A classes start with -1");
    const Int r = k2 % mod;
    if (!(m_lo <= r / 2 && r - r / 2 <= m_hi)) return fail(k, "k^2 residue split within [0.2k, 0.8k]");
  }
  return {};
}

// One residue class H_j mod 2k+1, represented by j in [N, N+2k].
struct ResidueClass {
  Int rep = 0;
  Int top = 0;                     // least class element > k^2 - N
  std::optional<Int> breaking;     // f: least plus element; empty = infinity
  std::optional<Int> last_minus;   // g: greatest minus element; empty if none
  bool in_a = false;               // 2 f >= (k+1)^2 (infinity included)
};

struct ResidueTable {
  Int N = 0;
  Int k = 0;
  Int modulus = 0;
  std::vector<ResidueClass> classes;  // classes[j - N]

  Int rep_of(Int v) const noexcept {
    const Int r = v % modulus;
    const Int base = N % modulus;
    return N + (r + modulus - base) % modulus;
  }
  const ResidueClass& of(Int v) const noexcept { return classes[rep_of(v) - N]; }
  std::size_t a_size() const noexcept {
    return static_cast<std::size_t>(std::count_if(classes.begin(), classes.end(),
                                                  [](const ResidueClass& c) { return c.in_a; }));
  }
};

// Least element of H_j above k^2 - N.
inline Int class_top(Int N, Int k, Int j) {
  const Int limit = checked_sub(checked_square(k), N);
  const Int mod = 2 * k + 1;
  if (j > limit) return j;
  return j + ((limit - j) / mod + 1) * mod;
}

namespace cases {
struct MonochromaticBand {
  Colour band_colour;
  friend bool operator==(const MonochromaticBand&, const MonochromaticBand&) = default;
};
struct PairSumAtK {
  Int k, i;
  friend bool operator==(const PairSumAtK&, const PairSumAtK&) = default;
};
struct PairSumAtKPlus1 {
  Int k, i;
  friend bool operator==(const PairSumAtKPlus1&, const PairSumAtKPlus1&) = default;
};
struct IntervalSum {
  Int k, j;
  friend bool operator==(const IntervalSum&, const IntervalSum&) = default;
};
struct ResidueSquare {
  Int k, m, j1, j2;
  friend bool operator==(const ResidueSquare&, const ResidueSquare&) = default;
};
struct FinalK {
  Int k, u, v;
  friend bool operator==(const FinalK&, const FinalK&) = default;
};
}  // namespace cases

using ProofCase = std::variant<cases::MonochromaticBand, cases::PairSumAtK, cases::PairSumAtKPlus1,
                               cases::IntervalSum, cases::ResidueSquare, cases::FinalK>;

inline constexpr std::string_view kCaseTags[] = {"monochromatic_band", "pair_sum_k", "pair_sum_k_plus_1",
                                                 "interval_sum",       "residue_square", "final_k"};

inline std::string_view case_tag(const ProofCase& c) noexcept { return kCaseTags[c.index()]; }

struct ProofTrace {
  bool flipped = false;
  ProofCase proof_case;
  Solution solution;  // in the original colour orientation
  friend bool operator==(const ProofTrace&, const ProofTrace&) = default;
};

// Least k in [9N, 80N^2 - 1] with c(k) != c(k+1).
template <Colouring C>
std::optional<Int> find_boundary_k(const C& src, Int N) {
  const Int end = checked_mul(80, checked_square(N));
  Colour prev = src.colour_at(9 * N);
  for (Int k = 9 * N; k < end; ++k) {
    const Colour next = src.colour_at(k + 1);
    if (next != prev) return k;
    prev = next;
  }
  return std::nullopt;
}

// Least i in [lo, min(hi, target/2)] with c(i) = c(target - i) = wanted.
// Absence certifies that no such pair exists in the range.
template <Colouring C>
std::optional<std::pair<Int, Int>> scan_pair_sum(const C& src, Int target, Colour wanted, Int lo, Int hi) {
  if (lo > hi) throw PreconditionError("scan range is empty");
  const Int last = std::min(hi, target / 2);
  if (lo > last) return std::nullopt;
  const Interval d = src.domain();
  if (!d.contains(lo) || !d.contains(last)) throw DomainError("scan range outside domain " + d.str(), lo);
  if (target < lo || !d.contains(target - lo) || !d.contains(target - last))
    throw DomainError("partner range outside domain " + d.str(), target - lo);
  for (Int i = lo; i <= last; ++i)
    if (src.colour_at(i) == wanted && src.colour_at(target - i) == wanted) return std::pair{i, target - i};
  return std::nullopt;
}

// Per-class breaking points. `src` must be in normalized orientation and the
// pair-sum scans at k^2 (plus) and (k+1)^2 (minus) must both have come up
// empty; then each class is monotone and f is found by bisection.
template <Colouring C>
ResidueTable build_residue_tables(const C& src, Int N, Int k) {
  ResidueTable t;
  t.N = N;
  t.k = k;
  t.modulus = checked_add(checked_mul(2, k), 1);
  const Int half_bar = checked_square(k + 1);  // j in A iff 2 f(j) >= (k+1)^2
  t.classes.reserve(t.modulus);
  for (Int j = N; j < N + t.modulus; ++j) {
    ResidueClass rc;
    rc.rep = j;
    rc.top = class_top(N, k, j);
    const Int steps = (rc.top - j) / t.modulus;
    Int lo = 0;
    Int hi = steps + 1;  // hi = steps + 1 means "no plus element"
    while (lo < hi) {
      const Int mid = lo + (hi - lo) / 2;
      if (src.colour_at(j + mid * t.modulus) == Colour::plus)
        hi = mid;
      else
        lo = mid + 1;
    }
    auto contradiction = [&](Int at) {
      throw ContradictionError("class of " + std::to_string(j) + " mod " + std::to_string(t.modulus) +
                               " is not monotone near " + std::to_string(at));
    };
    if (lo <= steps) {
      const Int f = j + lo * t.modulus;
      if (src.colour_at(f) != Colour::plus || src.colour_at(rc.top) != Colour::plus) contradiction(f);
      if (lo > 0 && (src.colour_at(f - t.modulus) != Colour::minus || src.colour_at(j) != Colour::minus))
        contradiction(f);
      rc.breaking = f;
      if (lo > 0) rc.last_minus = f - t.modulus;
      rc.in_a = 2 * f >= half_bar;
    } else {
      if (src.colour_at(rc.top) != Colour::minus || src.colour_at(j) != Colour::minus) contradiction(rc.top);
      rc.last_minus = rc.top;
      rc.in_a = true;
    }
    t.classes.push_back(rc);
  }
  return t;
}

struct MonotonicityReport {
  Int pairs_checked = 0;
  Int violations = 0;
};

// Checks c(lower) <= c(upper) for consecutive class elements below the top,
// in normalized orientation: every pair when k <= 1000, otherwise
// `samples` pairs chosen by a hash of (k, index).
template <Colouring C>
MonotonicityReport certify_monotone_classes(const C& src, const ResidueTable& t, Int samples = 1000) {
  MonotonicityReport rep;
  auto check = [&](Int lower) {
    ++rep.pairs_checked;
    if (src.colour_at(lower) == Colour::plus && src.colour_at(lower + t.modulus) == Colour::minus)
      ++rep.violations;
  };
  if (t.k <= 1000) {
    for (const auto& c : t.classes)
      for (Int e = c.rep; e < c.top; e += t.modulus) check(e);
    return rep;
  }
  for (Int s = 0; s < samples; ++s) {
    const auto h = detail::mix64(t.k * 0x2545f4914f6cdd1dULL + s);
    const auto& c = t.classes[h % t.classes.size()];
    const Int steps = (c.top - c.rep) / t.modulus;
    check(c.rep + ((h >> 32) % steps) * t.modulus);
  }
  return rep;
}

template <class Case>
struct Witness {
  Solution solution;  // colour in normalized orientation
  Case proof_case;
};

// First j with f(j) + f(k^2 - j) <= k^2; x = f(j), y = k^2 - f(j).
inline std::optional<Witness<cases::IntervalSum>> interval_sum_witness(const ResidueTable& t) {
  const Int k2 = t.k * t.k;
  for (const auto& c : t.classes) {
    const auto& partner = t.of(k2 - c.rep);
    if (!c.breaking || !partner.breaking) continue;
    if (*c.breaking + *partner.breaking > k2) continue;
    const Int x = *c.breaking;
    return Witness<cases::IntervalSum>{canonical(x, k2 - x, t.k, Colour::plus), {t.k, c.rep}};
  }
  return std::nullopt;
}

// Minus pair summing to m^2 drawn from two classes of A, closed by z = m when
// c(m) = -1. Absent when c(m) = +1.
template <Colouring C>
std::optional<Witness<cases::ResidueSquare>> residue_square_witness(const C& src, const ResidueTable& t, Int m) {
  const auto [m_lo, m_hi] = m_range(t.k);
  if (m < m_lo || m > m_hi) throw PreconditionError("m outside [0.2k, 0.8k]");
  const Int sq = m * m;
  const ResidueClass* a1 = nullptr;
  const ResidueClass* a2 = nullptr;
  for (const auto& c : t.classes) {
    if (!c.in_a || c.rep > sq) continue;
    const auto& p = t.of(sq - c.rep);
    if (p.in_a) {
      a1 = &c;
      a2 = &p;
      break;
    }
  }
  if (!a1) throw ContradictionError("A + A misses the residue of " + std::to_string(m) + "^2");
  if (!a1->last_minus || !a2->last_minus) throw ContradictionError("class in A starts with +1");
  const Int g1 = *a1->last_minus;
  const Int g2 = *a2->last_minus;
  if (a1->rep + a2->rep > sq || sq > g1 + g2)
    throw ContradictionError("m^2 outside the sums of minus elements of its classes");
  if (src.colour_at(m) != Colour::minus) return std::nullopt;
  const Int x = sq > g2 ? std::max(a1->rep, sq - g2) : a1->rep;
  return Witness<cases::ResidueSquare>{canonical(x, sq - x, m, Colour::minus), {t.k, m, a1->rep, a2->rep}};
}

// Plus pair summing to k^2 from the classes of u = floor(r/2) and v = r - u,
// r = k^2 mod 2k+1, valid once every m in [0.2k, 0.8k] is plus.
inline Witness<cases::FinalK> final_k_witness(const ResidueTable& t) {
  const Int k2 = t.k * t.k;
  const Int r = k2 % t.modulus;
  const Int u = r / 2;
  const Int v = r - u;
  const auto [m_lo, m_hi] = m_range(t.k);
  if (u < m_lo || v > m_hi || u < t.N || v >= t.N + t.modulus)
    throw ContradictionError("residue split of k^2 leaves [0.2k, 0.8k]");
  const Int top_v = t.classes[v - t.N].top;
  const Int x = top_v < k2 ? std::max(u, k2 - top_v) : u;
  return Witness<cases::FinalK>{canonical(x, k2 - x, t.k, Colour::plus), {t.k, u, v}};
}

struct FinderOptions {
  bool certify_monotonicity = false;
};

struct FinderStats {
  bool reached_tables = false;
  Int m_tried = 0;
  MonotonicityReport monotonicity;
};

struct FinderResult {
  Solution solution;
  ProofTrace trace;
  FinderStats stats;
};

namespace detail {

inline Solution unflip(Solution s, bool flipped) {
  if (flipped) s.colour = -s.colour;
  return s;
}

template <Colouring V>
std::pair<Solution, ProofCase> run_pivot_cases(const V& view, Int N, Int k, const FinderOptions& opt,
                                               FinderStats& stats) {
  const Int k2 = checked_square(k);
  const Int k1sq = checked_square(k + 1);
  if (auto p = scan_pair_sum(view, k2, Colour::plus, N, k2 - N))
    return {canonical(p->first, p->second, k, Colour::plus), cases::PairSumAtK{k, p->first}};
  if (auto p = scan_pair_sum(view, k1sq, Colour::minus, N, k1sq - N))
    return {canonical(p->first, p->second, k + 1, Colour::minus), cases::PairSumAtKPlus1{k, p->first}};

  const ResidueTable t = build_residue_tables(view, N, k);
  stats.reached_tables = true;
  if (opt.certify_monotonicity) {
    stats.monotonicity = certify_monotone_classes(view, t);
    if (stats.monotonicity.violations != 0)
      throw ContradictionError("residue class monotonicity violated for k = " + std::to_string(k));
  }
  if (auto w = interval_sum_witness(t)) return {w->solution, w->proof_case};
  const auto [m_lo, m_hi] = m_range(k);
  for (Int m = m_lo; m <= m_hi; ++m) {
    ++stats.m_tried;
    if (auto w = residue_square_witness(view, t, m)) return {w->solution, w->proof_case};
  }
  auto w = final_k_witness(t);
  return {w.solution, w.proof_case};
}

}  // namespace detail

// Runs the case analysis on a colouring of exactly [N, 10^4 N^4]. The result
// is verified against `src` before it is returned.
template <Colouring C>
FinderResult find_monochromatic(const C& src, Int N, const FinderOptions& opt = {}) {
  if (N < min_valid_N())
    throw PreconditionError("N = " + std::to_string(N) + " is below the audited threshold N0 = " +
                            std::to_string(min_valid_N()));
  const Interval want(N, upper_end(N));
  if (!(Interval(src.domain()) == want))
    throw PreconditionError("colouring domain " + Interval(src.domain()).str() + " must be " + want.str());

  FinderResult res;
  const auto k = find_boundary_k(src, N);
  if (!k) {
    const Colour band = src.colour_at(9 * N);
    res.solution = Solution{N * N, 80 * N * N, 9 * N, band};
    res.trace = {false, cases::MonochromaticBand{band}, res.solution};
  } else {
    const bool flipped = src.colour_at(*k) == Colour::minus;
    auto [sol, pc] = flipped ? detail::run_pivot_cases(FlippedView<C>(src), N, *k, opt, res.stats)
                             : detail::run_pivot_cases(src, N, *k, opt, res.stats);
    res.solution = detail::unflip(sol, flipped);
    res.trace = {flipped, pc, res.solution};
  }
  if (auto v = verify_solution(src, res.solution); !v)
    throw ContradictionError("finder produced an invalid solution (" + std::string(to_string(v.reason)) + ")");
  return res;
}

namespace detail {

template <Colouring V>
Solution replay_normalized(const V& view, Int N, const ProofCase& pc) {
  struct Visitor {
    const V& view;
    Int N;
    ResidueTable tables(Int k) const { return build_residue_tables(view, N, k); }
    Solution operator()(const cases::MonochromaticBand&) const {
      return {N * N, 80 * N * N, 9 * N, view.colour_at(9 * N)};
    }
    Solution operator()(const cases::PairSumAtK& c) const {
      const Int t = checked_square(c.k);
      return canonical(c.i, checked_sub(t, c.i), c.k, Colour::plus);
    }
    Solution operator()(const cases::PairSumAtKPlus1& c) const {
      const Int t = checked_square(c.k + 1);
      return canonical(c.i, checked_sub(t, c.i), c.k + 1, Colour::minus);
    }
    Solution operator()(const cases::IntervalSum& c) const {
      const auto t = tables(c.k);
      if (c.j < N || c.j >= N + t.modulus) throw ContradictionError("j is not a class representative");
      const auto& f = t.classes[c.j - N].breaking;
      if (!f) throw ContradictionError("class of j has no plus element");
      return canonical(*f, checked_sub(c.k * c.k, *f), c.k, Colour::plus);
    }
    Solution operator()(const cases::ResidueSquare& c) const {
      const auto t = tables(c.k);
      if (c.j2 < N || c.j2 >= N + t.modulus) throw ContradictionError("j2 is not a class representative");
      const auto& g2 = t.classes[c.j2 - N].last_minus;
      if (!g2) throw ContradictionError("class of j2 has no minus element");
      const Int sq = checked_square(c.m);
      const Int x = sq > *g2 ? std::max(c.j1, sq - *g2) : c.j1;
      return canonical(x, checked_sub(sq, x), c.m, Colour::minus);
    }
    Solution operator()(const cases::FinalK& c) const {
      const auto t = tables(c.k);
      if (c.v < N || c.v >= N + t.modulus) throw ContradictionError("v is not a class representative");
      const Int k2 = c.k * c.k;
      const Int top_v = t.classes[c.v - N].top;
      const Int x = top_v < k2 ? std::max(c.u, k2 - top_v) : c.u;
      return canonical(x, checked_sub(k2, x), c.k, Colour::plus);
    }
  };
  return std::visit(Visitor{view, N}, pc);
}

}  // namespace detail

// Re-derives the solution named by a trace from its case fields alone.
template <Colouring C>
Solution replay_trace(const C& src, Int N, const ProofTrace& trace) {
  const Solution s = trace.flipped ? detail::replay_normalized(FlippedView<C>(src), N, trace.proof_case)
                                   : detail::replay_normalized(src, N, trace.proof_case);
  return detail::unflip(s, trace.flipped);
}

// True when the trace replays to its recorded solution and that solution
// verifies against `src`.
template <Colouring C>
bool check_trace(const C& src, Int N, const ProofTrace& trace) {
  try {
    return replay_trace(src, N, trace) == trace.solution && verify_solution(src, trace.solution).ok;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace monosq
