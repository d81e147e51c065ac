#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "monosq/checked.hpp"
#include "monosq/colouring.hpp"

namespace monosq {

// x + y = z^2 with x <= y, all three sharing `colour`.
struct Solution {
  Int x = 0;
  Int y = 0;
  Int z = 0;
  Colour colour = Colour::plus;

  bool diagonal() const noexcept { return x == y; }
  friend bool operator==(const Solution&, const Solution&) = default;
};

// Orders the pair so that x <= y.
inline Solution canonical(Int a, Int b, Int z, Colour c) {
  return a <= b ? Solution{a, b, z, c} : Solution{b, a, z, c};
}

inline bool is_trivial(Int x, Int y, Int z) noexcept { return x == 2 && y == 2 && z == 2; }

// Domains scanned exhaustively are capped at this many elements.
inline constexpr Int kMaxScannable = Int{1} << 28;

namespace detail {

// Calls f(x, y, z) for every x <= y, x + y = z^2 with x, y, z in `domain`,
// in (z, x) order. f returns false to stop early.
template <class F>
void for_each_square_pair(const Interval& domain, F&& f) {
  const Int lo = domain.lo();
  const Int hi = domain.hi();
  const Int z_max = std::min(hi, isqrt(checked_mul(2, hi)));
  for (Int z = lo; z <= z_max; ++z) {
    const Int sq = z * z;
    const Int x_from = std::max(lo, sq > hi ? sq - hi : Int{0});
    const Int x_to = sq / 2;
    for (Int x = x_from; x <= x_to; ++x)
      if (!f(x, sq - x, z)) return;
  }
}

inline void require_scannable(const Interval& d) {
  if (d.size() > kMaxScannable)
    throw CapacityError("domain of " + std::to_string(d.size()) +
                        " elements is too large to enumerate; use the finder");
}

// Dense colour cache: one bit per element, 1 = plus.
template <Colouring C>
std::vector<std::uint64_t> materialize(const C& src) {
  const Interval d = src.domain();
  std::vector<std::uint64_t> bits((d.size() + 63) / 64, 0);
  for (Int n = d.lo(); n <= d.hi(); ++n)
    if (src.colour_at(n) == Colour::plus) bits[(n - d.lo()) >> 6] |= std::uint64_t{1} << ((n - d.lo()) & 63);
  return bits;
}

}  // namespace detail

// All monochromatic solutions in (z, x) order, truncated at `limit`.
template <Colouring C>
std::vector<Solution> enumerate_solutions(const C& src, bool exclude_trivial = true,
                                          std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  const Interval d = src.domain();
  detail::require_scannable(d);
  if (limit < 1) throw PreconditionError("limit must be >= 1");
  const auto bits = detail::materialize(src);
  auto plus = [&](Int n) { return (bits[(n - d.lo()) >> 6] >> ((n - d.lo()) & 63)) & 1; };
  std::vector<Solution> out;
  detail::for_each_square_pair(d, [&](Int x, Int y, Int z) {
    if (exclude_trivial && is_trivial(x, y, z)) return true;
    const auto cz = plus(z);
    if (plus(x) == cz && plus(y) == cz) {
      out.push_back({x, y, z, cz ? Colour::plus : Colour::minus});
      if (out.size() >= limit) return false;
    }
    return true;
  });
  return out;
}

template <Colouring C>
std::optional<Solution> find_any_solution(const C& src, bool exclude_trivial = true) {
  auto all = enumerate_solutions(src, exclude_trivial, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

enum class VerifyReason {
  ok,
  not_a_solution,      // x + y != z^2
  not_canonical,       // x > y
  out_of_domain,
  not_monochromatic,
  wrong_colour,        // monochromatic, but not in the claimed colour
  trivial,             // (2, 2, 2) while trivial solutions are excluded
};

inline std::string_view to_string(VerifyReason r) {
  switch (r) {
    case VerifyReason::ok: return "ok";
    case VerifyReason::not_a_solution: return "not_a_solution";
    case VerifyReason::not_canonical: return "not_canonical";
    case VerifyReason::out_of_domain: return "out_of_domain";
    case VerifyReason::not_monochromatic: return "not_monochromatic";
    case VerifyReason::wrong_colour: return "wrong_colour";
    case VerifyReason::trivial: return "trivial";
  }
  return "unknown";
}

struct Verdict {
  bool ok;
  VerifyReason reason;
  explicit operator bool() const noexcept { return ok; }
};

template <Colouring C>
Verdict verify_solution(const C& src, const Solution& s, bool exclude_trivial = true) {
  auto fail = [](VerifyReason r) { return Verdict{false, r}; };
  Int sq;
  Int sum;
  if (__builtin_mul_overflow(s.z, s.z, &sq) || __builtin_add_overflow(s.x, s.y, &sum) || sum != sq)
    return fail(VerifyReason::not_a_solution);
  if (s.x > s.y) return fail(VerifyReason::not_canonical);
  const Interval d = src.domain();
  if (!d.contains(s.x) || !d.contains(s.y) || !d.contains(s.z)) return fail(VerifyReason::out_of_domain);
  if (exclude_trivial && is_trivial(s.x, s.y, s.z)) return fail(VerifyReason::trivial);
  const Colour cx = src.colour_at(s.x);
  if (src.colour_at(s.y) != cx || src.colour_at(s.z) != cx) return fail(VerifyReason::not_monochromatic);
  if (cx != s.colour) return fail(VerifyReason::wrong_colour);
  return {true, VerifyReason::ok};
}

}  // namespace monosq
