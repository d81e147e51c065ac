#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "monosq/checked.hpp"
#include "monosq/errors.hpp"

namespace monosq {

enum class Colour : std::int8_t { minus = -1, plus = 1 };

constexpr Colour operator-(Colour c) noexcept {
  return c == Colour::plus ? Colour::minus : Colour::plus;
}

constexpr int value(Colour c) noexcept { return static_cast<int>(c); }

inline std::string to_string(Colour c) { return c == Colour::plus ? "+1" : "-1"; }

inline std::optional<Colour> parse_colour(std::string_view s) {
  if (s == "+1") return Colour::plus;
  if (s == "-1") return Colour::minus;
  return std::nullopt;
}

// Closed integer interval [lo, hi] with 1 <= lo <= hi <= 2^62.
class Interval {
 public:
  constexpr Interval() = default;

  Interval(Int lo, Int hi) : lo_(lo), hi_(hi) {
    if (lo < 1) throw PreconditionError("interval lower end must be >= 1");
    if (lo > hi)
      throw PreconditionError("empty interval [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    if (hi > kMaxElement)
      throw PreconditionError("interval upper end " + std::to_string(hi) +
                              " exceeds 2^62");
  }

  constexpr Int lo() const noexcept { return lo_; }
  constexpr Int hi() const noexcept { return hi_; }
  constexpr Int size() const noexcept { return hi_ - lo_ + 1; }
  constexpr bool contains(Int n) const noexcept { return lo_ <= n && n <= hi_; }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;

  std::string str() const {
    return "[" + std::to_string(lo_) + ", " + std::to_string(hi_) + "]";
  }

 private:
  Int lo_ = 1;
  Int hi_ = 1;
};

}  // namespace monosq
