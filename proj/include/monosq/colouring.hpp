#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "monosq/checked.hpp"
#include "monosq/colour.hpp"
#include "monosq/errors.hpp"

namespace monosq {

// Anything that assigns a colour to each point of an interval.
template <class C>
concept Colouring = requires(const C& c, Int n) {
  { c.domain() } -> std::convertible_to<Interval>;
  { c.colour_at(n) } -> std::same_as<Colour>;
};

// Bitmap rules are refused above this many elements; larger domains need a
// lazy rule.
inline constexpr Int kMaxBitmapElements = Int{1} << 26;

namespace detail {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Colour of point n under the counter-mode hash keyed by seed. Pure in
// (seed, n), so points may be queried in any order.
constexpr Colour hashed_colour(std::uint64_t seed, Int n) noexcept {
  return (detail::mix64(n ^ detail::mix64(seed)) >> 63) ? Colour::plus : Colour::minus;
}

class ColouringSource;

struct Segment {
  Interval range;
  Colour colour;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct PiecewiseRule {
  std::vector<Segment> segments;
};

struct PeriodicRule {
  std::vector<Colour> pattern;
  std::int64_t anchor = 0;
};

struct BitmapRule {
  Int offset = 1;
  std::vector<std::uint8_t> bytes;  // little-endian within bytes, 1 = plus
};

struct RandomRule {
  std::uint64_t seed = 0;
};

struct FlipRule {
  std::shared_ptr<const ColouringSource> inner;
};

using Rule = std::variant<PiecewiseRule, PeriodicRule, BitmapRule, RandomRule, FlipRule>;

// Immutable lazy colouring of an integer interval. Copies share the rule.
class ColouringSource {
 public:
  const Interval& domain() const noexcept { return domain_; }
  const Rule& rule() const noexcept { return *rule_; }

  Colour colour_at(Int n) const {
    if (!domain_.contains(n))
      throw DomainError("point " + std::to_string(n) + " outside domain " + domain_.str(), n);
    return eval(n);
  }

  friend ColouringSource make_piecewise(Interval, std::vector<Segment>);
  friend ColouringSource make_periodic(Interval, std::vector<Colour>, std::int64_t);
  friend ColouringSource make_bitmap(Interval, Int, std::vector<std::uint8_t>);
  friend ColouringSource make_random(Interval, std::uint64_t);
  friend ColouringSource make_flip(ColouringSource);

 private:
  ColouringSource(Interval d, Rule r)
      : domain_(d), rule_(std::make_shared<const Rule>(std::move(r))) {}

  Colour eval(Int n) const {
    struct Visitor {
      Int n;
      Colour operator()(const PiecewiseRule& r) const {
        auto it = std::upper_bound(r.segments.begin(), r.segments.end(), n,
                                   [](Int v, const Segment& s) { return v < s.range.lo(); });
        return std::prev(it)->colour;
      }
      Colour operator()(const PeriodicRule& r) const {
        const auto p = static_cast<__int128>(r.pattern.size());
        auto d = (static_cast<__int128>(n) - r.anchor) % p;
        if (d < 0) d += p;
        return r.pattern[static_cast<std::size_t>(d)];
      }
      Colour operator()(const BitmapRule& r) const {
        const Int i = n - r.offset;
        return (r.bytes[i >> 3] >> (i & 7)) & 1 ? Colour::plus : Colour::minus;
      }
      Colour operator()(const RandomRule& r) const { return hashed_colour(r.seed, n); }
      Colour operator()(const FlipRule& r) const { return -r.inner->eval(n); }
    };
    return std::visit(Visitor{n}, *rule_);
  }

  Interval domain_;
  std::shared_ptr<const Rule> rule_;
};

// Segments must be ordered and tile the domain exactly.
inline ColouringSource make_piecewise(Interval domain, std::vector<Segment> segments) {
  if (segments.empty()) throw ConstructionError("piecewise rule has no segments", domain.lo());
  Int expected = domain.lo();
  for (const auto& s : segments) {
    if (s.range.lo() < domain.lo() || s.range.hi() > domain.hi())
      throw ConstructionError("segment " + s.range.str() + " outside domain " + domain.str(),
                              s.range.lo() < domain.lo() ? s.range.lo() : s.range.hi());
    if (s.range.lo() > expected)
      throw ConstructionError("gap at " + std::to_string(expected), expected);
    if (s.range.lo() < expected)
      throw ConstructionError("overlap at " + std::to_string(s.range.lo()), s.range.lo());
    expected = s.range.hi() + 1;
  }
  if (expected != domain.hi() + 1)
    throw ConstructionError("gap at " + std::to_string(expected), expected);
  return ColouringSource(domain, PiecewiseRule{std::move(segments)});
}

inline ColouringSource make_constant(Interval domain, Colour c) {
  return make_piecewise(domain, {Segment{domain, c}});
}

inline ColouringSource make_periodic(Interval domain, std::vector<Colour> pattern,
                                     std::int64_t anchor) {
  if (pattern.empty()) throw ConstructionError("periodic rule needs period >= 1");
  return ColouringSource(domain, PeriodicRule{std::move(pattern), anchor});
}

inline ColouringSource make_bitmap(Interval domain, Int offset, std::vector<std::uint8_t> bytes) {
  if (domain.size() > kMaxBitmapElements)
    throw ConstructionError("bitmap domain of " + std::to_string(domain.size()) +
                            " elements exceeds 2^26; use a lazy rule");
  if (offset != domain.lo())
    throw ConstructionError("bitmap offset must equal domain start", offset);
  const Int need = (domain.size() + 7) / 8;
  if (bytes.size() != need)
    throw ConstructionError("bitmap holds " + std::to_string(bytes.size() * 8) +
                            " bits for a domain of " + std::to_string(domain.size()));
  if (const Int spare = need * 8 - domain.size(); spare != 0) {
    const auto pad_mask = static_cast<std::uint8_t>(0xFFu << (8 - spare));
    if (bytes.back() & pad_mask)
      throw ConstructionError("bitmap padding bits must be zero", domain.hi() + 1);
  }
  return ColouringSource(domain, BitmapRule{offset, std::move(bytes)});
}

inline ColouringSource make_bitmap(Interval domain, std::span<const Colour> colours) {
  if (colours.size() != domain.size())
    throw ConstructionError("bitmap needs one colour per domain element");
  if (domain.size() > kMaxBitmapElements)
    throw ConstructionError("bitmap domain exceeds 2^26; use a lazy rule");
  std::vector<std::uint8_t> bytes((colours.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < colours.size(); ++i)
    if (colours[i] == Colour::plus) bytes[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
  return make_bitmap(domain, domain.lo(), std::move(bytes));
}

inline ColouringSource make_random(Interval domain, std::uint64_t seed) {
  return ColouringSource(domain, RandomRule{seed});
}

inline ColouringSource make_flip(ColouringSource inner) {
  const Interval d = inner.domain();
  return ColouringSource(d, FlipRule{std::make_shared<const ColouringSource>(std::move(inner))});
}

// Run-length piecewise colouring from a dense colour vector starting at
// domain.lo().
inline ColouringSource make_piecewise_from_runs(Interval domain, std::span<const Colour> colours) {
  if (colours.size() != domain.size())
    throw ConstructionError("need one colour per domain element");
  std::vector<Segment> segs;
  Int start = domain.lo();
  for (std::size_t i = 1; i <= colours.size(); ++i) {
    if (i == colours.size() || colours[i] != colours[i - 1]) {
      segs.push_back({Interval(start, domain.lo() + i - 1), colours[i - 1]});
      start = domain.lo() + i;
    }
  }
  return make_piecewise(domain, std::move(segs));
}

// Non-owning view with every colour negated. Behaves like make_flip without
// allocating, so templated algorithms can normalize orientation cheaply.
template <Colouring C>
class FlippedView {
 public:
  explicit FlippedView(const C& inner) : inner_(&inner) {}
  Interval domain() const { return inner_->domain(); }
  Colour colour_at(Int n) const { return -inner_->colour_at(n); }

 private:
  const C* inner_;
};

}  // namespace monosq
