#pragma once

#include <cstdint>
#include <string>

#include "monosq/errors.hpp"

namespace monosq {

using Int = std::uint64_t;

// Largest element value any interval may contain. Squares of values up to
// sqrt(2^63) and sums of two in-range elements stay representable.
inline constexpr Int kMaxElement = Int{1} << 62;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("overflow in " + std::to_string(a) + " + " + std::to_string(b));
  return r;
}

inline Int checked_sub(Int a, Int b) {
  if (b > a)
    throw OverflowError("underflow in " + std::to_string(a) + " - " + std::to_string(b));
  return a - b;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("overflow in " + std::to_string(a) + " * " + std::to_string(b));
  return r;
}

inline Int checked_square(Int a) { return checked_mul(a, a); }

// 10^4 * n^4, the right end of the interval on which a monochromatic
// solution is guaranteed.
inline Int upper_end(Int n) {
  return checked_mul(10000, checked_square(checked_square(n)));
}

// Floor of the square root, exact for all 64-bit inputs.
inline Int isqrt(Int v) {
  Int r = 0;
  for (Int bit = Int{1} << 31; bit != 0; bit >>= 1) {
    Int c = r | bit;
    if (c * c <= v) r = c;
  }
  return r;
}

}  // namespace monosq
