#pragma once

#include <cstdint>

#include "k3ls/errors.hpp"

namespace k3ls {

using Integer = std::int64_t;

// Overflow-checked integer helpers. Any overflow is a hard error.
inline Integer checked_add(Integer a, Integer b) {
  Integer out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

inline Integer checked_sub(Integer a, Integer b) {
  Integer out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("integer overflow in subtraction");
  return out;
}

inline Integer checked_mul(Integer a, Integer b) {
  Integer out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

/// m(m+1)/2, the number of conditions imposed by a point of multiplicity m.
inline Integer conditions(Integer m) {
  // One of m, m+1 is even; halve it before multiplying.
  Integer next = checked_add(m, 1);
  return (m % 2 == 0) ? checked_mul(m / 2, next) : checked_mul(m, next / 2);
}

}  // namespace k3ls
