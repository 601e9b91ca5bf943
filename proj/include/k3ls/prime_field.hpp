#pragma once

#include <cstdint>
#include <optional>

namespace k3ls {

/// Field elements are stored canonically in [0, p).
using Residue = std::int64_t;

bool is_prime(std::uint64_t value);

/// Arithmetic in F_p for an odd prime p < 2^31, so products fit in 63 bits.
class PrimeField {
 public:
  explicit PrimeField(Residue p);

  Residue modulus() const { return p_; }

  Residue reduce(std::int64_t x) const {
    x %= p_;
    return x < 0 ? x + p_ : x;
  }
  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const {
    Residue s = a - b;
    return s < 0 ? s + p_ : s;
  }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const { return (a * b) % p_; }
  Residue pow(Residue base, std::uint64_t exp) const;
  /// Throws ComputationError on zero.
  Residue inv(Residue a) const;
  bool is_square(Residue a) const;
  /// A square root when one exists (Tonelli-Shanks).
  std::optional<Residue> sqrt(Residue a) const;

 private:
  Residue p_;
};

}  // namespace k3ls
