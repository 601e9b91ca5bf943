#include "k3ls/prime_field.hpp"

#include <string>

#include "k3ls/errors.hpp"

namespace k3ls {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL}) {
    if (value % q == 0) return value == q;
  }
  for (std::uint64_t q = 11; q * q <= value; q += 2) {
    if (value % q == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(Residue p) : p_(p) {
  if (p < 3 || p >= (Residue{1} << 31) || !is_prime(static_cast<std::uint64_t>(p))) {
    throw InputError("oracle: modulus must be an odd prime below 2^31, got " + std::to_string(p));
  }
}

Residue PrimeField::pow(Residue base, std::uint64_t exp) const {
  Residue result = 1;
  base = reduce(base);
  while (exp != 0) {
    if (exp & 1U) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1U;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  a = reduce(a);
  if (a == 0) throw ComputationError("oracle: inverse of zero in F_" + std::to_string(p_));
  return pow(a, static_cast<std::uint64_t>(p_ - 2));
}

bool PrimeField::is_square(Residue a) const {
  a = reduce(a);
  return a == 0 || pow(a, static_cast<std::uint64_t>((p_ - 1) / 2)) == 1;
}

std::optional<Residue> PrimeField::sqrt(Residue a) const {
  a = reduce(a);
  if (a == 0) return Residue{0};
  if (!is_square(a)) return std::nullopt;
  // p - 1 = q 2^s with q odd.
  std::uint64_t q = static_cast<std::uint64_t>(p_ - 1);
  unsigned s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  Residue z = 2;
  while (is_square(z)) ++z;
  Residue c = pow(z, q);
  Residue x = pow(a, (q + 1) / 2);
  Residue t = pow(a, q);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Residue t2 = t;
    while (t2 != 1) {
      t2 = mul(t2, t2);
      ++i;
    }
    Residue b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    x = mul(x, b);
    c = mul(b, b);
    t = mul(t, c);
    m = i;
  }
  return x;
}

}  // namespace k3ls
