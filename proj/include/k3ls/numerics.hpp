#pragma once

// Exact calculus on the Picard lattice of a blown-up generic K3 surface.
//
// A class (n; d; m_1, ..., m_r) stands for dH - sum m_i E_i on the blow-up of a
// K3 with Pic = <H>, H^2 = n, at r general points. Position i of `mults` is the
// globally labeled point p_i, so two classes with different lengths are compared
// after zero padding.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3ls/checked.hpp"

namespace k3ls {

struct SystemClass {
  Integer n = 2;
  Integer d = 0;
  std::vector<Integer> mults;

  SystemClass() = default;
  SystemClass(Integer n_, Integer d_, std::vector<Integer> mults_ = {})
      : n(n_), d(d_), mults(std::move(mults_)) {}

  std::size_t points() const { return mults.size(); }

  friend bool operator==(const SystemClass&, const SystemClass&) = default;
};

struct DimensionPair {
  Integer v = 0;
  Integer e = -1;
  friend bool operator==(const DimensionPair&, const DimensionPair&) = default;
};

/// Throws InputError unless n is even and >= 2, d >= 0 and every m_i >= 0.
void validate(const SystemClass& cls);

/// Drops zero multiplicities.
SystemClass normalized(const SystemClass& cls);

/// True when every multiplicity is >= 1.
bool is_normalized(const SystemClass& cls);

/// d^2 n/2 + 1 - sum m_i(m_i+1)/2.
Integer virtual_dim(const SystemClass& cls);

DimensionPair expected_dim(const SystemClass& cls);

/// n d_A d_B - sum m_i^A m_i^B on the blow-up, shorter sequence zero padded.
Integer intersect(const SystemClass& a, const SystemClass& b);

inline Integer self_intersection(const SystemClass& cls) { return intersect(cls, cls); }

SystemClass add(const SystemClass& a, const SystemClass& b);

/// k * cls, k >= 0.
SystemClass scale(const SystemClass& cls, Integer k);

/// v(A+B) - v(A) - v(B) - A.B + 1. Identically zero.
Integer additivity_defect(const SystemClass& a, const SystemClass& b);

/// L.K on the blow-up, where K is the sum of exceptional classes: sum m_i.
Integer canonical_pairing(const SystemClass& cls);

/// The zero class (n; 0; 0^r).
SystemClass zero_class(Integer n, std::size_t points = 0);

/// Parses "2^4,3" into {2,2,2,2,3}; empty string gives an empty list.
std::vector<Integer> parse_multiplicities(std::string_view text);

/// Inverse of parse_multiplicities with run-length compression: {2,2,2,2,3} -> "2^4,3".
std::string format_multiplicities(const std::vector<Integer>& mults);

/// "L^4(2, 4)" style display of a class.
std::string to_string(const SystemClass& cls);

std::ostream& operator<<(std::ostream& os, const SystemClass& cls);

}  // namespace k3ls
