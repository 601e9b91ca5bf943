#pragma once

// Truncated bivariate power series over F_p: sum c_{ij} u^i v^j with i + j <= order.

#include <cstddef>
#include <vector>

#include "k3ls/prime_field.hpp"

namespace k3ls {

class TruncatedSeries {
 public:
  TruncatedSeries(int order, const PrimeField& field);

  static TruncatedSeries constant(Residue c, int order, const PrimeField& field);
  /// c + u (variable 0) or c + v (variable 1).
  static TruncatedSeries shifted_variable(int variable, Residue c, int order, const PrimeField& field);

  int order() const { return order_; }
  const PrimeField& field() const { return field_; }

  /// Flat index of u^i v^j; monomials are ordered by total degree, then by j.
  static std::size_t index(int i, int j) {
    const auto t = static_cast<std::size_t>(i + j);
    return t * (t + 1) / 2 + static_cast<std::size_t>(j);
  }
  static std::size_t size_for(int order) { return index(0, order) + 1; }

  Residue coeff(int i, int j) const { return coeffs_[index(i, j)]; }
  void set_coeff(int i, int j, Residue c) { coeffs_[index(i, j)] = field_.reduce(c); }
  const std::vector<Residue>& coefficients() const { return coeffs_; }

  /// Copy truncated to a lower (or padded to a higher) order.
  TruncatedSeries with_order(int order) const;

  /// Homogeneous part of total degree t as (coeff of u^t, u^{t-1}v, ..., v^t).
  std::vector<Residue> homogeneous_part(int t) const;

  bool is_zero() const;

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& scale(Residue c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Multiplicative inverse; the constant term must be nonzero.
  TruncatedSeries inverse() const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int order_;
  PrimeField field_;
  std::vector<Residue> coeffs_;
};

/// Cached powers s^0, s^1, ..., s^max_exp.
std::vector<TruncatedSeries> powers(const TruncatedSeries& s, int max_exp);

}  // namespace k3ls
