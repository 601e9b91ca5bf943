#include "k3ls/series.hpp"

#include <algorithm>

#include "k3ls/errors.hpp"

namespace k3ls {

TruncatedSeries::TruncatedSeries(int order, const PrimeField& field)
    : order_(order), field_(field), coeffs_(size_for(order), 0) {
  if (order < 0) throw InputError("series: negative truncation order");
}

TruncatedSeries TruncatedSeries::constant(Residue c, int order, const PrimeField& field) {
  TruncatedSeries s(order, field);
  s.coeffs_[0] = field.reduce(c);
  return s;
}

TruncatedSeries TruncatedSeries::shifted_variable(int variable, Residue c, int order, const PrimeField& field) {
  TruncatedSeries s = constant(c, order, field);
  if (order >= 1) s.set_coeff(variable == 0 ? 1 : 0, variable == 0 ? 0 : 1, 1);
  return s;
}

TruncatedSeries TruncatedSeries::with_order(int order) const {
  TruncatedSeries out(order, field_);
  const std::size_t n = std::min(coeffs_.size(), out.coeffs_.size());
  std::copy_n(coeffs_.begin(), n, out.coeffs_.begin());
  return out;
}

std::vector<Residue> TruncatedSeries::homogeneous_part(int t) const {
  std::vector<Residue> out;
  for (int j = 0; j <= t; ++j) out.push_back(coeff(t - j, j));
  return out;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Residue c) { return c == 0; });
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  if (rhs.order_ != order_) throw InputError("series: order mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = field_.add(coeffs_[k], rhs.coeffs_[k]);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  if (rhs.order_ != order_) throw InputError("series: order mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] = field_.sub(coeffs_[k], rhs.coeffs_[k]);
  return *this;
}

TruncatedSeries& TruncatedSeries::scale(Residue c) {
  c = field_.reduce(c);
  for (Residue& x : coeffs_) x = field_.mul(x, c);
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.order_ != b.order_) throw InputError("series: order mismatch");
  const PrimeField& f = a.field_;
  const int order = a.order_;
  TruncatedSeries out(order, f);
  for (int ta = 0; ta <= order; ++ta) {
    for (int ja = 0; ja <= ta; ++ja) {
      const Residue ca = a.coeff(ta - ja, ja);
      if (ca == 0) continue;
      for (int tb = 0; ta + tb <= order; ++tb) {
        for (int jb = 0; jb <= tb; ++jb) {
          const Residue cb = b.coeff(tb - jb, jb);
          if (cb == 0) continue;
          const std::size_t k = TruncatedSeries::index(ta - ja + tb - jb, ja + jb);
          out.coeffs_[k] = f.add(out.coeffs_[k], f.mul(ca, cb));
        }
      }
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::inverse() const {
  const PrimeField& f = field_;
  const Residue c0 = coeffs_[0];
  if (c0 == 0) throw ComputationError("series: inverse of a series with zero constant term");
  // Newton iteration y <- y (2 - s y), doubling the correct order each step.
  TruncatedSeries y = constant(f.inv(c0), order_, f);
  for (int correct = 0; correct < order_; correct = 2 * correct + 1) {
    TruncatedSeries two_minus = constant(2, order_, f) - (*this) * y;
    y = y * two_minus;
  }
  return y;
}

std::vector<TruncatedSeries> powers(const TruncatedSeries& s, int max_exp) {
  std::vector<TruncatedSeries> out;
  out.reserve(static_cast<std::size_t>(max_exp) + 1);
  out.push_back(TruncatedSeries::constant(1, s.order(), s.field()));
  for (int e = 1; e <= max_exp; ++e) out.push_back(out.back() * s);
  return out;
}

}  // namespace k3ls
