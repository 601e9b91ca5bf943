#pragma once

// Exact rank over F_p of dense Eigen matrices with canonical residue entries.

#include <Eigen/Core>
#include <functional>
#include <string>
#include <utility>

#include "k3ls/errors.hpp"
#include "k3ls/prime_field.hpp"

namespace k3ls {

using MatrixFp = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic>;
using RowVectorFp = Eigen::Matrix<Residue, 1, Eigen::Dynamic>;

/// Fraction-free forward elimination: the pivot is the first nonzero entry of the column,
/// and each lower row becomes pivot * row - entry * pivot_row (mod p). No inverses needed.
template <typename Derived>
Eigen::Index rank_mod_p(const Eigen::MatrixBase<Derived>& matrix, const PrimeField& field) {
  MatrixFp work = matrix;
  const Residue p = field.modulus();
  const auto reduce = [p](Residue x) {
    x %= p;
    return x < 0 ? x + p : x;
  };
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < work.cols() && rank < work.rows(); ++col) {
    Eigen::Index pivot = rank;
    while (pivot < work.rows() && work(pivot, col) == 0) ++pivot;
    if (pivot == work.rows()) continue;
    if (pivot != rank) work.row(pivot).swap(work.row(rank));
    const Residue lead = work(rank, col);
    for (Eigen::Index row = rank + 1; row < work.rows(); ++row) {
      const Residue entry = work(row, col);
      if (entry == 0) continue;
      // Both products stay below p^2 < 2^62.
      work.row(row) = (lead * work.row(row) - entry * work.row(rank)).unaryExpr(reduce);
    }
    ++rank;
  }
  return rank;
}

/// Pluggable rank backend; the default is the dense routine above.
using RankFunction = std::function<Eigen::Index(const MatrixFp&, const PrimeField&)>;

inline RankFunction dense_rank() {
  return [](const MatrixFp& m, const PrimeField& f) { return rank_mod_p(m, f); };
}

}  // namespace k3ls
