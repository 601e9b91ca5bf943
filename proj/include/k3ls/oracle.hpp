#pragma once

// Exact interpolation oracle: jet-condition matrices of fat points on concrete K3
// models and their ranks over F_p.
//
// By upper semicontinuity of h^0, the rank of one random instance never exceeds the
// rank for general points on a generic K3. Full expected rank therefore certifies
// non-speciality; a rank deficiency is only evidence of speciality.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3ls/model.hpp"
#include "k3ls/numerics.hpp"
#include "k3ls/rank.hpp"

namespace k3ls {

/// h^0(O_S(dH)) = d^2 n/2 + 2 computed from the ambient monomial counts. d >= 1.
Integer model_basis_dim(ModelVariant variant, Integer d);

/// m(m+1)/2 rows: the coefficients of u^i v^j, i + j < m, of every section monomial
/// restricted along the chart. Requires chart.order >= m - 1 and m >= 1.
MatrixFp jet_rows(const K3Model& model, int d, const LocalChart& chart, int m);

struct FatPoint {
  SurfacePoint point;
  int multiplicity = 1;
};

struct OracleOptions {
  int trials = 2;
  std::uint64_t seed = 0;
  /// On actual_dim > expected_dim rerun with a fresh seed over `second_prime`.
  bool reseed = true;
  Residue second_prime = kSecondPrime;
  /// Cap on rows * columns of a single elimination.
  std::int64_t max_entries = 50'000;
  SamplingOptions sampling{};
  RankFunction rank = dense_rank();
};

struct RankedMatrix {
  MatrixFp matrix;
  Eigen::Index rank = 0;
};

/// Stacks the jet blocks of every fat point and eliminates. Throws InputError for
/// duplicate points or multiplicities < 1, ComputationError above the size cap.
RankedMatrix assemble_and_rank(const K3Model& model, int d, const std::vector<FatPoint>& points,
                               const OracleOptions& options = {});

struct OracleInstance {
  Residue prime = 0;
  std::uint64_t model_seed = 0;
  std::uint64_t trial = 0;
  Integer rank = 0;
  friend bool operator==(const OracleInstance&, const OracleInstance&) = default;
};

struct OracleReport {
  ModelVariant variant = ModelVariant::quartic_in_p3;
  SystemClass system;
  Integer basis_dim = 0;
  Integer rows = 0;
  Integer columns = 0;
  Integer effective_rank = 0;
  Integer actual_dim = -1;
  Integer expected_dim = -1;
  bool special_evidence = false;
  bool certified_nonspecial = false;
  int trials = 0;
  Residue prime = 0;
  std::uint64_t seed = 0;
  bool reseeded = false;
  std::vector<OracleInstance> instances;
};

/// The fat points of trial `trial`: r points from derive_seed(seed, trial, "points").
std::vector<FatPoint> sample_configuration(const K3Model& model, const std::vector<Integer>& mults,
                                           std::uint64_t seed, std::uint64_t trial,
                                           const SamplingOptions& sampling = {});

/// Max rank over `trials` random point sets on `model`, plus the reseed pass when the
/// result looks special.
OracleReport speciality_test(const K3Model& model, const SystemClass& cls, const OracleOptions& options = {});

/// Largest m' such that imposing m' instead of m_i at point `index` keeps the dimension,
/// measured on the same point sets. Throws InputError on an empty system.
Integer measure_general_multiplicity(const K3Model& model, const SystemClass& cls, std::size_t index,
                                     const OracleOptions& options = {});

/// A model for the given n, or nullopt when no model is implemented (n not in {2, 4}).
std::optional<ModelVariant> model_for(Integer n);

}  // namespace k3ls
