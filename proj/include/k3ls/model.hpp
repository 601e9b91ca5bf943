#pragma once

// Concrete K3 models over F_p: a quartic in P^3 (n = 4) and the double plane
// w^2 = f_6(x, y, z) in P(1,1,1,3) (n = 2). Everything runs in one affine chart
// with three coordinates: (x, y, z) at t = 1 for the quartic, (x, y, w) at z = 1 for
// the double plane.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "k3ls/hash_stream.hpp"
#include "k3ls/prime_field.hpp"
#include "k3ls/series.hpp"

namespace k3ls {

inline constexpr Residue kDefaultPrime = 1000003;
inline constexpr Residue kSecondPrime = 2000003;

enum class ModelVariant { quartic_in_p3, double_sextic_plane };

std::string_view to_string(ModelVariant variant);
ModelVariant model_variant_from_string(std::string_view text);
/// H^2 of the polarization: 4 for the quartic, 2 for the double plane.
int polarization_degree(ModelVariant variant);

using Exponent3 = std::array<int, 3>;

struct AffineTerm {
  Exponent3 exponent{};
  Residue coeff = 0;
};

/// Sparse polynomial in the three affine coordinates.
class AffinePolynomial {
 public:
  AffinePolynomial() = default;
  explicit AffinePolynomial(std::vector<AffineTerm> terms) : terms_(std::move(terms)) {}

  const std::vector<AffineTerm>& terms() const { return terms_; }
  int max_exponent(int variable) const;

  Residue evaluate(const std::array<Residue, 3>& point, const PrimeField& field) const;
  AffinePolynomial derivative(int variable, const PrimeField& field) const;
  /// Substitutes one series per coordinate.
  TruncatedSeries substitute(const std::vector<TruncatedSeries>& coords) const;

 private:
  std::vector<AffineTerm> terms_;
};

/// A homogeneous form: exponent tuple (length 4 for the quartic in x,y,z,t; length 3 for
/// f_6 in x,y,z) with its coefficient.
struct FormTerm {
  std::vector<int> exponent;
  Residue coeff = 0;
  friend bool operator==(const FormTerm&, const FormTerm&) = default;
};

class K3Model {
 public:
  K3Model(ModelVariant variant, Residue prime, std::vector<FormTerm> form, std::uint64_t seed = 0);

  /// Random coefficients for every monomial of the defining form, drawn from
  /// derive_seed(seed, index, "model").
  static K3Model random(ModelVariant variant, Residue prime, std::uint64_t seed, std::uint64_t index = 0);

  ModelVariant variant() const { return variant_; }
  int n() const { return polarization_degree(variant_); }
  const PrimeField& field() const { return field_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<FormTerm>& form() const { return form_; }

  /// The defining equation in the affine chart (quartic: f(x,y,z,1); double plane:
  /// w^2 - f_6(x,y,1)).
  const AffinePolynomial& equation() const { return equation_; }

  /// Affine monomials spanning the degree-d sections of the ambient space; multiples of
  /// the equation among them die on the surface. The double plane uses monomials
  /// of w-degree at most one, which is already a basis of the sections.
  std::vector<Exponent3> section_monomials(int d) const;

 private:
  ModelVariant variant_;
  PrimeField field_;
  std::vector<FormTerm> form_;
  std::uint64_t seed_;
  AffinePolynomial equation_;
};

/// Plain-text model file: `variant`, `prime`, then one `e_1 ... e_k : coeff` line per term.
K3Model read_model(std::istream& in);
void write_model(std::ostream& out, const K3Model& model);

struct SurfacePoint {
  std::array<Residue, 3> affine{};  // chart coordinates
  std::array<Residue, 4> ambient{};  // quartic (x,y,z,t); double plane (x,y,z,w)
};

struct SamplingOptions {
  int max_attempts = 1000;
};

/// Random smooth point. Quartic: random x, y then a random root z of f(x,y,z,1).
/// Double plane: random x, y with f_6(x,y,1) a nonzero square, then a random sign for w.
SurfacePoint sample_point(const K3Model& model, HashStream& stream, const SamplingOptions& options = {});

/// Index of an affine coordinate whose partial derivative is nonzero at the point, or -1.
int smooth_direction(const K3Model& model, const SurfacePoint& point);

struct LocalChart {
  SurfacePoint base;
  int dependent = 2;            // affine coordinate solved for
  std::array<int, 2> params{};  // affine coordinates used as u, v
  int order = 0;
  std::vector<TruncatedSeries> coords;  // all three affine coordinates as series in (u, v)

  const TruncatedSeries& dependent_series() const { return coords[static_cast<std::size_t>(dependent)]; }
};

/// Newton lifting of the dependent coordinate to total order M. Throws ComputationError
/// when the point is singular. The equation residual is checked to vanish.
LocalChart local_chart(const K3Model& model, const SurfacePoint& point, int order);

/// Equation residual of a chart (should be the zero series).
TruncatedSeries chart_residual(const K3Model& model, const LocalChart& chart);

}  // namespace k3ls
