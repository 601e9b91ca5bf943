#include <algorithm>
#include <doctest.h>

#include <sstream>

#include "k3ls/classifier.hpp"
#include "k3ls/errors.hpp"
#include "k3ls/oracle.hpp"

using namespace k3ls;

namespace {

K3Model fermat_quartic() {
  std::vector<FormTerm> form{{{4, 0, 0, 0}, 1}, {{0, 4, 0, 0}, 1}, {{0, 0, 4, 0}, 1}, {{0, 0, 0, 4}, 1}};
  return K3Model(ModelVariant::quartic_in_p3, 1000003, form);
}

const K3Model& quartic() {
  static const K3Model model = K3Model::random(ModelVariant::quartic_in_p3, kDefaultPrime, 0);
  return model;
}

const K3Model& double_plane() {
  static const K3Model model = K3Model::random(ModelVariant::double_sextic_plane, kDefaultPrime, 0);
  return model;
}

}  // namespace

TEST_CASE("model_basis_dim") {
  CHECK(model_basis_dim(ModelVariant::quartic_in_p3, 2) == 10);
  CHECK(model_basis_dim(ModelVariant::quartic_in_p3, 4) == 34);
  CHECK(model_basis_dim(ModelVariant::double_sextic_plane, 2) == 6);
  for (Integer d = 1; d <= 8; ++d) {
    CHECK(model_basis_dim(ModelVariant::quartic_in_p3, d) == 2 * d * d + 2);
    CHECK(model_basis_dim(ModelVariant::double_sextic_plane, d) == d * d + 2);
  }
  CHECK_THROWS_AS(model_basis_dim(ModelVariant::quartic_in_p3, 0), InputError);
}

TEST_CASE("sampled points lie on the model and are smooth") {
  const K3Model fermat = fermat_quartic();
  HashStream stream(8);
  for (int i = 0; i < 20; ++i) {
    const SurfacePoint p = sample_point(fermat, stream);
    const auto& a = p.ambient;
    const PrimeField& f = fermat.field();
    Residue value = 0;
    for (Residue x : a) value = f.add(value, f.pow(x, 4));
    CHECK(value == 0);
    CHECK(smooth_direction(fermat, p) >= 0);
  }
  // f_6 a perfect square: every base value is a residue
  std::vector<FormTerm> square{{{6, 0, 0}, 1}};
  const K3Model sq(ModelVariant::double_sextic_plane, 1000003, square);
  for (int i = 0; i < 20; ++i) {
    const SurfacePoint p = sample_point(sq, stream);
    const PrimeField& f = sq.field();
    CHECK(f.mul(p.affine[2], p.affine[2]) == f.pow(p.affine[0], 6));
  }
}

TEST_CASE("sampling gives up on a model without smooth points") {
  // w^2 = 0: every point lies on the branch locus and is rejected
  const K3Model degenerate(ModelVariant::double_sextic_plane, 1000003, {});
  HashStream stream(1);
  CHECK_THROWS_AS(sample_point(degenerate, stream, {50}), ComputationError);
}

TEST_CASE("model files round trip") {
  std::ostringstream out;
  write_model(out, quartic());
  std::istringstream in(out.str());
  const K3Model back = read_model(in);
  CHECK(back.form() == quartic().form());
  CHECK(back.field().modulus() == quartic().field().modulus());
  CHECK(back.variant() == quartic().variant());

  std::istringstream bad("variant quartic\nprime 1000003\n3 0 0 0 : 1\n");
  CHECK_THROWS_AS(read_model(bad), InputError);
  std::istringstream no_variant("prime 1000003\n");
  CHECK_THROWS_AS(read_model(no_variant), InputError);
}

TEST_CASE("jet rows") {
  HashStream stream(2);
  const SurfacePoint p = sample_point(quartic(), stream);
  const LocalChart chart = local_chart(quartic(), p, 3);
  SUBCASE("m = 1 is evaluation") {
    const MatrixFp rows = jet_rows(quartic(), 2, chart, 1);
    REQUIRE(rows.rows() == 1);
    const auto monomials = quartic().section_monomials(2);
    const PrimeField& f = quartic().field();
    for (std::size_t c = 0; c < monomials.size(); ++c) {
      Residue value = 1;
      for (std::size_t k = 0; k < 3; ++k) value = f.mul(value, f.pow(p.affine[k], static_cast<std::uint64_t>(monomials[c][k])));
      CHECK(rows(0, static_cast<Eigen::Index>(c)) == value);
    }
  }
  SUBCASE("m = 2 gives three rows") { CHECK(jet_rows(quartic(), 2, chart, 2).rows() == 3); }
  SUBCASE("the defining form dies") {
    // column combination with the coefficients of f(x,y,z,1) among degree-4 monomials
    const auto monomials = quartic().section_monomials(4);
    const MatrixFp rows = jet_rows(quartic(), 4, chart, 4);
    RowVectorFp combo = RowVectorFp::Zero(rows.rows());
    Eigen::Matrix<Residue, Eigen::Dynamic, 1> col = Eigen::Matrix<Residue, Eigen::Dynamic, 1>::Zero(rows.rows());
    const PrimeField& f = quartic().field();
    for (const auto& term : quartic().equation().terms()) {
      const auto it = std::find(monomials.begin(), monomials.end(), term.exponent);
      REQUIRE(it != monomials.end());
      const auto c = static_cast<Eigen::Index>(it - monomials.begin());
      for (Eigen::Index r = 0; r < rows.rows(); ++r) col(r) = f.add(col(r), f.mul(term.coeff, rows(r, c)));
    }
    CHECK(col.isZero());
  }
  SUBCASE("chart too small") { CHECK_THROWS_AS(jet_rows(quartic(), 2, chart, 5), InputError); }
}

TEST_CASE("ideal multiples are zero columns") {
  // f times each degree-1 monomial, as a column of the degree-5 jet matrix, vanishes
  HashStream stream(3);
  const SurfacePoint p = sample_point(quartic(), stream);
  const LocalChart chart = local_chart(quartic(), p, 5);
  const PrimeField& f = quartic().field();
  for (Exponent3 shift : {Exponent3{0, 0, 0}, Exponent3{1, 0, 0}, Exponent3{0, 1, 0}, Exponent3{0, 0, 1}}) {
    std::vector<AffineTerm> terms;
    for (auto t : quartic().equation().terms()) {
      for (int k = 0; k < 3; ++k) t.exponent[static_cast<std::size_t>(k)] += shift[static_cast<std::size_t>(k)];
      terms.push_back(t);
    }
    CHECK(AffinePolynomial(terms).substitute(chart.coords).is_zero());
  }
  (void)f;
}

TEST_CASE("assemble_and_rank examples") {
  const auto one_point = [](const K3Model& model, int m, std::uint64_t seed) {
    return sample_configuration(model, {m}, seed, 0);
  };
  SUBCASE("quartic d=1 double point") {
    const auto r = assemble_and_rank(quartic(), 1, one_point(quartic(), 2, 1));
    CHECK(r.matrix.rows() == 3);
    CHECK(r.matrix.cols() == 4);
    CHECK(r.rank == 3);
  }
  SUBCASE("quartic d=2 point of multiplicity 4") {
    const auto r = assemble_and_rank(quartic(), 2, one_point(quartic(), 4, 1));
    CHECK(r.matrix.rows() == 10);
    CHECK(r.matrix.cols() == 10);
    CHECK(r.rank == 9);
  }
  SUBCASE("no points") {
    const auto r = assemble_and_rank(quartic(), 2, {});
    CHECK(r.matrix.rows() == 0);
    CHECK(r.rank == 0);
  }
  SUBCASE("duplicates and caps") {
    auto pts = sample_configuration(quartic(), {1}, 4, 0);
    pts.push_back(pts.front());
    CHECK_THROWS_AS(assemble_and_rank(quartic(), 2, pts), InputError);
    OracleOptions tiny;
    tiny.max_entries = 10;
    CHECK_THROWS_AS(assemble_and_rank(quartic(), 2, one_point(quartic(), 2, 1), tiny), ComputationError);
  }
}

TEST_CASE("empty configurations give the full section space") {
  for (Integer d = 1; d <= 5; ++d) {
    const auto q = speciality_test(quartic(), {4, d, {}});
    CHECK(q.actual_dim == 2 * d * d + 1);
    const auto dp = speciality_test(double_plane(), {2, d, {}});
    CHECK(dp.actual_dim == d * d + 1);
  }
}

TEST_CASE("speciality_test examples") {
  SUBCASE("L^4(2,4) is special") {
    const auto r = speciality_test(quartic(), {4, 2, {4}});
    CHECK(r.actual_dim == 0);
    CHECK(r.expected_dim == -1);
    CHECK(r.special_evidence);
    CHECK(r.reseeded);
    CHECK(r.instances.size() == 4);
  }
  SUBCASE("L^2(2,2^2) is special") {
    const auto r = speciality_test(double_plane(), {2, 2, {2, 2}});
    CHECK(r.basis_dim == 6);
    CHECK(r.effective_rank == 5);
    CHECK(r.special_evidence);
  }
  SUBCASE("L^4(2,1^3) is certified") {
    const auto r = speciality_test(quartic(), {4, 2, {1, 1, 1}});
    CHECK(r.effective_rank == 3);
    CHECK(r.actual_dim == 6);
    CHECK(r.certified_nonspecial);
    CHECK_FALSE(r.reseeded);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(speciality_test(quartic(), {2, 2, {1}}), InputError);
    CHECK_THROWS_AS(speciality_test(quartic(), {4, 0, {}}), InputError);
  }
}

TEST_CASE("semicontinuity direction and determinism") {
  for (const SystemClass& cls : {SystemClass{4, 3, {3, 2, 2}}, SystemClass{4, 2, {2, 2, 1}}, SystemClass{2, 3, {2, 2, 2}}}) {
    const K3Model& model = cls.n == 4 ? quartic() : double_plane();
    Integer previous = -1;
    for (int trials = 1; trials <= 4; ++trials) {
      OracleOptions options;
      options.trials = trials;
      options.reseed = false;
      options.seed = 9;
      const auto r = speciality_test(model, cls, options);
      CHECK(r.effective_rank >= previous);
      CHECK(r.effective_rank <= std::min(r.rows, r.basis_dim));
      CHECK(r.actual_dim >= r.expected_dim);
      previous = r.effective_rank;
      const auto again = speciality_test(model, cls, options);
      CHECK(again.instances == r.instances);
    }
  }
}

TEST_CASE("measure_general_multiplicity") {
  CHECK(measure_general_multiplicity(quartic(), {4, 2, {1, 1}}, 0) == 1);
  CHECK(measure_general_multiplicity(quartic(), {4, 2, {4}}, 0) == 4);
  CHECK(measure_general_multiplicity(double_plane(), {2, 1, {1}}, 0) == 1);
  CHECK_THROWS_AS(measure_general_multiplicity(quartic(), {4, 3, {6, 1}}, 0), InputError);
}

TEST_CASE("conditions count equals rows") {
  HashStream stream(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Integer> mults;
    const auto r = stream.uniform(4);
    for (std::uint64_t i = 0; i < r; ++i) mults.push_back(1 + static_cast<Integer>(stream.uniform(3)));
    const auto pts = sample_configuration(quartic(), mults, 5, static_cast<std::uint64_t>(trial));
    Integer expected_rows = 0;
    for (Integer m : mults) expected_rows += m * (m + 1) / 2;
    CHECK(assemble_and_rank(quartic(), 3, pts).matrix.rows() == expected_rows);
  }
}
