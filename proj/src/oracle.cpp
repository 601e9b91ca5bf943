#include "k3ls/oracle.hpp"

#include <algorithm>
#include <set>

#include "k3ls/errors.hpp"

namespace k3ls {

namespace {

Integer binomial(Integer n, Integer k) {
  if (k < 0 || n < k) return 0;
  Integer out = 1;
  for (Integer i = 1; i <= k; ++i) out = checked_mul(out, n - k + i) / i;
  return out;
}

void require_model_match(const K3Model& model, const SystemClass& cls) {
  validate(cls);
  if (cls.n != model.n()) {
    throw InputError("oracle: system has n = " + std::to_string(cls.n) + " but the " +
                     std::string(to_string(model.variant())) + " model has n = " + std::to_string(model.n()));
  }
  if (cls.d < 1) throw InputError("oracle: degree must be >= 1");
}

std::vector<Integer> positive_mults(const SystemClass& cls) { return normalized(cls).mults; }

Integer max_rank_over_trials(const K3Model& model, const SystemClass& cls, std::uint64_t seed, int trials,
                             const OracleOptions& options, std::vector<OracleInstance>& instances) {
  const std::vector<Integer> mults = positive_mults(cls);
  Integer best = 0;
  for (int t = 0; t < trials; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    const std::vector<FatPoint> points = sample_configuration(model, mults, seed, trial, options.sampling);
    const Integer rank = assemble_and_rank(model, static_cast<int>(cls.d), points, options).rank;
    instances.push_back({model.field().modulus(), model.seed(), trial, rank});
    best = std::max(best, rank);
  }
  return best;
}

}  // namespace

Integer model_basis_dim(ModelVariant variant, Integer d) {
  if (d < 1) throw InputError("oracle: basis dimension needs d >= 1");
  if (variant == ModelVariant::quartic_in_p3) return binomial(d + 3, 3) - binomial(d - 1, 3);
  return binomial(d + 2, 2) + binomial(d - 1, 2);
}

std::optional<ModelVariant> model_for(Integer n) {
  if (n == 4) return ModelVariant::quartic_in_p3;
  if (n == 2) return ModelVariant::double_sextic_plane;
  return std::nullopt;
}

MatrixFp jet_rows(const K3Model& model, int d, const LocalChart& chart, int m) {
  if (m < 1) throw InputError("oracle: jet multiplicity must be >= 1");
  if (chart.order < m - 1) {
    throw InputError("oracle: chart order " + std::to_string(chart.order) + " too small for multiplicity " +
                     std::to_string(m));
  }
  const std::vector<Exponent3> monomials = model.section_monomials(d);
  std::vector<std::vector<TruncatedSeries>> pw;
  for (std::size_t k = 0; k < 3; ++k) {
    int max_e = 0;
    for (const auto& e : monomials) max_e = std::max(max_e, e[k]);
    pw.push_back(powers(chart.coords[k].with_order(m - 1), max_e));
  }
  const auto rows = static_cast<Eigen::Index>(TruncatedSeries::size_for(m - 1));
  MatrixFp block(rows, static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t c = 0; c < monomials.size(); ++c) {
    const auto& e = monomials[c];
    const TruncatedSeries restricted = (pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])]) *
                                       pw[2][static_cast<std::size_t>(e[2])];
    for (Eigen::Index r = 0; r < rows; ++r) {
      block(r, static_cast<Eigen::Index>(c)) = restricted.coefficients()[static_cast<std::size_t>(r)];
    }
  }
  return block;
}

RankedMatrix assemble_and_rank(const K3Model& model, int d, const std::vector<FatPoint>& points,
                               const OracleOptions& options) {
  const auto columns = static_cast<Eigen::Index>(model.section_monomials(d).size());
  Eigen::Index rows = 0;
  std::set<std::array<Residue, 3>> seen;
  for (const auto& fp : points) {
    if (fp.multiplicity < 1) throw InputError("oracle: multiplicities must be >= 1");
    if (!seen.insert(fp.point.affine).second) throw InputError("oracle: duplicate point in configuration");
    rows += static_cast<Eigen::Index>(conditions(fp.multiplicity));
  }
  if (static_cast<std::int64_t>(rows) * static_cast<std::int64_t>(columns) > options.max_entries) {
    throw ComputationError("oracle: " + std::to_string(rows) + " x " + std::to_string(columns) +
                           " jet matrix exceeds the cap of " + std::to_string(options.max_entries) + " entries");
  }
  RankedMatrix out;
  out.matrix.resize(rows, columns);
  Eigen::Index at = 0;
  for (const auto& fp : points) {
    const LocalChart chart = local_chart(model, fp.point, fp.multiplicity);
    const MatrixFp block = jet_rows(model, d, chart, fp.multiplicity);
    out.matrix.middleRows(at, block.rows()) = block;
    at += block.rows();
  }
  out.rank = rows == 0 ? 0 : options.rank(out.matrix, model.field());
  // Multiples of the equation restrict to zero, so the ambient rank is the rank on sections.
  if (d >= 1 && out.rank > model_basis_dim(model.variant(), d)) {
    throw ComputationError("oracle: rank exceeds the section space dimension");
  }
  return out;
}

std::vector<FatPoint> sample_configuration(const K3Model& model, const std::vector<Integer>& mults,
                                           std::uint64_t seed, std::uint64_t trial, const SamplingOptions& sampling) {
  HashStream stream(derive_seed(seed, trial, "points"));
  std::vector<FatPoint> out;
  std::set<std::array<Residue, 3>> seen;
  for (Integer m : mults) {
    SurfacePoint p = sample_point(model, stream, sampling);
    for (int retry = 0; !seen.insert(p.affine).second; ++retry) {
      if (retry >= sampling.max_attempts) throw ComputationError("oracle: could not sample distinct points");
      p = sample_point(model, stream, sampling);
    }
    out.push_back({p, static_cast<int>(m)});
  }
  return out;
}

OracleReport speciality_test(const K3Model& model, const SystemClass& cls, const OracleOptions& options) {
  require_model_match(model, cls);
  if (options.trials < 1) throw InputError("oracle: trials must be >= 1");
  OracleReport report;
  report.variant = model.variant();
  report.system = normalized(cls);
  report.basis_dim = model_basis_dim(model.variant(), cls.d);
  report.columns = static_cast<Integer>(model.section_monomials(static_cast<int>(cls.d)).size());
  for (Integer m : report.system.mults) report.rows += conditions(m);
  report.expected_dim = expected_dim(cls).e;
  report.trials = options.trials;
  report.prime = model.field().modulus();
  report.seed = options.seed;

  Integer rank = max_rank_over_trials(model, cls, options.seed, options.trials, options, report.instances);
  if (report.basis_dim - rank - 1 > report.expected_dim && options.reseed) {
    const std::uint64_t fresh = derive_seed(options.seed, 1, "reseed");
    const K3Model second = K3Model::random(model.variant(), options.second_prime, fresh);
    rank = std::max(rank, max_rank_over_trials(second, cls, fresh, options.trials, options, report.instances));
    report.reseeded = true;
  }
  report.effective_rank = rank;
  report.actual_dim = report.basis_dim - rank - 1;
  report.special_evidence = report.actual_dim > report.expected_dim;
  report.certified_nonspecial = report.actual_dim == report.expected_dim;
  return report;
}

Integer measure_general_multiplicity(const K3Model& model, const SystemClass& cls, std::size_t index,
                                     const OracleOptions& options) {
  const SystemClass base = normalized(cls);
  if (index >= base.points()) throw InputError("oracle: point index out of range");
  OracleOptions fixed = options;
  fixed.reseed = false;
  const Integer dim = speciality_test(model, base, fixed).actual_dim;
  if (dim < 0) throw InputError("oracle: " + to_string(base) + " is empty; no general member to measure");
  SystemClass raised = base;
  for (;;) {
    raised.mults[index] += 1;
    if (speciality_test(model, raised, fixed).actual_dim < dim) return raised.mults[index] - 1;
  }
}

}  // namespace k3ls
