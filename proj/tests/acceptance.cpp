// Runs every acceptance criterion and prints one PASS/FAIL line per criterion. A
// criterion passes only when its checks hold and it finishes inside its time bound.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "k3ls/k3ls.hpp"

using namespace k3ls;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::size_t checks = 0;

  void expect(bool condition, const std::string& what) {
    ++checks;
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string str(const SystemClass& cls) { return to_string(cls); }

Outcome formula_suite() {
  Outcome out;
  const std::vector<SystemClass> zeros{{2, 1, {1, 1}}, {4, 1, {2}}, {4, 1, {1, 1, 1}}, {6, 1, {2, 1}}, {10, 1, {3}}};
  for (const auto& cls : zeros) out.expect(virtual_dim(cls) == 0, "v != 0 for " + str(cls));
  out.expect(virtual_dim(SystemClass{2, 1, {1}}) == 1, "v != 1 for L^2(1,1)");
  for (Integer m = 0; m <= 50; ++m) {
    const SystemClass cls{2, m + 1, {m + 1, m}};
    out.expect(virtual_dim(cls) == 1, "v != 1 for " + str(cls));
  }
  for (Integer d = 2; d <= 50; ++d) {
    const SystemClass quartic{4, d, {2 * d}};
    const SystemClass plane{2, d, {d, d}};
    out.expect(virtual_dim(quartic) == 1 - d, "v != 1-d for " + str(quartic));
    out.expect(virtual_dim(plane) == 1 - d, "v != 1-d for " + str(plane));
  }
  return out;
}

Outcome identity_suite() {
  Outcome out;
  std::mt19937_64 rng(20261017);
  for (int i = 0; i < 10'000; ++i) {
    const Integer n = testing::random_n(rng);
    const auto a = testing::random_class(rng, n);
    const auto b = testing::random_class(rng, n);
    out.expect(additivity_defect(a, b) == 0, "additivity fails for " + str(a) + " + " + str(b));
    for (const auto* cls : {&a, &b}) {
      const Integer twice = self_intersection(*cls) - canonical_pairing(*cls) + 2;
      out.expect(twice % 2 == 0 && twice / 2 == virtual_dim(*cls), "Riemann-Roch fails for " + str(*cls));
    }
  }
  return out;
}

Outcome oracle_baseline() {
  Outcome out;
  const OracleOptions options;
  for (auto [variant, max_d] : {std::pair{ModelVariant::quartic_in_p3, 4}, std::pair{ModelVariant::double_sextic_plane, 5}}) {
    const auto model = K3Model::random(variant, kDefaultPrime, 0);
    const Integer n = polarization_degree(variant);
    for (Integer d = 1; d <= max_d; ++d) {
      const auto rep = speciality_test(model, {n, d, {}}, options);
      out.expect(rep.actual_dim == d * d * n / 2 + 1, "zero-point dimension wrong for n=" + std::to_string(n) +
                                                            " d=" + std::to_string(d));
    }
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto variant = i % 2 == 0 ? ModelVariant::quartic_in_p3 : ModelVariant::double_sextic_plane;
    const auto model = K3Model::random(variant, kDefaultPrime, i);
    const int d = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<Integer> mults(std::uniform_int_distribution<int>(1, 5)(rng));
    for (auto& m : mults) m = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto points = sample_configuration(model, mults, i, 0);
    const auto ranked = assemble_and_rank(model, d, points, options);
    Integer expected_rows = 0;
    for (Integer m : mults) expected_rows += conditions(m);
    out.expect(ranked.matrix.rows() == expected_rows, "row count wrong on configuration " + std::to_string(i));
    out.expect(static_cast<std::size_t>(ranked.matrix.cols()) == model.section_monomials(d).size(), "column count wrong on configuration " +
                                                                       std::to_string(i));
  }
  return out;
}

Outcome special_families() {
  Outcome out;
  struct Family {
    SystemClass cls;
    Integer rank;
  };
  const std::vector<Family> families{{{4, 2, {4}}, 9}, {{4, 3, {6}}, 19}, {{2, 2, {2, 2}}, 5}, {{2, 3, {3, 3}}, 10}};
  for (const auto& [cls, rank] : families) {
    const auto variant = *model_for(cls.n);
    for (Residue prime : {kDefaultPrime, kSecondPrime}) {
      for (std::uint64_t seed : {1u, 2u}) {
        OracleOptions options;
        options.seed = seed;
        const auto model = K3Model::random(variant, prime, seed);
        const auto rep = speciality_test(model, cls, options);
        const std::string where = str(cls) + " p=" + std::to_string(prime) + " seed=" + std::to_string(seed);
        out.expect(rep.actual_dim == 0, "actual_dim != 0 for " + where);
        out.expect(rep.expected_dim == -1, "expected_dim != -1 for " + where);
        out.expect(rep.special_evidence, "no special evidence for " + where);
        out.expect(rep.effective_rank == rank, "rank " + std::to_string(rep.effective_rank) + " for " + where);
      }
    }
  }
  return out;
}

Outcome nonspecial_agreement() {
  Outcome out;
  std::size_t compared = 0;
  for (Integer n : {2, 4}) {
    const auto variant = *model_for(n);
    for (Integer d = 1; d <= 3; ++d) {
      std::vector<SystemClass> systems;
      for (auto& mults : cli::enumerate_multisets(5, model_basis_dim(variant, d) + 5)) {
        SystemClass cls{n, d, std::move(mults)};
        if (classify(cls).case_tag == CaseTag::special_i) continue;
        systems.push_back(std::move(cls));
      }
      const auto rows = cli::evaluate_rows(systems, true, kDefaultPrime, 0, {}, 1);
      for (const auto& row : rows) {
        ++compared;
        out.expect(row.actual && *row.actual == row.verdict.predicted_dim,
                   "disagreement on " + str(row.system) + ": predicted " + std::to_string(row.verdict.predicted_dim) +
                       ", actual " + (row.actual ? std::to_string(*row.actual) : std::string("none")));
      }
    }
  }
  out.expect(compared > 0, "empty sweep");
  if (out.ok) out.detail = std::to_string(compared) + " systems";
  return out;
}

Outcome certificate_suite() {
  Outcome out;
  std::size_t upgraded = 0;
  for (Integer d = 0; d <= 3; ++d) {
    for (Integer m = 0; m <= 2; ++m) {
      for (Integer h = 0; h <= 2; ++h) {
        for (Integer k9 = 0; k9 <= 1; ++k9) {
          const HomogeneousSystem root{4, d, m, h, k9};
          const std::string where = "n=4 d=" + std::to_string(d) + " m=" + std::to_string(m) +
                                    " h=" + std::to_string(h) + " k9=" + std::to_string(k9);
          const auto tree = reduce_to_leaves(root);
          out.expect(tree.depth() == static_cast<std::size_t>(h + k9), "depth wrong for " + where);
          Integer fours = h, nines = k9;
          for (const auto& step : tree.steps) {
            Integer expected = 1;
            for (Integer i = 0; i < fours; ++i) expected *= 4;
            for (Integer i = 0; i < nines; ++i) expected *= 9;
            out.expect(step.system.point_count() == expected, "node point count wrong for " + where);
            out.expect(step.audit.ok, "audit failed for " + where);
            out.expect(step.audit.v_parent == virtual_dim(step.system) &&
                           step.audit.v_s_part == virtual_dim(step.plan.s_part) &&
                           step.audit.v_planar_each == planar_virtual_dim(step.plan.planar_system.degree,
                                                                          step.plan.planar_system.m,
                                                                          step.plan.planar_system.count) &&
                           step.audit.gluing_correction ==
                               step.audit.v_parent - step.audit.v_s_part -
                                   step.plan.b * (step.audit.v_planar_each + 1),
                       "audit arithmetic inconsistent for " + where);
            (step.plan.per_plane == 4 ? fours : nines) -= 1;
          }

          std::ostringstream text, err;
          const int code = cli::run({"certify", "--n", "4", "--d", std::to_string(d), "--m", std::to_string(m), "--h",
                                     std::to_string(h), "--k", std::to_string(k9), "--check-leaves", "--format",
                                     "json"},
                                    text, err);
          out.expect(code == 0, "certify exited " + std::to_string(code) + " for " + where + ": " + err.str());
          if (code != 0) continue;
          const auto document = Json::parse(text.str());
          const auto checked = certificate_from_json(document["result"]["certificate"]);
          const bool leaf_certified = !checked.leaves.empty() && checked.leaves[0].report &&
                                      checked.leaves[0].report->certified_nonspecial;
          out.expect((checked.verdict == CertificateVerdict::leaf_verified_nonspecial) == leaf_certified,
                     "verdict does not follow the leaf oracle for " + where);
          upgraded += leaf_certified;
          // re-verify from the serialized bytes alone
          const auto reread = Json::parse(document.dump());
          out.expect(verify_certificate(certificate_from_json(reread["result"]["certificate"])).empty(),
                     "serialized certificate does not re-verify for " + where);
          out.expect(validate_document(reread).empty(), "document does not validate for " + where);
        }
      }
    }
  }
  out.expect(upgraded > 0, "no certificate was upgraded");
  if (out.ok) out.detail = std::to_string(upgraded) + " upgraded to leaf-verified";
  return out;
}

Outcome planar_base_cases() {
  Outcome out;
  out.expect(planar_expected_dim(3, 1, 9) == 0, "(3,1,9)");
  out.expect(planar_expected_dim(2, 1, 4) == 1, "(2,1,4)");
  out.expect(planar_expected_dim(6, 2, 9) == 0, "(6,2,9)");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "formula suite", 1.0, formula_suite},
      {2, "identity suite", 5.0, identity_suite},
      {3, "oracle baseline", 30.0, oracle_baseline},
      {4, "special families", 120.0, special_families},
      {5, "non-special agreement", 600.0, nonspecial_agreement},
      {6, "certificate suite", 120.0, certificate_suite},
      {7, "planar base cases", 1.0, planar_base_cases},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = outcome.ok;
    std::string detail = outcome.detail;
    if (ok && seconds >= c.limit_seconds) {
      ok = false;
      detail = "over the time bound";
    }
    failures += !ok;
    std::printf("%s %d %s: %zu checks, %.3fs / %.0fs%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, outcome.checks, seconds,
                c.limit_seconds, detail.empty() ? "" : ", ", detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
