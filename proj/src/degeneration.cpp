#include "k3ls/degeneration.hpp"

#include <algorithm>

#include "k3ls/errors.hpp"

namespace k3ls {

namespace {

Integer power(Integer base, Integer exp) {
  Integer out = 1;
  for (Integer i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace

Integer HomogeneousSystem::point_count() const { return checked_mul(power(4, h), power(9, k9)); }

SystemClass HomogeneousSystem::as_class() const {
  const Integer r = point_count();
  if (r > 10'000'000) throw InputError("degeneration: point count " + std::to_string(r) + " too large to expand");
  return SystemClass{n, d, std::vector<Integer>(static_cast<std::size_t>(r), m)};
}

Integer virtual_dim(const HomogeneousSystem& system) {
  validate(system);
  const Integer empty = virtual_dim(SystemClass{system.n, system.d, {}});
  return checked_sub(empty, checked_mul(system.point_count(), conditions(system.m)));
}

void validate(const HomogeneousSystem& system) {
  validate(SystemClass{system.n, system.d, {system.m}});
  if (system.h < 0 || system.k9 < 0) throw InputError("degeneration: exponents h, k9 must be >= 0");
  (void)system.point_count();
}

PointDistribution distribute_points(Integer r, Integer b, Integer per_plane) {
  if (r < 0 || b < 1 || per_plane < 1) {
    throw InputError("degeneration: need r >= 0, b >= 1 and per_plane >= 1");
  }
  const Integer placed = checked_mul(b, per_plane);
  if (placed > r) {
    throw InputError("degeneration: " + std::to_string(b) + " planes with " + std::to_string(per_plane) +
                     " points each exceed the " + std::to_string(r) + " available points");
  }
  return {r, b, per_plane, r - placed};
}

Restriction central_fiber_restrict(const SystemClass& cls, Integer twist, const PointDistribution& distribution) {
  validate(cls);
  if (twist < 0) throw InputError("degeneration: twist must be >= 0");
  if (distribution.r != static_cast<Integer>(cls.points())) {
    throw InputError("degeneration: distribution is for " + std::to_string(distribution.r) + " points, class has " +
                     std::to_string(cls.points()));
  }
  Restriction out;
  out.planar_degree = twist;
  std::size_t next = 0;
  for (Integer plane = 0; plane < distribution.b; ++plane) {
    std::vector<Integer> on_plane;
    for (Integer a = 0; a < distribution.per_plane; ++a) on_plane.push_back(cls.mults[next++]);
    out.planar_mults.push_back(std::move(on_plane));
  }
  SystemClass s{cls.n, cls.d, std::vector<Integer>(static_cast<std::size_t>(distribution.b), twist)};
  s.mults.insert(s.mults.end(), cls.mults.begin() + static_cast<std::ptrdiff_t>(next), cls.mults.end());
  out.s_part = normalized(s);
  return out;
}

Integer planar_virtual_dim(Integer deg, Integer m, Integer count) {
  if (deg < 0 || m < 0) throw InputError("degeneration: planar degree and multiplicity must be >= 0");
  if (count != 4 && count != 9) {
    throw InputError("degeneration: planar non-speciality is only known for 4 or 9 points, got " +
                     std::to_string(count));
  }
  // deg(deg+3)/2 = conditions(deg + 1) - 1.
  return checked_sub(checked_sub(conditions(checked_add(deg, 1)), 1), checked_mul(count, conditions(m)));
}

Integer planar_expected_dim(Integer deg, Integer m, Integer count) {
  return std::max<Integer>(-1, planar_virtual_dim(deg, m, count));
}

std::string_view to_string(ReductionOrder order) {
  return order == ReductionOrder::fours_first ? "fours-first" : "nines-first";
}

ReductionOrder reduction_order_from_string(std::string_view text) {
  if (text == "fours-first") return ReductionOrder::fours_first;
  if (text == "nines-first") return ReductionOrder::nines_first;
  throw InputError("degeneration: unknown reduction order '" + std::string(text) + "'");
}

CentralFiberPlan plan_step(const HomogeneousSystem& system, const ReductionStrategy& strategy) {
  validate(system);
  if (system.is_leaf()) throw InputError("degeneration: single-point system is a leaf, nothing to reduce");
  const bool use_four = system.h >= 1 && (strategy.order == ReductionOrder::fours_first || system.k9 == 0);
  HomogeneousSystem child = system;
  CentralFiberPlan plan;
  if (use_four) {
    plan.per_plane = 4;
    child.h -= 1;
  } else {
    plan.per_plane = 9;
    child.k9 -= 1;
  }
  plan.b = child.point_count();
  plan.twist = strategy.twist.value_or(system.m);
  if (plan.twist < 0) throw InputError("degeneration: twist must be >= 0");
  child.m = plan.twist;
  const PointDistribution dist = distribute_points(system.point_count(), plan.b, plan.per_plane);
  plan.residual = dist.residual;
  plan.planar_system = {plan.twist, system.m, plan.per_plane};
  plan.s_part = central_fiber_restrict(system.as_class(), plan.twist, dist).s_part;
  plan.matching_budget = plan.twist + 1;
  plan.child = child;
  return plan;
}

StepAudit audit_step(const CentralFiberPlan& plan, const HomogeneousSystem& parent) {
  validate(parent);
  if (plan.s_part.n != parent.n || plan.s_part.d != parent.d || plan.child.n != parent.n || plan.child.d != parent.d) {
    throw InputError("degeneration: plan does not belong to " + to_string(parent.as_class()));
  }
  StepAudit audit;
  std::vector<std::string> problems;
  const Integer r = parent.point_count();
  audit.v_parent = virtual_dim(parent);
  audit.v_s_part = virtual_dim(plan.s_part);
  audit.gluing_budget = checked_mul(plan.b, checked_add(plan.twist, 1));

  if (plan.b < 1 || plan.twist < 0) problems.push_back("b >= 1 and twist >= 0 required");
  if (checked_mul(plan.b, plan.per_plane) > r) problems.push_back("b * per_plane exceeds the point count");
  if (plan.residual != r - plan.b * plan.per_plane || plan.residual < 0) problems.push_back("residual count mismatch");
  if (plan.planar_system.degree != plan.twist) problems.push_back("planar degree differs from twist");
  if (plan.planar_system.m != parent.m || plan.planar_system.count != plan.per_plane) {
    problems.push_back("planar system does not carry the parent's points");
  }
  if (plan.matching_budget != plan.twist + 1) problems.push_back("matching budget differs from twist + 1");
  if (plan.per_plane != 4 && plan.per_plane != 9) problems.push_back("per_plane must be 4 or 9");

  if (problems.empty()) {
    audit.v_planar_each = planar_virtual_dim(plan.twist, parent.m, plan.per_plane);
    audit.planar_expected_each = planar_expected_dim(plan.twist, parent.m, plan.per_plane);
    const auto dist = distribute_points(r, plan.b, plan.per_plane);
    if (central_fiber_restrict(parent.as_class(), plan.twist, dist).s_part != plan.s_part) {
      problems.push_back("s_part does not match the restriction formulas");
    }
    if (plan.child.point_count() != plan.b + plan.residual || plan.child.m != plan.twist) {
      problems.push_back("child system does not match s_part");
    }
    if (audit.planar_expected_each != std::max<Integer>(-1, audit.v_planar_each)) {
      problems.push_back("planar expected dimension disagrees with its virtual dimension");
    }
    audit.gluing_correction =
        audit.v_parent - audit.v_s_part - checked_mul(plan.b, checked_add(audit.v_planar_each, 1));
  }

  audit.ok = problems.empty();
  if (audit.ok) {
    audit.ledger_note = "gluing correction " + std::to_string(audit.gluing_correction);
    if (audit.gluing_correction == -audit.gluing_budget) audit.ledger_note += " = -b(k+1)";
    if (audit.v_planar_each < -1 || audit.planar_expected_each == -1) {
      audit.ledger_note += "; planar parts empty";
    }
  } else {
    for (std::size_t i = 0; i < problems.size(); ++i) audit.ledger_note += (i ? "; " : "") + problems[i];
  }
  return audit;
}

std::string_view to_string(CertificateVerdict verdict) {
  switch (verdict) {
    case CertificateVerdict::conditional_nonspecial: return "conditional-nonspecial";
    case CertificateVerdict::audit_failed: return "audit-failed";
    case CertificateVerdict::leaf_verified_nonspecial: return "leaf-verified-nonspecial";
  }
  return "unknown";
}

CertificateVerdict certificate_verdict_from_string(std::string_view text) {
  for (auto v : {CertificateVerdict::conditional_nonspecial, CertificateVerdict::audit_failed,
                 CertificateVerdict::leaf_verified_nonspecial}) {
    if (to_string(v) == text) return v;
  }
  throw InputError("degeneration: unknown verdict '" + std::string(text) + "'");
}

CertificateTree reduce_to_leaves(const HomogeneousSystem& root, const ReductionStrategy& strategy) {
  validate(root);
  CertificateTree tree;
  tree.root = root;
  tree.strategy = strategy;
  HomogeneousSystem current = root;
  bool all_ok = true;
  while (!current.is_leaf()) {
    CertificateStep step{current, plan_step(current, strategy), {}};
    step.audit = audit_step(step.plan, current);
    all_ok = all_ok && step.audit.ok;
    current = step.plan.child;
    tree.steps.push_back(std::move(step));
  }
  tree.leaves.push_back({normalized(current.as_class()), std::nullopt, {}});
  tree.verdict = all_ok ? CertificateVerdict::conditional_nonspecial : CertificateVerdict::audit_failed;
  return tree;
}

CertificateTree theorem_deg_certify(const HomogeneousSystem& root, const LeafChecker& leaf_checker,
                                    const ReductionStrategy& strategy) {
  CertificateTree tree = reduce_to_leaves(root, strategy);
  if (!leaf_checker) return tree;
  bool all_certified = true;
  for (auto& leaf : tree.leaves) {
    LeafCheck check = leaf_checker(leaf.system);
    leaf.report = std::move(check.report);
    leaf.note = std::move(check.note);
    all_certified = all_certified && leaf.report && leaf.report->certified_nonspecial;
  }
  if (tree.verdict == CertificateVerdict::conditional_nonspecial && all_certified) {
    tree.verdict = CertificateVerdict::leaf_verified_nonspecial;
  }
  return tree;
}

LeafChecker oracle_leaf_checker(Residue prime, std::uint64_t seed, const OracleOptions& options) {
  return [prime, seed, options](const SystemClass& leaf) -> LeafCheck {
    const auto variant = model_for(leaf.n);
    if (!variant) return {std::nullopt, "no model for n=" + std::to_string(leaf.n)};
    if (leaf.d < 1) return {std::nullopt, "degree-0 leaf is the trivial system; not checked"};
    const K3Model model = K3Model::random(*variant, prime, seed);
    OracleOptions opts = options;
    opts.seed = seed;
    OracleReport report = speciality_test(model, leaf, opts);
    std::string note = report.certified_nonspecial ? "oracle certifies full expected rank"
                                                   : "oracle rank deficient; leaf remains a hypothesis";
    return {std::move(report), std::move(note)};
  };
}

std::vector<std::string> verify_certificate(const CertificateTree& tree) {
  std::vector<std::string> issues;
  CertificateTree expected;
  try {
    expected = reduce_to_leaves(tree.root, tree.strategy);
  } catch (const std::exception& e) {
    return {std::string("root does not reduce: ") + e.what()};
  }
  if (tree.steps.size() != expected.steps.size()) {
    issues.push_back("depth " + std::to_string(tree.steps.size()) + " != " + std::to_string(expected.steps.size()));
    return issues;
  }
  for (std::size_t i = 0; i < tree.steps.size(); ++i) {
    const auto& got = tree.steps[i];
    const auto& want = expected.steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    if (!(got.system == want.system)) issues.push_back(where + "system mismatch");
    if (!(got.plan == want.plan)) issues.push_back(where + "plan mismatch");
    if (!(got.audit == want.audit)) issues.push_back(where + "audit mismatch");
  }
  if (tree.leaves.size() != expected.leaves.size()) {
    issues.push_back("leaf count mismatch");
    return issues;
  }
  bool all_certified = true;
  for (std::size_t i = 0; i < tree.leaves.size(); ++i) {
    const auto& leaf = tree.leaves[i];
    if (leaf.system != expected.leaves[i].system) issues.push_back("leaf " + std::to_string(i) + " system mismatch");
    if (!leaf.report) {
      all_certified = false;
      continue;
    }
    const OracleReport& rep = *leaf.report;
    const std::string where = "leaf " + std::to_string(i) + " report: ";
    if (normalized(rep.system) != leaf.system) issues.push_back(where + "system mismatch");
    if (model_for(rep.system.n) != rep.variant) issues.push_back(where + "variant does not fit n");
    if (rep.basis_dim != model_basis_dim(rep.variant, rep.system.d)) issues.push_back(where + "basis_dim");
    if (rep.expected_dim != expected_dim(rep.system).e) issues.push_back(where + "expected_dim");
    if (rep.actual_dim != rep.basis_dim - rep.effective_rank - 1) issues.push_back(where + "actual_dim");
    if (rep.certified_nonspecial != (rep.actual_dim == rep.expected_dim)) issues.push_back(where + "certified flag");
    if (rep.special_evidence != (rep.actual_dim > rep.expected_dim)) issues.push_back(where + "evidence flag");
    Integer best = 0;
    for (const auto& inst : rep.instances) best = std::max(best, inst.rank);
    if (!rep.instances.empty() && best != rep.effective_rank) issues.push_back(where + "rank is not the max over instances");
    all_certified = all_certified && rep.certified_nonspecial;
  }
  const bool audits_ok = std::all_of(tree.steps.begin(), tree.steps.end(), [](const auto& s) { return s.audit.ok; });
  CertificateVerdict want = audits_ok ? CertificateVerdict::conditional_nonspecial : CertificateVerdict::audit_failed;
  if (audits_ok && all_certified && tree.verdict == CertificateVerdict::leaf_verified_nonspecial) {
    want = CertificateVerdict::leaf_verified_nonspecial;
  }
  if (tree.verdict != want) issues.push_back("verdict " + std::string(to_string(tree.verdict)) + " not justified");
  return issues;
}

}  // namespace k3ls
