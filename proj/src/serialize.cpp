#include "k3ls/serialize.hpp"

#include <algorithm>

#include "k3ls/errors.hpp"

namespace k3ls {

void to_json(Json& j, const SystemClass& cls) {
  j = Json{{"n", cls.n}, {"d", cls.d}, {"mults", cls.mults}};
}

void from_json(const Json& j, SystemClass& cls) {
  cls.n = j.at("n").get<Integer>();
  cls.d = j.at("d").get<Integer>();
  cls.mults = j.at("mults").get<std::vector<Integer>>();
  validate(cls);
}

void to_json(Json& j, const DimensionPair& dims) { j = Json{{"v", dims.v}, {"e", dims.e}}; }

void to_json(Json& j, const Verdict& verdict) {
  Json fixed = Json::array();
  for (const auto& comp : verdict.fixed_part) fixed.push_back({{"class", comp.cls}, {"multiplicity", comp.multiplicity}});
  j = Json{{"special", verdict.special},
           {"predicted_dim", verdict.predicted_dim},
           {"case_tag", std::string(to_string(verdict.case_tag))},
           {"fixed_part", fixed},
           {"mobile_part", verdict.mobile_part},
           {"notes", verdict.notes}};
}

void from_json(const Json& j, Verdict& verdict) {
  verdict.special = j.at("special").get<bool>();
  verdict.predicted_dim = j.at("predicted_dim").get<Integer>();
  verdict.case_tag = case_tag_from_string(j.at("case_tag").get<std::string>());
  verdict.fixed_part.clear();
  for (const auto& comp : j.at("fixed_part")) {
    verdict.fixed_part.push_back({comp.at("class").get<SystemClass>(), comp.at("multiplicity").get<Integer>()});
  }
  verdict.mobile_part = j.at("mobile_part").get<SystemClass>();
  verdict.notes = j.value("notes", "");
}

void to_json(Json& j, const AuditReport& report) {
  Json pairs = Json::array();
  for (const auto& p : report.pairs) {
    pairs.push_back({{"first", p.first},
                     {"second", p.second},
                     {"a", p.a},
                     {"b", p.b},
                     {"v_a", p.v_a},
                     {"v_b", p.v_b},
                     {"intersection", p.intersection},
                     {"v_sum", p.v_sum},
                     {"violation", p.violation},
                     {"allowed_unit", p.allowed_unit},
                     {"reason", p.reason}});
  }
  Json flags = Json::array();
  for (const auto& f : report.self_intersection_flags) {
    flags.push_back({{"index", f.index}, {"multiplicity", f.multiplicity}, {"self_intersection", f.self_intersection}});
  }
  j = Json{{"clean", report.clean()}, {"pairs", pairs}, {"self_intersection_flags", flags}};
}

void from_json(const Json& j, AuditReport& report) {
  report = {};
  for (const auto& p : j.at("pairs")) {
    AuditPair pair;
    pair.first = p.at("first").get<std::size_t>();
    pair.second = p.at("second").get<std::size_t>();
    pair.a = p.at("a").get<SystemClass>();
    pair.b = p.at("b").get<SystemClass>();
    pair.v_a = p.at("v_a").get<Integer>();
    pair.v_b = p.at("v_b").get<Integer>();
    pair.intersection = p.at("intersection").get<Integer>();
    pair.v_sum = p.at("v_sum").get<Integer>();
    pair.violation = p.at("violation").get<bool>();
    pair.allowed_unit = p.at("allowed_unit").get<bool>();
    pair.reason = p.value("reason", "");
    report.pairs.push_back(std::move(pair));
  }
  for (const auto& f : j.at("self_intersection_flags")) {
    report.self_intersection_flags.push_back({f.at("index").get<std::size_t>(), f.at("multiplicity").get<Integer>(),
                                              f.at("self_intersection").get<Integer>()});
  }
}

void to_json(Json& j, const HomogeneousSystem& system) {
  j = Json{{"n", system.n}, {"d", system.d}, {"m", system.m}, {"h", system.h}, {"k9", system.k9},
           {"points", system.point_count()}};
}

void from_json(const Json& j, HomogeneousSystem& system) {
  system.n = j.at("n").get<Integer>();
  system.d = j.at("d").get<Integer>();
  system.m = j.at("m").get<Integer>();
  system.h = j.at("h").get<Integer>();
  system.k9 = j.at("k9").get<Integer>();
  validate(system);
  if (j.contains("points") && j.at("points").get<Integer>() != system.point_count()) {
    throw InputError("serialize: point count does not match 4^h 9^k9");
  }
}

void to_json(Json& j, const CentralFiberPlan& plan) {
  j = Json{{"b", plan.b},
           {"twist", plan.twist},
           {"per_plane", plan.per_plane},
           {"residual", plan.residual},
           {"planar_system",
            {{"degree", plan.planar_system.degree}, {"m", plan.planar_system.m}, {"count", plan.planar_system.count}}},
           {"s_part", plan.s_part},
           {"matching_budget", plan.matching_budget},
           {"child", plan.child}};
}

void from_json(const Json& j, CentralFiberPlan& plan) {
  plan.b = j.at("b").get<Integer>();
  plan.twist = j.at("twist").get<Integer>();
  plan.per_plane = j.at("per_plane").get<Integer>();
  plan.residual = j.at("residual").get<Integer>();
  const Json& ps = j.at("planar_system");
  plan.planar_system = {ps.at("degree").get<Integer>(), ps.at("m").get<Integer>(), ps.at("count").get<Integer>()};
  plan.s_part = j.at("s_part").get<SystemClass>();
  plan.matching_budget = j.at("matching_budget").get<Integer>();
  plan.child = j.at("child").get<HomogeneousSystem>();
}

void to_json(Json& j, const StepAudit& audit) {
  j = Json{{"v_parent", audit.v_parent},
           {"v_s_part", audit.v_s_part},
           {"v_planar_each", audit.v_planar_each},
           {"planar_expected_each", audit.planar_expected_each},
           {"gluing_budget", audit.gluing_budget},
           {"gluing_correction", audit.gluing_correction},
           {"ledger_note", audit.ledger_note},
           {"ok", audit.ok}};
}

void from_json(const Json& j, StepAudit& audit) {
  audit.v_parent = j.at("v_parent").get<Integer>();
  audit.v_s_part = j.at("v_s_part").get<Integer>();
  audit.v_planar_each = j.at("v_planar_each").get<Integer>();
  audit.planar_expected_each = j.at("planar_expected_each").get<Integer>();
  audit.gluing_budget = j.at("gluing_budget").get<Integer>();
  audit.gluing_correction = j.at("gluing_correction").get<Integer>();
  audit.ledger_note = j.at("ledger_note").get<std::string>();
  audit.ok = j.at("ok").get<bool>();
}

void to_json(Json& j, const OracleReport& report) {
  Json instances = Json::array();
  for (const auto& inst : report.instances) {
    instances.push_back({{"prime", inst.prime}, {"model_seed", inst.model_seed}, {"trial", inst.trial}, {"rank", inst.rank}});
  }
  j = Json{{"model", std::string(to_string(report.variant))},
           {"system", report.system},
           {"basis_dim", report.basis_dim},
           {"rows", report.rows},
           {"columns", report.columns},
           {"effective_rank", report.effective_rank},
           {"actual_dim", report.actual_dim},
           {"expected_dim", report.expected_dim},
           {"special_evidence", report.special_evidence},
           {"certified_nonspecial", report.certified_nonspecial},
           {"trials", report.trials},
           {"prime", report.prime},
           {"seed", report.seed},
           {"reseeded", report.reseeded},
           {"instances", instances}};
}

void from_json(const Json& j, OracleReport& report) {
  report.variant = model_variant_from_string(j.at("model").get<std::string>());
  report.system = j.at("system").get<SystemClass>();
  report.basis_dim = j.at("basis_dim").get<Integer>();
  report.rows = j.at("rows").get<Integer>();
  report.columns = j.at("columns").get<Integer>();
  report.effective_rank = j.at("effective_rank").get<Integer>();
  report.actual_dim = j.at("actual_dim").get<Integer>();
  report.expected_dim = j.at("expected_dim").get<Integer>();
  report.special_evidence = j.at("special_evidence").get<bool>();
  report.certified_nonspecial = j.at("certified_nonspecial").get<bool>();
  report.trials = j.at("trials").get<int>();
  report.prime = j.at("prime").get<Residue>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.reseeded = j.at("reseeded").get<bool>();
  report.instances.clear();
  for (const auto& inst : j.at("instances")) {
    report.instances.push_back({inst.at("prime").get<Residue>(), inst.at("model_seed").get<std::uint64_t>(),
                                inst.at("trial").get<std::uint64_t>(), inst.at("rank").get<Integer>()});
  }
}

Json certificate_to_json(const CertificateTree& tree) {
  // Build the nested node chain from the leaf upwards.
  Json node = Json::object();
  node["system"] = tree.steps.empty() ? tree.root : tree.steps.back().plan.child;
  Json leaves = Json::array();
  for (const auto& leaf : tree.leaves) {
    Json l{{"system", leaf.system}, {"note", leaf.note}};
    l["oracle"] = leaf.report ? Json(*leaf.report) : Json(nullptr);
    leaves.push_back(std::move(l));
  }
  node["leaves"] = std::move(leaves);
  for (auto it = tree.steps.rbegin(); it != tree.steps.rend(); ++it) {
    Json parent{{"system", it->system}, {"plan", it->plan}, {"audit", it->audit}};
    parent["child"] = std::move(node);
    node = std::move(parent);
  }
  Json strategy{{"twist", tree.strategy.twist ? Json(*tree.strategy.twist) : Json("m")},
                {"order", std::string(to_string(tree.strategy.order))}};
  return Json{{"root", tree.root},
              {"strategy", strategy},
              {"depth", tree.depth()},
              {"verdict", std::string(to_string(tree.verdict))},
              {"tree", node}};
}

CertificateTree certificate_from_json(const Json& j) {
  CertificateTree tree;
  tree.root = j.at("root").get<HomogeneousSystem>();
  const Json& strategy = j.at("strategy");
  if (strategy.at("twist").is_number_integer()) tree.strategy.twist = strategy.at("twist").get<Integer>();
  tree.strategy.order = reduction_order_from_string(strategy.at("order").get<std::string>());
  tree.verdict = certificate_verdict_from_string(j.at("verdict").get<std::string>());
  const Json* node = &j.at("tree");
  while (node->contains("plan")) {
    CertificateStep step;
    step.system = node->at("system").get<HomogeneousSystem>();
    step.plan = node->at("plan").get<CentralFiberPlan>();
    step.audit = node->at("audit").get<StepAudit>();
    tree.steps.push_back(std::move(step));
    node = &node->at("child");
  }
  for (const auto& l : node->at("leaves")) {
    LeafRecord leaf;
    leaf.system = l.at("system").get<SystemClass>();
    leaf.note = l.value("note", "");
    if (!l.at("oracle").is_null()) leaf.report = l.at("oracle").get<OracleReport>();
    tree.leaves.push_back(std::move(leaf));
  }
  if (j.contains("depth") && j.at("depth").get<std::size_t>() != tree.depth()) {
    throw InputError("serialize: certificate depth field does not match its nodes");
  }
  return tree;
}

Json make_document(const std::string& command, Json config, Json result) {
  return Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", std::move(config)},
              {"result", std::move(result)}};
}

namespace {

void check(std::vector<std::string>& issues, bool ok, const std::string& what) {
  if (!ok) issues.push_back(what);
}

std::vector<std::string> check_oracle_report(const OracleReport& rep) {
  std::vector<std::string> issues;
  check(issues, model_for(rep.system.n) == rep.variant, "oracle: model does not fit n");
  check(issues, rep.basis_dim == model_basis_dim(rep.variant, rep.system.d), "oracle: basis_dim");
  Integer rows = 0;
  for (Integer m : rep.system.mults) rows += conditions(m);
  check(issues, rep.rows == rows, "oracle: row count");
  check(issues, rep.expected_dim == expected_dim(rep.system).e, "oracle: expected_dim");
  check(issues, rep.actual_dim == rep.basis_dim - rep.effective_rank - 1, "oracle: actual_dim");
  check(issues, rep.actual_dim >= rep.expected_dim, "oracle: actual below expected");
  check(issues, rep.special_evidence == (rep.actual_dim > rep.expected_dim), "oracle: special_evidence");
  check(issues, rep.certified_nonspecial == (rep.actual_dim == rep.expected_dim), "oracle: certified_nonspecial");
  Integer best = 0;
  for (const auto& inst : rep.instances) {
    best = std::max(best, inst.rank);
    check(issues, inst.rank <= std::min(rep.rows, rep.basis_dim), "oracle: instance rank above bound");
  }
  check(issues, rep.instances.empty() || best == rep.effective_rank, "oracle: effective rank is not the max");
  return issues;
}

void check_verdict(std::vector<std::string>& issues, const SystemClass& system, const Verdict& got) {
  const Verdict want = classify(system);
  check(issues, got.case_tag == want.case_tag, "classify: case_tag");
  check(issues, got.predicted_dim == want.predicted_dim, "classify: predicted_dim");
  check(issues, got.special == want.special, "classify: special");
  check(issues, got.fixed_part == want.fixed_part, "classify: fixed_part");
  check(issues, got.mobile_part == want.mobile_part, "classify: mobile_part");
  check(issues, reconstruct(got) == system, "classify: decomposition does not reconstruct the system");
}

}  // namespace

std::vector<std::string> validate_document(const Json& document) {
  std::vector<std::string> issues;
  try {
    check(issues, document.at("tool") == kToolName, "document: unknown tool");
    const std::string command = document.at("command").get<std::string>();
    const Json& result = document.at("result");
    if (command == "vdim") {
      const auto system = result.at("system").get<SystemClass>();
      const DimensionPair dims = expected_dim(system);
      check(issues, result.at("v").get<Integer>() == dims.v, "vdim: v");
      check(issues, result.at("e").get<Integer>() == dims.e, "vdim: e");
      check(issues, result.at("self_intersection").get<Integer>() == self_intersection(system), "vdim: L^2");
      check(issues, result.at("canonical_pairing").get<Integer>() == canonical_pairing(system), "vdim: L.K");
    } else if (command == "classify") {
      const auto system = result.at("system").get<SystemClass>();
      check_verdict(issues, system, result.at("verdict").get<Verdict>());
      const DimensionPair dims = expected_dim(system);
      check(issues, result.at("v").get<Integer>() == dims.v, "classify: v");
      check(issues, result.at("e").get<Integer>() == dims.e, "classify: e");
    } else if (command == "audit") {
      std::vector<FixedComponent> parts;
      for (const auto& p : result.at("parts")) {
        parts.push_back({p.at("class").get<SystemClass>(), p.at("multiplicity").get<Integer>()});
      }
      const auto report = result.at("report").get<AuditReport>();
      check(issues, recheck(report), "audit: pair numbers do not recompute");
      const auto fresh = segre_audit(parts, result.at("mobile").get<SystemClass>());
      check(issues, Json(fresh) == result.at("report"), "audit: report differs from a fresh audit");
    } else if (command == "certify") {
      for (auto& issue : verify_certificate(certificate_from_json(result.at("certificate")))) {
        issues.push_back("certify: " + issue);
      }
    } else if (command == "oracle") {
      for (auto& issue : check_oracle_report(result.at("report").get<OracleReport>())) issues.push_back(issue);
    } else if (command == "mult") {
      const auto system = result.at("system").get<SystemClass>();
      const auto index = result.at("index").get<std::size_t>();
      check(issues, index < system.points(), "mult: index out of range");
      check(issues, result.at("predicted").get<Integer>() == system.mults.at(index), "mult: predicted");
      check(issues, result.at("measured").get<Integer>() >= system.mults.at(index), "mult: measured below imposed");
    } else if (command == "sweep") {
      for (const auto& row : result.at("rows")) {
        const SystemClass system{row.at("n").get<Integer>(), row.at("d").get<Integer>(),
                                 parse_multiplicities(row.at("mults").get<std::string>())};
        const DimensionPair dims = expected_dim(system);
        const Verdict verdict = classify(system);
        const std::string where = "sweep " + to_string(system) + ": ";
        check(issues, row.at("v").get<Integer>() == dims.v, where + "v");
        check(issues, row.at("e").get<Integer>() == dims.e, where + "e");
        check(issues, row.at("case_tag").get<std::string>() == to_string(verdict.case_tag), where + "case_tag");
        check(issues, row.at("predicted").get<Integer>() == verdict.predicted_dim, where + "predicted");
        if (!row.at("actual").is_null()) {
          check(issues, row.at("agreement").get<bool>() == (row.at("actual").get<Integer>() == verdict.predicted_dim),
                where + "agreement");
        }
      }
    } else {
      issues.push_back("document: unknown command '" + command + "'");
    }
  } catch (const std::exception& e) {
    issues.push_back(std::string("document: ") + e.what());
  }
  return issues;
}

}  // namespace k3ls
