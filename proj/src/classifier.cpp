#include "k3ls/classifier.hpp"

#include <algorithm>
#include <array>

namespace k3ls {

namespace {

const std::array<CurveCatalogEntry, 6>& catalog_storage() {
  static const std::array<CurveCatalogEntry, 6> entries{{
      {"L^2(1,1^2)", SystemClass{2, 1, {1, 1}}, CurveRole::special_family_generator},
      {"L^4(1,2)", SystemClass{4, 1, {2}}, CurveRole::special_family_generator},
      {"L^4(1,1^3)", SystemClass{4, 1, {1, 1, 1}}, CurveRole::double_curve},
      {"L^6(1,2,1)", SystemClass{6, 1, {2, 1}}, CurveRole::double_curve},
      {"L^10(1,3)", SystemClass{10, 1, {3}}, CurveRole::double_curve},
      {"L^2(1,1)", SystemClass{2, 1, {1}}, CurveRole::pencil},
  }};
  return entries;
}

std::vector<Integer> sorted_desc(std::vector<Integer> mults) {
  std::sort(mults.begin(), mults.end(), std::greater<>());
  return mults;
}

// Builds the class of `generator` placed on the labels of `shape`: the generator's
// multiplicities (in descending order) are assigned to the labels carrying the largest
// entries of shape. Used to keep fixed parts label-aligned with the input.
SystemClass aligned(const SystemClass& shape, const std::vector<std::pair<std::size_t, Integer>>& placement,
                    Integer d) {
  SystemClass out = zero_class(shape.n, shape.points());
  out.d = d;
  for (auto [label, m] : placement) out.mults[label] = m;
  return out;
}

std::vector<std::size_t> labels_by_mult_desc(const SystemClass& cls) {
  std::vector<std::size_t> order(cls.points());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cls.mults[a] > cls.mults[b]; });
  return order;
}

Verdict with_mobile_rest(const SystemClass& cls, Verdict verdict) {
  SystemClass fixed_sum = zero_class(cls.n, cls.points());
  for (const auto& comp : verdict.fixed_part) fixed_sum = add(fixed_sum, scale(comp.cls, comp.multiplicity));
  SystemClass mobile{cls.n, cls.d - fixed_sum.d, cls.mults};
  for (std::size_t i = 0; i < mobile.mults.size(); ++i) mobile.mults[i] -= fixed_sum.mults[i];
  verdict.mobile_part = std::move(mobile);
  return verdict;
}

}  // namespace

std::span<const CurveCatalogEntry> curve_catalog() { return catalog_storage(); }

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::special_i: return "special-i";
    case CaseTag::fixed_iii_a: return "fixed-iii-a";
    case CaseTag::fixed_iii_b: return "fixed-iii-b";
    case CaseTag::fixed_iii_c: return "fixed-iii-c";
    case CaseTag::reducible_iv: return "reducible-iv";
    case CaseTag::plain_nonspecial: return "plain-nonspecial";
    case CaseTag::empty: return "empty";
  }
  return "unknown";
}

std::string_view to_string(CurveRole role) {
  switch (role) {
    case CurveRole::special_family_generator: return "special-family-generator";
    case CurveRole::double_curve: return "double-curve";
    case CurveRole::pencil: return "pencil";
    case CurveRole::fixed_plus_pencil_member: return "fixed-plus-pencil-member";
  }
  return "unknown";
}

CaseTag case_tag_from_string(std::string_view text) {
  for (CaseTag tag : {CaseTag::special_i, CaseTag::fixed_iii_a, CaseTag::fixed_iii_b, CaseTag::fixed_iii_c,
                      CaseTag::reducible_iv, CaseTag::plain_nonspecial, CaseTag::empty}) {
    if (to_string(tag) == text) return tag;
  }
  throw InputError("classifier: unknown case tag '" + std::string(text) + "'");
}

SystemClass reconstruct(const Verdict& verdict) {
  SystemClass total = verdict.mobile_part;
  for (const auto& comp : verdict.fixed_part) total = add(total, scale(comp.cls, comp.multiplicity));
  return total;
}

bool is_conjecturally_special(const SystemClass& cls) {
  validate(cls);
  const SystemClass norm = normalized(cls);
  const Integer d = norm.d;
  if (d < 2) return false;
  if (norm.n == 4) return norm.mults == std::vector<Integer>{2 * d};
  if (norm.n == 2) return norm.mults == std::vector<Integer>{d, d};
  return false;
}

Verdict classify(const SystemClass& cls) {
  validate(cls);
  if (cls.d == 0) throw InputError("classifier: degree-0 classes are the trivial system, not classified");
  if (!is_normalized(cls)) throw InputError("classifier: class must not carry zero multiplicities");

  const DimensionPair dims = expected_dim(cls);
  const std::vector<Integer> shape = sorted_desc(cls.mults);
  const std::vector<std::size_t> order = labels_by_mult_desc(cls);
  Verdict verdict;

  // (i) the two special families: d times a rigid curve with C^2 = 0.
  if (is_conjecturally_special(cls)) {
    verdict.special = true;
    verdict.case_tag = CaseTag::special_i;
    verdict.predicted_dim = 0;
    std::vector<std::pair<std::size_t, Integer>> placement;
    for (std::size_t label : order) placement.emplace_back(label, cls.mults[label] / cls.d);
    verdict.fixed_part.push_back({aligned(cls, placement, 1), cls.d});
    verdict.notes = cls.n == 4 ? "family L^4(d,2d) = d L^4(1,2); conjectural dimension 0"
                               : "family L^2(d,d^2) = d L^2(1,1^2); conjectural dimension 0";
    return with_mobile_rest(cls, std::move(verdict));
  }

  // (iii)a L^2(m+1, m+1, m) = m L^2(1,1^2) + L^2(1,1).
  if (cls.n == 2 && shape.size() == 2 && shape[0] == cls.d && shape[1] == cls.d - 1 && cls.d >= 2) {
    const Integer m = cls.d - 1;
    verdict.case_tag = CaseTag::fixed_iii_a;
    verdict.predicted_dim = 1;
    verdict.fixed_part.push_back({aligned(cls, {{order[0], 1}, {order[1], 1}}, 1), m});
    verdict.notes = "m = " + std::to_string(m) + ": fixed m L^2(1,1^2) plus the pencil L^2(1,1)";
    return with_mobile_rest(cls, std::move(verdict));
  }

  // (iii)b twice a double curve.
  for (const auto& entry : curve_catalog()) {
    if (entry.role != CurveRole::double_curve || entry.cls.n != cls.n) continue;
    const SystemClass doubled = scale(entry.cls, 2);
    if (doubled.d == cls.d && sorted_desc(doubled.mults) == shape) {
      verdict.case_tag = CaseTag::fixed_iii_b;
      verdict.predicted_dim = 0;
      std::vector<std::pair<std::size_t, Integer>> placement;
      for (std::size_t label : order) placement.emplace_back(label, cls.mults[label] / 2);
      verdict.fixed_part.push_back({aligned(cls, placement, 1), 2});
      verdict.notes = "2C with C = " + entry.name;
      return with_mobile_rest(cls, std::move(verdict));
    }
  }

  // (iv) the only system without fixed part whose general member is reducible.
  if (cls.n == 2 && cls.d == 2 && shape == std::vector<Integer>{2}) {
    verdict.case_tag = CaseTag::reducible_iv;
    verdict.predicted_dim = dims.e;
    verdict.notes = "general element reducible: two members of L^2(1,1)";
    verdict.mobile_part = cls;
    return verdict;
  }

  if (dims.e == -1) {
    verdict.case_tag = CaseTag::empty;
    verdict.predicted_dim = -1;
    verdict.mobile_part = cls;
    return verdict;
  }

  // (iii)c a rigid class is its own fixed component.
  if (dims.v == 0) {
    verdict.case_tag = CaseTag::fixed_iii_c;
    verdict.predicted_dim = 0;
    verdict.fixed_part.push_back({cls, 1});
    verdict.mobile_part = zero_class(cls.n, cls.points());
    verdict.notes = "rigid; conjecturally L = C when irreducible";
    return verdict;
  }

  verdict.case_tag = CaseTag::plain_nonspecial;
  verdict.predicted_dim = dims.e;
  verdict.mobile_part = cls;
  return verdict;
}

std::vector<Integer> predicted_general_multiplicities(const SystemClass& cls) {
  validate(cls);
  if (cls.d == 0) throw InputError("classifier: degree-0 class is the trivial system");
  if (classify(normalized(cls)).predicted_dim < 0) {
    throw InputError("classifier: " + to_string(cls) + " is empty; no general divisor");
  }
  return cls.mults;
}

bool AuditReport::clean() const {
  return self_intersection_flags.empty() &&
         std::none_of(pairs.begin(), pairs.end(), [](const AuditPair& p) { return p.violation; });
}

std::vector<std::pair<std::size_t, std::size_t>> AuditReport::violations() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& p : pairs)
    if (p.violation) out.emplace_back(p.first, p.second);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> AuditReport::allowed_unit_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& p : pairs)
    if (p.allowed_unit) out.emplace_back(p.first, p.second);
  return out;
}

bool is_unit_configuration(const SystemClass& a, const SystemClass& b) {
  auto is_conic_class = [](const SystemClass& c) {
    return c.n == 2 && c.d == 1 && normalized(c).mults == std::vector<Integer>{1, 1};
  };
  auto is_pencil_member = [](const SystemClass& c) {
    return c.n == 2 && c.d == 1 && normalized(c).mults == std::vector<Integer>{1};
  };
  if (a.n != b.n) return false;
  const bool shapes = (is_conic_class(a) && is_pencil_member(b)) || (is_conic_class(b) && is_pencil_member(a));
  return shapes && intersect(a, b) == 1;
}

AuditReport segre_audit(std::span<const FixedComponent> parts, const SystemClass& mobile) {
  validate(mobile);
  for (const auto& part : parts) {
    validate(part.cls);
    if (part.cls.n != mobile.n) throw InputError("classifier: audit parts must share n with the mobile part");
    if (part.multiplicity < 1) throw InputError("classifier: fixed multiplicities must be >= 1");
  }
  AuditReport report;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const SystemClass& c = parts[i].cls;
    if (parts[i].multiplicity >= 2) {
      const Integer c2 = self_intersection(c);
      if (c2 > 1) report.self_intersection_flags.push_back({i, parts[i].multiplicity, c2});
    }
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      AuditPair pair;
      pair.first = i;
      pair.second = j;
      pair.a = parts[i].cls;
      pair.b = parts[j].cls;
      pair.v_a = virtual_dim(pair.a);
      pair.v_b = virtual_dim(pair.b);
      pair.intersection = intersect(pair.a, pair.b);
      pair.v_sum = virtual_dim(add(pair.a, pair.b));
      pair.allowed_unit = is_unit_configuration(pair.a, pair.b);
      if (!pair.allowed_unit) {
        if (pair.v_a != 0) pair.reason += "v(A) != 0; ";
        if (pair.v_b != 0) pair.reason += "v(B) != 0; ";
        if (pair.intersection != 1) pair.reason += "A.B = " + std::to_string(pair.intersection) + " != 1; ";
        pair.violation = !pair.reason.empty();
        if (pair.violation) pair.reason.resize(pair.reason.size() - 2);
      } else {
        pair.reason = "unit configuration L^2(1,1^2) with a member of L^2(1,1)";
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

bool recheck(const AuditReport& report) {
  for (const auto& p : report.pairs) {
    if (virtual_dim(p.a) != p.v_a || virtual_dim(p.b) != p.v_b) return false;
    if (intersect(p.a, p.b) != p.intersection || virtual_dim(add(p.a, p.b)) != p.v_sum) return false;
    // The additivity identity ties the four numbers together.
    if (p.v_sum != p.v_a + p.v_b + p.intersection - 1) return false;
    const bool unit = is_unit_configuration(p.a, p.b);
    if (unit != p.allowed_unit) return false;
    const bool bad = !unit && (p.v_a != 0 || p.v_b != 0 || p.intersection != 1);
    if (bad != p.violation) return false;
  }
  return true;
}

}  // namespace k3ls
