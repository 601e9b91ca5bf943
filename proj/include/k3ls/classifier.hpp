#pragma once

// Conjectural classification of special linear systems on generic K3 surfaces
// and the pairwise audit of hypothesized fixed components.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "k3ls/numerics.hpp"

namespace k3ls {

enum class CurveRole { special_family_generator, double_curve, pencil, fixed_plus_pencil_member };

struct CurveCatalogEntry {
  std::string name;
  SystemClass cls;
  CurveRole role;
};

/// The finite list of curves named by the classification:
/// L^2(1,1^2), L^4(1,2), L^4(1,1^3), L^6(1,2,1), L^10(1,3), L^2(1,1).
std::span<const CurveCatalogEntry> curve_catalog();

enum class CaseTag {
  special_i,
  fixed_iii_a,
  fixed_iii_b,
  fixed_iii_c,
  reducible_iv,
  plain_nonspecial,
  empty,
};

std::string_view to_string(CaseTag tag);
std::string_view to_string(CurveRole role);
CaseTag case_tag_from_string(std::string_view text);

struct FixedComponent {
  SystemClass cls;
  Integer multiplicity = 1;
  friend bool operator==(const FixedComponent&, const FixedComponent&) = default;
};

struct Verdict {
  bool special = false;
  Integer predicted_dim = -1;
  CaseTag case_tag = CaseTag::plain_nonspecial;
  std::vector<FixedComponent> fixed_part;  // label-aligned with the input
  SystemClass mobile_part;                 // label-aligned with the input
  std::string notes;
};

/// sum mu_i C_i + mobile, the class a verdict decomposes.
SystemClass reconstruct(const Verdict& verdict);

bool is_conjecturally_special(const SystemClass& cls);

/// Priority-ordered case detection. Throws InputError for d = 0 or a class
/// with zero multiplicities.
Verdict classify(const SystemClass& cls);

/// The imposed multiplicities, which the conjecture asserts are attained by the
/// general member. Throws InputError on an empty system.
std::vector<Integer> predicted_general_multiplicities(const SystemClass& cls);

struct AuditPair {
  std::size_t first = 0;
  std::size_t second = 0;
  SystemClass a;
  SystemClass b;
  Integer v_a = 0;
  Integer v_b = 0;
  Integer intersection = 0;
  Integer v_sum = 0;
  bool violation = false;
  bool allowed_unit = false;
  std::string reason;
};

struct SelfIntersectionFlag {
  std::size_t index = 0;
  Integer multiplicity = 0;
  Integer self_intersection = 0;
};

struct AuditReport {
  std::vector<AuditPair> pairs;
  std::vector<SelfIntersectionFlag> self_intersection_flags;

  bool clean() const;
  std::vector<std::pair<std::size_t, std::size_t>> violations() const;
  std::vector<std::pair<std::size_t, std::size_t>> allowed_unit_pairs() const;
};

/// True when {a, b} is, up to point labels, L^2(1,1^2) together with a member of L^2(1,1)
/// through one of its two points.
bool is_unit_configuration(const SystemClass& a, const SystemClass& b);

/// Records v(A), v(B), A.B, v(A+B) for every pair of distinct fixed components and flags
/// the pairs that cannot satisfy v(A)=v(B)=v(A+B)=0 (hence A.B=1). The mobile part must
/// share n with the parts.
AuditReport segre_audit(std::span<const FixedComponent> parts, const SystemClass& mobile);

/// Recomputes every number in the report from numerics alone.
bool recheck(const AuditReport& report);

}  // namespace k3ls
