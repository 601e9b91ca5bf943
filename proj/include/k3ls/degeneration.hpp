#pragma once

// Central-fiber bookkeeping for the degeneration of a K3 surface to b planes glued to
// the blow-up of the K3 at b points, and the recursion that reduces homogeneous systems
// L^n(d, m^{4^h 9^k}) to single-point systems.
//
// Only the numerical shadow is modeled: which points go to which plane, the planar
// systems O_P2(k) through them, and the residual system on the blown-up K3 with
// multiplicity k at the exceptional curves.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "k3ls/numerics.hpp"
#include "k3ls/oracle.hpp"

namespace k3ls {

struct HomogeneousSystem {
  Integer n = 2;
  Integer d = 0;
  Integer m = 0;
  Integer h = 0;   // number of factors 4 in the point count
  Integer k9 = 0;  // number of factors 9 in the point count

  /// 4^h 9^k9.
  Integer point_count() const;
  SystemClass as_class() const;
  bool is_leaf() const { return h == 0 && k9 == 0; }

  friend bool operator==(const HomogeneousSystem&, const HomogeneousSystem&) = default;
};

void validate(const HomogeneousSystem& system);

/// v of the expanded class, without expanding the points.
Integer virtual_dim(const HomogeneousSystem& system);

struct PointDistribution {
  Integer r = 0;
  Integer b = 0;
  Integer per_plane = 0;
  Integer residual = 0;
  friend bool operator==(const PointDistribution&, const PointDistribution&) = default;
};

/// a_i = per_plane on each of the b planes, the remaining r - b per_plane points stay on
/// the K3 part. Throws InputError when the budget is exceeded.
PointDistribution distribute_points(Integer r, Integer b, Integer per_plane);

struct Restriction {
  Integer planar_degree = 0;
  std::vector<std::vector<Integer>> planar_mults;  // per plane
  SystemClass s_part;
};

/// Restriction of O_X(L, k) to the central fiber. The first b * per_plane points of L
/// specialize onto the planes, in order. s_part has twist at each of the b exceptional
/// curves followed by the residual points, with zeros stripped.
Restriction central_fiber_restrict(const SystemClass& cls, Integer twist, const PointDistribution& distribution);

/// max(-1, deg(deg+3)/2 - count m(m+1)/2). Planar systems through 4 or 9 points of equal
/// multiplicity are never special, so this is also the actual dimension. count must be 4 or 9.
Integer planar_expected_dim(Integer deg, Integer m, Integer count);
Integer planar_virtual_dim(Integer deg, Integer m, Integer count);

enum class ReductionOrder { fours_first, nines_first };

std::string_view to_string(ReductionOrder order);
ReductionOrder reduction_order_from_string(std::string_view text);

struct ReductionStrategy {
  /// Twist at every step; unset means twist = m, which keeps the s_part equal to the
  /// homogeneous system with one factor 4 (or 9) fewer points.
  std::optional<Integer> twist;
  ReductionOrder order = ReductionOrder::fours_first;
  friend bool operator==(const ReductionStrategy&, const ReductionStrategy&) = default;
};

struct PlanarSystem {
  Integer degree = 0;
  Integer m = 0;
  Integer count = 0;
  friend bool operator==(const PlanarSystem&, const PlanarSystem&) = default;
};

struct CentralFiberPlan {
  Integer b = 0;
  Integer twist = 0;
  Integer per_plane = 0;
  Integer residual = 0;
  PlanarSystem planar_system;
  SystemClass s_part;
  Integer matching_budget = 0;  // k + 1 per plane
  HomogeneousSystem child;
  friend bool operator==(const CentralFiberPlan&, const CentralFiberPlan&) = default;
};

/// One reduction step. Throws InputError on a leaf.
CentralFiberPlan plan_step(const HomogeneousSystem& system, const ReductionStrategy& strategy = {});

struct StepAudit {
  Integer v_parent = 0;
  Integer v_s_part = 0;
  Integer v_planar_each = 0;
  Integer planar_expected_each = -1;
  Integer gluing_budget = 0;
  /// v_parent - v_s_part - b (v_planar + 1); recorded, not asserted.
  Integer gluing_correction = 0;
  std::string ledger_note;
  bool ok = false;
  friend bool operator==(const StepAudit&, const StepAudit&) = default;
};

/// Fills the audit record. ok is false for structurally impossible plans (budget or
/// residual violations); InputError when plan and parent do not belong together.
StepAudit audit_step(const CentralFiberPlan& plan, const HomogeneousSystem& parent);

enum class CertificateVerdict { conditional_nonspecial, audit_failed, leaf_verified_nonspecial };

std::string_view to_string(CertificateVerdict verdict);
CertificateVerdict certificate_verdict_from_string(std::string_view text);

struct CertificateStep {
  HomogeneousSystem system;
  CentralFiberPlan plan;
  StepAudit audit;
};

struct LeafRecord {
  SystemClass system;  // (n, d, (m)), zeros stripped
  std::optional<OracleReport> report;
  std::string note;
};

struct CertificateTree {
  HomogeneousSystem root;
  ReductionStrategy strategy;
  std::vector<CertificateStep> steps;  // root first; each step's child is the next step's system
  std::vector<LeafRecord> leaves;
  CertificateVerdict verdict = CertificateVerdict::conditional_nonspecial;

  std::size_t depth() const { return steps.size(); }
};

CertificateTree reduce_to_leaves(const HomogeneousSystem& root, const ReductionStrategy& strategy = {});

struct LeafCheck {
  std::optional<OracleReport> report;  // nullopt when no model is available
  std::string note;
};

using LeafChecker = std::function<LeafCheck(const SystemClass& leaf)>;

/// reduce_to_leaves, then optionally the oracle on every leaf. The verdict becomes
/// leaf-verified only when every leaf is certified non-special.
CertificateTree theorem_deg_certify(const HomogeneousSystem& root, const LeafChecker& leaf_checker = {},
                                    const ReductionStrategy& strategy = {});

/// Leaf checker running speciality_test on a random model for the leaf's n.
LeafChecker oracle_leaf_checker(Residue prime, std::uint64_t seed, const OracleOptions& options = {});

/// Re-derives every step of a certificate from its root and strategy. Returns the list of
/// mismatches (empty when the certificate verifies).
std::vector<std::string> verify_certificate(const CertificateTree& tree);

}  // namespace k3ls
