#include <doctest.h>

#include "k3ls/degeneration.hpp"
#include "k3ls/errors.hpp"
#include "k3ls/serialize.hpp"

using namespace k3ls;

TEST_CASE("central_fiber_restrict examples") {
  SUBCASE("four points on one plane") {
    const auto r = central_fiber_restrict({4, 3, {2, 2, 2, 2}}, 2, distribute_points(4, 1, 4));
    CHECK(r.planar_degree == 2);
    CHECK(r.s_part == SystemClass{4, 3, {2}});
    CHECK(r.planar_mults == std::vector<std::vector<Integer>>{{2, 2, 2, 2}});
  }
  SUBCASE("zero twist") {
    const auto r = central_fiber_restrict({4, 3, {1, 1, 1, 1, 5}}, 0, distribute_points(5, 1, 4));
    CHECK(r.planar_degree == 0);
    CHECK(r.s_part == SystemClass{4, 3, {5}});
  }
  SUBCASE("nine points") {
    const auto r = central_fiber_restrict({2, 5, std::vector<Integer>(9, 1)}, 3, distribute_points(9, 1, 9));
    CHECK(r.planar_degree == 3);
    CHECK(r.s_part == SystemClass{2, 5, {3}});
  }
  SUBCASE("distribution must fit the class") {
    CHECK_THROWS_AS(central_fiber_restrict({4, 3, {1}}, 1, distribute_points(4, 1, 4)), InputError);
  }
}

TEST_CASE("distribute_points examples") {
  CHECK(distribute_points(16, 4, 4).residual == 0);
  CHECK(distribute_points(9, 1, 9).residual == 0);
  CHECK(distribute_points(10, 2, 4).residual == 2);
  CHECK_THROWS_AS(distribute_points(1, 1, 4), InputError);
}

TEST_CASE("plan_step examples") {
  SUBCASE("fours") {
    const auto plan = plan_step({4, 5, 2, 2, 0});
    CHECK(plan.b == 4);
    CHECK(plan.per_plane == 4);
    CHECK(plan.twist == 2);
    CHECK(plan.child == HomogeneousSystem{4, 5, 2, 1, 0});
    CHECK(plan.s_part == SystemClass{4, 5, {2, 2, 2, 2}});
    CHECK(plan.matching_budget == 3);
    CHECK(plan.planar_system == PlanarSystem{2, 2, 4});
  }
  SUBCASE("nines") {
    const auto plan = plan_step({2, 7, 3, 0, 1});
    CHECK(plan.b == 1);
    CHECK(plan.per_plane == 9);
    CHECK(plan.twist == 3);
    CHECK(plan.child.is_leaf());
    CHECK(plan.s_part == SystemClass{2, 7, {3}});
  }
  SUBCASE("leaf") { CHECK_THROWS_AS(plan_step({4, 5, 2, 0, 0}), InputError); }
  SUBCASE("nines first") {
    ReductionStrategy s;
    s.order = ReductionOrder::nines_first;
    const auto plan = plan_step({4, 5, 1, 1, 1}, s);
    CHECK(plan.per_plane == 9);
    CHECK(plan.b == 4);
  }
}

TEST_CASE("planar_expected_dim") {
  CHECK(planar_expected_dim(2, 1, 4) == 1);
  CHECK(planar_expected_dim(0, 0, 4) == 0);
  CHECK(planar_expected_dim(3, 1, 9) == 0);
  CHECK(planar_expected_dim(6, 2, 9) == 0);
  CHECK(planar_expected_dim(2, 2, 4) == -1);
  CHECK_THROWS_AS(planar_expected_dim(3, 1, 5), InputError);
}

TEST_CASE("audit_step") {
  SUBCASE("worked example") {
    const HomogeneousSystem parent{4, 5, 2, 1, 0};
    const auto audit = audit_step(plan_step(parent), parent);
    CHECK(audit.v_parent == 39);
    CHECK(audit.v_s_part == 48);
    CHECK(audit.v_planar_each == -7);
    CHECK(audit.planar_expected_each == -1);
    CHECK(audit.gluing_budget == 3);
    CHECK(audit.gluing_correction == -3);
    CHECK(audit.ok);
  }
  SUBCASE("twist zero") {
    const HomogeneousSystem parent{4, 3, 1, 1, 0};
    ReductionStrategy s;
    s.twist = 0;
    const auto plan = plan_step(parent, s);
    const auto audit = audit_step(plan, parent);
    CHECK(plan.planar_system.degree == 0);
    CHECK(audit.gluing_budget == plan.b);
    CHECK(audit.ok);
  }
  SUBCASE("budget violation") {
    const HomogeneousSystem parent{4, 3, 1, 1, 0};
    auto plan = plan_step(parent);
    plan.b = 2;
    CHECK_FALSE(audit_step(plan, parent).ok);
  }
  SUBCASE("foreign plan") {
    const auto plan = plan_step({4, 3, 1, 1, 0});
    CHECK_THROWS_AS(audit_step(plan, {4, 4, 1, 1, 0}), InputError);
  }
}

TEST_CASE("reduce_to_leaves examples") {
  SUBCASE("leaf root") {
    const auto tree = reduce_to_leaves({4, 3, 2, 0, 0});
    CHECK(tree.depth() == 0);
    REQUIRE(tree.leaves.size() == 1);
    CHECK(tree.leaves[0].system == SystemClass{4, 3, {2}});
    CHECK(tree.verdict == CertificateVerdict::conditional_nonspecial);
  }
  SUBCASE("one step") {
    const auto tree = reduce_to_leaves({4, 3, 1, 1, 0});
    CHECK(tree.depth() == 1);
    CHECK(tree.leaves[0].system == SystemClass{4, 3, {1}});
  }
  SUBCASE("both branches") {
    const auto tree = reduce_to_leaves({2, 4, 2, 1, 1});
    REQUIRE(tree.depth() == 2);
    CHECK(tree.steps[0].plan.per_plane == 4);
    CHECK(tree.steps[1].plan.per_plane == 9);
    CHECK(tree.leaves[0].system == SystemClass{2, 4, {2}});
  }
}

TEST_CASE("certificate invariants") {
  for (Integer n : {2, 4, 6}) {
    for (Integer d = 0; d <= 3; ++d) {
      for (Integer m = 0; m <= 2; ++m) {
        for (Integer h = 0; h <= 2; ++h) {
          for (Integer k9 = 0; k9 <= 1; ++k9) {
            const HomogeneousSystem root{n, d, m, h, k9};
            const auto tree = reduce_to_leaves(root);
            REQUIRE(tree.depth() == static_cast<std::size_t>(h + k9));
            for (const auto& step : tree.steps) {
              REQUIRE(step.plan.residual == 0);
              REQUIRE(step.system.point_count() == step.plan.b * step.plan.per_plane);
              REQUIRE(step.plan.child.point_count() == step.plan.b);
              REQUIRE(step.audit.ok);
              REQUIRE(step.audit.gluing_correction == -step.audit.gluing_budget);
            }
            REQUIRE(tree.leaves.size() == 1);
            REQUIRE(normalized(tree.leaves[0].system).points() <= 1);
            REQUIRE(verify_certificate(tree).empty());
            // deterministic and serializable
            REQUIRE(certificate_to_json(reduce_to_leaves(root)).dump() == certificate_to_json(tree).dump());
            REQUIRE(verify_certificate(certificate_from_json(certificate_to_json(tree))).empty());
          }
        }
      }
    }
  }
}

TEST_CASE("tampered certificates fail verification") {
  auto tree = reduce_to_leaves({4, 3, 2, 2, 0});
  auto json = certificate_to_json(tree);
  json["tree"]["audit"]["v_parent"] = 1234;
  CHECK_FALSE(verify_certificate(certificate_from_json(json)).empty());
  tree.verdict = CertificateVerdict::leaf_verified_nonspecial;
  CHECK_FALSE(verify_certificate(tree).empty());
}

TEST_CASE("theorem_deg_certify with the oracle") {
  const auto checker = oracle_leaf_checker(kDefaultPrime, 0);
  SUBCASE("L^4(2,1^4)") {
    const auto tree = theorem_deg_certify({4, 2, 1, 1, 0}, checker);
    REQUIRE(tree.leaves[0].report);
    const auto& rep = *tree.leaves[0].report;
    CHECK(rep.basis_dim == 10);
    CHECK(rep.effective_rank == 1);
    CHECK(rep.actual_dim == 8);
    CHECK(tree.verdict == CertificateVerdict::leaf_verified_nonspecial);
    CHECK(verify_certificate(tree).empty());
  }
  SUBCASE("L^4(2,2^4)") {
    const auto tree = theorem_deg_certify({4, 2, 2, 1, 0}, checker);
    CHECK(tree.leaves[0].report->actual_dim == 6);
    CHECK(tree.verdict == CertificateVerdict::leaf_verified_nonspecial);
  }
  SUBCASE("special leaf stays conditional") {
    // leaf L^4(2,4) is the special family
    const auto tree = theorem_deg_certify({4, 2, 4, 1, 0}, checker);
    CHECK(tree.leaves[0].report->special_evidence);
    CHECK(tree.verdict == CertificateVerdict::conditional_nonspecial);
  }
  SUBCASE("no model for n = 6") {
    const auto tree = theorem_deg_certify({6, 2, 1, 1, 0}, checker);
    CHECK(tree.verdict == CertificateVerdict::conditional_nonspecial);
    CHECK(tree.leaves[0].note == "no model for n=6");
  }
}
