#include "doctest.h"
#include "ryd/identities.hpp"
#include "qt_seeds.hpp"

using namespace ryd;

TEST_CASE("identity suite passes exactly at all seeded (q,t)") {
  for (const auto& [q, t] : ryd_test::qt_seed_pairs()) {
    auto results = run_identity_suite(q, t, 8, 5);
    for (const auto& r : results) {
      INFO(r.id << " @ " << r.qt_label);
      CHECK(r.pass);
    }
  }
}

// Deliberately perturbed formulas must fail: this guards the suite against
// vacuous passes (a check that accepts everything is worse than no check).
TEST_CASE("perturbed formulas are rejected") {
  Rat q(1, 2), t(1, 3);
  CHECK_FALSE(check_boundary_sum_pull(q, t, 6, 4, 1));
  CHECK_FALSE(check_boundary_sum_pull(q, t, 6, 4, 2));
  CHECK_FALSE(check_skew_cauchy(q, t, 5, 3, 1));
  CHECK_FALSE(check_skew_cauchy(q, t, 5, 3, 2));
  CHECK_FALSE(check_double_free_pairing(q, t, 7, 1));
  CHECK_FALSE(check_double_free_pairing(q, t, 7, 2));
  CHECK_FALSE(check_double_free_pairing(q, t, 7, 3));
}
