#pragma once

// The generating-function identity suite. Every identity is checked exactly
// in the rational tower as an equality of truncated formal series; the
// functions return true on exact agreement. run_identity_suite bundles them
// into the report consumed by the tests and the verify CLI.

#include <string>
#include <vector>

#include "ryd/towers.hpp"

namespace ryd {

struct IdentityResult {
  std::string id;       // e.g. "boundary-sum-pull"
  std::string qt_label; // "q=1/2,t=1/3"
  int degree = 0;
  bool pass = false;
};

// Runs the full suite at one exact (q,t) sample, series degree D, boundary
// partitions up to max_boundary.
std::vector<IdentityResult> run_identity_suite(const Rat& q, const Rat& t,
                                               int D = 8, int max_boundary = 5);

// Individual checks, exposed for the mutation tests: `mutation` selects a
// deliberate formula perturbation (0 = faithful formula).

// sum over lambda of b_lambda P_{lambda/eta}(x) pulled through to eta's side.
bool check_boundary_sum_pull(const Rat& q, const Rat& t, int D, int max_boundary,
                             int mutation = 0);
// Same shape for the reciprocal complementary-marker weights.
bool check_bbar_mirror(const Rat& q, const Rat& t, int D, int max_boundary);
// Both of the above with a fugacity v attached to |lambda|.
bool check_v_reflection(const Rat& q, const Rat& t, int D, int max_boundary);
// Skew Cauchy identities on single letters (direct and transposed variants).
bool check_skew_cauchy(const Rat& q, const Rat& t, int D, int max_boundary,
                       int mutation = 0);
// Exchange symmetry of two-letter skew chains.
bool check_exchange(const Rat& q, const Rat& t, int D, int max_boundary);
// Pairing with free weights on both boundaries against the closed product.
bool check_double_free_pairing(const Rat& q, const Rat& t, int D,
                               int mutation = 0);
// Scalar products of exponentials with quadratic power-sum exponents.
bool check_quadratic_pairing(const Rat& q, const Rat& t, int D);

}  // namespace ryd
