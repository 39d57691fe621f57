#pragma once

// The partition function Z_{c_l,c_r}: truncated brute-force summation with a
// certified geometric tail bound, the closed infinite-product formula, and
// the half-space (empty right boundary) specialization.

#include <stdexcept>

#include "ryd/railyard.hpp"

namespace ryd {

struct TruncationPolicy {
  int max_partition_size = 12;   // cap N on every |mu^{(i)}| in the sum
  int product_depth = 1;         // initial number of product blocks retained
  double tail_tolerance = 1e-10;
};

struct DivergentTail : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TruncationTooCoarse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZEstimate {
  double value = 0.0;
  double tail_bound = 0.0;
};

ZEstimate z_bruteforce(const RailYardSpec& spec, const BoundaryCondition& bc,
                       const QTParams<double>& qt, const TruncationPolicy& pol);

double z_product(const RailYardSpec& spec, const BoundaryCondition& bc,
                 const QTParams<double>& qt, const TruncationPolicy& pol);

double z_halfspace(const RailYardSpec& spec, FreeMarker c_l, double u,
                   const QTParams<double>& qt, const TruncationPolicy& pol);

}  // namespace ryd
