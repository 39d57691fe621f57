#pragma once

// Observables gamma_k, their exact finite-size expectations, the
// single-insertion contour-integral moment formula, and the closed-form
// Laplace transform of the height profile along one column.

#include <stdexcept>

#include "ryd/railyard.hpp"
#include "ryd/sampler.hpp"
#include "ryd/towers.hpp"
#include "ryd/zfun.hpp"

namespace ryd {

struct ContourCrossesSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QuadratureNotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContoursNotDisjoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Positively oriented circle |w - center| = radius, trapezoid quadrature
// starting at `nodes` points and doubling until converged.
struct ContourSpec {
  double center = 0.0;
  double radius = 1.0;
  int nodes = 64;
};

// gamma_k(lambda) = (1 - t^{-k}) sum_i q^{k lambda_i} t^{k(1-i)} + t^{-k l}.
double gamma_k(const Partition& lambda, int k, const QTParams<double>& qt);

// Exact expectation of gamma_k(mu^{(i)}) over the truncated measure.
double expect_gamma_exact(const RailYardSpec& spec, const BoundaryCondition& bc,
                          const QTParams<double>& qt, int i, int k,
                          const TruncationPolicy& pol);

// Single-insertion (|W| = 1, so k = 1) contour formula for E[gamma_1(mu^{(i)})]
// with i in [l+1 .. r] and a_i = L: one circle integral of the D-kernel times
// the bare G factors, the uv-reflected G chain, and the Theta-chain, all
// truncated adaptively like the partition-function product.
double expect_gamma_contour(const RailYardSpec& spec,
                            const BoundaryCondition& bc,
                            const QTParams<double>& qt, int i,
                            const ContourSpec& contour,
                            const TruncationPolicy& pol);

// A circle radius that encloses the mandated poles and excludes the forbidden
// ones for the given instance; throws ContourCrossesSingularity if no such
// radius exists.
ContourSpec auto_contour(const RailYardSpec& spec, const BoundaryCondition& bc,
                         const QTParams<double>& qt, int i);

// Closed form of int h(x, y) t^{k y} dy along x = 2m - 1/2 in the rescaled
// particle embedding (holes spaced log q/log t apart):
//   2 t^{k c} / (k^2 log t log q) * gamma_k(mu^{(m)})
// with c the translated-axis charge. The numeric companion integrates the
// piecewise-linear rescaled height profile segment by segment.
double laplace_height_exact(const RailYardSpec& spec, const DimerState& s,
                            int m, int k, const QTParams<double>& qt);
double laplace_height_numeric(const RailYardSpec& spec, const DimerState& s,
                              int m, int k, const QTParams<double>& qt);

}  // namespace ryd
