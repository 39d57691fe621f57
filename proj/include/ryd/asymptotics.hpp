#pragma once

// The scaling-limit layer: G-factor limits of the moment integrand, the
// master equation and its root geometry, liquid-region classification,
// limit-shape slope and height, the frozen boundary, and the limit Laplace
// transform of the height profile.

#include <stdexcept>
#include <string>
#include <vector>

#include "ryd/moments.hpp"
#include "ryd/towers.hpp"

namespace ryd {

struct PoleHit : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergenceInK : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ExcludedRegion : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An n-periodic column pattern with piecewise-constant sign pattern over the
// macroscopic segments (V_{p-1}, V_p), period weights tau_j, Jack parameter
// alpha (q = t^alpha) and scaling rate beta (-log t / (n eps) -> beta).
struct AsymptoticProfile {
  int n = 1;                        // period
  int m = 1;                        // number of segments
  std::vector<double> V;            // m+1 strictly increasing transitions
  std::vector<double> tau;          // n positive period weights
  std::vector<LR> a;                // n column kinds (limit theorems need L)
  std::vector<std::vector<Sign>> b; // m rows of n signs, b[p-1][j-1]
  double alpha = 1.0;
  double beta = 1.0;
  double u = 0.0;
  double v = 0.0;

  void check() const;  // throws std::invalid_argument
  bool all_left() const;
  // Indicator of the event that segment p (1-based) holds residue-j columns
  // of the stated side and direction: which = 1 is descending (b = -),
  // which = 0 is ascending (b = +).
  bool event(int j, int p, int which, LR side) const;
};

enum class GKind { GtL, LtL, GtR, LtR };

// The four limit G-factors (finite Mobius products with event indicators;
// the R factors carry the alpha exponent). Branch of every power: principal,
// real-positive on the positive real axis.
Cpx g_factor(GKind which, const AsymptoticProfile& prof, double chi, Cpx w);

// G_chi = G_{>chi,L} G_{<chi,L} [G_{>chi,R} G_{<chi,R}]^alpha and the
// reflected-chain factor F_{u,v,k} (eight shifted G evaluations; == 1 once
// the shifts degenerate at u = 0 or v = 0 as appropriate).
Cpx g_chi(const AsymptoticProfile& prof, double chi, Cpx w);
Cpx f_uvk(const AsymptoticProfile& prof, int k, Cpx w);

// Mandated (inside the contour) and forbidden (outside) real points of the
// limit integrand, assembled from the eight pole/zero families up to
// reflection depth K.
struct PoleZeroLedger {
  std::vector<double> mandated;   // D_{chi,K} (all-L form)
  std::vector<double> mandated_zeros;  // zeros paired with the mandated poles
  std::vector<double> forbidden;  // the excluded families and their zeros
};
PoleZeroLedger pole_zero_ledger(const AsymptoticProfile& prof, double chi,
                                int K);

struct ProfileReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
// Interlacing/distinctness checks (zero-pole alternation up to depth K,
// ordering constants, and the sufficient weight inequalities).
ProfileReport profile_check(const AsymptoticProfile& prof, double chi, int K);

struct RootReport {
  std::vector<Cpx> roots;
  bool conjugate_pair = false;  // exactly one nonreal conjugate pair
  Cpx w_plus;                   // upper-half-plane root when present
  int K = 0;                    // reflection depth at termination
  bool stable = false;          // |w_plus(K+1) - w_plus(K)| < 1e-10
};

// Clears G_chi(w) prod_{k<=K} F_{u,v,k}(w) = e^{-n kappa} into a polynomial
// (possible exactly for all-L profiles) and reports all roots; iterates the
// depth K upward until the upper-half-plane root stabilizes.
RootReport solve_master(const AsymptoticProfile& prof, double chi,
                        double kappa, int K = 1);

enum class RegionClass { Liquid, FrozenZero, FrozenFull, Boundary };

double limit_shape_slope(const AsymptoticProfile& prof, double chi,
                         double kappa);
RegionClass classify_point(const AsymptoticProfile& prof, double chi,
                           double kappa);

// Limit height at (chi, kappa), recovered by integrating the slope in kappa
// from deep below the surface (where the height vanishes).
double limit_height(const AsymptoticProfile& prof, double chi, double kappa,
                    double kappa_floor = -12.0);

struct FrozenPoint {
  double w = 0.0;      // real parameter
  double chi = 0.0;
  double kappa = 0.0;
};
// Parametric frozen boundary: for each real w in the grid, solve the
// stationarity equation for chi by bisection on each monotone branch and read
// kappa off the master equation. Grid points with no solution are skipped.
std::vector<FrozenPoint> frozen_boundary(const AsymptoticProfile& prof,
                                         const std::vector<double>& w_grid);

// Limit expectation of gamma_1 (the g = 1 moment formula in the limit):
// (2 pi i)^{-1} \oint [G_chi prod F]^beta dw / w.
double expect_gamma_limit(const AsymptoticProfile& prof, double chi,
                          const ContourSpec& contour, int K = 8);

// Laplace transform of the limit height:
// (1/(n^2 alpha gamma^2 pi i)) \oint [G_chi]^gamma prod [F]^gamma dw / w,
// with continuous branch tracking along the contour.
double laplace_limit(const AsymptoticProfile& prof, double chi, double gamma,
                     const ContourSpec& contour, int K = 8);

// A circle radius separating the mandated points from the forbidden ones.
ContourSpec auto_limit_contour(const AsymptoticProfile& prof, double chi,
                               int K = 8);

struct PochhammerComparison {
  double exact = 0.0;
  double asym = 0.0;
  double defect = 0.0;
};
// (z; e^{-eps})_N / (e^{-eps alpha} z; e^{-eps})_N against the limit form
// ((1-z)/(1-e^{-eps N} z))^alpha; throws ExcludedRegion near the cut [1,inf).
PochhammerComparison pochhammer_ratio_asym(double z, double eps, double alpha,
                                           int N);

}  // namespace ryd
