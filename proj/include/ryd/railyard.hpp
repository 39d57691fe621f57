#pragma once

// Rail-yard graphs with two free boundaries: the graph description, dimer
// configurations encoded as interlacing partition sequences, configuration
// weights, height profiles along half-integer columns, and the (q,t)-charge.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ryd/branching.hpp"
#include "ryd/partitions.hpp"
#include "ryd/towers.hpp"

namespace ryd {

enum class LR { L, R };
enum class Sign { Plus, Minus };

// Free-boundary weight families. DeEl/EOa additionally constrain the boundary
// partition parity (conjugate-even resp. even).
enum class FreeMarker { El, Oa, DeEl, EOa };

struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidState : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ColumnOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct RailYardSpec {
  int l = 0;
  int r = 0;
  std::vector<LR> lr_word;        // a_l .. a_r
  std::vector<Sign> sign_word;    // b_l .. b_r
  std::vector<double> weights;    // x_l .. x_r, the diagonal-edge weights

  int columns() const { return r - l + 1; }
  LR a(int i) const { return lr_word[i - l]; }
  Sign b(int i) const { return sign_word[i - l]; }
  double x(int i) const { return weights[i - l]; }

  void check() const;  // throws LengthMismatch / invalid_argument
};

struct BoundaryCondition {
  FreeMarker c_l = FreeMarker::El;
  FreeMarker c_r = FreeMarker::El;
  double u = 0.0;
  double v = 0.0;
};

// A configuration is the partition sequence mu^{(l)} .. mu^{(r+1)}.
struct DimerState {
  std::vector<Partition> mu;  // length r-l+2

  const Partition& at(const RailYardSpec& spec, int m) const {
    return mu[m - spec.l];
  }
};

// The plain b-family marker behind a free-boundary family, and whether the
// boundary partition carries a parity constraint.
BMarker plain_marker(FreeMarker c);
BMarker bar_marker(FreeMarker c);
bool parity_ok(FreeMarker c, const Partition& p);

bool validate_state(const RailYardSpec& spec, const BoundaryCondition& bc,
                    const DimerState& s);

// Unnormalized weight u^{|mu^{(l)}|} v^{|mu^{(r+1)}|} b^{c_r} / bbar^{c_l}
// times the product of single-letter skew factors, one per column.
double state_weight(const RailYardSpec& spec, const BoundaryCondition& bc,
                    const DimerState& s, const QTParams<double>& qt);

// Height along a half-integer column x = 2m -+ 1/2, as a step function of y.
// The height is 2 x (number of present edges crossed below y), which in the
// particle-hole encoding is twice the number of holes of the adjacent odd
// column below y; hole j of a partition sits at ordinate j - 1/2 - lambda'_j.
struct HeightProfile {
  double y_lo = 0.0;
  double y_hi = 0.0;
  int h_lo = 0;                               // height at y_lo
  std::vector<std::pair<double, int>> steps;  // (hole ordinate, height above it)

  int value(double y) const {
    int h = h_lo;
    for (const auto& [pos, hv] : steps) {
      if (pos < y) h = hv;
      else break;
    }
    return h;
  }
};

HeightProfile height_profile(const RailYardSpec& spec, const DimerState& s,
                             double column, double y_lo, double y_hi);

// (q,t)-charge of column m against the fixed axis y = 0: particles above the
// axis minus (log q / log t) x holes below it. Consecutive columns differ by
// 0 or +-(1 - log q/log t).
double charge(const RailYardSpec& spec, const DimerState& s, int m,
              const QTParams<double>& qt);

// Charge against a translated axis chosen so that |c| <= max{1, log q/log t};
// the translation (returned in axis if non-null) also shifts the height
// coordinate when the two are used together.
double charge_normalized(const RailYardSpec& spec, const DimerState& s, int m,
                         const QTParams<double>& qt, double* axis = nullptr);

// Enumerates all states whose partitions all have size <= max_size; used by
// the brute-force partition function and the exact sampler.
std::vector<DimerState> enumerate_states(const RailYardSpec& spec,
                                         const BoundaryCondition& bc,
                                         int max_size);

}  // namespace ryd
