#include "ryd/railyard.hpp"

#include <cmath>

namespace ryd {

void RailYardSpec::check() const {
  size_t n = static_cast<size_t>(columns());
  if (l > r) throw std::invalid_argument("RailYardSpec: l > r");
  if (lr_word.size() != n || sign_word.size() != n || weights.size() != n)
    throw LengthMismatch("RailYardSpec: word/weight lengths must equal r-l+1");
  for (double w : weights)
    if (!(w > 0)) throw std::invalid_argument("RailYardSpec: weights must be positive");
}

BMarker plain_marker(FreeMarker c) {
  return (c == FreeMarker::El || c == FreeMarker::DeEl) ? BMarker::El : BMarker::Oa;
}

BMarker bar_marker(FreeMarker c) {
  return (c == FreeMarker::El || c == FreeMarker::DeEl) ? BMarker::Ol : BMarker::Ea;
}

bool parity_ok(FreeMarker c, const Partition& p) {
  auto even_parts = [](const Partition& q) {
    for (int i = 1; i <= q.length(); ++i)
      if (q.part(i) % 2 != 0) return false;
    return true;
  };
  if (c == FreeMarker::DeEl) return even_parts(conjugate(p));
  if (c == FreeMarker::EOa) return even_parts(p);
  return true;
}

namespace {

// Interlacing demanded by column i: (L,+) row up, (L,-) row down,
// (R,+) column up, (R,-) column down.
bool column_ok(const RailYardSpec& spec, int i, const Partition& lo,
               const Partition& hi) {
  InterlaceKind k = (spec.a(i) == LR::L) ? InterlaceKind::Row : InterlaceKind::Column;
  if (spec.b(i) == Sign::Plus) return interlaces(lo, hi, k);
  return interlaces(hi, lo, k);
}

double column_factor(const RailYardSpec& spec, int i, const Partition& lo,
                     const Partition& hi, const QTParams<double>& qt) {
  bool dual = (spec.a(i) == LR::R);
  if (spec.b(i) == Sign::Plus)
    return skew_single(PQ::P, dual, hi, lo, spec.x(i), qt);
  return skew_single(PQ::Q, dual, lo, hi, spec.x(i), qt);
}

}  // namespace

bool validate_state(const RailYardSpec& spec, const BoundaryCondition& bc,
                    const DimerState& s) {
  spec.check();
  if (s.mu.size() != static_cast<size_t>(spec.columns() + 1))
    throw LengthMismatch("DimerState: expected r-l+2 partitions");
  if (!parity_ok(bc.c_l, s.mu.front())) return false;
  if (!parity_ok(bc.c_r, s.mu.back())) return false;
  for (int i = spec.l; i <= spec.r; ++i)
    if (!column_ok(spec, i, s.at(spec, i), s.at(spec, i + 1))) return false;
  return true;
}

double state_weight(const RailYardSpec& spec, const BoundaryCondition& bc,
                    const DimerState& s, const QTParams<double>& qt) {
  if (!validate_state(spec, bc, s))
    throw InvalidState("state_weight: interlacing or parity constraint violated");
  double w = std::pow(bc.u, static_cast<double>(s.mu.front().size())) *
             std::pow(bc.v, static_cast<double>(s.mu.back().size()));
  w *= b_family(s.mu.back(), plain_marker(bc.c_r), qt);
  w /= b_family(s.mu.front(), bar_marker(bc.c_l), qt);
  for (int i = spec.l; i <= spec.r; ++i)
    w *= column_factor(spec, i, s.at(spec, i), s.at(spec, i + 1), qt);
  return w;
}

HeightProfile height_profile(const RailYardSpec& spec, const DimerState& s,
                             double column, double y_lo, double y_hi) {
  // column = 2m - 1/2 counts holes of odd line 2m-1 (partition index m);
  // column = 2m + 1/2 counts holes of odd line 2m+1 (partition index m+1);
  // either way the relevant odd line is the one adjacent to the column.
  double twice = 2.0 * column;
  long t2 = std::lround(twice);
  if (std::abs(twice - static_cast<double>(t2)) > 1e-9 || (t2 % 2) == 0)
    throw ColumnOutOfRange("height_profile: column must be a half-integer");
  long rem = ((t2 % 4) + 4) % 4;
  long odd_line = (rem == 3) ? (t2 - 1) / 2 : (t2 + 1) / 2;
  long m = (odd_line + 1) / 2;
  if (m < spec.l || m > spec.r + 1)
    throw ColumnOutOfRange("height_profile: column outside the graph");
  const Partition& lam = s.at(spec, static_cast<int>(m));
  Partition lamc = conjugate(lam);

  HeightProfile hp;
  hp.y_lo = y_lo;
  hp.y_hi = y_hi;
  int h = 0;
  for (int j = 1;; ++j) {
    double pos = static_cast<double>(j) - 0.5 - static_cast<double>(lamc.part(j));
    if (pos >= y_hi) break;
    h += 2;
    if (pos < y_lo) {
      hp.h_lo = h;
    } else {
      hp.steps.emplace_back(pos, h);
    }
  }
  return hp;
}

double charge(const RailYardSpec& spec, const DimerState& s, int m,
              const QTParams<double>& qt) {
  if (m < spec.l || m > spec.r + 1)
    throw ColumnOutOfRange("charge: column index outside [l..r+1]");
  const Partition& lam = s.at(spec, m);
  Partition lamc = conjugate(lam);
  double g = std::log(qt.q) / std::log(qt.t);
  // Particles sit at lambda_i - i + 1/2 and holes at j - 1/2 - lambda'_j, so
  // both counts against y = 0 equal the Durfee square side.
  int above = 0;
  for (int i = 1; i <= lam.length(); ++i)
    if (lam.part(i) - i >= 0) ++above;
  int below = 0;
  for (int j = 1; j <= lamc.length(); ++j)
    if (lamc.part(j) - j >= 0) ++below;
  return static_cast<double>(above) - g * static_cast<double>(below);
}

double charge_normalized(const RailYardSpec& spec, const DimerState& s, int m,
                         const QTParams<double>& qt, double* axis_out) {
  if (m < spec.l || m > spec.r + 1)
    throw ColumnOutOfRange("charge_normalized: column index outside [l..r+1]");
  const Partition& lam = s.at(spec, m);
  Partition lamc = conjugate(lam);
  double g = std::log(qt.q) / std::log(qt.t);

  auto particle = [&](int i) {  // ordinate of the i-th highest particle
    return static_cast<double>(lam.part(i)) - static_cast<double>(i) + 0.5;
  };
  auto hole = [&](int j) {  // ordinate of the j-th lowest hole; j = 0 is -inf
    if (j <= 0) return -1e18;
    return static_cast<double>(j) - 0.5 - static_cast<double>(lamc.part(j));
  };

  // Least n whose n-th highest particle lies below the floor(n/g)-th lowest
  // hole; the axis goes immediately above max(particle n, hole floor((n-1)/g)).
  int n = 1;
  for (;; ++n) {
    int jn = static_cast<int>(std::floor(static_cast<double>(n) / g));
    if (particle(n) < hole(jn)) break;
  }
  int jprev = static_cast<int>(std::floor(static_cast<double>(n - 1) / g));
  double axis = std::max(particle(n), hole(jprev)) + 0.5;

  // Count exactly against the translated axis.
  int particles_above = n - 1;
  int holes_below = 0;
  for (int j = 1; hole(j) < axis; ++j) ++holes_below;
  if (axis_out) *axis_out = axis;
  return static_cast<double>(particles_above) - g * static_cast<double>(holes_below);
}

std::vector<DimerState> enumerate_states(const RailYardSpec& spec,
                                         const BoundaryCondition& bc,
                                         int max_size) {
  spec.check();
  auto pool = enumerate_partitions(max_size);
  std::vector<DimerState> out;
  DimerState cur;
  cur.mu.resize(static_cast<size_t>(spec.columns() + 1));

  // Depth-first over columns; prune on interlacing and boundary parity.
  auto rec = [&](auto&& self, int i) -> void {
    if (i > spec.r + 1) {
      if (parity_ok(bc.c_r, cur.mu.back())) out.push_back(cur);
      return;
    }
    for (const auto& p : pool) {
      if (i == spec.l && !parity_ok(bc.c_l, p)) continue;
      if (i > spec.l && !column_ok(spec, i - 1, cur.mu[i - 1 - spec.l], p)) continue;
      cur.mu[i - spec.l] = p;
      self(self, i + 1);
    }
  };
  rec(rec, spec.l);
  return out;
}

}  // namespace ryd
