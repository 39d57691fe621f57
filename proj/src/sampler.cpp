#include "ryd/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ryd/branching.hpp"

namespace ryd {

namespace {

constexpr double kUniverseLimit = 1e7;

// Enumerates the partitions nu with mu < nu (row interlacing: nu/mu is a
// horizontal strip) subject to |nu| <= max_size, nu_1 <= max_part,
// l(nu) <= max_length. Calls fn(nu) for each.
template <class Fn>
void for_each_row_super(const Partition& mu, int max_size, int max_part,
                        int max_length, Fn&& fn) {
  int len = mu.length();
  int budget = max_size - static_cast<int>(mu.size());
  if (budget < 0) return;
  std::vector<int> nu;
  nu.reserve(len + 1);
  // Row i takes values in [mu_i, min(mu_{i-1}, mu_i + remaining budget)];
  // the optional new row len+1 takes values in [0, mu_len].
  auto rec = [&](auto&& self, int i, int rem) -> void {
    if (i == len + 1) {
      // New row: allowed only within the length cap; zero means stop.
      fn(Partition(nu));
      if (len + 1 > max_length) return;
      for (int v = 1; v <= std::min(mu.part(len), rem); ++v) {
        nu.push_back(v);
        fn(Partition(nu));
        nu.pop_back();
      }
      return;
    }
    int lo = mu.part(i);
    int hi = (i == 1) ? std::min(max_part, mu.part(1) + rem)
                      : std::min(mu.part(i - 1), mu.part(i) + rem);
    for (int v = lo; v <= hi; ++v) {
      nu.push_back(v);
      self(self, i + 1, rem - (v - lo));
      nu.pop_back();
    }
  };
  if (len == 0) {
    fn(Partition(std::vector<int>{}));
    if (max_length >= 1)
      for (int v = 1; v <= std::min(max_part, budget); ++v) fn(Partition(std::vector<int>{v}));
    return;
  }
  rec(rec, 1, budget);
}

// Enumerates the partitions nu with nu < mu (mu/nu is a horizontal strip).
template <class Fn>
void for_each_row_sub(const Partition& mu, Fn&& fn) {
  int len = mu.length();
  std::vector<int> nu;
  nu.reserve(len);
  auto rec = [&](auto&& self, int i) -> void {
    if (i > len) {
      fn(Partition(nu));
      return;
    }
    for (int v = mu.part(i + 1); v <= mu.part(i); ++v) {
      nu.push_back(v);
      self(self, i + 1);
      nu.pop_back();
    }
  };
  rec(rec, 1);
}

// One transition of column i: calls fn(next, weight) for every admissible
// mu^{(i+1)} given mu^{(i)} = from, within the caps.
template <class Fn>
void for_each_step(const RailYardSpec& spec, const QTParams<double>& qt,
                   const SampleCaps& caps, int i, const Partition& from,
                   Fn&& fn) {
  bool dual = spec.a(i) == LR::R;
  double x = spec.x(i);
  // R columns interlace by vertical strips: row strips of the conjugates,
  // with the part/length caps swapped.
  int max_part = dual ? caps.max_length : caps.max_part;
  int max_length = dual ? caps.max_part : caps.max_length;
  const Partition base = dual ? conjugate(from) : from;
  if (spec.b(i) == Sign::Plus) {
    for_each_row_super(base, caps.max_size, max_part, max_length,
                       [&](const Partition& p) {
                         Partition next = dual ? conjugate(p) : p;
                         fn(next, skew_single(PQ::P, dual, next, from, x, qt));
                       });
  } else {
    for_each_row_sub(base, [&](const Partition& p) {
      Partition next = dual ? conjugate(p) : p;
      fn(next, skew_single(PQ::Q, dual, from, next, x, qt));
    });
  }
}

}  // namespace

MeasureTable exact_measure(const RailYardSpec& spec, const BoundaryCondition& bc,
                           const QTParams<double>& qt,
                           const TruncationPolicy& pol) {
  spec.check();
  int N = pol.max_partition_size;

  // Count the interlacing chains first so a too-large universe is rejected
  // before any state is materialized.
  auto pool = enumerate_partitions(N);
  std::vector<double> count(pool.size());
  for (std::size_t p = 0; p < pool.size(); ++p)
    count[p] = parity_ok(bc.c_r, pool[p]) ? 1.0 : 0.0;
  for (int i = spec.r; i >= spec.l; --i) {
    InterlaceKind kind = spec.a(i) == LR::L ? InterlaceKind::Row
                                            : InterlaceKind::Column;
    std::vector<double> next(pool.size(), 0.0);
    for (std::size_t a = 0; a < pool.size(); ++a) {
      for (std::size_t b = 0; b < pool.size(); ++b) {
        bool ok = spec.b(i) == Sign::Plus ? interlaces(pool[a], pool[b], kind)
                                          : interlaces(pool[b], pool[a], kind);
        if (ok) next[a] += count[b];
      }
    }
    count.swap(next);
    double total = 0.0;
    for (std::size_t a = 0; a < pool.size(); ++a)
      if (i > spec.l || parity_ok(bc.c_l, pool[a])) total += count[a];
    if (total > kUniverseLimit)
      throw UniverseTooLarge("exact_measure: > 1e7 states at this truncation");
  }

  MeasureTable table;
  table.states = enumerate_states(spec, bc, N);
  table.prob.resize(table.states.size());
  double z = 0.0;
  for (std::size_t s = 0; s < table.states.size(); ++s) {
    table.prob[s] = state_weight(spec, bc, table.states[s], qt);
    z += table.prob[s];
  }
  if (!(z > 0.0))
    throw TruncationTooCoarse("exact_measure: zero total mass");
  for (double& p : table.prob) p /= z;

  auto zb = z_bruteforce(spec, bc, qt, pol);
  table.tail = zb.tail_bound / zb.value;
  return table;
}

int SequentialSampler::lookup(const Partition& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

SequentialSampler::SequentialSampler(const RailYardSpec& spec,
                                     const BoundaryCondition& bc,
                                     const QTParams<double>& qt,
                                     const SampleCaps& caps)
    : spec_(spec), bc_(bc), qt_(qt), caps_(caps) {
  spec_.check();
  alphabet_ =
      enumerate_partitions(caps.max_size, caps.max_length, caps.max_part);
  index_.reserve(alphabet_.size());
  for (std::size_t p = 0; p < alphabet_.size(); ++p)
    index_.emplace(alphabet_[p], static_cast<int>(p));

  const int levels = spec_.columns() + 1;
  auto normalize = [](std::vector<double>& v, const char* what) {
    double m = *std::max_element(v.begin(), v.end());
    if (!(m > 0.0)) throw CapsTooTight(what);
    for (double& x : v) x /= m;
  };

  // Suffix masses, right to left.
  suffix_.assign(levels, std::vector<double>(alphabet_.size(), 0.0));
  for (std::size_t p = 0; p < alphabet_.size(); ++p) {
    const Partition& mu = alphabet_[p];
    if (!parity_ok(bc_.c_r, mu)) continue;
    suffix_[levels - 1][p] = b_family(mu, plain_marker(bc_.c_r), qt_) *
                             std::pow(bc_.v, static_cast<double>(mu.size()));
  }
  normalize(suffix_[levels - 1], "no admissible right boundary under caps");
  for (int m = spec_.r; m >= spec_.l; --m) {
    int lev = m - spec_.l;
    for (std::size_t p = 0; p < alphabet_.size(); ++p) {
      double acc = 0.0;
      for_each_step(spec_, qt_, caps_, m, alphabet_[p],
                    [&](const Partition& next, double w) {
                      if (w == 0.0) return;
                      int j = lookup(next);
                      if (j >= 0) acc += w * suffix_[lev + 1][j];
                    });
      suffix_[lev][p] = acc;
    }
    normalize(suffix_[lev], "no admissible completion under caps");
  }

  // Prefix masses, left to right, for the cap-occupancy certificate.
  std::vector<std::vector<double>> prefix(
      levels, std::vector<double>(alphabet_.size(), 0.0));
  for (std::size_t p = 0; p < alphabet_.size(); ++p) {
    const Partition& mu = alphabet_[p];
    if (!parity_ok(bc_.c_l, mu)) continue;
    prefix[0][p] = std::pow(bc_.u, static_cast<double>(mu.size())) /
                   b_family(mu, bar_marker(bc_.c_l), qt_);
  }
  normalize(prefix[0], "no admissible left boundary under caps");
  for (int m = spec_.l; m <= spec_.r; ++m) {
    int lev = m - spec_.l;
    for (std::size_t p = 0; p < alphabet_.size(); ++p) {
      if (prefix[lev][p] == 0.0) continue;
      for_each_step(spec_, qt_, caps_, m, alphabet_[p],
                    [&](const Partition& next, double w) {
                      if (w == 0.0) return;
                      int j = lookup(next);
                      if (j >= 0) prefix[lev + 1][j] += w * prefix[lev][p];
                    });
    }
    normalize(prefix[lev + 1], "no admissible completion under caps");
  }

  // A trajectory that would escape the caps must pass through their edge;
  // bound the escape probability by the total mass the exact capped marginals
  // put on that edge, summed over columns.
  int wiggle = std::max(1, caps_.max_size / 8);
  occupancy_ = 0.0;
  for (int lev = 0; lev < levels; ++lev) {
    double edge = 0.0, total = 0.0;
    for (std::size_t p = 0; p < alphabet_.size(); ++p) {
      double mass = prefix[lev][p] * suffix_[lev][p];
      total += mass;
      const Partition& mu = alphabet_[p];
      if (mu.size() > caps_.max_size - wiggle || mu.part(1) >= caps_.max_part ||
          mu.length() >= caps_.max_length)
        edge += mass;
    }
    occupancy_ += edge / total;
  }
  if (occupancy_ > caps_.occupancy_tolerance) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "cap occupancy %.3e exceeds tolerance %.3e", occupancy_,
                  caps_.occupancy_tolerance);
    throw CapsTooTight(msg);
  }

  // Law of mu^{(l)} as a cumulative table for O(log) first-column draws.
  first_cdf_.resize(alphabet_.size());
  double acc = 0.0;
  for (std::size_t p = 0; p < alphabet_.size(); ++p) {
    acc += prefix[0][p] * suffix_[0][p];
    first_cdf_[p] = acc;
  }
  for (double& c : first_cdf_) c /= acc;
}

DimerState SequentialSampler::draw(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  DimerState s;
  s.mu.reserve(spec_.columns() + 1);

  auto it = std::lower_bound(first_cdf_.begin(), first_cdf_.end(), unif(rng));
  int cur = static_cast<int>(it - first_cdf_.begin());
  s.mu.push_back(alphabet_[cur]);

  std::vector<std::pair<int, double>> cand;
  for (int m = spec_.l; m <= spec_.r; ++m) {
    int lev = m - spec_.l;
    cand.clear();
    double total = 0.0;
    for_each_step(spec_, qt_, caps_, m, alphabet_[cur],
                  [&](const Partition& next, double w) {
                    if (w == 0.0) return;
                    int j = lookup(next);
                    if (j < 0) return;
                    double mass = w * suffix_[lev + 1][j];
                    if (mass > 0.0) {
                      cand.emplace_back(j, mass);
                      total += mass;
                    }
                  });
    double target = unif(rng) * total;
    int chosen = cand.back().first;
    double run = 0.0;
    for (const auto& [j, mass] : cand) {
      run += mass;
      if (run >= target) {
        chosen = j;
        break;
      }
    }
    cur = chosen;
    s.mu.push_back(alphabet_[cur]);
  }
  return s;
}

McEstimate mc_estimate(
    const std::function<std::vector<double>(const DimerState&)>& observable,
    std::size_t n_samples, const SequentialSampler& sampler,
    const RngPolicy& policy) {
  auto rng = policy.engine();
  McEstimate est;
  est.n_samples = n_samples;
  std::vector<double> sum, cross;
  std::size_t d = 0;
  for (std::size_t k = 0; k < n_samples; ++k) {
    auto v = observable(sampler.draw(rng));
    if (k == 0) {
      d = v.size();
      sum.assign(d, 0.0);
      cross.assign(d * d, 0.0);
    }
    for (std::size_t i = 0; i < d; ++i) {
      sum[i] += v[i];
      for (std::size_t j = 0; j < d; ++j) cross[i * d + j] += v[i] * v[j];
    }
  }
  double n = static_cast<double>(n_samples);
  est.mean.resize(d);
  for (std::size_t i = 0; i < d; ++i) est.mean[i] = sum[i] / n;
  est.covariance.assign(d, std::vector<double>(d, 0.0));
  est.std_error.assign(d, 0.0);
  if (n_samples > 1) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        est.covariance[i][j] =
            (cross[i * d + j] - n * est.mean[i] * est.mean[j]) / (n - 1.0);
    for (std::size_t i = 0; i < d; ++i)
      est.std_error[i] = std::sqrt(std::max(0.0, est.covariance[i][i]) / n);
  }
  return est;
}

}  // namespace ryd
