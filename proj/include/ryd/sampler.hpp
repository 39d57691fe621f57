#pragma once

// Exact sampling from the rail-yard measure: full enumeration on small
// instances, and a sequential conditional sampler at scale. The sequential
// sampler is exact on the capped state space: a right-to-left transfer pass
// computes the suffix partition function of every alphabet partition at every
// column, and each draw then samples one column at a time proportional to
// (skew factor) x (suffix mass).

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ryd/railyard.hpp"
#include "ryd/zfun.hpp"

namespace ryd {

struct UniverseTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapsTooTight : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MeasureTable {
  std::vector<DimerState> states;
  std::vector<double> prob;  // normalized over the enumerated universe
  double tail = 0.0;         // certified relative mass beyond the truncation
};

MeasureTable exact_measure(const RailYardSpec& spec, const BoundaryCondition& bc,
                           const QTParams<double>& qt, const TruncationPolicy& pol);

// Seed + stream index; the same policy yields a bit-identical draw sequence.
struct RngPolicy {
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;

  std::mt19937_64 engine() const {
    // splitmix64 mix of (seed, stream) so nearby streams decorrelate.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return std::mt19937_64(z ^ (z >> 31));
  }
};

struct SampleCaps {
  int max_size = 40;
  int max_part = 50;
  int max_length = 50;
  // Upper bound on the probability that any column partition touches the cap
  // boundary; the constructor throws CapsTooTight when it cannot certify it.
  double occupancy_tolerance = 1e-4;
};

class SequentialSampler {
 public:
  SequentialSampler(const RailYardSpec& spec, const BoundaryCondition& bc,
                    const QTParams<double>& qt, const SampleCaps& caps);

  DimerState draw(std::mt19937_64& rng) const;
  DimerState draw(const RngPolicy& policy) const {
    auto rng = policy.engine();
    return draw(rng);
  }

  // Union bound over columns of the probability of sitting at the cap edge.
  double cap_occupancy() const { return occupancy_; }
  std::size_t alphabet_size() const { return alphabet_.size(); }

 private:
  RailYardSpec spec_;
  BoundaryCondition bc_;
  QTParams<double> qt_;
  SampleCaps caps_;
  std::vector<Partition> alphabet_;
  std::unordered_map<Partition, int, PartitionHash> index_;
  // suffix_[m - l][p]: relative mass of all completions right of column
  // position m when mu^{(m)} = alphabet_[p]; each level is sup-normalized.
  std::vector<std::vector<double>> suffix_;
  std::vector<double> first_cdf_;  // cumulative law of mu^{(l)}
  double occupancy_ = 0.0;

  int lookup(const Partition& p) const;
};

struct McEstimate {
  std::vector<double> mean;
  std::vector<std::vector<double>> covariance;
  std::vector<double> std_error;
  std::size_t n_samples = 0;
};

McEstimate mc_estimate(
    const std::function<std::vector<double>(const DimerState&)>& observable,
    std::size_t n_samples, const SequentialSampler& sampler,
    const RngPolicy& policy);

}  // namespace ryd
