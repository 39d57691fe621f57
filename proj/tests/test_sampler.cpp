#include "ryd/sampler.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "ryd/railyard.hpp"

using namespace ryd;

namespace {

RailYardSpec make_spec(std::vector<LR> as, std::vector<Sign> bs,
                       std::vector<double> xs) {
  RailYardSpec spec;
  spec.l = 1;
  spec.r = static_cast<int>(as.size());
  spec.lr_word = std::move(as);
  spec.sign_word = std::move(bs);
  spec.weights = std::move(xs);
  spec.check();
  return spec;
}

std::vector<int> state_key(const DimerState& s) {
  std::vector<int> key;
  for (const auto& p : s.mu) {
    key.push_back(-1);
    for (int v : p.parts()) key.push_back(v);
  }
  return key;
}

double exact_moment(const MeasureTable& table, const RailYardSpec& spec,
                    int m) {
  double e = 0.0;
  for (std::size_t s = 0; s < table.states.size(); ++s)
    e += table.prob[s] * static_cast<double>(table.states[s].at(spec, m).size());
  return e;
}

}  // namespace

TEST_CASE("closed boundaries force the empty configuration") {
  auto spec = make_spec({LR::L}, {Sign::Plus}, {0.3});
  BoundaryCondition bc;  // u = v = 0
  QTParams<double> qt{0.5, 0.3};

  TruncationPolicy pol;
  pol.max_partition_size = 8;
  auto table = exact_measure(spec, bc, qt, pol);
  double empty_mass = 0.0;
  for (std::size_t s = 0; s < table.states.size(); ++s)
    if (table.states[s].mu[0].empty() && table.states[s].mu[1].empty())
      empty_mass += table.prob[s];
  CHECK(empty_mass == doctest::Approx(1.0));

  SampleCaps caps;
  caps.max_size = 8;
  SequentialSampler sampler(spec, bc, qt, caps);
  auto rng = RngPolicy{7, 0}.engine();
  for (int k = 0; k < 20; ++k) {
    auto s = sampler.draw(rng);
    CHECK(s.mu[0].empty());
    CHECK(s.mu[1].empty());
  }
}

TEST_CASE("exact measure matches state weights on a two-column chain") {
  auto spec = make_spec({LR::L, LR::L}, {Sign::Plus, Sign::Minus}, {0.2, 0.25});
  BoundaryCondition bc;
  QTParams<double> qt{0.4, 0.7};
  TruncationPolicy pol;
  pol.max_partition_size = 10;
  auto table = exact_measure(spec, bc, qt, pol);

  // With closed boundaries only the middle partition varies; its law is the
  // normalized product of the two skew factors.
  double z = 0.0;
  std::map<long, double> law;
  for (std::size_t s = 0; s < table.states.size(); ++s) {
    double w = table.prob[s];
    if (w > 0) law[table.states[s].mu[1].size()] += w;
    z += w;
  }
  CHECK(z == doctest::Approx(1.0));
  // Single-variable skew factors vanish beyond one row, so the middle
  // partition is a row (k) and successive weight ratios are explicit.
  DimerState empty{{Partition(), Partition(), Partition()}};
  DimerState one{{Partition(), Partition({1}), Partition()}};
  double ratio = state_weight(spec, bc, one, qt) / state_weight(spec, bc, empty, qt);
  CHECK(law[1] / law[0] == doctest::Approx(ratio).epsilon(1e-12));
  CHECK(table.tail < 1e-6);
}

TEST_CASE("sequential sampler matches the exact measure in total variation") {
  auto spec = make_spec({LR::L, LR::L, LR::L},
                        {Sign::Plus, Sign::Minus, Sign::Plus},
                        {0.15, 0.2, 0.1});
  BoundaryCondition bc;
  bc.c_l = FreeMarker::El;
  bc.c_r = FreeMarker::Oa;
  bc.u = 0.1;
  bc.v = 0.15;
  QTParams<double> qt{0.5, 0.3};

  TruncationPolicy pol;
  pol.max_partition_size = 10;
  auto table = exact_measure(spec, bc, qt, pol);
  REQUIRE(table.tail < 1e-5);

  SampleCaps caps;
  caps.max_size = 10;
  caps.max_part = 10;
  caps.max_length = 10;
  SequentialSampler sampler(spec, bc, qt, caps);
  CHECK(sampler.cap_occupancy() < 1e-4);

  std::map<std::vector<int>, double> exact;
  for (std::size_t s = 0; s < table.states.size(); ++s)
    exact[state_key(table.states[s])] = table.prob[s];

  const int n = 100000;
  auto rng = RngPolicy{20240817, 0}.engine();
  std::map<std::vector<int>, double> emp;
  for (int k = 0; k < n; ++k) {
    auto s = sampler.draw(rng);
    CHECK(validate_state(spec, bc, s));
    emp[state_key(s)] += 1.0 / n;
  }

  double tv = 0.0;
  for (const auto& [key, p] : exact) {
    auto it = emp.find(key);
    tv += std::abs(p - (it == emp.end() ? 0.0 : it->second));
  }
  for (const auto& [key, p] : emp)
    if (exact.find(key) == exact.end()) tv += p;
  CHECK(tv / 2 < 0.01);
}

TEST_CASE("sampled moments agree with exact expectations") {
  auto spec = make_spec({LR::R, LR::R, LR::L},
                        {Sign::Plus, Sign::Minus, Sign::Plus},
                        {0.2, 0.15, 0.1});
  BoundaryCondition bc;
  bc.c_l = FreeMarker::EOa;
  bc.c_r = FreeMarker::El;
  bc.u = 0.15;
  bc.v = 0.1;
  QTParams<double> qt{0.3, 0.6};

  TruncationPolicy pol;
  pol.max_partition_size = 10;
  auto table = exact_measure(spec, bc, qt, pol);
  double want = exact_moment(table, spec, 2);

  SampleCaps caps;
  caps.max_size = 10;
  caps.max_part = 10;
  caps.max_length = 10;
  SequentialSampler sampler(spec, bc, qt, caps);

  auto obs = [&](const DimerState& s) {
    return std::vector<double>{static_cast<double>(s.at(spec, 2).size())};
  };
  auto est = mc_estimate(obs, 20000, sampler, RngPolicy{11, 3});
  CHECK(std::abs(est.mean[0] - want) < 3.0 * est.std_error[0] + 1e-12);
  CHECK(est.std_error[0] > 0.0);
  CHECK(est.covariance[0][0] == doctest::Approx(est.std_error[0] *
                                                est.std_error[0] * 20000.0));
}

TEST_CASE("draws are reproducible per seed and stream") {
  auto spec = make_spec({LR::L, LR::R}, {Sign::Plus, Sign::Minus}, {0.2, 0.2});
  BoundaryCondition bc;
  bc.u = 0.2;
  bc.v = 0.2;
  QTParams<double> qt{0.5, 0.4};
  SampleCaps caps;
  caps.max_size = 12;
  SequentialSampler sampler(spec, bc, qt, caps);

  auto r1 = RngPolicy{42, 1}.engine();
  auto r2 = RngPolicy{42, 1}.engine();
  auto r3 = RngPolicy{42, 2}.engine();
  bool streams_differ = false;
  for (int k = 0; k < 50; ++k) {
    auto a = sampler.draw(r1);
    auto b = sampler.draw(r2);
    auto c = sampler.draw(r3);
    REQUIRE(a.mu.size() == b.mu.size());
    for (std::size_t i = 0; i < a.mu.size(); ++i) CHECK(a.mu[i] == b.mu[i]);
    for (std::size_t i = 0; i < a.mu.size(); ++i)
      if (!(a.mu[i] == c.mu[i])) streams_differ = true;
  }
  CHECK(streams_differ);
}

TEST_CASE("constant observable has zero variance") {
  auto spec = make_spec({LR::L}, {Sign::Plus}, {0.2});
  BoundaryCondition bc;
  bc.u = 0.2;
  bc.v = 0.3;
  QTParams<double> qt{0.5, 0.4};
  SampleCaps caps;
  caps.max_size = 12;
  SequentialSampler sampler(spec, bc, qt, caps);
  auto est = mc_estimate(
      [](const DimerState&) {
        return std::vector<double>{2.5};
      },
      500, sampler, RngPolicy{5, 0});
  CHECK(est.mean[0] == doctest::Approx(2.5));
  CHECK(est.covariance[0][0] == doctest::Approx(0.0));
}

TEST_CASE("tight caps are rejected") {
  auto spec = make_spec({LR::L}, {Sign::Plus}, {0.9});
  BoundaryCondition bc;
  bc.u = 0.9;
  bc.v = 0.9;
  QTParams<double> qt{0.5, 0.4};
  SampleCaps caps;
  caps.max_size = 6;
  CHECK_THROWS_AS(SequentialSampler(spec, bc, qt, caps), CapsTooTight);
}

TEST_CASE("oversized universes are rejected before enumeration") {
  auto spec = make_spec(
      {LR::L, LR::L, LR::L, LR::L, LR::L, LR::L},
      {Sign::Minus, Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus,
       Sign::Plus},
      {0.1, 0.1, 0.1, 0.1, 0.1, 0.1});
  BoundaryCondition bc;
  bc.u = 0.1;
  bc.v = 0.1;
  QTParams<double> qt{0.5, 0.4};
  TruncationPolicy pol;
  pol.max_partition_size = 12;
  CHECK_THROWS_AS(exact_measure(spec, bc, qt, pol), UniverseTooLarge);
}
