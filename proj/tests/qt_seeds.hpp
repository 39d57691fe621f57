#pragma once

// Fixed rational (q,t) sample points for the exact identity tests,
// pre-screened so that q^a t^b != 1 for all exponent pairs |a|,|b| <= 16
// (not both zero). Fixed list rather than runtime RNG for reproducibility.

#include <utility>
#include <vector>

#include "ryd/towers.hpp"

namespace ryd_test {

inline std::vector<std::pair<ryd::Rat, ryd::Rat>> qt_seed_pairs() {
  using ryd::Rat;
  std::vector<std::pair<Rat, Rat>> pairs = {
      {Rat(1, 2), Rat(1, 3)}, {Rat(2, 5), Rat(1, 7)}, {Rat(3, 7), Rat(2, 9)},
      {Rat(1, 4), Rat(3, 5)}, {Rat(5, 8), Rat(2, 7)}, {Rat(2, 3), Rat(1, 5)},
  };
  for (const auto& [q, t] : pairs) {
    for (int a = -16; a <= 16; ++a) {
      for (int b = -16; b <= 16; ++b) {
        if (a == 0 && b == 0) continue;
        if (ryd::pow_int(q, a) * ryd::pow_int(t, b) == Rat(1)) {
          throw std::logic_error("qt seed pair hits a resonance");
        }
      }
    }
  }
  return pairs;
}

}  // namespace ryd_test
