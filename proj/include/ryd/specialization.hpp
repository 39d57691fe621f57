#pragma once

// Finite-alphabet specializations of the algebra of symmetric functions.
// A specialization is a list of letters, each carrying a sign multiplier
// (the "(-1)*" construction acts on p_k by an overall sign, not by negating
// the letter) and a dual flag (apply omega_{q,t}), plus a global scale:
//   p_k(rho) = scale^k * sum_letters sign * x^k * [dual: (-1)^{k+1}(1-q^k)/(1-t^k)]

#include <vector>

#include "ryd/towers.hpp"

namespace ryd {

template <class K>
struct Letter {
  K value{};
  int sign = +1;      // multiplies p_k(letter) for every k
  bool dual = false;  // apply omega_{q,t}
};

template <class K>
struct Specialization {
  std::vector<Letter<K>> letters;
  K scale = K(1);

  static Specialization single(const K& x) {
    Specialization s;
    s.letters.push_back({x, +1, false});
    return s;
  }

  Specialization& add(const K& x, int sign = +1, bool dual = false) {
    letters.push_back({x, sign, dual});
    return *this;
  }

  // Union of alphabets: p_k(rho1 u rho2) = p_k(rho1) + p_k(rho2).
  // Scales are pushed into the letters so the union has scale 1.
  Specialization united(const Specialization& o) const {
    Specialization r;
    for (const auto& l : letters) r.letters.push_back({l.value * scale, l.sign, l.dual});
    for (const auto& l : o.letters) r.letters.push_back({l.value * o.scale, l.sign, l.dual});
    return r;
  }

  Specialization scaled(const K& c) const {
    Specialization r = *this;
    r.scale *= c;
    return r;
  }

  // Flip the dual flag on every letter (whole-alphabet omega_{q,t}).
  Specialization dualized() const {
    Specialization r = *this;
    for (auto& l : r.letters) l.dual = !l.dual;
    return r;
  }

  bool any_dual() const {
    for (const auto& l : letters)
      if (l.dual) return true;
    return false;
  }
  bool any_negative() const {
    for (const auto& l : letters)
      if (l.sign < 0) return true;
    return false;
  }
};

template <class K>
K power_sum(const Specialization<K>& rho, int k, const QTParams<K>& qt) {
  K acc(0);
  for (const auto& l : rho.letters) {
    K term = pow_int(l.value, k);
    if (l.sign < 0) term = -term;
    if (l.dual) {
      K qa = pow_int(qt.q, k), ta = pow_int(qt.t, k);
      if (ta == K(1)) throw PoleEncountered("power_sum: t^k = 1 under dual flag");
      term *= (K(1) - qa) / (K(1) - ta);
      if (k % 2 == 0) term = -term;
    }
    acc += term;
  }
  return acc * pow_int(rho.scale, k);
}

}  // namespace ryd
