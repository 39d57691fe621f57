#pragma once

// Macdonald branching machinery: the cell factor b_lambda(s;q,t), the four
// branching coefficients psi/phi/psi'/phi', the marker-restricted b-factor
// families, and single-variable skew specializations.

#include <utility>

#include "ryd/partitions.hpp"
#include "ryd/towers.hpp"

namespace ryd {

// b_lambda(s) = (1 - q^a t^{l+1}) / (1 - q^{a+1} t^l) for s in lambda, else 1.
template <class K>
K b_factor(const Partition& lambda, Cell s, const QTParams<K>& qt) {
  if (!contains_cell(lambda, s)) return K(1);
  auto [a, l] = arm_leg(lambda, s);
  K num = K(1) - pow_int(qt.q, a) * pow_int(qt.t, l + 1);
  K den = K(1) - pow_int(qt.q, a + 1) * pow_int(qt.t, l);
  if (is_zero(den)) throw PoleEncountered("b_factor: denominator vanishes");
  return num / den;
}

// b_lambda = product of b_lambda(s) over all cells.
template <class K>
K b_total(const Partition& lambda, const QTParams<K>& qt) {
  K r(1);
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = 1; j <= lambda.part(i); ++j) r *= b_factor(lambda, Cell{i, j}, qt);
  return r;
}

enum class BranchKind { Psi, Phi, PsiPrime, PhiPrime };

// Column col meets lambda/mu iff lambda'_col > mu'_col.
inline bool column_meets(const Partition& lambda, const Partition& mu, int col) {
  int lc = 0, mc = 0;
  for (int i = 1; i <= lambda.length(); ++i)
    if (lambda.part(i) >= col) ++lc;
  for (int i = 1; i <= mu.length(); ++i)
    if (mu.part(i) >= col) ++mc;
  return lc > mc;
}

// psi/phi need the horizontal-strip (row) interlacing mu < lambda; the primed
// pair needs the vertical-strip (column) interlacing. Returns 0 otherwise.
//
// With C (resp. R) the columns (resp. rows) meeting lambda/mu:
//   phi  = prod_{s in C}      b_lambda(s)/b_mu(s)
//   psi  = prod_{s in R \ C}  b_mu(s)/b_lambda(s)
//   phi' = prod_{s in R}      b_mu(s)/b_lambda(s)
//   psi' = prod_{s in C \ R}  b_lambda(s)/b_mu(s)
// (b is 1 outside the diagram, so the product may scan all cells of lambda.)
template <class K>
K branching_coeff(BranchKind kind, const Partition& lambda, const Partition& mu,
                  const QTParams<K>& qt) {
  bool horizontal = (kind == BranchKind::Psi || kind == BranchKind::Phi);
  InterlaceKind need = horizontal ? InterlaceKind::Row : InterlaceKind::Column;
  if (!interlaces(mu, lambda, need)) return K(0);

  K r(1);
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int j = 1; j <= lambda.part(i); ++j) {
      Cell s{i, j};
      bool col_meets = column_meets(lambda, mu, j);
      bool row_meets = lambda.part(i) > mu.part(i);
      switch (kind) {
        case BranchKind::Phi:
          if (col_meets) r *= b_factor(lambda, s, qt) / b_factor(mu, s, qt);
          break;
        case BranchKind::Psi:
          if (row_meets && !col_meets)
            r *= b_factor(mu, s, qt) / b_factor(lambda, s, qt);
          break;
        case BranchKind::PhiPrime:
          if (row_meets) r *= b_factor(mu, s, qt) / b_factor(lambda, s, qt);
          break;
        case BranchKind::PsiPrime:
          if (col_meets && !row_meets)
            r *= b_factor(lambda, s, qt) / b_factor(mu, s, qt);
          break;
      }
    }
  }
  return r;
}

enum class BMarker { El, Oa, Ol, Ea };

// Marker-restricted products of b_lambda(s): even leg (el), odd arm (oa),
// odd leg (ol = b_lambda / b^el), even arm (ea = b_lambda / b^oa).
template <class K>
K b_family(const Partition& lambda, BMarker marker, const QTParams<K>& qt) {
  K r(1);
  for (int i = 1; i <= lambda.length(); ++i) {
    for (int j = 1; j <= lambda.part(i); ++j) {
      auto [a, l] = arm_leg(lambda, Cell{i, j});
      bool take = false;
      switch (marker) {
        case BMarker::El: take = (l % 2 == 0); break;
        case BMarker::Oa: take = (a % 2 == 1); break;
        case BMarker::Ol: take = (l % 2 == 1); break;
        case BMarker::Ea: take = (a % 2 == 0); break;
      }
      if (take) r *= b_factor(lambda, Cell{i, j}, qt);
    }
  }
  return r;
}

enum class PQ { P, Q };

// Single-variable skew specializations:
//   P_{lambda/mu}([x])  = [mu < lambda]  psi  x^{|lambda|-|mu|}
//   Q_{lambda/mu}([x])  = [mu < lambda]  phi  x^{|lambda|-|mu|}
//   P_{lambda/mu}([x]') = [mu' < lambda'] phi' x^{|lambda|-|mu|}
//   Q_{lambda/mu}([x]') = [mu' < lambda'] psi' x^{|lambda|-|mu|}
template <class K>
K skew_single(PQ kind, bool dual, const Partition& lambda, const Partition& mu,
              const K& x, const QTParams<K>& qt) {
  BranchKind bk;
  if (!dual) {
    bk = (kind == PQ::P) ? BranchKind::Psi : BranchKind::Phi;
  } else {
    bk = (kind == PQ::P) ? BranchKind::PhiPrime : BranchKind::PsiPrime;
  }
  K c = branching_coeff(bk, lambda, mu, qt);
  if (is_zero(c)) return K(0);
  return c * pow_int(x, lambda.size() - mu.size());
}

}  // namespace ryd
