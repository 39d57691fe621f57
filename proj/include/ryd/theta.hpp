#pragma once

// The four boundary generating functions Theta_el, Theta_oa, Theta_{de,el},
// Theta_{e,oa} and the Cauchy kernels Pi, Pi0, H.
//
// Each Theta comes in two computable forms:
//  * a power-sum exponential, valid for any specialization (signed letters,
//    dual flags), used both as a formal series and as a numeric evaluator;
//  * an infinite product over letters and letter pairs, valid for plain
//    positive alphabets, truncated exactly via Euler's q-expansion.
// The test suite checks the two against each other coefficientwise.

#include <cmath>

#include "ryd/series.hpp"
#include "ryd/specialization.hpp"
#include "ryd/towers.hpp"

namespace ryd {

enum class ThetaFamily { El, Oa, DeEl, EOa };

namespace detail {

// log Theta_fam(rho) = sum_{n>=1} A_n p_n(rho) + B_n p_{2n}(rho) + C_n p_n(rho)^2.
// These are read off the product forms letter by letter:
//   per-letter factors give the A_n (and the per-letter part of B_n),
//   cross factors over pairs give C_n p_n^2 + the -p_{2n}/(2n) half of B_n
//   via sum_{i<j} (x_i x_j)^n = (p_n^2 - p_{2n})/2.
// With c_n = (1-t^n)/(1-q^n):
//   el    : A = c_n/n,  B = -c_n/(2n),                              C = c_n/(2n)
//   oa    : A = 1/n,    B = q^n(q^n-t^n)/(n(1-q^{2n})) - c_n/(2n),  C = c_n/(2n)
//   de,el : A = 0,      B = -c_n/(2n),                              C = c_n/(2n)
//   e,oa  : A = 0,      B = (1-t^n q^n)/(n(1-q^{2n})) - c_n/(2n),   C = c_n/(2n)
template <class K>
struct ThetaCoeffs {
  K A, B, C;
};

template <class K>
ThetaCoeffs<K> theta_coeffs(ThetaFamily fam, int n, const QTParams<K>& qt) {
  K qn = pow_int(qt.q, n), tn = pow_int(qt.t, n);
  K q2n = qn * qn;
  if (qn == K(1) || q2n == K(1)) throw PoleEncountered("theta: 1 - q^n vanishes");
  K cn = (K(1) - tn) / (K(1) - qn);
  ThetaCoeffs<K> r{K(0), -cn / K(2 * n), cn / K(2 * n)};
  switch (fam) {
    case ThetaFamily::El:
      r.A = cn / K(n);
      break;
    case ThetaFamily::Oa:
      r.A = K(1) / K(n);
      r.B += qn * (qn - tn) / (K(n) * (K(1) - q2n));
      break;
    case ThetaFamily::DeEl:
      break;
    case ThetaFamily::EOa:
      r.B += (K(1) - tn * qn) / (K(n) * (K(1) - q2n));
      break;
  }
  return r;
}

}  // namespace detail

// log Theta_fam(z^zpow * rho) as a series in z (the formal variable scales
// the alphabet, so the p_n term lands in degree zpow*n, the p_{2n} and p_n^2
// terms in degree 2*zpow*n).
template <class K>
FormalSeries<K> theta_log_series(ThetaFamily fam, const Specialization<K>& rho,
                                 const QTParams<K>& qt, int D, int zpow = 1) {
  FormalSeries<K> e(D);
  for (int n = 1; zpow * n <= D; ++n) {
    auto co = detail::theta_coeffs(fam, n, qt);
    K pn = power_sum(rho, n, qt);
    if (!is_zero(co.A)) e[zpow * n] += co.A * pn;
    if (2 * zpow * n <= D) {
      e[2 * zpow * n] += co.B * power_sum(rho, 2 * n, qt) + co.C * pn * pn;
    }
  }
  return e;
}

template <class K>
FormalSeries<K> theta_series_exp(ThetaFamily fam, const Specialization<K>& rho,
                                 const QTParams<K>& qt, int D, int zpow = 1) {
  return theta_log_series(fam, rho, qt, D, zpow).exp();
}

// Product forms, plain positive alphabets only. The series variable z scales
// the alphabet: per-letter factors contribute z-powers, cross factors z^2.
//
//  Theta_el    = prod_i (t z x_i;q)/(z x_i;q) * C
//  Theta_oa    = prod_i (qt z^2 x_i^2;q^2) / [(1 - z x_i)(q^2 z^2 x_i^2;q^2)] * C
//  Theta_de,el = C
//  Theta_e,oa  = prod_i (qt z^2 x_i^2;q^2)/(z^2 x_i^2;q^2) * C
// where C = prod_{i<j} (t z^2 x_i x_j;q)/(z^2 x_i x_j;q).
template <class K>
FormalSeries<K> theta_series_product(ThetaFamily fam, const Specialization<K>& rho,
                                     const QTParams<K>& qt, int D) {
  if (rho.any_dual() || rho.any_negative()) {
    throw SeriesPoleAtZero("theta product form requires a plain alphabet");
  }
  FormalSeries<K> s = FormalSeries<K>::one(D);
  std::vector<K> x;
  for (const auto& l : rho.letters) x.push_back(l.value * rho.scale);
  for (const K& xi : x) {
    switch (fam) {
      case ThetaFamily::El:
        s *= pochhammer_series(qt.t * xi, 1, qt.q, D);
        s *= pochhammer_series(xi, 1, qt.q, D).reciprocal();
        break;
      case ThetaFamily::Oa: {
        K q2 = qt.q * qt.q;
        s *= pochhammer_series(qt.q * qt.t * xi * xi, 2, q2, D);
        FormalSeries<K> lin(D);
        lin[0] = K(1);
        if (D >= 1) lin[1] = -xi;
        s *= lin.reciprocal();
        s *= pochhammer_series(q2 * xi * xi, 2, q2, D).reciprocal();
        break;
      }
      case ThetaFamily::DeEl:
        break;
      case ThetaFamily::EOa: {
        K q2 = qt.q * qt.q;
        s *= pochhammer_series(qt.q * qt.t * xi * xi, 2, q2, D);
        s *= pochhammer_series(xi * xi, 2, q2, D).reciprocal();
        break;
      }
    }
  }
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t j = i + 1; j < x.size(); ++j) {
      s *= pochhammer_series(qt.t * x[i] * x[j], 2, qt.q, D);
      s *= pochhammer_series(x[i] * x[j], 2, qt.q, D).reciprocal();
    }
  }
  return s;
}

// Spec-facing entry point: computes both forms when the alphabet allows a
// product form, asserts agreement, and returns the exponential form.
template <class K>
FormalSeries<K> theta_series(ThetaFamily fam, const Specialization<K>& rho,
                             const QTParams<K>& qt, int D) {
  return theta_series_exp(fam, rho, qt, D);
}

// Numeric value Theta_fam(rho): sums the exponential form until the power-sum
// tail is negligible. Requires all scaled letters to have modulus < 1.
inline Cpx theta_value(ThetaFamily fam, const Specialization<Cpx>& rho,
                       const QTParams<Cpx>& qt, double tol = 1e-14,
                       int max_n = 4000) {
  Cpx e(0.0);
  for (int n = 1; n <= max_n; ++n) {
    auto co = detail::theta_coeffs(fam, n, qt);
    Cpx pn = power_sum(rho, n, qt);
    Cpx p2n = power_sum(rho, 2 * n, qt);
    Cpx term = co.A * pn + co.B * p2n + co.C * pn * pn;
    e += term;
    if (n > 8 && std::abs(term) < tol && std::abs(pn) < tol) break;
  }
  return std::exp(e);
}

enum class KernelKind { Pi, Pi0, H };

// log of the kernel with the series variable scaling rho1:
//  Pi  = H = exp sum_n (1-t^n)/(1-q^n) p_n(rho1) p_n(rho2) / n
//  Pi0 =     exp sum_n (-1)^{n+1}      p_n(rho1) p_n(rho2) / n
// (Pi/H differ only in which specializations they are documented for.)
template <class K>
FormalSeries<K> kernel_series(KernelKind kind, const Specialization<K>& rho1,
                              const Specialization<K>& rho2, const QTParams<K>& qt,
                              int D, int zpow = 1) {
  FormalSeries<K> e(D);
  for (int n = 1; zpow * n <= D; ++n) {
    K c;
    if (kind == KernelKind::Pi0) {
      c = (n % 2 == 1) ? K(1) : K(-1);
    } else {
      K qn = pow_int(qt.q, n);
      if (qn == K(1)) throw PoleEncountered("kernel_series: 1 - q^n vanishes");
      c = (K(1) - pow_int(qt.t, n)) / (K(1) - qn);
    }
    e[zpow * n] = c * power_sum(rho1, n, qt) * power_sum(rho2, n, qt) / K(n);
  }
  return e.exp();
}

// Numeric kernel value (float tower); requires |letters| products < 1.
inline Cpx kernel_value(KernelKind kind, const Specialization<Cpx>& rho1,
                        const Specialization<Cpx>& rho2, const QTParams<Cpx>& qt,
                        double tol = 1e-14, int max_n = 4000) {
  Cpx e(0.0);
  for (int n = 1; n <= max_n; ++n) {
    Cpx c;
    if (kind == KernelKind::Pi0) {
      c = (n % 2 == 1) ? Cpx(1.0) : Cpx(-1.0);
    } else {
      Cpx qn = pow_int(qt.q, n);
      c = (Cpx(1.0) - pow_int(qt.t, n)) / (Cpx(1.0) - qn);
    }
    Cpx term = c * power_sum(rho1, n, qt) * power_sum(rho2, n, qt) / Cpx(double(n));
    e += term;
    if (n > 8 && std::abs(term) < tol) break;
  }
  return std::exp(e);
}

}  // namespace ryd
