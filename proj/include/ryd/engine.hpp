#pragma once

// Symmetric-function engine at a fixed (q,t): monomial/power-sum transitions,
// the (q,t) scalar product, dominance Gram-Schmidt construction of the P/Q
// bases, skew expansions, and evaluation at specializations.
//
// This is the independent oracle layer: it never uses branching coefficients
// or any generating-function identity, only the scalar product and linear
// algebra, so everything else in the library can be tested against it.

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "ryd/partitions.hpp"
#include "ryd/specialization.hpp"
#include "ryd/towers.hpp"

namespace ryd {

// Sparse symmetric function as coefficients over partitions. The same map
// shape serves both the p-basis and the m-basis; which basis is meant is
// tracked by the call site.
template <class K>
using SymFn = std::map<Partition, K>;

template <class K>
SymFn<K> sym_add(const SymFn<K>& f, const SymFn<K>& g) {
  SymFn<K> r = f;
  for (const auto& [part, c] : g) r[part] += c;
  return r;
}

template <class K>
SymFn<K> sym_scale(const SymFn<K>& f, const K& s) {
  SymFn<K> r = f;
  for (auto& [part, c] : r) c *= s;
  return r;
}

// Product in the p-basis: p_lambda p_mu = p_{lambda u mu}.
template <class K>
SymFn<K> sym_mul_p(const SymFn<K>& f, const SymFn<K>& g) {
  SymFn<K> r;
  for (const auto& [a, ca] : f) {
    for (const auto& [b, cb] : g) {
      std::vector<int> parts = a.parts();
      parts.insert(parts.end(), b.parts().begin(), b.parts().end());
      std::sort(parts.begin(), parts.end(), std::greater<int>());
      r[Partition(parts)] += ca * cb;
    }
  }
  return r;
}

// Product in the p-basis truncated at total degree maxdeg.
template <class K>
SymFn<K> sym_mul_p_trunc(const SymFn<K>& f, const SymFn<K>& g, int maxdeg) {
  SymFn<K> r;
  for (const auto& [a, ca] : f) {
    for (const auto& [b, cb] : g) {
      if (a.size() + b.size() > maxdeg) continue;
      std::vector<int> parts = a.parts();
      parts.insert(parts.end(), b.parts().begin(), b.parts().end());
      std::sort(parts.begin(), parts.end(), std::greater<int>());
      r[Partition(parts)] += ca * cb;
    }
  }
  return r;
}

// exp of a p-basis element with zero constant term, truncated at maxdeg.
template <class K>
SymFn<K> sym_exp(const SymFn<K>& e, int maxdeg) {
  SymFn<K> r{{Partition{}, K(1)}};
  SymFn<K> pw = r;
  K fact(1);
  for (int m = 1; m <= maxdeg; ++m) {
    pw = sym_mul_p_trunc(pw, e, maxdeg);
    if (pw.empty()) break;
    fact *= K(m);
    for (const auto& [part, c] : pw) r[part] += c / fact;
  }
  return r;
}

template <class K>
class SymmetricEngine {
 public:
  SymmetricEngine(const QTParams<K>& qt, int max_degree)
      : qt_(qt), max_degree_(max_degree) {
    build();
  }

  const QTParams<K>& qt() const { return qt_; }
  int max_degree() const { return max_degree_; }

  // <p_lambda, p_lambda> = prod_i (1-q^{lambda_i})/(1-t^{lambda_i})
  //                        * prod_j j^{m_j} m_j!.
  K z_qt(const Partition& lambda) const {
    K r(1);
    for (int i = 1; i <= lambda.length(); ++i) {
      K num = K(1) - pow_int(qt_.q, lambda.part(i));
      K den = K(1) - pow_int(qt_.t, lambda.part(i));
      if (is_zero(den)) throw PoleEncountered("z_qt: 1 - t^k vanishes");
      r *= num / den;
    }
    std::map<int, int> mult;
    for (int i = 1; i <= lambda.length(); ++i) mult[lambda.part(i)]++;
    for (const auto& [j, m] : mult) {
      for (int s = 0; s < m; ++s) r *= K(j);
      for (int s = 2; s <= m; ++s) r *= K(s);
    }
    return r;
  }

  // <f, g> for f, g in the p-basis.
  K scalar_product(const SymFn<K>& f, const SymFn<K>& g) const {
    K r(0);
    for (const auto& [part, cf] : f) {
      auto it = g.find(part);
      if (it != g.end()) r += cf * it->second * z_qt(part);
    }
    return r;
  }

  // m_lambda expressed in the p-basis (and the inverse direction).
  const SymFn<K>& m_in_p(const Partition& lambda) const { return m_in_p_.at(lambda); }
  const SymFn<K>& p_in_m(const Partition& lambda) const { return p_in_m_.at(lambda); }

  // Macdonald P_lambda / Q_lambda in the p-basis.
  const SymFn<K>& P(const Partition& lambda) const { return P_p_.at(lambda); }
  SymFn<K> Q(const Partition& lambda) const {
    return sym_scale(P(lambda), K(1) / P_norm(lambda));
  }
  K P_norm(const Partition& lambda) const { return P_norm_.at(lambda); }

  // P_lambda in the m-basis (unitriangular with coefficient 1 on m_lambda).
  const SymFn<K>& P_in_m(const Partition& lambda) const { return P_m_.at(lambda); }

  // Convert a p-basis function to the m-basis.
  SymFn<K> to_m(const SymFn<K>& f_p) const {
    SymFn<K> r;
    for (const auto& [part, c] : f_p) {
      for (const auto& [mp, mc] : p_in_m_.at(part)) r[mp] += c * mc;
    }
    return r;
  }

  // Skew functions in the p-basis:
  //   Q_{lambda/mu} = sum_nu <Q_lambda, P_mu P_nu> Q_nu
  //   P_{lambda/mu} = sum_nu <P_lambda, Q_mu Q_nu> P_nu
  SymFn<K> skew_P(const Partition& lambda, const Partition& mu) const {
    SymFn<K> r;
    long d = lambda.size() - mu.size();
    if (d < 0) return r;
    SymFn<K> Pl = P(lambda), Qm = Q(mu);
    for (const auto& nu : partitions_of(static_cast<int>(d))) {
      K c = scalar_product(Pl, sym_mul_p(Qm, Q(nu)));
      if (!is_zero(c)) r = sym_add(r, sym_scale(P(nu), c));
    }
    return r;
  }
  SymFn<K> skew_Q(const Partition& lambda, const Partition& mu) const {
    SymFn<K> r;
    long d = lambda.size() - mu.size();
    if (d < 0) return r;
    SymFn<K> Ql = Q(lambda), Pm = P(mu);
    for (const auto& nu : partitions_of(static_cast<int>(d))) {
      K c = scalar_product(Ql, sym_mul_p(Pm, P(nu)));
      if (!is_zero(c)) r = sym_add(r, sym_scale(Q(nu), c));
    }
    return r;
  }

  // Evaluate a p-basis function at a specialization.
  K eval(const SymFn<K>& f_p, const Specialization<K>& rho) const {
    K r(0);
    for (const auto& [part, c] : f_p) {
      K term = c;
      for (int i = 1; i <= part.length(); ++i) term *= power_sum(rho, part.part(i), qt_);
      r += term;
    }
    return r;
  }

 private:
  void build() {
    // p_lambda in the m-basis by iterated multiplication with the rule
    // p_r m_lambda = sum_mu mult_{v+r}(mu) m_mu, mu = lambda with one part
    // v -> v+r (v may be 0, i.e. a new part).
    for (int d = 0; d <= max_degree_; ++d) {
      for (const auto& lambda : partitions_of(d)) {
        SymFn<K> acc;
        acc[Partition{}] = K(1);
        for (int i = 1; i <= lambda.length(); ++i) acc = p_times_m(lambda.part(i), acc);
        p_in_m_[lambda] = std::move(acc);
      }
      invert_degree(d);
      gram_schmidt_degree(d);
    }
  }

  SymFn<K> p_times_m(int r, const SymFn<K>& f_m) const {
    SymFn<K> out;
    for (const auto& [lambda, c] : f_m) {
      std::vector<int> values = lambda.parts();
      values.push_back(0);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (int v : values) {
        std::vector<int> parts = lambda.parts();
        if (v == 0) {
          parts.push_back(r);
        } else {
          for (auto& p : parts) {
            if (p == v) {
              p = v + r;
              break;
            }
          }
        }
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        Partition mu(parts);
        int mult = 0;
        for (int i = 1; i <= mu.length(); ++i)
          if (mu.part(i) == v + r) ++mult;
        out[mu] += c * K(mult);
      }
    }
    return out;
  }

  void invert_degree(int d) {
    // Solve for m_lambda in the p-basis by Gaussian elimination on the
    // integer transition matrix of this degree.
    auto parts = partitions_of(d);
    int n = static_cast<int>(parts.size());
    std::map<Partition, int> index;
    for (int i = 0; i < n; ++i) index[parts[i]] = i;
    std::vector<std::vector<K>> a(n, std::vector<K>(2 * n, K(0)));
    for (int i = 0; i < n; ++i) {
      for (const auto& [mp, c] : p_in_m_.at(parts[i])) a[i][index.at(mp)] = c;
      a[i][n + i] = K(1);
    }
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int row = col; row < n; ++row)
        if (!is_zero(a[row][col])) {
          piv = row;
          break;
        }
      if (piv < 0) throw PoleEncountered("basis transition matrix singular");
      std::swap(a[col], a[piv]);
      K inv = K(1) / a[col][col];
      for (auto& v : a[col]) v *= inv;
      for (int row = 0; row < n; ++row) {
        if (row == col || is_zero(a[row][col])) continue;
        K f = a[row][col];
        for (int k = 0; k < 2 * n; ++k) a[row][k] -= f * a[col][k];
      }
    }
    // Row i of the inverse gives m_{parts[i]} in terms of p_{parts[j]}:
    // [m] = A^{-1} [p] where A rows are p-in-m.
    // p_in_m_ stores p_i = sum_j A_{ij} m_j, so m = A^{-1} p.
    for (int i = 0; i < n; ++i) {
      SymFn<K> f;
      for (int j = 0; j < n; ++j)
        if (!is_zero(a[i][n + j])) f[parts[j]] = a[i][n + j];
      m_in_p_[parts[i]] = std::move(f);
    }
  }

  void gram_schmidt_degree(int d) {
    // partitions_of(d) is decreasing in every linear extension of dominance,
    // so process it back-to-front: smallest partition first. Unitriangularity
    // plus orthogonality then pins down Macdonald P_lambda.
    auto parts = partitions_of(d);
    for (int k = static_cast<int>(parts.size()) - 1; k >= 0; --k) {
      const Partition& lambda = parts[k];
      SymFn<K> v = m_in_p_.at(lambda);
      for (size_t j = k + 1; j < parts.size(); ++j) {
        const Partition& mu = parts[j];
        K num = scalar_product(v, P_p_.at(mu));
        if (is_zero(num)) continue;
        v = sym_add(v, sym_scale(P_p_.at(mu), -num / P_norm_.at(mu)));
      }
      K norm = scalar_product(v, v);
      if (is_zero(norm)) throw PoleEncountered("Gram matrix degenerate at this (q,t)");
      P_p_[lambda] = v;
      P_norm_[lambda] = norm;
      P_m_[lambda] = to_m(v);
    }
  }

  QTParams<K> qt_;
  int max_degree_;
  std::map<Partition, SymFn<K>> p_in_m_, m_in_p_, P_p_, P_m_;
  std::map<Partition, K> P_norm_;
};

}  // namespace ryd
