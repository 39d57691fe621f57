#pragma once

// Truncated univariate formal power series over either tower. All arithmetic
// is exact modulo O(x^{D+1}); the truncation degree of a binary op is the min
// of the operands' degrees.

#include <string>
#include <vector>

#include "ryd/towers.hpp"

namespace ryd {

template <class K>
class FormalSeries {
 public:
  FormalSeries() : c_(1, K(0)) {}
  explicit FormalSeries(int degree, std::string var = "x")
      : c_(degree + 1, K(0)), var_(std::move(var)) {}

  static FormalSeries constant(const K& v, int degree) {
    FormalSeries s(degree);
    s.c_[0] = v;
    return s;
  }
  static FormalSeries one(int degree) { return constant(K(1), degree); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::string& var() const { return var_; }
  const K& operator[](int i) const { return c_[i]; }
  K& operator[](int i) { return c_[i]; }

  FormalSeries truncated(int d) const {
    FormalSeries r(std::min(d, degree()), var_);
    for (int i = 0; i <= r.degree(); ++i) r.c_[i] = c_[i];
    return r;
  }

  FormalSeries operator+(const FormalSeries& o) const {
    FormalSeries r(std::min(degree(), o.degree()), var_);
    for (int i = 0; i <= r.degree(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  FormalSeries operator-(const FormalSeries& o) const {
    FormalSeries r(std::min(degree(), o.degree()), var_);
    for (int i = 0; i <= r.degree(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  FormalSeries operator*(const FormalSeries& o) const {
    FormalSeries r(std::min(degree(), o.degree()), var_);
    for (int i = 0; i <= r.degree(); ++i) {
      for (int j = 0; i + j <= r.degree() && j <= o.degree(); ++j) {
        if (i <= degree()) r.c_[i + j] += c_[i] * o.c_[j];
      }
    }
    return r;
  }
  FormalSeries operator*(const K& s) const {
    FormalSeries r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }
  FormalSeries& operator+=(const FormalSeries& o) { return *this = *this + o; }
  FormalSeries& operator*=(const FormalSeries& o) { return *this = *this * o; }

  // 1/f, requires c_0 != 0.
  FormalSeries reciprocal() const {
    if (is_zero(c_[0])) throw SeriesPoleAtZero("reciprocal: zero constant term");
    FormalSeries r(degree(), var_);
    r.c_[0] = K(1) / c_[0];
    for (int n = 1; n <= degree(); ++n) {
      K s(0);
      for (int k = 1; k <= n; ++k) s += c_[k] * r.c_[n - k];
      r.c_[n] = -s / c_[0];
    }
    return r;
  }

  // exp(f), requires c_0 = 0. Recurrence: g_n = (1/n) sum_k k f_k g_{n-k}.
  FormalSeries exp() const {
    if (!is_zero(c_[0])) throw SeriesPoleAtZero("exp: nonzero constant term");
    FormalSeries r(degree(), var_);
    r.c_[0] = K(1);
    for (int n = 1; n <= degree(); ++n) {
      K s(0);
      for (int k = 1; k <= n; ++k) s += K(k) * c_[k] * r.c_[n - k];
      r.c_[n] = s / K(n);
    }
    return r;
  }

  // log(f), requires c_0 = 1.
  FormalSeries log() const {
    if (c_[0] != K(1)) throw SeriesPoleAtZero("log: constant term must be 1");
    FormalSeries h(degree(), var_);
    for (int n = 1; n <= degree(); ++n) {
      K s(0);
      for (int k = 1; k < n; ++k) s += K(k) * h.c_[k] * c_[n - k];
      h.c_[n] = c_[n] - s / K(n);
    }
    return h;
  }

  // f(c*x) for a scalar c.
  FormalSeries rescaled(const K& c) const {
    FormalSeries r = *this;
    K p(1);
    for (int i = 1; i <= degree(); ++i) {
      p *= c;
      r.c_[i] *= p;
    }
    return r;
  }

  // Substitute x -> x^k (degree kept; higher terms truncated).
  FormalSeries stretched(int k) const {
    FormalSeries r(degree(), var_);
    for (int i = 0; i * k <= degree(); ++i) r.c_[i * k] = c_[i];
    return r;
  }

  K eval(const K& x) const {
    K acc(0);
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

 private:
  std::vector<K> c_;
  std::string var_ = "x";
};

// Monomial x^k * v at a given truncation degree.
template <class K>
FormalSeries<K> monomial(int k, const K& v, int degree) {
  FormalSeries<K> s(degree);
  if (k <= degree) s[k] = v;
  return s;
}

// (a x^m; q)_infty as a series in x via Euler's expansion:
// sum_n (-1)^n q^{n(n-1)/2} a^n x^{mn} / (q;q)_n.
// Exact at every truncation degree, unlike any finite product of factors.
template <class K>
FormalSeries<K> pochhammer_series(const K& a, int m, const K& q, int degree) {
  FormalSeries<K> s(degree);
  s[0] = K(1);
  K qfact(1), apow(1), qtri(1), qpow(1);
  for (int n = 1; n * m <= degree; ++n) {
    qfact *= (K(1) - qpow * q);  // (q;q)_n accumulates (1-q^n)
    qpow *= q;
    apow *= a;
    if (n >= 2) qtri *= qpow / q;  // q^{n(n-1)/2} accumulates q^{n-1}
    if (is_zero(qfact)) throw PoleEncountered("pochhammer_series: (q;q)_n = 0");
    K coef = apow * qtri / qfact;
    if (n % 2 == 1) coef = -coef;
    s[n * m] = coef;
  }
  return s;
}

// Dense bivariate truncated series, used by the skew-Cauchy identity tests.
template <class K>
class FormalSeries2 {
 public:
  FormalSeries2() : d_(0), c_(1, K(0)) {}
  explicit FormalSeries2(int degree) : d_(degree), c_((degree + 1) * (degree + 1), K(0)) {}

  int degree() const { return d_; }
  const K& at(int i, int j) const { return c_[i * (d_ + 1) + j]; }
  K& at(int i, int j) { return c_[i * (d_ + 1) + j]; }

  FormalSeries2 operator+(const FormalSeries2& o) const {
    FormalSeries2 r(d_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
  }
  FormalSeries2 operator-(const FormalSeries2& o) const {
    FormalSeries2 r(d_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
  }
  FormalSeries2 operator*(const FormalSeries2& o) const {
    FormalSeries2 r(d_);
    for (int i = 0; i <= d_; ++i)
      for (int j = 0; j <= d_; ++j) {
        if (is_zero(at(i, j))) continue;
        for (int a = 0; i + a <= d_; ++a)
          for (int b = 0; j + b <= d_; ++b)
            r.at(i + a, j + b) += at(i, j) * o.at(a, b);
      }
    return r;
  }
  bool operator==(const FormalSeries2& o) const { return d_ == o.d_ && c_ == o.c_; }

  // Truncate to total degree <= d (zero out the rest), for comparisons where
  // only total degree is controlled.
  FormalSeries2 total_truncated(int d) const {
    FormalSeries2 r(d_);
    for (int i = 0; i <= d_; ++i)
      for (int j = 0; j <= d_; ++j)
        if (i + j <= d) r.at(i, j) = at(i, j);
    return r;
  }

 private:
  int d_;
  std::vector<K> c_;
};

template <class K>
FormalSeries2<K> monomial2(int i, int j, const K& v, int degree) {
  FormalSeries2<K> s(degree);
  if (i <= degree && j <= degree) s.at(i, j) = v;
  return s;
}

}  // namespace ryd
