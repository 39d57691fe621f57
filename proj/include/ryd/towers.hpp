#pragma once

// Numeric towers. All algebraic code is templated on the coefficient field K:
//   Rat  -- exact rational arithmetic, used for identity tests and oracles
//   Cpx  -- complex double, used for quadrature and asymptotics
// Keeping one code path for both towers is deliberate: the exact tower proves
// the identities, the float tower reuses the identical formulas.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ryd {

// Expression templates are disabled so Rat behaves like a plain value type in
// templated code (deduction against K would otherwise see proxy types).
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using Cpx = std::complex<double>;

struct PoleEncountered : std::runtime_error {
  explicit PoleEncountered(const std::string& what) : std::runtime_error(what) {}
};

struct CellOutsideDiagram : std::runtime_error {
  explicit CellOutsideDiagram(const std::string& what) : std::runtime_error(what) {}
};

struct SeriesPoleAtZero : std::runtime_error {
  explicit SeriesPoleAtZero(const std::string& what) : std::runtime_error(what) {}
};

// x^n for integer n (n may be negative; x must then be invertible).
template <class K>
K pow_int(const K& x, long n) {
  if (n < 0) {
    if (x == K(0)) throw PoleEncountered("pow_int: negative power of zero");
    return K(1) / pow_int(x, -n);
  }
  K r(1), b = x;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Cpx& x) { return x == Cpx(0.0, 0.0); }

inline double to_double(const Rat& x) { return static_cast<double>(x); }
inline double to_double(const Cpx& x) { return x.real(); }

// (q,t) parameter pack. jack_alpha and the (n, beta, eps) scaling block are
// optional metadata used by the asymptotic layer; the algebra only reads q, t.
template <class K>
struct QTParams {
  K q{};
  K t{};
  double jack_alpha = 0.0;  // 0 = unset; otherwise q = t^alpha
  int scaling_n = 0;        // 0 = unset
  double scaling_beta = 0.0;
  double scaling_eps = 0.0;
};

}  // namespace ryd
