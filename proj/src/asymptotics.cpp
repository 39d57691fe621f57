#include "ryd/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>

namespace ryd {
namespace {

constexpr double kPi = 3.14159265358979323846;

double dist_rel(double a, double b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

// ---------------------------------------------------------------------------
// G-factor evaluation
// ---------------------------------------------------------------------------

// One Mobius ratio of the ">chi" family: (1 - a/(w tau)) / (1 - b/(w tau)),
// with a finite limit a/b at w = 0. The "+" variant serves the R column kind.
Cpx gt_ratio(Cpx w, double tau, double a, double b, double sign) {
  if (std::abs(w) == 0.0) return Cpx(a / b, 0.0);
  Cpx num = 1.0 + sign * a / (w * tau);
  Cpx den = 1.0 + sign * b / (w * tau);
  if (std::abs(den) < 1e-14 * (1.0 + std::abs(num))) {
    throw PoleHit("limit G factor evaluated at one of its poles");
  }
  return num / den;
}

// One ratio of the "<chi" family: (1 - w a tau) / (1 - w b tau); equals 1 at
// w = 0.
Cpx lt_ratio(Cpx w, double tau, double a, double b, double sign) {
  Cpx num = 1.0 + sign * w * a * tau;
  Cpx den = 1.0 + sign * w * b * tau;
  if (std::abs(den) < 1e-14 * (1.0 + std::abs(num))) {
    throw PoleHit("limit G factor evaluated at one of its poles");
  }
  return num / den;
}

}  // namespace

void AsymptoticProfile::check() const {
  if (n < 1 || m < 1) throw std::invalid_argument("profile: need n,m >= 1");
  if (static_cast<int>(V.size()) != m + 1) {
    throw std::invalid_argument("profile: V must have m+1 entries");
  }
  for (int p = 0; p < m; ++p) {
    if (!(V[p] < V[p + 1])) {
      throw std::invalid_argument("profile: V must be strictly increasing");
    }
  }
  if (static_cast<int>(tau.size()) != n ||
      static_cast<int>(a.size()) != n ||
      static_cast<int>(b.size()) != m) {
    throw std::invalid_argument("profile: tau/a need n entries, b needs m rows");
  }
  for (double t : tau) {
    if (!(t > 0.0)) throw std::invalid_argument("profile: tau must be positive");
  }
  for (const auto& row : b) {
    if (static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("profile: each b row needs n entries");
    }
  }
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("profile: alpha, beta must be positive");
  }
  if (u < 0.0 || v < 0.0 || u * v >= 1.0) {
    throw std::invalid_argument("profile: need u,v >= 0 and uv < 1");
  }
}

bool AsymptoticProfile::all_left() const {
  for (LR k : a) {
    if (k != LR::L) return false;
  }
  return true;
}

bool AsymptoticProfile::event(int j, int p, int which, LR side) const {
  if (a[j - 1] != side) return false;
  Sign s = b[p - 1][j - 1];
  return which == 1 ? s == Sign::Minus : s == Sign::Plus;
}

Cpx g_factor(GKind which, const AsymptoticProfile& prof, double chi, Cpx w) {
  Cpx out(1.0, 0.0);
  const bool right = (which == GKind::GtR || which == GKind::LtR);
  const double sign = right ? 1.0 : -1.0;
  const LR side = right ? LR::R : LR::L;
  if (which == GKind::GtL || which == GKind::GtR) {
    for (int p = 1; p <= prof.m; ++p) {
      if (!(prof.V[p] > chi)) continue;
      double ztop = std::exp(prof.V[p]);
      double zcut = std::exp(std::max(prof.V[p - 1], chi));
      // The L ratio puts e^{V_p} on top; the R ratio is written upside down.
      double znum = right ? zcut : ztop;
      double zden = right ? ztop : zcut;
      for (int j = 1; j <= prof.n; ++j) {
        if (!prof.event(j, p, 1, side)) continue;
        Cpx fac = gt_ratio(w, prof.tau[j - 1], znum, zden, sign);
        out *= right ? std::pow(fac, prof.alpha) : fac;
      }
    }
  } else {
    for (int p = 1; p <= prof.m; ++p) {
      if (!(prof.V[p - 1] < chi)) continue;
      double zbot = std::exp(-prof.V[p - 1]);
      double zcut = std::exp(-std::min(prof.V[p], chi));
      double znum = right ? zcut : zbot;
      double zden = right ? zbot : zcut;
      for (int j = 1; j <= prof.n; ++j) {
        if (!prof.event(j, p, 0, side)) continue;
        Cpx fac = lt_ratio(w, prof.tau[j - 1], znum, zden, sign);
        out *= right ? std::pow(fac, prof.alpha) : fac;
      }
    }
  }
  return out;
}

Cpx g_chi(const AsymptoticProfile& prof, double chi, Cpx w) {
  Cpx left = g_factor(GKind::GtL, prof, chi, w) *
             g_factor(GKind::LtL, prof, chi, w);
  Cpx right = g_factor(GKind::GtR, prof, chi, w) *
              g_factor(GKind::LtR, prof, chi, w);
  return left * std::pow(right, prof.alpha);
}

namespace {

// G evaluated at a scaled argument s*w. A non-finite scale only ever reaches
// the ">" families (whose value at infinity is 1) and a zero scale only the
// "<" families (value 1 at the origin), so both degenerate to 1.
Cpx g_scaled(GKind which, const AsymptoticProfile& prof, double chi,
             double scale, Cpx w) {
  if (!std::isfinite(scale) || scale == 0.0) return Cpx(1.0, 0.0);
  return g_factor(which, prof, chi, scale * w);
}

}  // namespace

Cpx f_uvk(const AsymptoticProfile& prof, int k, Cpx w) {
  if (k < 1) throw std::invalid_argument("f_uvk: k must be >= 1");
  const double u = prof.u, v = prof.v;
  const double s1 = std::pow(u, -2.0 * k) * std::pow(v, -2.0 * k);
  const double s2 = std::pow(u, 2.0 * k) * std::pow(v, 2.0 * k);
  const double s3 = std::pow(u, 2.0 - 2.0 * k) * std::pow(v, -2.0 * k);
  const double s4 = std::pow(u, 2.0 * k) * std::pow(v, 2.0 * k - 2.0);
  const double v0 = prof.V.front(), vm = prof.V.back();
  Cpx out = g_scaled(GKind::GtL, prof, v0, s1, w) *
            g_scaled(GKind::LtL, prof, vm, s2, w) *
            g_scaled(GKind::GtL, prof, v0, s3, w) *
            g_scaled(GKind::LtL, prof, vm, s4, w);
  Cpx rpair = g_scaled(GKind::GtR, prof, v0, s1, w) *
              g_scaled(GKind::LtR, prof, vm, s2, w) *
              g_scaled(GKind::GtR, prof, v0, s3, w) *
              g_scaled(GKind::LtR, prof, vm, s4, w);
  return out * std::pow(rpair, prof.alpha);
}

// ---------------------------------------------------------------------------
// Zero/pole bookkeeping and the cleared master polynomial (all-L profiles)
// ---------------------------------------------------------------------------

namespace {

struct FactorSet {
  std::vector<double> zeros;
  std::vector<double> poles;
  double c = 1.0;  // constant so that the product equals c * N(w) / D(w)
};

void push_gt(FactorSet& f, const AsymptoticProfile& prof, double chi,
             double scale) {
  if (!std::isfinite(scale) || scale == 0.0) return;
  for (int p = 1; p <= prof.m; ++p) {
    if (!(prof.V[p] > chi)) continue;
    double lo = std::max(prof.V[p - 1], chi);
    for (int j = 1; j <= prof.n; ++j) {
      if (!prof.event(j, p, 1, LR::L)) continue;
      f.zeros.push_back(std::exp(prof.V[p]) / (scale * prof.tau[j - 1]));
      f.poles.push_back(std::exp(lo) / (scale * prof.tau[j - 1]));
    }
  }
}

void push_lt(FactorSet& f, const AsymptoticProfile& prof, double chi,
             double scale) {
  if (!std::isfinite(scale) || scale == 0.0) return;
  for (int p = 1; p <= prof.m; ++p) {
    if (!(prof.V[p - 1] < chi)) continue;
    double hi = std::min(prof.V[p], chi);
    for (int j = 1; j <= prof.n; ++j) {
      if (!prof.event(j, p, 0, LR::L)) continue;
      f.zeros.push_back(std::exp(prof.V[p - 1]) / (scale * prof.tau[j - 1]));
      f.poles.push_back(std::exp(hi) / (scale * prof.tau[j - 1]));
      f.c *= std::exp(hi - prof.V[p - 1]);
    }
  }
}

// All linear factors of G_chi(w) prod_{k<=K} F_{u,v,k}(w) for an all-L
// profile, as c * prod (w - zero) / prod (w - pole).
FactorSet collect_factors(const AsymptoticProfile& prof, double chi, int K) {
  FactorSet f;
  push_gt(f, prof, chi, 1.0);
  push_lt(f, prof, chi, 1.0);
  const double u = prof.u, v = prof.v;
  for (int k = 1; k <= K; ++k) {
    push_gt(f, prof, prof.V.front(), std::pow(u, -2.0 * k) * std::pow(v, -2.0 * k));
    push_lt(f, prof, prof.V.back(), std::pow(u, 2.0 * k) * std::pow(v, 2.0 * k));
    push_gt(f, prof, prof.V.front(), std::pow(u, 2.0 - 2.0 * k) * std::pow(v, -2.0 * k));
    push_lt(f, prof, prof.V.back(), std::pow(u, 2.0 * k) * std::pow(v, 2.0 * k - 2.0));
  }
  return f;
}

// Cancel coinciding zero/pole pairs (the set-minus semantics of the ledger).
void prune(FactorSet& f) {
  std::sort(f.zeros.begin(), f.zeros.end());
  std::sort(f.poles.begin(), f.poles.end());
  std::vector<double> z2, p2;
  std::size_t i = 0, j = 0;
  while (i < f.zeros.size() && j < f.poles.size()) {
    if (dist_rel(f.zeros[i], f.poles[j]) < 1e-11) {
      ++i;
      ++j;
    } else if (f.zeros[i] < f.poles[j]) {
      z2.push_back(f.zeros[i++]);
    } else {
      p2.push_back(f.poles[j++]);
    }
  }
  z2.insert(z2.end(), f.zeros.begin() + i, f.zeros.end());
  p2.insert(p2.end(), f.poles.begin() + j, f.poles.end());
  f.zeros = std::move(z2);
  f.poles = std::move(p2);
}

std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] *= -r;
  }
  return c;  // ascending coefficients
}

Cpx poly_eval(const std::vector<double>& c, Cpx w) {
  Cpx acc(0.0, 0.0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * w + c[i];
  return acc;
}

Cpx poly_eval_deriv(const std::vector<double>& c, Cpx w) {
  Cpx acc(0.0, 0.0);
  for (std::size_t i = c.size(); i-- > 1;) {
    acc = acc * w + static_cast<double>(i) * c[i];
  }
  return acc;
}

// All roots of a real polynomial by the Durand-Kerner iteration, with a few
// Newton polish steps per root at the end.
std::vector<Cpx> poly_roots(std::vector<double> c) {
  double scale = 0.0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) throw std::invalid_argument("poly_roots: zero polynomial");
  while (c.size() > 1 && std::abs(c.back()) < 1e-13 * scale) c.pop_back();
  std::size_t d = c.size() - 1;
  std::vector<Cpx> z(d);
  if (d == 0) return z;
  double r0 = 1.0 + std::pow(std::abs(c[0] / c[d]), 1.0 / static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k) {
    double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(d) + 0.7;
    z[k] = r0 * Cpx(std::cos(th), std::sin(th));
  }
  for (int it = 0; it < 800; ++it) {
    double worst = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      Cpx num = poly_eval(c, z[k]) / c[d];
      Cpx den(1.0, 0.0);
      for (std::size_t j = 0; j < d; ++j) {
        if (j != k) den *= z[k] - z[j];
      }
      Cpx step = num / den;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[k])));
    }
    if (worst < 1e-14) break;
  }
  for (std::size_t k = 0; k < d; ++k) {
    for (int it = 0; it < 6; ++it) {
      Cpx dp = poly_eval_deriv(c, z[k]);
      if (std::abs(dp) < 1e-300) break;
      z[k] -= poly_eval(c, z[k]) / dp;
    }
  }
  return z;
}

// Value of c * prod z / prod p, i.e. the product at w = 0 (all factor pairs
// of the all-L product are finite and positive there).
double product_at_zero(const FactorSet& f) {
  double val = f.c;
  for (double z : f.zeros) val *= z;
  for (double p : f.poles) val /= p;
  return val;
}

}  // namespace

PoleZeroLedger pole_zero_ledger(const AsymptoticProfile& prof, double chi,
                                int K) {
  prof.check();
  PoleZeroLedger led;
  FactorSet in;  // the families whose poles the contour must enclose
  push_gt(in, prof, chi, 1.0);
  const double u = prof.u, v = prof.v;
  for (int k = 1; k <= K; ++k) {
    push_gt(in, prof, prof.V.front(), std::pow(u, -2.0 * k) * std::pow(v, -2.0 * k));
    push_gt(in, prof, prof.V.front(), std::pow(u, 2.0 - 2.0 * k) * std::pow(v, -2.0 * k));
  }
  prune(in);
  led.mandated = in.poles;
  led.mandated_zeros = in.zeros;
  FactorSet out;  // the families the contour must leave outside
  push_lt(out, prof, chi, 1.0);
  for (int k = 1; k <= K; ++k) {
    push_lt(out, prof, prof.V.back(), std::pow(u, 2.0 * k) * std::pow(v, 2.0 * k));
    push_lt(out, prof, prof.V.back(), std::pow(u, 2.0 * k) * std::pow(v, 2.0 * k - 2.0));
  }
  led.forbidden = out.poles;
  led.forbidden.insert(led.forbidden.end(), out.zeros.begin(), out.zeros.end());
  std::sort(led.mandated.begin(), led.mandated.end());
  std::sort(led.mandated_zeros.begin(), led.mandated_zeros.end());
  std::sort(led.forbidden.begin(), led.forbidden.end());
  return led;
}

ProfileReport profile_check(const AsymptoticProfile& prof, double chi, int K) {
  prof.check();
  ProfileReport rep;
  if (!prof.all_left()) {
    rep.violations.push_back("limit theorems require an all-L column pattern");
    return rep;
  }
  auto dup_check = [&rep](const std::vector<double>& xs, const char* name) {
    std::vector<double> s = xs;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (dist_rel(s[i - 1], s[i]) < 1e-11) {
        std::ostringstream os;
        os << "coinciding points in the " << name << " family near " << s[i];
        rep.violations.push_back(os.str());
        return;
      }
    }
  };
  PoleZeroLedger led = pole_zero_ledger(prof, chi, K);
  dup_check(led.mandated, "mandated pole");
  dup_check(led.mandated_zeros, "mandated-side zero");
  dup_check(led.forbidden, "forbidden");
  // Alternation: strictly between consecutive mandated poles there must be
  // exactly one mandated-side zero.
  if (led.mandated.size() >= 2 &&
      led.mandated_zeros.size() + 1 >= led.mandated.size()) {
    for (std::size_t i = 1; i < led.mandated.size(); ++i) {
      double lo = led.mandated[i - 1], hi = led.mandated[i];
      int cnt = 0;
      for (double z : led.mandated_zeros) {
        if (z > lo && z < hi) ++cnt;
      }
      if (cnt != 1) {
        std::ostringstream os;
        os << "mandated poles and zeros fail to alternate in (" << lo << ", "
           << hi << ")";
        rep.violations.push_back(os.str());
        break;
      }
    }
  }
  // Ordering constants: everything on the mandated side must sit strictly
  // below everything on the forbidden side.
  if (!led.forbidden.empty()) {
    double inner = 0.0;
    for (double x : led.mandated) inner = std::max(inner, x);
    for (double x : led.mandated_zeros) inner = std::max(inner, x);
    double outer = led.forbidden.front();
    if (!(inner < outer)) {
      std::ostringstream os;
      os << "mandated side reaches " << inner
         << " which is not below the forbidden side at " << outer;
      rep.violations.push_back(os.str());
    }
  }
  // Weight inequalities. A descending segment p1 at or above an ascending
  // segment p2 needs the two-sided gap bound on the period weights, and free
  // boundaries additionally bound max{u, v} through every active pair.
  for (int p1 = 1; p1 <= prof.m; ++p1) {
    for (int j1 = 1; j1 <= prof.n; ++j1) {
      if (!prof.event(j1, p1, 1, LR::L)) continue;
      for (int p2 = 1; p2 <= p1; ++p2) {
        for (int j2 = 1; j2 <= prof.n; ++j2) {
          if (!prof.event(j2, p2, 0, LR::L)) continue;
          double ratio = prof.tau[j2 - 1] / prof.tau[j1 - 1];
          if (!(ratio < std::exp(prof.V[p2] - prof.V[p1 - 1])) ||
              !(ratio < std::exp(prof.V[p2 - 1] - prof.V[p1]))) {
            std::ostringstream os;
            os << "descending segment " << p1 << " above ascending segment "
               << p2 << " violates the weight gap bound";
            rep.violations.push_back(os.str());
          }
        }
      }
    }
  }
  double uv = std::max(prof.u, prof.v);
  if (uv > 0.0) {
    for (int p1 = 1; p1 <= prof.m; ++p1) {
      for (int j1 = 1; j1 <= prof.n; ++j1) {
        bool act1 = prof.event(j1, p1, 1, LR::L) || prof.event(j1, p1, 0, LR::L);
        if (!act1) continue;
        for (int p2 = p1 + 1; p2 <= prof.m; ++p2) {
          for (int j2 = 1; j2 <= prof.n; ++j2) {
            bool act2 =
                prof.event(j2, p2, 1, LR::L) || prof.event(j2, p2, 0, LR::L);
            if (!act2) continue;
            double bound = std::exp(prof.V[p2 - 1] - prof.V[p1]) *
                           prof.tau[j1 - 1] / prof.tau[j2 - 1];
            if (!(uv < bound)) {
              std::ostringstream os;
              os << "free-boundary weight max{u,v} = " << uv
                 << " reaches the gap bound " << bound << " between segments "
                 << p1 << " and " << p2;
              rep.violations.push_back(os.str());
            }
          }
        }
      }
    }
  }
  return rep;
}

namespace {

std::vector<double> master_poly(const FactorSet& f, double s) {
  std::vector<double> num = poly_from_roots(f.zeros);
  std::vector<double> den = poly_from_roots(f.poles);
  std::size_t sz = std::max(num.size(), den.size());
  std::vector<double> poly(sz, 0.0);
  for (std::size_t i = 0; i < num.size(); ++i) poly[i] += f.c * num[i];
  for (std::size_t i = 0; i < den.size(); ++i) poly[i] -= s * den[i];
  return poly;
}

// Roots of c N(w) - s D(w) = 0 for the depth-K truncation.
std::vector<Cpx> master_roots(const AsymptoticProfile& prof, double chi,
                              double s, int K) {
  FactorSet f = collect_factors(prof, chi, K);
  prune(f);
  return poly_roots(master_poly(f, s));
}

// Number of roots on the negative real axis among those attached to the
// mandated poles. Each root w_xi is defined by continuation from s = infinity
// (where it sits at its pole), so track the root set down a geometric ladder
// in s with warm-started Newton steps.
int negative_mandated_roots(const FactorSet& f,
                            const std::vector<double>& mandated, double s) {
  if (mandated.empty() || f.poles.empty()) return 0;
  double s_top = std::max(s, std::max(f.c, 1.0)) * 1e9;
  std::vector<Cpx> z(f.poles.begin(), f.poles.end());
  std::vector<bool> is_mandated(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (double m : mandated) {
      if (dist_rel(f.poles[i], m) < 1e-9) is_mandated[i] = true;
    }
  }
  int steps = 160;
  double ratio = std::pow(s / s_top, 1.0 / steps);
  double cur = s_top;
  for (int t = 0; t <= steps; ++t) {
    std::vector<double> poly = master_poly(f, cur);
    for (std::size_t i = 0; i < z.size(); ++i) {
      for (int it = 0; it < 30; ++it) {
        Cpx dp = poly_eval_deriv(poly, z[i]);
        if (std::abs(dp) < 1e-300) break;
        Cpx step = poly_eval(poly, z[i]) / dp;
        z[i] -= step;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(z[i]))) break;
      }
    }
    cur *= ratio;
  }
  int neg = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (is_mandated[i] && std::abs(z[i].imag()) < 1e-7 * (1.0 + std::abs(z[i])) &&
        z[i].real() < 0.0) {
      ++neg;
    }
  }
  return neg;
}

// Upper-half-plane nonreal roots, sorted by imaginary part (descending).
std::vector<Cpx> upper_roots(const std::vector<Cpx>& roots) {
  std::vector<Cpx> up;
  for (Cpx z : roots) {
    if (z.imag() > 1e-7 * (1.0 + std::abs(z))) up.push_back(z);
  }
  std::sort(up.begin(), up.end(),
            [](Cpx a, Cpx b) { return a.imag() > b.imag(); });
  return up;
}

// Depth at which the remaining reflected factors are numerically exhausted.
bool depth_exhausted(const AsymptoticProfile& prof, int K) {
  if (prof.u == 0.0 || prof.v == 0.0) return K >= 2;
  double probe = std::exp(0.5 * (prof.V.front() + prof.V.back()));
  return std::abs(f_uvk(prof, K + 1, Cpx(probe, 0.0)) - 1.0) < 1e-13;
}

}  // namespace

RootReport solve_master(const AsymptoticProfile& prof, double chi,
                        double kappa, int K) {
  prof.check();
  if (!prof.all_left()) {
    throw std::invalid_argument(
        "solve_master: the master equation clears to a polynomial only for "
        "all-L profiles");
  }
  const double s = std::exp(-static_cast<double>(prof.n) * kappa);
  RootReport rep;
  Cpx prev_wp(std::numeric_limits<double>::quiet_NaN(), 0.0);
  bool have_prev = false;
  int depth = std::max(K, 1);
  for (int round = 0; round < 64; ++round, ++depth) {
    rep.roots = master_roots(prof, chi, s, depth);
    std::vector<Cpx> up = upper_roots(rep.roots);
    rep.conjugate_pair = (up.size() == 1);
    rep.K = depth;
    if (!up.empty()) {
      rep.w_plus = up.front();
      if (have_prev && std::abs(rep.w_plus - prev_wp) < 1e-10) {
        rep.stable = true;
        return rep;
      }
      prev_wp = rep.w_plus;
      have_prev = true;
    } else {
      rep.w_plus = Cpx(std::numeric_limits<double>::quiet_NaN(), 0.0);
      have_prev = false;
    }
    if (depth_exhausted(prof, depth)) {
      rep.stable = true;
      return rep;
    }
  }
  throw NoConvergenceInK(
      "solve_master: upper root did not stabilize within the depth cap");
}

double limit_shape_slope(const AsymptoticProfile& prof, double chi,
                         double kappa) {
  RootReport rep = solve_master(prof, chi, kappa);
  if (rep.conjugate_pair) {
    double arg = std::arg(rep.w_plus);  // in (0, pi) for an upper root
    return 2.0 / prof.alpha - 2.0 * arg / (kPi * prof.alpha);
  }
  // All roots real: the slope is (2/alpha) [indicator - #negative tracked
  // roots], which evaluates to 0 or 2/alpha.
  FactorSet f = collect_factors(prof, chi, rep.K);
  prune(f);
  double g0 = product_at_zero(f);
  double s = std::exp(-static_cast<double>(prof.n) * kappa);
  int ind = g0 > s ? 1 : 0;
  int neg = negative_mandated_roots(
      f, pole_zero_ledger(prof, chi, rep.K).mandated, s);
  int val = ind - neg;
  return val > 0 ? 2.0 / prof.alpha : 0.0;
}

RegionClass classify_point(const AsymptoticProfile& prof, double chi,
                           double kappa) {
  RootReport rep = solve_master(prof, chi, kappa);
  if (rep.conjugate_pair) return RegionClass::Liquid;
  // A near-double real root marks the frozen boundary itself.
  std::vector<double> re;
  for (Cpx z : rep.roots) {
    if (std::abs(z.imag()) <= 1e-7 * (1.0 + std::abs(z))) re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  for (std::size_t i = 1; i < re.size(); ++i) {
    if (dist_rel(re[i - 1], re[i]) < 1e-7) return RegionClass::Boundary;
  }
  FactorSet f = collect_factors(prof, chi, rep.K);
  prune(f);
  double g0 = product_at_zero(f);
  double s = std::exp(-static_cast<double>(prof.n) * kappa);
  if (std::abs(std::log(g0 / s)) < 1e-10) return RegionClass::Boundary;
  int ind = g0 > s ? 1 : 0;
  int neg = negative_mandated_roots(
      f, pole_zero_ledger(prof, chi, rep.K).mandated, s);
  return ind - neg > 0 ? RegionClass::FrozenFull : RegionClass::FrozenZero;
}

double limit_height(const AsymptoticProfile& prof, double chi, double kappa,
                    double kappa_floor) {
  if (kappa <= kappa_floor) return 0.0;
  // Composite Simpson on the slope, which is continuous and bounded.
  int steps = std::max(16, static_cast<int>((kappa - kappa_floor) / 0.02));
  if (steps % 2 == 1) ++steps;
  double h = (kappa - kappa_floor) / steps;
  double acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    double k = kappa_floor + i * h;
    double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * limit_shape_slope(prof, chi, k);
  }
  return acc * h / 3.0;
}

std::vector<FrozenPoint> frozen_boundary(const AsymptoticProfile& prof,
                                         const std::vector<double>& w_grid) {
  prof.check();
  if (!prof.all_left()) {
    throw std::invalid_argument("frozen_boundary: requires an all-L profile");
  }
  const int K = depth_exhausted(prof, 2) ? 2 : 8;
  std::vector<FrozenPoint> out;
  auto logderiv = [&](double chi, double w) {
    FactorSet f = collect_factors(prof, chi, K);
    prune(f);
    double acc = 0.0;
    for (double z : f.zeros) acc += 1.0 / (w - z);
    for (double p : f.poles) acc -= 1.0 / (w - p);
    return acc;
  };
  auto product_at = [&](double chi, double w) {
    FactorSet f = collect_factors(prof, chi, K);
    prune(f);
    double val = f.c;
    for (double z : f.zeros) val *= (w - z);
    for (double p : f.poles) val /= (w - p);
    return val;
  };
  const double lo = prof.V.front(), hi = prof.V.back();
  const int grid = 400;
  for (double w : w_grid) {
    std::vector<double> chis;
    double prev_chi = 0.0, prev_phi = 0.0;
    bool have = false;
    for (int i = 1; i < grid; ++i) {
      double chi = lo + (hi - lo) * i / grid;
      bool bad = false;
      for (double vp : prof.V) {
        if (std::abs(chi - vp) < 1e-6) bad = true;
      }
      // The chi-dependent pole e^chi / tau_j sweeps past w; the stationarity
      // function jumps there, so split branches at those chi.
      for (double t : prof.tau) {
        if (w > 0.0 && std::abs(chi - std::log(w * t)) < 2e-3 * (hi - lo)) {
          bad = true;
        }
      }
      if (bad) {
        have = false;
        continue;
      }
      double phi;
      try {
        phi = logderiv(chi, w);
      } catch (const PoleHit&) {
        have = false;
        continue;
      }
      if (have && phi * prev_phi < 0.0) {
        double a = prev_chi, fa = prev_phi, b = chi;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (a + b);
          double fm = logderiv(mid, w);
          if (fm == 0.0 || (b - a) < 1e-13) {
            a = b = mid;
            break;
          }
          if (fm * fa < 0.0) {
            b = mid;
          } else {
            a = mid;
            fa = fm;
          }
        }
        chis.push_back(0.5 * (a + b));
      }
      prev_chi = chi;
      prev_phi = phi;
      have = true;
    }
    for (double chi : chis) {
      double val = product_at(chi, w);
      if (!(val > 0.0)) continue;  // no frozen-boundary point on this branch
      double kappa = -std::log(val) / prof.n;
      // Double-root certificate: w must be a root of the cleared polynomial
      // together with its derivative.
      FactorSet f = collect_factors(prof, chi, K);
      prune(f);
      std::vector<double> num = poly_from_roots(f.zeros);
      std::vector<double> den = poly_from_roots(f.poles);
      double s = std::exp(-static_cast<double>(prof.n) * kappa);
      std::size_t sz = std::max(num.size(), den.size());
      std::vector<double> poly(sz, 0.0);
      for (std::size_t i = 0; i < num.size(); ++i) poly[i] += f.c * num[i];
      for (std::size_t i = 0; i < den.size(); ++i) poly[i] -= s * den[i];
      double sc = 0.0;
      for (double cc : poly) sc = std::max(sc, std::abs(cc));
      double wsc = std::max(1.0, std::abs(w));
      double resid = std::abs(poly_eval(poly, Cpx(w, 0.0))) /
                     (sc * std::pow(wsc, static_cast<double>(sz - 1)));
      double dresid = std::abs(poly_eval_deriv(poly, Cpx(w, 0.0))) /
                      (sc * sz * std::pow(wsc, static_cast<double>(sz - 2)));
      if (resid > 1e-8 || dresid > 1e-8) continue;
      out.push_back({w, chi, kappa});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contour integrals of powers of the limit product
// ---------------------------------------------------------------------------

namespace {

// (1/2 pi i) oint [G_chi prod F]^gamma dw / w with continuous branch tracking
// along the circle, anchored on the positive real axis.
Cpx power_circle_integral(const AsymptoticProfile& prof, double chi,
                          double gamma, const ContourSpec& contour, int K) {
  Cpx prev_est(0.0, 0.0);
  bool have_prev = false;
  for (int M = std::max(contour.nodes, 16); M <= 1 << 16; M *= 2) {
    std::vector<Cpx> base(M);
    bool resolved = true;
    for (int j = 0; j < M; ++j) {
      double th = 2.0 * kPi * j / M;
      Cpx w = contour.center + contour.radius * Cpx(std::cos(th), std::sin(th));
      Cpx val = g_chi(prof, chi, w);
      for (int k = 1; k <= K; ++k) val *= f_uvk(prof, k, w);
      base[j] = val;
      if (std::abs(val) < 1e-300) {
        throw ContourCrossesSingularity(
            "limit integrand vanishes on the contour");
      }
    }
    // Continuous logarithm around the loop.
    std::vector<Cpx> lg(M);
    lg[0] = std::log(base[0]);
    double total_turn = 0.0;
    for (int j = 1; j <= M; ++j) {
      Cpx ratio = base[j % M] / base[j - 1];
      Cpx step = std::log(ratio);
      if (std::abs(step.imag()) > 2.0) {
        resolved = false;
        break;
      }
      if (j < M) lg[j] = lg[j - 1] + step;
      total_turn += step.imag();
    }
    if (!resolved) {
      have_prev = false;
      continue;
    }
    if (std::abs(total_turn) > 1e-6) {
      throw ContourCrossesSingularity(
          "limit product winds around zero on the contour; the power has no "
          "single-valued branch there");
    }
    Cpx acc(0.0, 0.0);
    for (int j = 0; j < M; ++j) {
      double th = 2.0 * kPi * j / M;
      Cpx e(std::cos(th), std::sin(th));
      Cpx w = contour.center + contour.radius * e;
      acc += std::exp(gamma * lg[j]) * (contour.radius * e / w);
    }
    Cpx est = acc / static_cast<double>(M);
    if (have_prev && std::abs(est - prev_est) < 1e-9 * (1.0 + std::abs(est))) {
      return est;
    }
    prev_est = est;
    have_prev = true;
  }
  throw QuadratureNotConverged(
      "limit contour integral failed to converge under node doubling");
}

}  // namespace

ContourSpec auto_limit_contour(const AsymptoticProfile& prof, double chi,
                               int K) {
  PoleZeroLedger led = pole_zero_ledger(prof, chi, K);
  double inner = 0.0;
  for (double x : led.mandated) inner = std::max(inner, x);
  for (double x : led.mandated_zeros) inner = std::max(inner, x);
  double outer = led.forbidden.empty()
                     ? std::numeric_limits<double>::infinity()
                     : led.forbidden.front();
  if (!(inner < outer)) {
    throw ContourCrossesSingularity(
        "no circle separates the mandated points from the forbidden ones");
  }
  ContourSpec c;
  if (!std::isfinite(outer)) {
    c.radius = inner > 0.0 ? 2.0 * inner : 1.0;
  } else if (inner == 0.0) {
    c.radius = 0.5 * outer;
  } else {
    c.radius = std::sqrt(inner * outer);
  }
  return c;
}

double expect_gamma_limit(const AsymptoticProfile& prof, double chi,
                          const ContourSpec& contour, int K) {
  prof.check();
  return power_circle_integral(prof, chi, prof.beta, contour, K).real();
}

double laplace_limit(const AsymptoticProfile& prof, double chi, double gamma,
                     const ContourSpec& contour, int K) {
  prof.check();
  if (gamma == 0.0) throw std::invalid_argument("laplace_limit: gamma != 0");
  Cpx mean = power_circle_integral(prof, chi, gamma, contour, K);
  double pref = 2.0 / (static_cast<double>(prof.n) * prof.n * prof.alpha *
                       gamma * gamma);
  return pref * mean.real();
}

PochhammerComparison pochhammer_ratio_asym(double z, double eps, double alpha,
                                           int N) {
  if (!(eps > 0.0) || N < 1) {
    throw std::invalid_argument("pochhammer_ratio_asym: need eps > 0, N >= 1");
  }
  // The estimate breaks down near the cut [1, inf); refuse that neighborhood.
  double dist = z >= 1.0 ? 0.0 : 1.0 - z;
  if (dist <= 0.05) {
    throw ExcludedRegion(
        "pochhammer_ratio_asym: z too close to the cut [1, inf)");
  }
  PochhammerComparison cmp;
  double exact = 1.0;
  double shift = std::exp(-eps * alpha);
  for (int i = 0; i < N; ++i) {
    double zi = z * std::exp(-eps * i);
    exact *= (1.0 - zi) / (1.0 - shift * zi);
  }
  cmp.exact = exact;
  cmp.asym =
      std::pow((1.0 - z) / (1.0 - std::exp(-eps * N) * z), alpha);
  cmp.defect = std::abs(cmp.exact - cmp.asym);
  return cmp;
}

}  // namespace ryd
