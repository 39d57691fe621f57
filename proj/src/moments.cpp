#include "ryd/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ryd/theta.hpp"

namespace ryd {

namespace {

Cpx cpx(double x) { return Cpx(x, 0.0); }

QTParams<Cpx> to_cpx(const QTParams<double>& qt) {
  return {cpx(qt.q), cpx(qt.t)};
}

ThetaFamily family_of(FreeMarker c) {
  switch (c) {
    case FreeMarker::El: return ThetaFamily::El;
    case FreeMarker::Oa: return ThetaFamily::Oa;
    case FreeMarker::DeEl: return ThetaFamily::DeEl;
    default: return ThetaFamily::EOa;
  }
}

// Bare single-variable G factors, first index L (the insertion letter),
// second index the letter of column j.
Cpx g1_fac(LR d, Cpx w, Cpx x, const QTParams<Cpx>& qt) {
  if (d == LR::L) return (w - qt.q * x / qt.t) / (w - qt.q * x);
  return (qt.t * w + qt.q * qt.q * x) / (qt.t * w + qt.q * x);
}

Cpx g0_fac(LR d, Cpx w, Cpx x, const QTParams<Cpx>& qt) {
  if (d == LR::L) return (qt.q - w * x) / (qt.q - qt.t * w * x);
  return (Cpx(1.0) + w * x) / (Cpx(1.0) + w * x / qt.q);
}

// rho_2(w): letters {q^2/(tw), (-1)* q/(tw)}; rho_3(w): {w, (-1)* w/q};
// both scaled by y.
Specialization<Cpx> rho2_scaled(Cpx w, Cpx y, const QTParams<Cpx>& qt) {
  Specialization<Cpx> s;
  s.add(y * qt.q * qt.q / (qt.t * w));
  s.add(y * qt.q / (qt.t * w), -1);
  return s;
}

Specialization<Cpx> rho3_scaled(Cpx w, Cpx y, const QTParams<Cpx>& qt) {
  Specialization<Cpx> s;
  s.add(y * w);
  s.add(y * w / qt.q, -1);
  return s;
}

double max_letter_mod(const Specialization<Cpx>& s) {
  double m = 0.0;
  for (const auto& l : s.letters) m = std::max(m, std::abs(l.value));
  return m;
}

// One value of the full integrand (without the 1/(2 pi i w) kernel, which the
// circle average absorbs).
Cpx integrand(const RailYardSpec& spec, const BoundaryCondition& bc,
              const QTParams<Cpx>& qt, int i, Cpx w,
              const TruncationPolicy& pol) {
  Cpx val(1.0);
  // Bare factors: descending columns at or right of the insertion, ascending
  // columns strictly left of it.
  for (int j = i; j <= spec.r; ++j)
    if (spec.b(j) == Sign::Minus) val *= g1_fac(spec.a(j), w, cpx(spec.x(j)), qt);
  for (int j = spec.l; j < i; ++j)
    if (spec.b(j) == Sign::Plus) val *= g0_fac(spec.a(j), w, cpx(spec.x(j)), qt);

  if (bc.u == 0.0 && bc.v == 0.0) return val;

  ThetaFamily fl = family_of(bc.c_l), fr = family_of(bc.c_r);
  double uu = bc.u * bc.u, vv = bc.v * bc.v;
  double uvk = 1.0;  // (uv)^{2k-2}
  for (int k = 1; k <= 256; ++k) {
    // Reflected G chain. Each boundary reflection produces an image of every
    // column letter at a shifted (u,v) power; descending letters keep their
    // G_1 role at u^{2k}v^{2k} and pick up a G_0 role at u^{2k}v^{2k-2},
    // ascending letters vice versa.
    Cpx blk(1.0);
    double puv = uvk * uu * vv;      // u^{2k} v^{2k}
    double pu = uvk * uu;            // u^{2k} v^{2k-2}
    double pv = uvk * vv;            // u^{2k-2} v^{2k}
    // The split of the off-by-one uv power between the ascending and
    // descending images (pu vs pv below) was settled against the exact
    // finite-size expectations; the transposed split fails that battery.
    for (int j = spec.l; j <= spec.r; ++j) {
      Cpx x = cpx(spec.x(j));
      if (spec.b(j) == Sign::Minus) {
        blk *= g1_fac(spec.a(j), w, cpx(puv) * x, qt);
        blk *= g0_fac(spec.a(j), w, cpx(pu) * x, qt);
      } else {
        blk *= g0_fac(spec.a(j), w, cpx(puv) * x, qt);
        blk *= g1_fac(spec.a(j), w, cpx(pv) * x, qt);
      }
    }
    // Self-interaction of the insertion with its own reflection: the H cross
    // kernel of the two insertion alphabets at combined scale u^{2k} v^{2k}.
    // Only the product of the two scales enters the cross pairing, so it is
    // split evenly; the value is w-independent. Verified against the exact
    // finite-size expectations to machine precision.
    blk *= kernel_value(KernelKind::H, rho2_scaled(w, cpx(std::sqrt(puv)), qt),
                        rho3_scaled(w, cpx(std::sqrt(puv)), qt), qt);
    // Free-boundary Theta chain at the four shifted weights
    // u^{2k-2}v^{2k-1}, u^{2k-1}v^{2k}, u^{2k-1}v^{2k-2}, u^{2k}v^{2k-1}.
    // Odd powers of u pair with the left marker and odd powers of v with the
    // right one, matching the reflected chain in the partition function;
    // adjudicated against the exact finite-size expectations.
    double a_ = uvk;  // u^{2k-2} v^{2k-2}
    blk *= theta_value(fr, rho2_scaled(w, cpx(a_ * bc.v), qt), qt);
    blk *= theta_value(fl, rho2_scaled(w, cpx(a_ * bc.u * bc.v * bc.v), qt), qt);
    blk *= theta_value(fl, rho3_scaled(w, cpx(a_ * bc.u), qt), qt);
    blk *= theta_value(fr, rho3_scaled(w, cpx(a_ * bc.u * bc.u * bc.v), qt), qt);

    val *= blk;
    if (k >= pol.product_depth && std::abs(blk - Cpx(1.0)) < pol.tail_tolerance / 10)
      return val;
    uvk *= uu * vv;
  }
  throw TruncationTooCoarse("expect_gamma_contour: reflected chain not converged");
}

}  // namespace

double gamma_k(const Partition& lambda, int k, const QTParams<double>& qt) {
  if (k <= 0) throw std::invalid_argument("gamma_k: k must be positive");
  double tk = std::pow(qt.t, -k);
  double sum = 0.0;
  for (int i = 1; i <= lambda.length(); ++i)
    sum += std::pow(qt.q, double(k) * lambda.part(i)) *
           std::pow(qt.t, double(k) * (1 - i));
  return (1.0 - tk) * sum + std::pow(tk, lambda.length());
}

double expect_gamma_exact(const RailYardSpec& spec, const BoundaryCondition& bc,
                          const QTParams<double>& qt, int i, int k,
                          const TruncationPolicy& pol) {
  auto table = exact_measure(spec, bc, qt, pol);
  double e = 0.0;
  for (std::size_t s = 0; s < table.states.size(); ++s)
    e += table.prob[s] * gamma_k(table.states[s].at(spec, i), k, qt);
  return e;
}

ContourSpec auto_contour(const RailYardSpec& spec, const BoundaryCondition& bc,
                         const QTParams<double>& qt, int i) {
  // Mandated inside: poles of the bare and reflected G_1 factors; the Theta
  // letters proportional to 1/w also force a lower bound on the radius.
  // Forbidden outside: poles of the G_0 factors and |w|-growing Theta letters.
  double inside = 0.0;
  double outside = 1e308;
  for (int j = spec.l; j <= spec.r; ++j) {
    double x = spec.x(j);
    double p1 = (spec.a(j) == LR::L) ? qt.q * x : qt.q * x / qt.t;
    double p0 = (spec.a(j) == LR::L) ? qt.q / (qt.t * x) : qt.q / x;
    if (spec.b(j) == Sign::Minus && j >= i) inside = std::max(inside, p1);
    if (spec.b(j) == Sign::Plus && j < i) outside = std::min(outside, p0);
    if (bc.u > 0 || bc.v > 0) {
      // First reflected images dominate the shifted chain.
      inside = std::max(inside, p1 * std::max(bc.u * bc.u, bc.v * bc.v));
    }
  }
  // Theta convergence: |q^2 y / (t w)| < 1 from below, |u w| < 1 from above.
  double y_lo = std::max(bc.v, bc.u * bc.u * bc.v);
  inside = std::max(inside, qt.q * qt.q * y_lo / qt.t);
  double y_hi = std::max(bc.u, bc.u * bc.v * bc.v);
  if (y_hi > 0) outside = std::min(outside, 1.0 / y_hi);
  if (!(inside < outside))
    throw ContourCrossesSingularity("auto_contour: pole annulus is empty");
  ContourSpec c;
  c.radius = std::sqrt(std::max(inside, 1e-12) * std::min(outside, 1e12));
  if (!(c.radius > inside && c.radius < outside))
    c.radius = 0.5 * (inside + outside);
  return c;
}

double expect_gamma_contour(const RailYardSpec& spec,
                            const BoundaryCondition& bc,
                            const QTParams<double>& qt, int i,
                            const ContourSpec& contour,
                            const TruncationPolicy& pol) {
  spec.check();
  if (i <= spec.l || i > spec.r)
    throw ColumnOutOfRange("expect_gamma_contour: need l < i <= r");
  if (spec.a(i) != LR::L)
    throw std::invalid_argument("expect_gamma_contour: insertion requires a_i = L");
  auto qtc = to_cpx(qt);

  // Pole-proximity scan on the circle.
  for (int j = spec.l; j <= spec.r; ++j) {
    double x = spec.x(j);
    double p1 = (spec.a(j) == LR::L) ? qt.q * x : qt.q * x / qt.t;
    double p0 = (spec.a(j) == LR::L) ? qt.q / (qt.t * x) : qt.q / x;
    bool p1_mandated = (spec.b(j) == Sign::Minus && j >= i);
    bool p0_forbidden = (spec.b(j) == Sign::Plus && j < i);
    if (p1_mandated && contour.radius <= p1 * 1.02)
      throw ContourCrossesSingularity("contour too small for a G1 pole");
    if (p0_forbidden && contour.radius >= p0 * 0.98)
      throw ContourCrossesSingularity("contour too large for a G0 pole");
  }
  {
    Cpx w0 = cpx(contour.radius);
    double m = std::max(
        max_letter_mod(rho2_scaled(w0, cpx(std::max(bc.v, bc.u * bc.u * bc.v)), qtc)),
        max_letter_mod(rho3_scaled(w0, cpx(std::max(bc.u, bc.u * bc.v * bc.v)), qtc)));
    if (m >= 0.98)
      throw ContourCrossesSingularity("Theta letters not contractive on contour");
  }

  // Trapezoid rule on the circle: the dw/(2 pi i w) kernel turns the integral
  // into a plain average over equispaced nodes, spectrally accurate here.
  int M = std::max(8, contour.nodes);
  double prev = 0.0;
  bool have_prev = false;
  for (; M <= 16384; M *= 2) {
    Cpx acc(0.0);
    for (int s = 0; s < M; ++s) {
      double th = 2.0 * M_PI * s / M;
      Cpx w = contour.center + contour.radius * std::exp(Cpx(0.0, th));
      acc += integrand(spec, bc, qtc, i, w, pol);
    }
    double val = (acc / cpx(double(M))).real();
    if (have_prev && std::abs(val - prev) < 1e-9 * std::max(1.0, std::abs(val)))
      return val;
    prev = val;
    have_prev = true;
  }
  throw QuadratureNotConverged("expect_gamma_contour: node doubling stalled");
}

double laplace_height_exact(const RailYardSpec& spec, const DimerState& s,
                            int m, int k, const QTParams<double>& qt) {
  if (m < spec.l || m > spec.r + 1)
    throw ColumnOutOfRange("laplace_height_exact: column index");
  double c = charge_normalized(spec, s, m, qt);
  double lq = std::log(qt.q), lt = std::log(qt.t);
  return 2.0 * std::pow(qt.t, double(k) * c) / (double(k) * k * lt * lq) *
         gamma_k(s.at(spec, m), k, qt);
}

double laplace_height_numeric(const RailYardSpec& spec, const DimerState& s,
                              int m, int k, const QTParams<double>& qt) {
  if (m < spec.l || m > spec.r + 1)
    throw ColumnOutOfRange("laplace_height_numeric: column index");
  const Partition& lam = s.at(spec, m);
  double g = std::log(qt.q) / std::log(qt.t);
  double c = charge_normalized(spec, s, m, qt);
  int l = lam.length();
  // Particle ordinates in the rescaled embedding; below B only particles sit,
  // and the height is flat there.
  std::vector<double> y(l);
  for (int i = 1; i <= l; ++i) y[i - 1] = 0.5 + g * lam.part(i) - i + c;
  double B = 0.5 + g * 0.0 - (l + 1) + c + 0.5;  // top of the packed particles

  // Height slope is 2/g off the unit particle intervals and 0 on them; the
  // integral against t^{k y} is a sum of closed-form linear-exponential
  // pieces, including the tail above the last particle.
  double rate = 2.0 * std::log(qt.t) / std::log(qt.q);
  double klt = double(k) * std::log(qt.t);  // negative
  // Segment integral of (h0 + slope * (y - y0)) e^{klt y} over [y0, y1].
  auto piece = [&](double h0, double slope, double y0, double y1) {
    auto F = [&](double y) {
      return std::exp(klt * y) *
             ((h0 + slope * (y - y0)) / klt - slope / (klt * klt));
    };
    return F(y1) - F(y0);
  };
  // Breakpoints: B, then for each particle i (descending y): flat on
  // [y_i - 1/2, y_i + 1/2].
  std::vector<std::pair<double, double>> flats;  // ascending order
  for (int i = l - 1; i >= 0; --i) flats.emplace_back(y[i] - 0.5, y[i] + 0.5);
  double total = 0.0;
  double cur = B, h = 0.0;
  for (const auto& [a, b] : flats) {
    if (a > cur) {
      total += piece(h, rate, cur, a);
      h += rate * (a - cur);
      cur = a;
    }
    total += piece(h, 0.0, cur, b);
    cur = b;
  }
  // Tail: h grows with slope `rate` forever while e^{klt y} decays, so the
  // remaining integral has the closed form -F(cur) with F vanishing at +inf.
  total += -std::exp(klt * cur) * (h / klt - rate / (klt * klt));
  return total;
}

}  // namespace ryd
