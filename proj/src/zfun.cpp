#include "ryd/zfun.hpp"

#include <cmath>
#include <cstdio>

#include "ryd/theta.hpp"

namespace ryd {

namespace {

QTParams<Cpx> to_cpx(const QTParams<double>& qt) {
  QTParams<Cpx> c;
  c.q = Cpx(qt.q);
  c.t = Cpx(qt.t);
  return c;
}

ThetaFamily family_of(FreeMarker c) {
  switch (c) {
    case FreeMarker::El: return ThetaFamily::El;
    case FreeMarker::Oa: return ThetaFamily::Oa;
    case FreeMarker::DeEl: return ThetaFamily::DeEl;
    case FreeMarker::EOa: return ThetaFamily::EOa;
  }
  return ThetaFamily::El;
}

double theta_num(FreeMarker c, double x, bool dual, const QTParams<Cpx>& qt) {
  Specialization<Cpx> rho;
  rho.add(Cpx(x), +1, dual);
  return theta_value(family_of(c), rho, qt).real();
}

double pi_num(double a, double b, const QTParams<Cpx>& qt) {
  if (a == 0.0 || b == 0.0) return 1.0;
  return kernel_value(KernelKind::Pi, Specialization<Cpx>::single(Cpx(a)),
                      Specialization<Cpx>::single(Cpx(b)), qt)
      .real();
}

QTParams<Cpx> swapped(const QTParams<Cpx>& qt) {
  QTParams<Cpx> s;
  s.q = qt.t;
  s.t = qt.q;
  return s;
}

// Kernel for commuting two same-letter columns: (q,t) for L,L and (t,q) for
// R,R (the R-side alphabets carry the duality twist, which turns the kernel
// into its parameter-swapped form).
double pi_pair(const RailYardSpec& spec, int i, double xi, double xj,
               const QTParams<Cpx>& qt) {
  return pi_num(xi, xj, spec.a(i) == LR::R ? swapped(qt) : qt);
}

double zij_prefactor(const RailYardSpec& spec, const QTParams<Cpx>& qt) {
  double z = 1.0;
  for (int i = spec.l; i < spec.r; ++i) {
    if (spec.b(i) != Sign::Plus) continue;
    for (int j = i + 1; j <= spec.r; ++j) {
      if (spec.b(j) != Sign::Minus) continue;
      z *= (spec.a(i) != spec.a(j))
               ? 1.0 + spec.x(i) * spec.x(j)
               : pi_pair(spec, i, spec.x(i), spec.x(j), qt);
    }
  }
  return z;
}

// One block of the infinite product: the factor produced by the (n+1)-th
// bounce of every minus sign off both boundaries followed by the (n+1)-th
// bounce of every plus sign.
double product_block(const RailYardSpec& spec, const BoundaryCondition& bc,
                     const QTParams<Cpx>& qt, int n) {
  double u = bc.u, v = bc.v;
  auto upow = [&](int k) { return std::pow(u, k); };
  auto vpow = [&](int k) { return std::pow(v, k); };
  double blk = 1.0;

  for (int i = spec.l; i <= spec.r; ++i) {
    bool dual = (spec.a(i) == LR::R);
    double xi = spec.x(i);
    if (spec.b(i) == Sign::Minus) {
      blk *= theta_num(bc.c_l, upow(2 * n + 1) * vpow(2 * n) * xi, dual, qt);
      blk *= theta_num(bc.c_r, upow(2 * n + 2) * vpow(2 * n + 1) * xi, dual, qt);
    } else {
      blk *= theta_num(bc.c_r, upow(2 * n) * vpow(2 * n + 1) * xi, dual, qt);
      blk *= theta_num(bc.c_l, upow(2 * n + 1) * vpow(2 * n + 2) * xi, dual, qt);
    }
  }

  for (int i = spec.l; i <= spec.r; ++i) {
    for (int j = i + 1; j <= spec.r; ++j) {
      if (spec.b(i) != spec.b(j)) continue;
      double xij = spec.x(i) * spec.x(j);
      bool same = (spec.a(i) == spec.a(j));
      if (spec.b(i) == Sign::Minus) {
        if (same) {
          blk *= pi_pair(spec, i, upow(2 * n + 2) * vpow(2 * n) * spec.x(i),
                         upow(2 * n) * vpow(2 * n) * spec.x(j), qt);
          blk *= pi_pair(spec, i, upow(2 * n + 2) * vpow(2 * n + 2) * spec.x(i),
                         upow(2 * n + 2) * vpow(2 * n) * spec.x(j), qt);
        } else {
          blk *= (1.0 + upow(4 * n + 2) * vpow(4 * n) * xij) *
                 (1.0 + upow(4 * n + 4) * vpow(4 * n + 2) * xij);
        }
      } else {
        if (same) {
          blk *= pi_pair(spec, i, upow(2 * n) * vpow(2 * n + 2) * spec.x(i),
                         upow(2 * n) * vpow(2 * n) * spec.x(j), qt);
          blk *= pi_pair(spec, i, upow(2 * n + 2) * vpow(2 * n + 2) * spec.x(i),
                         upow(2 * n) * vpow(2 * n + 2) * spec.x(j), qt);
        } else {
          blk *= (1.0 + upow(4 * n) * vpow(4 * n + 2) * xij) *
                 (1.0 + upow(4 * n + 2) * vpow(4 * n + 4) * xij);
        }
      }
    }
  }

  // Mixed-sign pairs, all ordered pairs (+, -): once when the reflected minus
  // travels back right, once when the reflected plus travels back left.
  for (int i = spec.l; i <= spec.r; ++i) {
    if (spec.b(i) != Sign::Plus) continue;
    for (int j = spec.l; j <= spec.r; ++j) {
      if (spec.b(j) != Sign::Minus) continue;
      if (spec.a(i) == spec.a(j)) {
        blk *= pi_pair(spec, i, upow(2 * n + 2) * vpow(2 * n + 2) * spec.x(i),
                       upow(2 * n) * vpow(2 * n) * spec.x(j), qt);
        blk *= pi_pair(spec, i, upow(2 * n + 2) * vpow(2 * n + 2) * spec.x(i),
                       upow(2 * n + 2) * vpow(2 * n + 2) * spec.x(j), qt);
      } else {
        double xij = spec.x(i) * spec.x(j);
        blk *= (1.0 + upow(4 * n + 2) * vpow(4 * n + 2) * xij) *
               (1.0 + upow(4 * n + 4) * vpow(4 * n + 4) * xij);
      }
    }
  }
  return blk;
}

double free_boundary_sum(const BoundaryCondition& bc, const QTParams<double>& qt,
                         int max_size) {
  double uv = bc.u * bc.v;
  double s = 0.0;
  for (const auto& lam : enumerate_partitions(max_size)) {
    if (!parity_ok(bc.c_l, lam) || !parity_ok(bc.c_r, lam)) continue;
    s += b_family(lam, plain_marker(bc.c_r), qt) /
         b_family(lam, bar_marker(bc.c_l), qt) *
         std::pow(uv, static_cast<double>(lam.size()));
  }
  return s;
}

}  // namespace

ZEstimate z_bruteforce(const RailYardSpec& spec, const BoundaryCondition& bc,
                       const QTParams<double>& qt, const TruncationPolicy& pol) {
  spec.check();
  int N = pol.max_partition_size;
  if (N < 6)
    throw TruncationTooCoarse("z_bruteforce: tail certification needs max_partition_size >= 6");
  auto pool = enumerate_partitions(N);
  size_t np = pool.size();

  // Sparse per-column transfer factors, computed once at the largest cap.
  struct Entry {
    size_t from, to;
    double f;
  };
  std::vector<std::vector<Entry>> table(static_cast<size_t>(spec.columns()));
  for (int i = spec.l; i <= spec.r; ++i) {
    auto& col = table[static_cast<size_t>(i - spec.l)];
    InterlaceKind k = (spec.a(i) == LR::L) ? InterlaceKind::Row : InterlaceKind::Column;
    bool dual = (spec.a(i) == LR::R);
    for (size_t p = 0; p < np; ++p) {
      for (size_t c = 0; c < np; ++c) {
        const Partition& lo = pool[p];
        const Partition& hi = pool[c];
        double f;
        if (spec.b(i) == Sign::Plus) {
          if (!interlaces(lo, hi, k)) continue;
          f = skew_single(PQ::P, dual, hi, lo, spec.x(i), qt);
        } else {
          if (!interlaces(hi, lo, k)) continue;
          f = skew_single(PQ::Q, dual, lo, hi, spec.x(i), qt);
        }
        if (f != 0.0) col.push_back({p, c, f});
      }
    }
  }

  auto partial = [&](int cap) {
    std::vector<double> w(np, 0.0);
    for (size_t p = 0; p < np; ++p) {
      if (pool[p].size() > cap) continue;
      if (!parity_ok(bc.c_l, pool[p])) continue;
      w[p] = std::pow(bc.u, static_cast<double>(pool[p].size())) /
             b_family(pool[p], bar_marker(bc.c_l), qt);
    }
    for (const auto& col : table) {
      std::vector<double> w2(np, 0.0);
      for (const auto& e : col) {
        if (pool[e.to].size() > cap) continue;
        w2[e.to] += w[e.from] * e.f;
      }
      w.swap(w2);
    }
    double s = 0.0;
    for (size_t p = 0; p < np; ++p) {
      if (w[p] == 0.0 || !parity_ok(bc.c_r, pool[p])) continue;
      s += w[p] * b_family(pool[p], plain_marker(bc.c_r), qt) *
           std::pow(bc.v, static_cast<double>(pool[p].size()));
    }
    return s;
  };

  std::vector<double> s(static_cast<size_t>(N) + 1);
  for (int cap = 0; cap <= N; ++cap) s[static_cast<size_t>(cap)] = partial(cap);

  // Geometric tail certificate on stride-2 increments: consecutive caps can
  // alternate in magnitude (boundary parity constraints, sign bookkeeping),
  // but pairs of caps decay geometrically. The bound doubles the
  // geometric-series estimate.
  ZEstimate est;
  est.value = s[static_cast<size_t>(N)];
  double noise = 1e-14 * std::max(1.0, std::abs(est.value));
  double d1 = s[static_cast<size_t>(N)] - s[static_cast<size_t>(N - 2)];
  double d2 = s[static_cast<size_t>(N - 2)] - s[static_cast<size_t>(N - 4)];
  double d3 = s[static_cast<size_t>(N - 4)] - s[static_cast<size_t>(N - 6)];
  if (d1 <= noise && (d2 <= noise || d2 < d3)) {
    // Saturated: the newest stride adds nothing above rounding noise and the
    // increments are not growing, so the remaining tail is noise-level.
    est.tail_bound = noise;
    return est;
  }
  double r1 = d1 / d2, r2 = d2 / d3;
  if (!(d3 > 0.0) || !(r1 < 1.0) || !(r1 <= r2 * 1.05))
  {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "z_bruteforce: increment ratios fail to certify a geometric "
                  "tail (d1=%.3e d2=%.3e d3=%.3e)",
                  d1, d2, d3);
    throw DivergentTail(msg);
  }
  est.tail_bound = 2.0 * d1 * r1 / (1.0 - r1);
  return est;
}

double z_product(const RailYardSpec& spec, const BoundaryCondition& bc,
                 const QTParams<double>& qt, const TruncationPolicy& pol) {
  spec.check();
  auto qtc = to_cpx(qt);
  double z = zij_prefactor(spec, qtc);
  z *= free_boundary_sum(bc, qt, pol.max_partition_size);
  const int hard_cap = 256;
  for (int n = 0; n < hard_cap; ++n) {
    double blk = product_block(spec, bc, qtc, n);
    z *= blk;
    if (n + 1 >= pol.product_depth && std::abs(blk - 1.0) < pol.tail_tolerance / 10.0)
      return z;
  }
  throw TruncationTooCoarse("z_product: block product did not stabilize");
}

double z_halfspace(const RailYardSpec& spec, FreeMarker c_l, double u,
                   const QTParams<double>& qt, const TruncationPolicy& pol) {
  (void)pol;
  spec.check();
  auto qtc = to_cpx(qt);
  double z = zij_prefactor(spec, qtc);
  for (int i = spec.l; i <= spec.r; ++i) {
    if (spec.b(i) != Sign::Minus) continue;
    z *= theta_num(c_l, u * spec.x(i), spec.a(i) == LR::R, qtc);
  }
  for (int i = spec.l; i <= spec.r; ++i) {
    if (spec.b(i) != Sign::Minus) continue;
    for (int j = i + 1; j <= spec.r; ++j) {
      if (spec.b(j) != Sign::Minus) continue;
      if (spec.a(i) != spec.a(j))
        z *= 1.0 + u * u * spec.x(i) * spec.x(j);
      else
        z *= pi_pair(spec, i, u * u * spec.x(i), spec.x(j), qtc);
    }
  }
  return z;
}

}  // namespace ryd
