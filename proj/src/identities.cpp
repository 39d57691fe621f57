#include "ryd/identities.hpp"

#include <sstream>

#include "ryd/branching.hpp"
#include "ryd/engine.hpp"
#include "ryd/series.hpp"
#include "ryd/theta.hpp"

namespace ryd {

namespace {

using S = FormalSeries<Rat>;
using S2 = FormalSeries2<Rat>;

QTParams<Rat> make_qt(const Rat& q, const Rat& t) {
  QTParams<Rat> qt;
  qt.q = q;
  qt.t = t;
  return qt;
}

bool even_parts(const Partition& p) {
  for (int i = 1; i <= p.length(); ++i)
    if (p.part(i) % 2 != 0) return false;
  return true;
}

bool even_conj(const Partition& p) { return even_parts(conjugate(p)); }

enum class Filter { None, Even, ConjEven };

bool passes(const Partition& p, Filter f) {
  switch (f) {
    case Filter::None: return true;
    case Filter::Even: return even_parts(p);
    case Filter::ConjEven: return even_conj(p);
  }
  return true;
}

bool series_equal(const S& a, const S& b) {
  int d = std::min(a.degree(), b.degree());
  for (int i = 0; i <= d; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

struct BoundaryCase {
  ThetaFamily fam;
  BMarker marker;
  Filter filter;
};

// The four (Theta family, b marker, parity filter) combinations occurring in
// the boundary-sum identities: full sums for el/oa and the two even variants.
const BoundaryCase kBoundaryCases[] = {
    {ThetaFamily::El, BMarker::El, Filter::None},
    {ThetaFamily::Oa, BMarker::Oa, Filter::None},
    {ThetaFamily::DeEl, BMarker::El, Filter::ConjEven},
    {ThetaFamily::EOa, BMarker::Oa, Filter::Even},
};

BMarker bar_of(BMarker m) { return m == BMarker::El ? BMarker::Ol : BMarker::Ea; }

}  // namespace

// sum_{lambda} b^m_lambda P_{lambda/eta}(x) = Theta(x) sum_mu b^m_mu Q_{eta/mu}(x),
// with parity restrictions for the de,el / e,oa families.
bool check_boundary_sum_pull(const Rat& q, const Rat& t, int D, int max_boundary,
                             int mutation) {
  auto qt = make_qt(q, t);
  auto theta_rho = Specialization<Rat>::single(Rat(1));
  for (const auto& bc : kBoundaryCases) {
    BMarker marker = bc.marker;
    if (mutation == 2 && bc.fam == ThetaFamily::EOa) marker = BMarker::El;
    auto theta = theta_series_exp(bc.fam, theta_rho, qt, D);
    for (const auto& eta : enumerate_partitions(max_boundary)) {
      S lhs(D);
      for (const auto& lam : enumerate_partitions(static_cast<int>(eta.size()) + D)) {
        if (!passes(lam, bc.filter)) continue;
        BranchKind bk = (mutation == 1) ? BranchKind::Phi : BranchKind::Psi;
        Rat c = branching_coeff(bk, lam, eta, qt);
        if (is_zero(c)) continue;
        lhs[static_cast<int>(lam.size() - eta.size())] += b_family(lam, marker, qt) * c;
      }
      S rsum(D);
      for (const auto& mu : enumerate_partitions(static_cast<int>(eta.size()))) {
        if (!passes(mu, bc.filter)) continue;
        Rat c = branching_coeff(BranchKind::Phi, eta, mu, qt);
        if (is_zero(c)) continue;
        rsum[static_cast<int>(eta.size() - mu.size())] += b_family(mu, marker, qt) * c;
      }
      if (!series_equal(lhs, theta * rsum)) return false;
    }
  }
  return true;
}

// sum_phi (1/bbar^m_phi) Q_{phi/lambda}(x) = Theta(x) sum_mu (1/bbar^m_mu)
// P_{lambda/mu}(x), same four family/filter combinations.
bool check_bbar_mirror(const Rat& q, const Rat& t, int D, int max_boundary) {
  auto qt = make_qt(q, t);
  auto theta_rho = Specialization<Rat>::single(Rat(1));
  for (const auto& bc : kBoundaryCases) {
    auto theta = theta_series_exp(bc.fam, theta_rho, qt, D);
    BMarker bar = bar_of(bc.marker);
    for (const auto& lam : enumerate_partitions(max_boundary)) {
      S lhs(D);
      for (const auto& phi : enumerate_partitions(static_cast<int>(lam.size()) + D)) {
        if (!passes(phi, bc.filter)) continue;
        Rat c = branching_coeff(BranchKind::Phi, phi, lam, qt);
        if (is_zero(c)) continue;
        lhs[static_cast<int>(phi.size() - lam.size())] += c / b_family(phi, bar, qt);
      }
      S rsum(D);
      for (const auto& mu : enumerate_partitions(static_cast<int>(lam.size()))) {
        if (!passes(mu, bc.filter)) continue;
        Rat c = branching_coeff(BranchKind::Psi, lam, mu, qt);
        if (is_zero(c)) continue;
        rsum[static_cast<int>(lam.size() - mu.size())] += c / b_family(mu, bar, qt);
      }
      if (!series_equal(lhs, theta * rsum)) return false;
    }
  }
  return true;
}

// Fugacity reflections: both the b-weighted and the 1/bbar-weighted versions.
//   sum_lam b_lam P_{lam/eta}(x) v^|lam| =
//       Theta(vx) sum_mu b_mu Q_{eta/mu}(v^2 x) v^|mu|
// and the mirror with Q on the left, P and 1/bbar on the right.
bool check_v_reflection(const Rat& q, const Rat& t, int D, int max_boundary) {
  auto qt = make_qt(q, t);
  for (const Rat& v : {Rat(1, 2), Rat(2, 5)}) {
    auto theta_rho = Specialization<Rat>::single(v);
    for (const auto& bc : kBoundaryCases) {
      auto theta = theta_series_exp(bc.fam, theta_rho, qt, D);
      BMarker bar = bar_of(bc.marker);
      for (const auto& eta : enumerate_partitions(max_boundary)) {
        S lhs(D), lhs_bar(D);
        for (const auto& lam : enumerate_partitions(static_cast<int>(eta.size()) + D)) {
          if (!passes(lam, bc.filter)) continue;
          int k = static_cast<int>(lam.size() - eta.size());
          Rat vp = pow_int(v, lam.size());
          Rat cp = branching_coeff(BranchKind::Psi, lam, eta, qt);
          if (!is_zero(cp)) lhs[k] += b_family(lam, bc.marker, qt) * cp * vp;
          Rat cq = branching_coeff(BranchKind::Phi, lam, eta, qt);
          if (!is_zero(cq)) lhs_bar[k] += cq * vp / b_family(lam, bar, qt);
        }
        S rsum(D), rsum_bar(D);
        for (const auto& mu : enumerate_partitions(static_cast<int>(eta.size()))) {
          if (!passes(mu, bc.filter)) continue;
          int k = static_cast<int>(eta.size() - mu.size());
          Rat w = pow_int(v, 2 * k + static_cast<int>(mu.size()));
          Rat cq = branching_coeff(BranchKind::Phi, eta, mu, qt);
          if (!is_zero(cq)) rsum[k] += b_family(mu, bc.marker, qt) * cq * w;
          Rat cp = branching_coeff(BranchKind::Psi, eta, mu, qt);
          if (!is_zero(cp)) rsum_bar[k] += cp * w / b_family(mu, bar, qt);
        }
        if (!series_equal(lhs, theta * rsum)) return false;
        if (!series_equal(lhs_bar, theta * rsum_bar)) return false;
      }
    }
  }
  return true;
}

// Skew Cauchy identities on single letters, as bivariate series.
bool check_skew_cauchy(const Rat& q, const Rat& t, int D, int max_boundary,
                       int mutation) {
  auto qt = make_qt(q, t);
  auto tq = make_qt(t, q);
  auto one = Specialization<Rat>::single(Rat(1));

  // Pi(x,y) is diagonal in (x,y); Pi0 on single letters is exactly 1+xy.
  auto pi_diag = kernel_series(KernelKind::Pi, one, one, qt, D);
  S2 pi(D), pi0(D);
  for (int i = 0; i <= D; ++i) pi.at(i, i) = pi_diag[i];
  pi0.at(0, 0) = Rat(1);
  if (D >= 1) pi0.at(1, 1) = Rat(1);
  if (mutation == 1) pi = pi0;

  auto all_boundary = enumerate_partitions(max_boundary);
  for (const auto& lam : all_boundary) {
    for (const auto& mu : all_boundary) {
      int top = static_cast<int>(lam.size() + mu.size() + D) / 2;
      S2 lhs1(D), lhs2(D), lhs3(D);
      for (const auto& phi : enumerate_partitions(top)) {
        int dx = static_cast<int>(phi.size() - lam.size());
        int dy = static_cast<int>(phi.size() - mu.size());
        if (dx < 0 || dx > D || dy < 0 || dy > D) continue;
        Partition phic = conjugate(phi);
        Partition lamc = conjugate(lam), muc = conjugate(mu);
        Rat a1 = branching_coeff(BranchKind::Psi, phi, lam, qt) *
                 branching_coeff(BranchKind::Phi, phi, mu, qt);
        if (!is_zero(a1)) lhs1.at(dx, dy) += a1;
        Rat a2 = branching_coeff(BranchKind::Phi, phic, lamc, tq) *
                 branching_coeff(BranchKind::Phi, phi, mu, qt);
        if (!is_zero(a2)) lhs2.at(dx, dy) += a2;
        Rat a3 = branching_coeff(BranchKind::Psi, phi, lam, qt) *
                 branching_coeff(BranchKind::Psi, phic, muc, tq);
        if (!is_zero(a3)) lhs3.at(dx, dy) += a3;
      }
      S2 r1(D), r2(D), r3(D);
      for (const auto& sg : enumerate_partitions(
               static_cast<int>(std::min(lam.size(), mu.size())))) {
        int dx1 = static_cast<int>(mu.size() - sg.size());
        int dy1 = static_cast<int>(lam.size() - sg.size());
        if (dx1 > D || dy1 > D) continue;
        Partition sgc = conjugate(sg);
        Partition lamc = conjugate(lam), muc = conjugate(mu);
        const Partition& rx = (mutation == 2) ? lam : mu;
        const Partition& ry = (mutation == 2) ? mu : lam;
        Rat b1 = branching_coeff(BranchKind::Psi, rx, sg, qt) *
                 branching_coeff(BranchKind::Phi, ry, sg, qt);
        if (!is_zero(b1)) r1.at(static_cast<int>(rx.size() - sg.size()),
                                static_cast<int>(ry.size() - sg.size())) += b1;
        Rat b2 = branching_coeff(BranchKind::Phi, muc, sgc, tq) *
                 branching_coeff(BranchKind::Phi, lam, sg, qt);
        if (!is_zero(b2)) r2.at(dx1, dy1) += b2;
        Rat b3 = branching_coeff(BranchKind::Psi, mu, sg, qt) *
                 branching_coeff(BranchKind::Psi, lamc, sgc, tq);
        if (!is_zero(b3)) r3.at(dx1, dy1) += b3;
      }
      int tot = D;  // compare up to total degree D to respect the phi cutoff
      if (!(lhs1.total_truncated(tot) == (pi * r1).total_truncated(tot))) return false;
      if (!(lhs2.total_truncated(tot) == (pi0 * r2).total_truncated(tot))) return false;
      if (!(lhs3.total_truncated(tot) == (pi0 * r3).total_truncated(tot))) return false;
    }
  }
  return true;
}

// Two-variable exchange identities (finite sums, no kernel prefactor).
bool check_exchange(const Rat& q, const Rat& t, int D, int max_boundary) {
  auto qt = make_qt(q, t);
  auto tq = make_qt(t, q);
  (void)D;
  auto all = enumerate_partitions(max_boundary);
  for (const auto& lam : all) {
    for (const auto& mu : all) {
      if (mu.size() < lam.size()) continue;
      S2 l1(static_cast<int>(mu.size())), r1(static_cast<int>(mu.size()));
      S2 l2(static_cast<int>(mu.size())), r2(static_cast<int>(mu.size()));
      for (const auto& phi : enumerate_partitions(static_cast<int>(mu.size()))) {
        int dx = static_cast<int>(phi.size() - lam.size());
        int dy = static_cast<int>(mu.size() - phi.size());
        if (dx < 0 || dy < 0) continue;
        Partition phic = conjugate(phi);
        Rat a = branching_coeff(BranchKind::Psi, phi, lam, qt) *
                branching_coeff(BranchKind::Psi, mu, phi, qt);
        if (!is_zero(a)) l1.at(dx, dy) += a;
        Rat b = branching_coeff(BranchKind::Psi, phi, lam, qt) *
                branching_coeff(BranchKind::Phi, conjugate(mu), phic, tq);
        if (!is_zero(b)) l2.at(dx, dy) += b;
        // right-hand sides: the same chains with the roles of x and y swapped
        Rat c = branching_coeff(BranchKind::Psi, phi, lam, qt) *
                branching_coeff(BranchKind::Psi, mu, phi, qt);
        if (!is_zero(c)) r1.at(dy, dx) += c;
        Rat dcoef = branching_coeff(BranchKind::Phi, phic, conjugate(lam), tq) *
                    branching_coeff(BranchKind::Psi, mu, phi, qt);
        if (!is_zero(dcoef)) r2.at(dy, dx) += dcoef;
      }
      if (!(l1 == r1)) return false;
      if (!(l2 == r2)) return false;
    }
  }
  return true;
}

// Doubly-free pairing: the (lambda, phi, nu) triple sum against the closed
// product of Theta blocks, H factors and the (uv)-geometric boundary sum.
// u = a z, v = b z; everything is a series in z, truncated at degree D.
bool check_double_free_pairing(const Rat& q, const Rat& t, int D, int mutation) {
  auto qt = make_qt(q, t);
  Rat a(1, 2), b(1, 3);
  Rat x1(1, 2), x2(1, 3), y1(2, 5);
  Specialization<Rat> rho1, rho2;
  rho1.add(x1).add(x2);
  rho2.add(y1);

  // Single-variable skew evaluations on a 2-letter alphabet via the chain rule
  // P_{lam/nu}(x1,x2) = sum_kappa P_{lam/kappa}(x1) P_{kappa/nu}(x2).
  auto skewP2 = [&](const Partition& lam, const Partition& nu) {
    Rat acc(0);
    for (const auto& kap : enumerate_partitions(static_cast<int>(lam.size()))) {
      if (kap.size() < nu.size()) continue;
      Rat c1 = branching_coeff(BranchKind::Psi, lam, kap, qt);
      if (is_zero(c1)) continue;
      Rat c2 = branching_coeff(BranchKind::Psi, kap, nu, qt);
      if (is_zero(c2)) continue;
      acc += c1 * c2 * pow_int(x1, lam.size() - kap.size()) *
             pow_int(x2, kap.size() - nu.size());
    }
    return acc;
  };

  for (BMarker cl : {BMarker::El, BMarker::Oa}) {
    for (BMarker cr : {BMarker::El, BMarker::Oa}) {
      ThetaFamily fl = (cl == BMarker::El) ? ThetaFamily::El : ThetaFamily::Oa;
      ThetaFamily fr = (cr == BMarker::El) ? ThetaFamily::El : ThetaFamily::Oa;

      S lhs(D);
      for (const auto& nu : enumerate_partitions(D)) {
        S s_nu(D), t_nu(D);
        for (const auto& lam : enumerate_partitions(D)) {
          if (lam.size() < nu.size()) continue;
          Rat c = skewP2(lam, nu);
          if (is_zero(c)) continue;
          s_nu[static_cast<int>(lam.size())] +=
              b_family(lam, cl, qt) * pow_int(a, lam.size()) * c;
        }
        for (const auto& phi : enumerate_partitions(D)) {
          if (phi.size() < nu.size()) continue;
          Rat c = branching_coeff(BranchKind::Phi, phi, nu, qt);
          if (is_zero(c)) continue;
          t_nu[static_cast<int>(phi.size())] += c * pow_int(y1, phi.size() - nu.size()) *
                                                pow_int(b, phi.size()) /
                                                b_family(phi, bar_of(cr), qt);
        }
        lhs += s_nu * t_nu;
      }

      S rhs = S::one(D);
      for (int i = 1; 4 * i - 3 <= D; ++i) {
        int mshift = (mutation == 2) ? 1 : 0;
        rhs *= theta_series_exp(fl, rho1.scaled(pow_int(a, 2 * i - 1) * pow_int(b, 2 * i - 2)),
                                qt, D, 4 * i - 3);
        rhs *= theta_series_exp(fr, rho1.scaled(pow_int(a, 2 * i - mshift) * pow_int(b, 2 * i - 1)),
                                qt, D, 4 * i - 1 - mshift);
        // On the second alphabet the family roles swap: the reciprocal-weight
        // boundary sum is pulled first, so the cr-family factor comes first.
        ThetaFamily f3 = (mutation == 3) ? fl : fr;
        ThetaFamily f4 = (mutation == 3) ? fr : fl;
        rhs *= theta_series_exp(f3, rho2.scaled(pow_int(a, 2 * i - 2) * pow_int(b, 2 * i - 1)),
                                qt, D, 4 * i - 3);
        rhs *= theta_series_exp(f4, rho2.scaled(pow_int(a, 2 * i - 1) * pow_int(b, 2 * i)),
                                qt, D, 4 * i - 1);
      }
      if (mutation != 1) {
        for (int j = 1; 4 * j <= D; ++j) {
          rhs *= kernel_series(KernelKind::H, rho1.scaled(pow_int(a * b, 2 * j)), rho2,
                               qt, D, 4 * j);
        }
      }
      S tail(D);
      for (const auto& tau : enumerate_partitions(D / 2)) {
        tail[2 * static_cast<int>(tau.size())] +=
            b_family(tau, cl, qt) * pow_int(a * b, tau.size()) /
            b_family(tau, bar_of(cr), qt);
      }
      rhs *= tail;
      if (!series_equal(lhs, rhs)) return false;
    }
  }
  return true;
}

// Quadratic-exponent pairing rule against direct p-basis expansion.
bool check_quadratic_pairing(const Rat& q, const Rat& t, int D) {
  auto qt = make_qt(q, t);
  SymmetricEngine<Rat> pairing(qt, 0);  // only z_qt / scalar_product needed

  const Rat d_coef[] = {Rat(1, 2), Rat(-2, 3), Rat(3, 7)};
  const Rat s_coef[] = {Rat(1, 5), Rat(2, 9), Rat(-1, 4)};
  const Rat u_coef[] = {Rat(3, 4), Rat(1, 6), Rat(-2, 5)};

  SymFn<Rat> e1, e2;
  for (int k = 1; k <= 3; ++k) {
    Partition pk({k});
    Partition pkk({k, k});
    e1[pk] += d_coef[k - 1] / Rat(k);
    e1[pkk] += s_coef[k - 1] / Rat(k);
    e2[pk] += u_coef[k - 1] / Rat(k);
  }
  auto F = sym_exp(e1, D);
  auto G = sym_exp(e2, D);

  // left side, graded by degree
  std::vector<Rat> lhs(D + 1, Rat(0));
  for (const auto& [part, cf] : F) {
    auto it = G.find(part);
    if (it == G.end()) continue;
    if (part.size() > D) continue;
    lhs[part.size()] += cf * it->second * pairing.z_qt(part);
  }

  S rhs_log(D);
  for (int k = 1; k <= 3; ++k) {
    Rat ratio = (Rat(1) - pow_int(q, k)) / (Rat(1) - pow_int(t, k));
    if (k <= D) rhs_log[k] += ratio * d_coef[k - 1] * u_coef[k - 1] / Rat(k);
    if (2 * k <= D)
      rhs_log[2 * k] += ratio * ratio * s_coef[k - 1] * u_coef[k - 1] * u_coef[k - 1] / Rat(k);
  }
  S rhs = rhs_log.exp();
  for (int n = 0; n <= D; ++n)
    if (lhs[n] != rhs[n]) return false;
  return true;
}

std::vector<IdentityResult> run_identity_suite(const Rat& q, const Rat& t, int D,
                                               int max_boundary) {
  std::ostringstream lbl;
  lbl << "q=" << q << ",t=" << t;
  std::vector<IdentityResult> out;
  auto push = [&](const std::string& id, bool pass, int deg) {
    out.push_back({id, lbl.str(), deg, pass});
  };
  push("boundary-sum-pull", check_boundary_sum_pull(q, t, D, max_boundary), D);
  push("bbar-mirror", check_bbar_mirror(q, t, D, max_boundary), D);
  push("v-reflection", check_v_reflection(q, t, D, max_boundary), D);
  push("skew-cauchy", check_skew_cauchy(q, t, std::min(D, 6), std::min(max_boundary, 4)),
       std::min(D, 6));
  push("exchange", check_exchange(q, t, D, max_boundary), D);
  push("double-free-pairing", check_double_free_pairing(q, t, D), D);
  push("quadratic-pairing", check_quadratic_pairing(q, t, std::min(D, 6)),
       std::min(D, 6));
  return out;
}

}  // namespace ryd
