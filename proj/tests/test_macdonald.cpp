#include "doctest.h"
#include "qt_seeds.hpp"
#include "ryd/branching.hpp"
#include "ryd/engine.hpp"
#include "ryd/theta.hpp"

using namespace ryd;

namespace {

QTParams<Rat> qt_of(const Rat& q, const Rat& t) {
  QTParams<Rat> qt;
  qt.q = q;
  qt.t = t;
  return qt;
}

const QTParams<Rat> kQT = qt_of(Rat(1, 2), Rat(1, 3));

}  // namespace

TEST_CASE("b_factor examples") {
  QTParams<Rat> same = qt_of(Rat(2, 5), Rat(2, 5));
  CHECK(b_factor(Partition({1}), Cell{1, 1}, same) == Rat(1));
  // lambda=(2), s=(1,1): a=1, l=0 -> (1-qt)/(1-q^2)
  Rat q = kQT.q, t = kQT.t;
  CHECK(b_factor(Partition({2}), Cell{1, 1}, kQT) == (1 - q * t) / (1 - q * q));
  // lambda=(2,1), s=(1,1): a=1, l=1 -> (1-q t^2)/(1-q^2 t)
  CHECK(b_factor(Partition({2, 1}), Cell{1, 1}, kQT) ==
        (1 - q * t * t) / (1 - q * q * t));
  // outside the diagram
  CHECK(b_factor(Partition({2}), Cell{2, 1}, kQT) == Rat(1));
}

TEST_CASE("branching coefficient degenerate cases") {
  CHECK(branching_coeff(BranchKind::Psi, Partition({1}), Partition{}, kQT) == Rat(1));
  // psi = 1 identically at q=t for every horizontal strip
  QTParams<Rat> same = qt_of(Rat(3, 8), Rat(3, 8));
  auto all = enumerate_partitions(6);
  for (const auto& lam : all) {
    for (const auto& mu : all) {
      if (!interlaces(mu, lam, InterlaceKind::Row)) continue;
      CHECK(branching_coeff(BranchKind::Psi, lam, mu, same) == Rat(1));
    }
  }
  // non-strips give zero
  CHECK(branching_coeff(BranchKind::Psi, Partition({2, 2}), Partition{}, kQT) == Rat(0));
}

TEST_CASE("primed branching coefficients are conjugate-dual") {
  for (const auto& [q, t] : ryd_test::qt_seed_pairs()) {
    auto qt = qt_of(q, t);
    auto tq = qt_of(t, q);
    auto all = enumerate_partitions(6);
    for (const auto& lam : all) {
      for (const auto& mu : all) {
        CHECK(branching_coeff(BranchKind::PhiPrime, lam, mu, qt) ==
              branching_coeff(BranchKind::Phi, conjugate(lam), conjugate(mu), tq));
        CHECK(branching_coeff(BranchKind::PsiPrime, lam, mu, qt) ==
              branching_coeff(BranchKind::Psi, conjugate(lam), conjugate(mu), tq));
      }
    }
  }
}

TEST_CASE("b_family complements multiply to b_lambda") {
  for (const auto& lam : enumerate_partitions(6)) {
    Rat total = b_total(lam, kQT);
    CHECK(b_family(lam, BMarker::El, kQT) * b_family(lam, BMarker::Ol, kQT) == total);
    CHECK(b_family(lam, BMarker::Oa, kQT) * b_family(lam, BMarker::Ea, kQT) == total);
  }
  CHECK(b_family(Partition{}, BMarker::El, kQT) == Rat(1));
  // single cell has leg 0: b^el = (1-t)/(1-q), b^ol = 1
  CHECK(b_family(Partition({1}), BMarker::El, kQT) ==
        (1 - kQT.t) / (1 - kQT.q));
  CHECK(b_family(Partition({1}), BMarker::Ol, kQT) == Rat(1));
}

TEST_CASE("scalar product on power sums") {
  SymmetricEngine<Rat> eng(kQT, 4);
  Rat q = kQT.q, t = kQT.t;
  SymFn<Rat> p1{{Partition({1}), Rat(1)}};
  SymFn<Rat> p2{{Partition({2}), Rat(1)}};
  SymFn<Rat> p11{{Partition({1, 1}), Rat(1)}};
  CHECK(eng.scalar_product(p1, p1) == (1 - q) / (1 - t));
  CHECK(eng.scalar_product(p2, p11) == Rat(0));
  CHECK(eng.scalar_product(p11, p11) == 2 * ((1 - q) / (1 - t)) * ((1 - q) / (1 - t)));
  CHECK(eng.scalar_product(p2, p2) == 2 * (1 - q * q) / (1 - t * t));
}

TEST_CASE("monomial/power-sum transition matrices invert each other") {
  SymmetricEngine<Rat> eng(kQT, 6);
  for (const auto& lam : enumerate_partitions(6)) {
    // m_in_p composed with p_in_m is the identity
    SymFn<Rat> back;
    for (const auto& [p, c] : eng.m_in_p(lam)) {
      for (const auto& [m, cm] : eng.p_in_m(p)) back[m] += c * cm;
    }
    for (auto& [m, c] : back) {
      CHECK(c == (m == lam ? Rat(1) : Rat(0)));
    }
  }
}

TEST_CASE("Gram-Schmidt oracle basics") {
  SymmetricEngine<Rat> eng(kQT, 5);
  // P_empty = 1, P_(1) = m_(1)
  CHECK(eng.P_in_m(Partition{}) == SymFn<Rat>{{Partition{}, Rat(1)}});
  CHECK(eng.P_in_m(Partition({1})) == SymFn<Rat>{{Partition({1}), Rat(1)}});
  // orthogonality across each degree
  for (int d = 2; d <= 5; ++d) {
    auto parts = partitions_of(d);
    for (size_t i = 0; i < parts.size(); ++i) {
      for (size_t j = i + 1; j < parts.size(); ++j) {
        CHECK(eng.scalar_product(eng.P(parts[i]), eng.P(parts[j])) == Rat(0));
      }
    }
  }
  // <P,Q> = 1
  for (const auto& lam : enumerate_partitions(5)) {
    CHECK(eng.scalar_product(eng.P(lam), eng.Q(lam)) == Rat(1));
  }
  // unitriangularity: leading coefficient on m_lambda is 1, support below
  for (const auto& lam : enumerate_partitions(5)) {
    const auto& expansion = eng.P_in_m(lam);
    CHECK(expansion.at(lam) == Rat(1));
  }
}

TEST_CASE("P norm via arm-leg product") {
  // <P_lambda, P_lambda> = prod_{s in lambda}
  //   (1-q^{a+1}t^l)/(1-q^a t^{l+1}) = 1/b_lambda. Independent cross-check of
  // the Gram-Schmidt normalization against the cell formula.
  for (const auto& [q, t] : ryd_test::qt_seed_pairs()) {
    auto qt = qt_of(q, t);
    SymmetricEngine<Rat> eng(qt, 5);
    for (const auto& lam : enumerate_partitions(5)) {
      CHECK(eng.P_norm(lam) == Rat(1) / b_total(lam, qt));
    }
  }
}

TEST_CASE("single-variable skew specializations match the oracle") {
  SymmetricEngine<Rat> eng(kQT, 5);
  Rat x(2, 7);
  auto rho = Specialization<Rat>::single(x);
  auto rho_dual = Specialization<Rat>::single(x).dualized();
  auto all = enumerate_partitions(5);
  for (const auto& lam : all) {
    for (const auto& mu : all) {
      if (mu.size() > lam.size()) continue;
      auto sp = eng.skew_P(lam, mu);
      auto sq = eng.skew_Q(lam, mu);
      CHECK(eng.eval(sp, rho) == skew_single(PQ::P, false, lam, mu, x, kQT));
      CHECK(eng.eval(sq, rho) == skew_single(PQ::Q, false, lam, mu, x, kQT));
      CHECK(eng.eval(sp, rho_dual) == skew_single(PQ::P, true, lam, mu, x, kQT));
      CHECK(eng.eval(sq, rho_dual) == skew_single(PQ::Q, true, lam, mu, x, kQT));
    }
  }
}

TEST_CASE("Q is the b-multiple of P, skew included") {
  SymmetricEngine<Rat> eng(kQT, 5);
  auto all = enumerate_partitions(5);
  Rat x(1, 5);
  for (const auto& lam : all) {
    for (const auto& mu : all) {
      if (mu.size() > lam.size()) continue;
      Rat lhs = skew_single(PQ::Q, false, lam, mu, x, kQT);
      Rat rhs = b_total(lam, kQT) / b_total(mu, kQT) *
                skew_single(PQ::P, false, lam, mu, x, kQT);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("omega duality swaps P and Q with conjugate shape") {
  // omega_{q,t} P_{lambda/mu}(.;q,t) = Q_{lambda'/mu'}(.;t,q): evaluate both
  // sides on a two-letter alphabet.
  for (const auto& [q, t] : ryd_test::qt_seed_pairs()) {
    auto qt = qt_of(q, t);
    auto tq = qt_of(t, q);
    SymmetricEngine<Rat> eng(qt, 4);
    SymmetricEngine<Rat> eng_sw(tq, 4);
    Specialization<Rat> rho;
    rho.add(Rat(1, 5)).add(Rat(2, 9));
    auto rho_dual = rho.dualized();
    for (const auto& lam : enumerate_partitions(4)) {
      // omega applied to the function = evaluating at the dualized
      // specialization (omega is the algebra map p_k -> dual factor p_k)
      CHECK(eng.eval(eng.P(lam), rho_dual) ==
            eng_sw.eval(eng_sw.Q(conjugate(lam)), rho));
      CHECK(eng.eval(eng.Q(lam), rho_dual) ==
            eng_sw.eval(eng_sw.P(conjugate(lam)), rho));
    }
  }
}

TEST_CASE("theta product and exponential forms agree") {
  const int D = 8;
  for (const auto& [q, t] : ryd_test::qt_seed_pairs()) {
    auto qt = qt_of(q, t);
    for (int letters = 1; letters <= 3; ++letters) {
      Specialization<Rat> rho;
      const Rat vals[] = {Rat(1, 2), Rat(2, 3), Rat(3, 5)};
      for (int i = 0; i < letters; ++i) rho.add(vals[i]);
      for (auto fam : {ThetaFamily::El, ThetaFamily::Oa, ThetaFamily::DeEl,
                       ThetaFamily::EOa}) {
        auto a = theta_series_exp(fam, rho, qt, D);
        auto b = theta_series_product(fam, rho, qt, D);
        for (int i = 0; i <= D; ++i) CHECK(a[i] == b[i]);
      }
    }
  }
}

TEST_CASE("theta q=t telescope on one letter") {
  // Theta_el([x]; q=q) = (qx;q)/(x;q) = 1/(1-x): all coefficients 1.
  auto qt = qt_of(Rat(1, 3), Rat(1, 3));
  auto s = theta_series_exp(ThetaFamily::El, Specialization<Rat>::single(Rat(1)), qt, 8);
  for (int i = 0; i <= 8; ++i) CHECK(s[i] == 1);
  // Theta_de,el on a single letter is 1 (cross terms only)
  auto s2 = theta_series_exp(ThetaFamily::DeEl, Specialization<Rat>::single(Rat(1)), kQT, 8);
  CHECK(s2[0] == 1);
  for (int i = 1; i <= 8; ++i) CHECK(s2[i] == 0);
}

TEST_CASE("theta equals the b-weighted Macdonald sum") {
  // Theta_el = sum_lambda b^el_lambda P_lambda, etc.; the even families carry
  // parity restrictions on lambda. This pins the Theta normalization against
  // the Gram-Schmidt oracle, coefficient by coefficient to degree 6.
  const int D = 6;
  for (const auto& [q, t] : ryd_test::qt_seed_pairs()) {
    auto qt = qt_of(q, t);
    SymmetricEngine<Rat> eng(qt, D);
    Specialization<Rat> rho;
    rho.add(Rat(1, 2)).add(Rat(2, 3));
    struct Case {
      ThetaFamily fam;
      BMarker marker;
      int parity;  // 0 none, 1 lambda even, 2 lambda' even
    };
    for (const auto& c : {Case{ThetaFamily::El, BMarker::El, 0},
                          Case{ThetaFamily::Oa, BMarker::Oa, 0},
                          Case{ThetaFamily::DeEl, BMarker::El, 2},
                          Case{ThetaFamily::EOa, BMarker::Oa, 1}}) {
      FormalSeries<Rat> sum(D);
      for (const auto& lam : enumerate_partitions(D)) {
        if (c.parity == 1) {
          bool even = true;
          for (int i = 1; i <= lam.length(); ++i) even &= lam.part(i) % 2 == 0;
          if (!even) continue;
        } else if (c.parity == 2) {
          auto cl = conjugate(lam);
          bool even = true;
          for (int i = 1; i <= cl.length(); ++i) even &= cl.part(i) % 2 == 0;
          if (!even) continue;
        }
        Rat val = eng.eval(eng.P(lam), rho);
        sum[static_cast<int>(lam.size())] += b_family(lam, c.marker, qt) * val;
      }
      auto closed = theta_series_exp(c.fam, rho, qt, D);
      for (int i = 0; i <= D; ++i) CHECK(closed[i] == sum[i]);
    }
  }
}

TEST_CASE("kernels against the Cauchy sums") {
  const int D = 6;
  for (const auto& [q, t] : ryd_test::qt_seed_pairs()) {
    auto qt = qt_of(q, t);
    auto tq = qt_of(t, q);
    SymmetricEngine<Rat> eng(qt, D);
    SymmetricEngine<Rat> eng_sw(tq, D);
    Specialization<Rat> rho1, rho2;
    rho1.add(Rat(1, 2)).add(Rat(1, 7));
    rho2.add(Rat(2, 5));

    // Pi(x,y) = sum P_lambda(x) Q_lambda(y)
    FormalSeries<Rat> cauchy(D);
    for (const auto& lam : enumerate_partitions(D)) {
      cauchy[static_cast<int>(lam.size())] +=
          eng.eval(eng.P(lam), rho1) * eng.eval(eng.Q(lam), rho2);
    }
    auto pi = kernel_series(KernelKind::Pi, rho1, rho2, qt, D);
    for (int i = 0; i <= D; ++i) CHECK(pi[i] == cauchy[i]);

    // Pi0(x,y) = sum P_lambda(x;q,t) P_lambda'(y;t,q)
    FormalSeries<Rat> cauchy0(D);
    for (const auto& lam : enumerate_partitions(D)) {
      cauchy0[static_cast<int>(lam.size())] +=
          eng.eval(eng.P(lam), rho1) * eng_sw.eval(eng_sw.P(conjugate(lam)), rho2);
    }
    auto pi0 = kernel_series(KernelKind::Pi0, rho1, rho2, qt, D);
    for (int i = 0; i <= D; ++i) CHECK(pi0[i] == cauchy0[i]);
  }
}

TEST_CASE("kernel degenerate forms") {
  // Pi([x],[y]; q=t) telescopes to 1/(1-xy)
  auto same = qt_of(Rat(1, 4), Rat(1, 4));
  auto pi = kernel_series(KernelKind::Pi, Specialization<Rat>::single(Rat(1)),
                          Specialization<Rat>::single(Rat(1)), same, 8);
  for (int i = 0; i <= 8; ++i) CHECK(pi[i] == 1);
  // Pi0 on single letters is exactly 1 + xy
  auto pi0 = kernel_series(KernelKind::Pi0, Specialization<Rat>::single(Rat(1)),
                           Specialization<Rat>::single(Rat(1)), kQT, 8);
  CHECK(pi0[0] == 1);
  CHECK(pi0[1] == 1);
  for (int i = 2; i <= 8; ++i) CHECK(pi0[i] == 0);
}

TEST_CASE("oracle is stable in the number of variables") {
  // Evaluating P_lambda on alphabets with extra zero letters changes nothing:
  // add zero-valued letters to the specialization.
  SymmetricEngine<Rat> eng(kQT, 4);
  Specialization<Rat> small, padded;
  small.add(Rat(1, 3)).add(Rat(1, 4));
  padded.add(Rat(1, 3)).add(Rat(1, 4)).add(Rat(0)).add(Rat(0));
  for (const auto& lam : enumerate_partitions(4)) {
    CHECK(eng.eval(eng.P(lam), small) == eng.eval(eng.P(lam), padded));
  }
}
