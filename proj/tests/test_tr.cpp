#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkmtr/expand.hpp"

using namespace gkmtr;

namespace {
Poly zpow(int k, Rat c) { return Poly::monomial(Scalar(c), k); }
}

TEST_CASE("curve building and critical data") {
  // x = z^3 - 3z: critical points -1, 1 with x'' = -+6
  SpectralCurve C = SpectralCurve::build(zpow(3, Rat(1)) - zpow(1, Rat(3)), 16);
  REQUIRE(C.crit().size() == 2);
  CHECK(C.crit()[0].z == Scalar(Rat(-1)));
  CHECK(C.crit()[1].z == Scalar(Rat(1)));
  CHECK(C.crit()[0].x2_at == Scalar(Rat(-6)));
  CHECK(C.crit()[1].x2_at == Scalar(Rat(6)));

  SpectralCurve C2 = SpectralCurve::build(zpow(3, Rat(1, 3)) - zpow(1, Rat(1)), 16);
  CHECK(C2.crit()[0].x2_at == Scalar(Rat(-2)));
  CHECK(C2.crit()[1].x2_at == Scalar(Rat(2)));

  SpectralCurve C3 = SpectralCurve::build(zpow(2, Rat(1)), 16);
  REQUIRE(C3.crit().size() == 1);
  CHECK(C3.crit()[0].z.is_zero());

  // degenerate ramification rejected
  CHECK_THROWS_AS(SpectralCurve::build(zpow(3, Rat(1)), 8), std::domain_error);
  // non-splitting over Q rejected
  CHECK_THROWS_AS(SpectralCurve::build(zpow(3, Rat(1)) + zpow(1, Rat(3)), 8),
                  std::domain_error);
}

TEST_CASE("local involution") {
  // x = z^2/2 at 0: global involution zbar = -u
  SpectralCurve C0 = SpectralCurve::build(zpow(2, Rat(1, 2)), 16);
  const Series& s0 = C0.crit()[0].invol;
  CHECK(s0.coeff(1) == Scalar(Rat(-1)));
  for (int k = 2; k <= s0.hi(); ++k) CHECK(s0.coeff(k).is_zero());

  // x = z^3/3 - z at beta = 1: zbar = 1 - u - u^2/3 + O(u^3)
  SpectralCurve C = SpectralCurve::build(zpow(3, Rat(1, 3)) - zpow(1, Rat(1)), 16);
  const Series& s = C.crit()[1].invol;
  CHECK(s.coeff(1) == Scalar(Rat(-1)));
  CHECK(s.coeff(2) == Scalar(Rat(-1, 3)));

  // defining properties: x(zbar) = x(z) and zbar(zbar) = id, at both points
  for (const auto& cp : C.crit()) {
    Series u = Series::monomial(Scalar(Rat(1)), 1, 14);
    Series lhs = eval_poly(C.x(), Series::constant(cp.z, 16) + cp.invol);
    Series rhs = eval_poly(C.x(), Series::constant(cp.z, 16) + u);
    CHECK((lhs - rhs).truncated(12).zero_within_window());
    Series twice = cp.invol.compose(cp.invol);
    CHECK((twice - u).truncated(12).zero_within_window());
  }
}

TEST_CASE("Airy frozen values") {
  SpectralCurve C = SpectralCurve::build(zpow(2, Rat(1, 2)), 24);
  TrEngine E(C);
  const MultiDiff& w03 = E.omega(0, 3);
  MultiDiff::Key k03{{0, 2}, {0, 2}, {0, 2}};
  REQUIRE(w03.c.size() == 1);
  CHECK(w03.c.at(k03) == Scalar(Rat(-1)));
  const MultiDiff& w11 = E.omega(1, 1);
  REQUIRE(w11.c.size() == 1);
  CHECK(w11.c.at({{0, 4}}) == Scalar(Rat(-1, 8)));
}

TEST_CASE("omega_{0,3} structure for x = z^3 - 3z") {
  SpectralCurve C = SpectralCurve::build(zpow(3, Rat(1)) - zpow(1, Rat(3)), 24);
  TrEngine E(C);
  const MultiDiff& w = E.omega(0, 3);
  CHECK(!w.c.empty());
  CHECK(w.symmetric());
  for (const auto& [key, v] : w.c)
    for (const auto& [b, m] : key) CHECK(m == 2);  // poles of order exactly 2
  // one-step residue oracle: the (0,3) coefficient on legs at one point is
  // 1/(2 x''(b)) * [u^{-1}] of the kernel data; for simple curves this is
  // 1/(x''(b)) per same-point triple after symmetrization.  Cross-checked
  // against the matrix-model route in the acceptance suite; here freeze the
  // same-point coefficients: 1/x''(+-1) = +-1/6 up to the kernel sign.
  Scalar c_mmm = w.c.at({{0, 2}, {0, 2}, {0, 2}});
  Scalar c_ppp = w.c.at({{1, 2}, {1, 2}, {1, 2}});
  CHECK(c_mmm == -c_ppp);
  CHECK(c_ppp == Scalar(Rat(-1, 6)));
  // no mixed-point legs at (0,3)
  CHECK(w.c.size() == 2);
}

TEST_CASE("free energy vanishes in genus two") {
  for (Poly x : {zpow(3, Rat(1)) - zpow(1, Rat(3)), zpow(3, Rat(1, 3)) - zpow(1, Rat(1))}) {
    SpectralCurve C = SpectralCurve::build(x, 40);
    TrEngine E(C);
    CHECK(E.free_energy(2).is_zero());
    // fault injection: a perturbed omega_{2,1} gives a nonzero residue sum
    MultiDiff bad = E.omega(2, 1);
    bad.c[{{0, 3}}] += Scalar(Rat(1));
    Poly prim = (Poly::z() * C.xprime()).integral();
    Scalar acc;
    for (const auto& [key, v] : bad.c) {
      auto tp = prim.taylor_at(C.crit()[key[0].first].z);
      if (key[0].second - 1 < static_cast<int>(tp.size())) acc += v * tp[key[0].second - 1];
    }
    CHECK_FALSE(acc.is_zero());
  }
}

TEST_CASE("regularity of the involution-symmetrized combinations") {
  SpectralCurve C = SpectralCurve::build(zpow(3, Rat(1, 3)) - zpow(1, Rat(1)), 30);
  TrEngine E(C);
  CHECK(E.regularity_check(1, 1));
  CHECK(E.regularity_check(0, 3));
  CHECK(E.regularity_check(1, 2));
  CHECK(E.regularity_check(2, 1));
  CHECK(E.regularity_check_bergman());
}

TEST_CASE("string-equation residue identities on the engine output") {
  SpectralCurve C = SpectralCurve::build(zpow(3, Rat(1)) - zpow(1, Rat(3)), 36);
  TrEngine E(C);
  CHECK(E.string_residue_02());
  CHECK(E.string_residue_gn(1, 1, 0));
  CHECK(E.string_residue_gn(0, 3, 0));
  CHECK(E.string_residue_gn(0, 3, 2));
  CHECK(E.string_residue_gn(1, 2, 1));
  CHECK(E.string_residue_vanishing(1, 1, 1, 1));
  CHECK(E.string_residue_vanishing(1, 1, 0, 3));
  CHECK(E.string_residue_vanishing(0, 3, 0, 3));
}

TEST_CASE("leg expansion at infinity") {
  SpectralCurve C = SpectralCurve::build(zpow(3, Rat(1)) - zpow(1, Rat(3)), 16);
  // dz/(z - b)^m -> sum binom(k-1, m-1) b^{k-m} z^{-k} dz
  for (int m : {2, 3, 4})
    for (int k = m; k <= 9; ++k) {
      Scalar want = Scalar(binomial(k, m - 1));
      const Scalar& b = C.crit()[1].z;  // b = 1
      want = want * b.pow(k + 1 - m);
      CHECK(leg_coeff_z(C, 1, m, k) == want);
    }
  CHECK(leg_coeff_z(C, 1, 3, 1).is_zero());
}

TEST_CASE("doss differentials and decomposition") {
  // x = z^2/2 at 0: dzeta_0 = -dz/z^2, dzeta_1 = -(d 1/dx)(-dz/z^2) = -3 dz/z^4
  SpectralCurve C = SpectralCurve::build(zpow(2, Rat(1, 2)), 20);
  auto [n0, d0] = doss_rational(C, 0, 0);
  CHECK(n0 == Poly(Scalar(Rat(-1))));
  CHECK(d0 == zpow(2, Rat(1)));
  auto [n1, d1] = doss_rational(C, 0, 1);
  // independent differentiation oracle: R1 = -(R0/x')' with R0 = -1/z^2,
  // x' = z: R0/x' = -z^{-3}; -(d/dz)(-z^{-3}) = -3 z^{-4}
  CHECK(RatFun(n1, d1, 1) == RatFun(Poly(Scalar(Rat(-3))), Poly::z(), 4));

  // change of basis: omega_{1,1} decomposes exactly and reassembles
  SpectralCurve C2 = SpectralCurve::build(zpow(3, Rat(1)) - zpow(1, Rat(3)), 30);
  TrEngine E(C2);
  auto d = doss_decompose(C2, E.omega(1, 1));
  CHECK(!d.empty());
  // reassemble: sum d * R_k^beta must reproduce the leg tensor
  std::vector<Scalar> poles{C2.crit()[0].z, C2.crit()[1].z};
  std::map<MultiDiff::Key, Scalar> re;
  for (const auto& [bk, c] : d) {
    auto [num, den] = doss_rational(C2, bk.first, bk.second);
    auto pf = partial_fractions(num, den, poles);
    for (const auto& [lk, lv] : pf.terms) {
      MultiDiff::Key key{{static_cast<int>(lk.first), lk.second}};
      re[key] += lv * Scalar(c);
      if (re[key].is_zero()) re.erase(key);
    }
  }
  CHECK(re == E.omega(1, 1).c);
}
