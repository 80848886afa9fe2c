#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkmtr/wave.hpp"

using namespace gkmtr;

namespace {

Poly zpow(int k, Rat c) { return Poly::monomial(Scalar(c), k); }

// Independent one-loop oracle: series-exponential route.  Represents the
// integrand exp(sum_{i>=3} V^(i) phi^i / (i! hbar)) as a truncated series in
// phi whose coefficients are hbar-Laurent rational functions, multiplies by
// (phi+z)^{k-1} and applies Gaussian moments <phi^{2m}> = (2m-1)!!(-hbar/V'')^m.
RatFun wick_series_oracle(const Potential& P, int k, int horder) {
  int phimax = 6 * horder + k;  // j <= 2(h + v) with v <= 2h
  // coefficients of phi^j at hbar^{-v}: map (j, v) -> Poly numerator with
  // implicit denominator via vertex structure; keep exact as map (j, v)->Poly
  std::map<std::pair<int, int>, Poly> expo;  // exp(...) truncated
  expo[{0, 0}] = Poly(Scalar(Rat(1)));
  // multiply by each vertex exponential expanded to the needed depth
  for (int i = 3; i <= P.max_deriv(); ++i) {
    const Poly& vi = P.deriv(i);
    if (vi.is_zero()) continue;
    std::map<std::pair<int, int>, Poly> vexp;
    vexp[{0, 0}] = Poly(Scalar(Rat(1)));
    Poly pw(Scalar(Rat(1)));
    for (int t = 1; t * (i - 2) <= 2 * horder; ++t) {
      pw = pw * vi;
      Rat coef = 1;  // 1/(i!)^t / t!
      for (int s = 0; s < t; ++s) coef /= factorial(i);
      coef /= factorial(t);
      vexp[{i * t, t}] = pw * Scalar(coef);
    }
    std::map<std::pair<int, int>, Poly> next;
    for (const auto& [ke, pe] : expo)
      for (const auto& [kv, pv] : vexp) {
        int j = ke.first + kv.first, v = ke.second + kv.second;
        if (j > phimax) continue;
        next[{j, v}] += pe * pv;
      }
    expo = std::move(next);
  }
  // pair against (phi + z)^{k-1} and take moments
  RatFun acc;
  for (const auto& [key, p] : expo) {
    auto [j, v] = key;
    for (int a = 0; a <= k - 1; ++a) {
      int tot = j + a;
      if (tot % 2) continue;
      int mm = tot / 2;
      int h = mm - v;
      if (h != horder) continue;
      Rat c = binomial(k - 1, a) * double_factorial_odd(mm);
      if (mm % 2) c = -c;
      Poly num = p * Scalar(c);
      if (k - 1 - a > 0) num = num.shift(k - 1 - a);
      acc += RatFun(std::move(num)) * P.inv_V2_pow(mm);
    }
  }
  return acc;
}

}  // namespace

TEST_CASE("wave function hbar^0 is z^{k-1}") {
  Potential P = Potential::from_V(zpow(3, Rat(1, 6)));
  for (int k = 1; k <= 5; ++k) {
    WaveEntry w = wave_function(P, k, 2);
    CHECK(w.h[0] == RatFun(Poly::monomial(Scalar(Rat(1)), k - 1)));
  }
}

TEST_CASE("one-loop coefficient of Psi_1 for V=z^3/6") {
  Potential P = Potential::from_V(zpow(3, Rat(1, 6)));
  WaveEntry w = wave_function(P, 1, 1);
  // -5/(24 z^3): frozen from the independent Wick enumeration
  RatFun expect(Poly(Scalar(Rat(-5, 24))), Poly::z(), 3);
  CHECK(w.h[1] == expect);
  CHECK(w.h[1] == wick_series_oracle(P, 1, 1));
}

TEST_CASE("series-exponential oracle matches the multiset enumeration") {
  const Ring* ring = Ring::make({{"e", SymKind::Free, 0, 0}});
  Poly V = zpow(4, Rat(1, 12)) - Poly::monomial(Scalar::symbol(ring, 0) * Scalar(Rat(1, 2)), 2);
  Potential P = Potential::from_V(V);
  for (int k : {1, 2, 3}) {
    WaveEntry w = wave_function(P, k, 3);
    for (int h = 1; h <= 3; ++h) CHECK(w.h[h] == wick_series_oracle(P, k, h));
  }
}

TEST_CASE("Q_V ladder") {
  for (Poly V : {zpow(3, Rat(1, 6)), zpow(4, Rat(1, 4)) - zpow(2, Rat(3, 2))}) {
    Potential P = Potential::from_V(V);
    WaveEntry w1 = wave_function(P, 1, 3);
    WaveEntry lhs = apply_q(P, w1, false);
    WaveEntry w2 = wave_function(P, 2, 3);
    for (int m = 0; m <= 3; ++m) CHECK(lhs.h[m] == w2.h[m]);
    WaveEntry lhs3 = apply_q(P, w2, false);
    WaveEntry w3 = wave_function(P, 3, 3);
    for (int m = 0; m <= 3; ++m) CHECK(lhs3.h[m] == w3.h[m]);
  }
}

TEST_CASE("Kac-Schwarz constraints for the three reference potentials") {
  const Ring* ring = Ring::make({{"e", SymKind::Free, 0, 0}});
  std::vector<Poly> pots{
      zpow(3, Rat(1, 6)),
      zpow(4, Rat(1, 12)) - Poly::monomial(Scalar::symbol(ring, 0) * Scalar(Rat(1, 2)), 2),
      zpow(4, Rat(1, 4)) - zpow(2, Rat(3, 2))};
  for (const auto& V : pots) {
    Potential P = Potential::from_V(V);
    CHECK(kac_schwarz_check(P, 3).ok);
    // series-level confirmation at z^-15
    WaveEntry psi = wave_function(P, 1, 3);
    auto res = ks_residual_series(P, psi.expand(15 + 3 * P.r() + 8), 15);
    for (const auto& s : res) CHECK(s.zero_within_window());
    auto resd = ks_residual_series(P, psi.dual().expand(15 + 3 * P.r() + 8), 15, true);
    for (const auto& s : resd) CHECK(s.zero_within_window());
  }
}

TEST_CASE("fault injection: hbar z^{-1} perturbation is detected") {
  Potential P = Potential::from_V(zpow(3, Rat(1, 6)));
  HSeries psi = wave_function(P, 1, 2).expand(20);
  psi[1] += Series::monomial(Scalar(Rat(1)), 1, 20);  // + hbar * z^{-1}
  auto res = ks_residual_series(P, psi, 10);
  bool nonzero = false;
  int h_fail = -1, z_fail = 0;
  for (size_t m = 0; m < res.size() && !nonzero; ++m) {
    for (int k = res[m].lo(); k <= res[m].hi(); ++k)
      if (!res[m].coeff_or_zero(k).is_zero()) {
        nonzero = true;
        h_fail = static_cast<int>(m);
        z_fail = k;
        break;
      }
  }
  CHECK(nonzero);
  // (x(Q) - x) has no hbar^0 part, so the hbar^1 injection surfaces at hbar^2
  CHECK(h_fail == 2);
  CHECK(z_fail >= -2);  // adjacent to the injected z^{-1}
}

TEST_CASE("quantum curve data") {
  // S0 for x = z^3 - 3z is (3/4) z^4 - (3/2) z^2 + const
  Potential P = Potential::from_V(zpow(4, Rat(1, 4)) - zpow(2, Rat(3, 2)));
  auto qc = quantum_curve_check(P, 2);
  CHECK(qc.report.ok);
  CHECK(qc.s0 == zpow(4, Rat(3, 4)) - zpow(2, Rat(3, 2)));
}

TEST_CASE("degree guards") {
  CHECK_THROWS_AS(Potential::from_V(zpow(2, Rat(1))), std::invalid_argument);
  // inadmissible deformed potential: d > r
  const Ring* ring = Ring::make({{"e1", SymKind::Truncated, 0, 0},
                                 {"e2", SymKind::Truncated, 0, 0},
                                 {"e3", SymKind::Truncated, 0, 0}},
                                2);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(2)), 1);  // r = 2
  CHECK_THROWS_AS(Potential::deformed(U, {0, 1, 2}, ring), std::invalid_argument);
}
