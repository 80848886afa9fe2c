#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkmtr/tau.hpp"

using namespace gkmtr;

namespace {
Poly zpow(int k, Rat c) { return Poly::monomial(Scalar(c), k); }

const Ring* eps_ring() { return Ring::make({{"e", SymKind::Free, 0, 0}}); }

Potential example_potential() {
  // V = z^4/12 - (e/2) z^2, the reference deformation family
  return Potential::from_V(zpow(4, Rat(1, 12)) -
                           Poly::monomial(Scalar::symbol(eps_ring(), 0) * Scalar(Rat(1, 2)), 2));
}
}  // namespace

TEST_CASE("hbar^0 part of the kernel is the Cauchy term alone") {
  // b_{i,j} all vanish at hbar^0 by construction; the builder asserts the
  // numerator equals the divided difference of x
  Potential P = Potential::from_V(zpow(3, Rat(1, 6)));
  BTable B = two_point(P, 1, 4, 4);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j + i <= 4; ++j) CHECK(B.get(0, i, j).is_zero());
}

TEST_CASE("Kontsevich affine coordinates at one loop") {
  Potential P = Potential::from_V(zpow(3, Rat(1, 6)));
  BTable B = two_point(P, 2, 6, 6);
  CHECK(B.get(1, 1, 1) == Scalar(Rat(7, 24)));
  CHECK(B.get(1, 0, 2) == Scalar(Rat(-5, 24)));
  CHECK(B.get(1, 2, 0) == Scalar(Rat(-5, 24)));
  CHECK(B.get(1, 0, 0).is_zero());
  CHECK(B.get(1, 1, 0).is_zero());
}

TEST_CASE("b_{0,j} row reproduces the one-point function") {
  Potential P = example_potential();
  BTable B = two_point(P, 3, 10, 10);
  WaveEntry psi1 = wave_function(P, 1, 3);
  HSeries s = psi1.expand(12);
  for (int m = 1; m <= 3; ++m)
    for (int j = 0; j <= 9; ++j) CHECK(B.get(m, 0, j) == s[m].coeff_or_zero(j + 1));
  // dual row: the tau(T + [w^{-1}]) tail carries the opposite sign of the
  // b_{i,0} column (the two one-point normalizations differ by the duality
  // twist; the generating-function table is the binding convention and is
  // cross-checked bivariately below)
  auto tau = tau_from_affine(B, 10, 3);
  std::vector<Series> plus;
  for (int k = 1; k <= 16; ++k) plus.push_back(Series::monomial(Scalar(Rat(1, k)), k, 12));
  for (int m = 1; m <= 3; ++m) {
    Series sp = tau[m].eval_series(plus).truncated(12);
    for (int i = 0; i <= 9; ++i) CHECK(B.get(m, i, 0) == -sp.coeff_or_zero(i + 1));
  }
}

TEST_CASE("bivariate kernel oracle for the affine coordinates") {
  // (1/(w-z)) tau((w^{-k}-z^{-k})/k)/tau(0) - 1/(w-z), expanded |w|>|z|,
  // computed by brute-force bivariate expansion from the reconstructed tau
  Potential P = Potential::from_V(zpow(3, Rat(1, 6)));
  BTable B = two_point(P, 2, 8, 8);
  auto tau = tau_from_affine(B, 8, 2);
  const int W = 10;
  using Bi = std::map<std::pair<int, int>, Rat>;  // exps of 1/w, 1/z
  auto mul = [&](const Bi& a, const Bi& b) {
    Bi r;
    for (auto& [ka, va] : a)
      for (auto& [kb, vb] : b) {
        int x = ka.first + kb.first, y = ka.second + kb.second;
        if (x > W || y > W) continue;
        r[{x, y}] += va * vb;
      }
    return r;
  };
  for (int m = 1; m <= 2; ++m) {
    Bi acc;
    for (auto& [mono, c] : tau[m].terms()) {
      Bi term;
      term[{0, 0}] = c.to_rational();
      for (int k = 1; k <= 16; ++k)
        for (unsigned e = 0; e < tmono_exp(mono, k); ++e) {
          Bi tk;
          tk[{k, 0}] = Rat(1, k);
          tk[{0, k}] = ratq(-1, k);
          term = mul(term, tk);
        }
      for (auto& [key, v] : term) acc[key] += v;
    }
    Bi kern;
    for (auto& [key, v] : acc) {
      auto [a, b] = key;
      for (int t = 0; t + a <= W + 2; ++t) {
        int x = a + t + 1, y = b - t;
        if (x > W + 1 || y < -2) continue;
        kern[{x, y}] += v;
      }
    }
    for (int i = 0; i <= 5; ++i)
      for (int j = 0; j <= 5; ++j) {
        auto it = kern.find({i + 1, j + 1});
        Rat v = it == kern.end() ? Rat(0) : it->second;
        CHECK(B.get(m, i, j) == Scalar(v));
      }
    for (auto& [key, v] : kern)
      if (key.second <= 0 && key.first <= W) CHECK(v == 0);
  }
}

TEST_CASE("division formula vs frame canonicalization") {
  // two independent constructions of the affine coordinates must agree
  for (Poly V : {zpow(3, Rat(1, 6)), zpow(4, Rat(1, 12)) - zpow(2, Rat(1, 2))}) {
    Potential P = Potential::from_V(V);
    BTable Bf = two_point(P, 3, 8, 8);
    BTable Bc = two_point_frame(P, 3, 8, 8);
    for (int m = 1; m <= 3; ++m)
      for (int i = 0; i <= 8; ++i)
        for (int j = 0; i + j <= 8; ++j) CHECK(Bf.get(m, i, j) == Bc.get(m, i, j));
  }
}

TEST_CASE("partition function of the reference example") {
  Potential P = example_potential();
  BTable B = two_point(P, 2, 8, 8);
  auto tau = tau_from_affine(B, 8, 2);
  const Ring* ring = eps_ring();
  Scalar e = Scalar::symbol(ring, 0);
  auto coeff = [&](int h, std::initializer_list<int> idx) {
    TMono m = 0;
    for (int i : idx) m = tmono_mul(m, tmono_of(i));
    return tau[h].coeff(m);
  };
  CHECK(coeff(1, {1, 1, 2}) == Scalar(Rat(1)));
  CHECK(coeff(1, {4}) == Scalar(Rat(1, 3)));
  CHECK(coeff(1, {2, 2, 2}) == e * Scalar(Rat(4, 3)));
  CHECK(coeff(1, {6}) == e * Scalar(Rat(2)));
  CHECK(coeff(1, {1, 1, 4}) == e * Scalar(Rat(2)));
  CHECK(coeff(1, {1, 2, 3}) == e * Scalar(Rat(6)));
  CHECK(coeff(2, {1, 1, 1, 1, 2, 2}) == Scalar(Rat(1, 2)));
  CHECK(coeff(2, {1, 1, 1, 5}) == Scalar(Rat(5, 3)));
  CHECK(coeff(2, {1, 7}) == Scalar(Rat(7, 3)));
  CHECK(coeff(1, {8}) == e * e * Scalar(Rat(6)));
  CHECK(coeff(1, {1, 1, 6}) == e * e * Scalar(Rat(3)));
  CHECK(coeff(1, {2, 2, 4}) == e * e * Scalar(Rat(8)));
  CHECK(coeff(1, {2, 3, 3}) == e * e * Scalar(Rat(9)));
  CHECK(coeff(2, {1, 1, 2, 4}) == Scalar(Rat(13, 3)));
  CHECK(coeff(1, {1, 2, 5}) == e * e * Scalar(Rat(10)));
  CHECK(coeff(1, {1, 3, 4}) == e * e * Scalar(Rat(12)));
  CHECK(coeff(2, {2, 2, 2, 2}) == Scalar(Rat(-2, 3)));
  CHECK(coeff(2, {4, 4}) == Scalar(Rat(13, 18)));
}

TEST_CASE("tau specialization reproduces the wave function") {
  Potential P = example_potential();
  BTable B = two_point(P, 2, 10, 10);
  auto tau = tau_from_affine(B, 10, 2);
  HSeries spec = tau_wave_specialization(tau, 10);
  HSeries psi = wave_function(P, 1, 2).expand(10);
  for (int m = 0; m <= 2; ++m)
    for (int k = 0; k <= 10; ++k) CHECK(spec[m].coeff_or_zero(k) == psi[m].coeff_or_zero(k));
}

TEST_CASE("hirota residues vanish and a non-tau input fails") {
  Potential P = Potential::from_V(zpow(4, Rat(1, 12)));
  int hmax = 2, wcomplete = 4 * hmax;
  BTable B = two_point(P, hmax, wcomplete + 2, wcomplete + 2);
  auto tau = tau_from_affine(B, wcomplete, hmax);
  CHECK(hirota_check(tau, P.x(), 0, 4, hmax, wcomplete).ok);
  CHECK(hirota_check(tau, P.x(), 1, 4, hmax, wcomplete).ok);
  // fault injection: Z + hbar T1^3 is not a tau-function
  auto bad = tau;
  bad[1] += TPoly::monomial(tmono_of(1, 3), Scalar(Rat(1)));
  auto rep = hirota_check(bad, P.x(), 0, 4, hmax, wcomplete);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("partition cap beyond the b-table raises") {
  Potential P = Potential::from_V(zpow(3, Rat(1, 6)));
  BTable B = two_point(P, 2, 3, 3);
  CHECK_THROWS_AS(tau_from_affine(B, 9, 2), std::out_of_range);
}
