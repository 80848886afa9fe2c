#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkmtr/expand.hpp"
#include "gkmtr/numeric.hpp"

using namespace gkmtr;

namespace {
Poly zpow(int k, Rat c) { return Poly::monomial(Scalar(c), k); }
}

TEST_CASE("numeric backend matches the exact engine on a rational curve") {
  Poly x = zpow(3, Rat(1)) - zpow(1, Rat(3));
  SpectralCurve C = SpectralCurve::build(x, 30);
  TrEngine E(C);
  NumericTr N(x, 128);
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}, {2, 1}}) {
    CorrelatorTable T;
    tr_correlators_z(E.omega(g, n), C, 8, T);
    auto num = N.correlators_z(g, n, 8);
    for (const auto& [ks, v] : num) {
      Scalar ex;
      try {
        ex = T.get(g, n, ks);
      } catch (const std::out_of_range&) {
        continue;
      }
      CHECK(NumericTr::close(v, ex.is_zero() ? Rat(0) : ex.to_rational()));
    }
    for (const auto& [key, v] : T.entries()) {
      const auto& [gg, nn, ks] = key;
      if (gg != g || nn != n) continue;
      CHECK(NumericTr::close(num.at(ks), v.to_rational()));
    }
  }
}

TEST_CASE("numeric backend handles ramification outside Q") {
  // x = z^3/3 + z: critical points +-i, not rational
  Poly x = zpow(3, Rat(1, 3)) + zpow(1, Rat(1));
  CHECK_THROWS_AS(SpectralCurve::build(x, 8), std::domain_error);
  NumericTr N(x, 128);
  REQUIRE(N.critical_points().size() == 2);
  // correlators of a real curve are real
  auto t = N.correlators_z(1, 1, 8);
  bool nonzero = false;
  for (const auto& [ks, v] : t) {
    CHECK(v.im * v.im < mpf_class(1e-40));
    if (v.re * v.re > mpf_class(1e-30)) nonzero = true;
  }
  CHECK(nonzero);
  // the epsilon = -1 sibling of the reference family: omega_{1,1} of
  // x = z^3/3 + z equals the eps -> -1 specialization of the exact family
  const Ring* ring = Ring::make({{"e", SymKind::Free, 0, 0}});
  Poly V = zpow(4, Rat(1, 12)) -
           Poly::monomial(Scalar::symbol(ring, 0) * Scalar(Rat(1, 2)), 2);
  Potential P = Potential::from_V(V);
  BTable B = two_point(P, 1, 10, 10);
  CorrelatorTable T;
  connected_correlators(P, B, 1, 1, 8, T);
  for (const auto& [ks, v] : t) {
    Scalar ex = T.get(1, 1, ks).substitute(0, Rat(-1));
    CHECK(NumericTr::close(v, ex.rational_part()));
  }
}
