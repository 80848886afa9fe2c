#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkmtr/deformed.hpp"
#include "gkmtr/expand.hpp"

using namespace gkmtr;

namespace {
Poly zpow(int k, Rat c) { return Poly::monomial(Scalar(c), k); }
}

TEST_CASE("eps = 0 slice reproduces the undeformed pipeline exactly") {
  const Ring* ring = Ring::make({{"eps", SymKind::Truncated, 0, 0}}, 4);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(3)), 2);  // U = 3z^2, r = 3
  DeformedRun run = deformed_pipeline(U, {0}, ring, 3, 8, {{1, 1}, {0, 3}});
  // undeformed: V'' = 3z^2  =>  V = z^4/4
  Potential P0 = Potential::from_V(zpow(4, Rat(1, 4)));
  BTable B0 = two_point(P0, 3, 24, 24);
  CorrelatorTable T0;
  connected_correlators(P0, B0, 1, 1, 8, T0);
  connected_correlators(P0, B0, 0, 3, 8, T0);
  for (const auto& [key, v] : T0.entries()) {
    const auto& [g, n, ks] = key;
    Scalar dv = run.corr.get(g, n, ks).substitute(0, Rat(0));
    CHECK(dv.rational_part() == v.rational_part());
  }
}

TEST_CASE("anomaly constant for d=1, U=3z^2") {
  const Ring* ring = Ring::make({{"eps", SymKind::Truncated, 0, 0}}, 6);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(3)), 2);
  Potential P = Potential::deformed(U, {0}, ring);
  // residue route equals the closed form eps/(12 U(1/eps)) = eps^3/36
  Scalar res = anomaly_residue_route(P);
  Scalar closed = anomaly_closed_form_d1(U, 0, ring);
  CHECK(res == closed);
  CHECK(closed == Scalar::symbol(ring, 0, 3) * Scalar(Rat(1, 36)));
  // f_1 = -<alpha_1>_{1,1} = eps^3/72, f_0 = 0
  DeformedRun run = deformed_pipeline(U, {0}, ring, 3, 6, {{0, 1}, {1, 1}});
  auto f = anomaly_from_correlators(run.corr, 1);
  CHECK(f[0].is_zero());
  CHECK(f[1] == Scalar::symbol(ring, 0, 3) * Scalar(Rat(1, 72)));
  CHECK(f[1] == closed * Scalar(Rat(1, 2)));
}

TEST_CASE("deformed string identity with the computed anomaly") {
  const Ring* ring = Ring::make({{"eps", SymKind::Truncated, 0, 0}}, 4);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(3)), 2);
  DeformedRun run =
      deformed_pipeline(U, {0}, ring, 2, 9, {{0, 1}, {1, 1}, {0, 2}, {0, 3}, {1, 2}});
  auto f = anomaly_from_correlators(run.corr, 1);
  CHECK(string_equation_check(run.P, run.corr, 1, 0, 8, &f[1]).ok);
  CHECK(string_equation_check(run.P, run.corr, 0, 2, 8).ok);
  CHECK(string_equation_check(run.P, run.corr, 1, 1, 8).ok);
  // fault injection: corrupt c_k by corrupting a correlator instead
  CorrelatorTable bad = run.corr;
  bad.set(0, 3, {1, 1, 2}, run.corr.get(0, 3, {1, 1, 2}) + Scalar::with_ring(ring, Rat(1)));
  CHECK_FALSE(string_equation_check(run.P, bad, 0, 2, 8).ok);
}

TEST_CASE("deformed recursion equals the deformed matrix model") {
  // U = 3z^2 - 3 keeps the ramification simple; critical points stay at the
  // roots of U, independent of eps
  const Ring* ring = Ring::make({{"eps", SymKind::Truncated, 0, 0}}, 2);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(3)), 2) - Poly(Scalar::with_ring(ring, Rat(3)));
  DeformedRun run = deformed_pipeline(U, {0}, ring, 2, 8, {{1, 1}, {0, 3}});
  SpectralCurve C = SpectralCurve::build(run.P.x(), 30);
  CHECK(C.crit()[0].z == Scalar::with_ring(ring, Rat(-1)));
  CHECK(C.crit()[1].z == Scalar::with_ring(ring, Rat(1)));
  TrEngine E(C);
  CorrelatorTable TT;
  tr_correlators_z(E.omega(1, 1), C, 8, TT);
  tr_correlators_z(E.omega(0, 3), C, 8, TT);
  for (const auto& [key, v] : TT.entries()) {
    const auto& [g, n, ks] = key;
    CHECK(run.corr.get(g, n, ks) == v);
  }
  for (const auto& [key, v] : run.corr.entries()) {
    const auto& [g, n, ks] = key;
    bool in = true;
    for (int k : ks) in = in && k <= 8;
    if (in) CHECK(TT.get(g, n, ks) == v);
  }
}

TEST_CASE("givental data: identity curve and first eps order") {
  const Ring* ring = Ring::make({{"eps", SymKind::Truncated, 0, 0}}, 3);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(2)), 1);  // r = 2, d = 1
  GiventalData G = givental_data(U, {0}, ring, 3);
  CHECK(givental_v_symmetric(G));
  CHECK(givental_r_relation(G));
  CHECK(givental_r_symplectic(G));
  // eps = 0 slice: R = I, T^a_k = delta_{k,1} delta_{a,0}, Q = 0
  for (int k = 0; k <= G.kcap; ++k)
    for (int a = 0; a < G.r - 1; ++a)
      for (int b = 0; b < G.r - 1; ++b) {
        Rat want = (k == 0 && a == b) ? 1 : 0;
        CHECK(G.R[k][a][b].substitute(0, Rat(0)).rational_part() == want);
      }
  for (const auto& [key, v] : G.T) {
    Rat want = (key.second == 1 && key.first == 0) ? 1 : 0;
    CHECK(v.substitute(0, Rat(0)).rational_part() == want);
  }
  for (const auto& row : G.Q)
    for (const auto& q : row) CHECK(q.substitute(0, Rat(0)).rational_part() == 0);
  // the deformation switches on at first order somewhere in Q
  bool some_first_order = false;
  for (const auto& row : G.Q)
    for (const auto& q : row)
      if (!q.coeff_of(0, 2).is_zero()) some_first_order = true;
  CHECK(some_first_order);
}

TEST_CASE("admissibility guard") {
  const Ring* ring = Ring::make({{"e1", SymKind::Truncated, 0, 0},
                                 {"e2", SymKind::Truncated, 0, 0},
                                 {"e3", SymKind::Truncated, 0, 0},
                                 {"e4", SymKind::Truncated, 0, 0}},
                                2);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(3)), 2);  // r = 3
  CHECK_THROWS_AS(Potential::deformed(U, {0, 1, 2, 3}, ring), std::invalid_argument);
  // d = r is still admissible
  CHECK_NOTHROW(Potential::deformed(U, {0, 1, 2}, ring));
}

TEST_CASE("two pole parameters") {
  const Ring* ring = Ring::make(
      {{"e1", SymKind::Truncated, 0, 0}, {"e2", SymKind::Truncated, 0, 0}}, 2);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(3)), 2) - Poly(Scalar::with_ring(ring, Rat(3)));
  DeformedRun run = deformed_pipeline(U, {0, 1}, ring, 2, 6, {{1, 1}, {0, 2}, {0, 3}});
  CHECK(string_equation_check(run.P, run.corr, 0, 2, 5).ok);
  // mixed eps1 eps2 terms appear
  bool mixed = false;
  for (const auto& [key, v] : run.corr.entries())
    if (!v.coeff_of(0, 1).coeff_of(1, 1).is_zero()) mixed = true;
  CHECK(mixed);
}
