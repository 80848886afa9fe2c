// Acceptance suite: runs every criterion at its stated caps and prints one
// pass/fail line per criterion.  All comparisons are exact.

#include "gkmtr/deformed.hpp"
#include "gkmtr/dvv.hpp"
#include "gkmtr/expand.hpp"
#include "gkmtr/rspin.hpp"
#include "gkmtr/tau.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace gkmtr;

namespace {

Poly zpow(int k, Rat c) { return Poly::monomial(Scalar(c), k); }

const Ring* eps_ring() { return Ring::make({{"e", SymKind::Free, 0, 0}}); }
Scalar eps(int p = 1) { return Scalar::symbol(eps_ring(), 0, p); }

Potential example_potential() {
  return Potential::from_V(zpow(4, Rat(1, 12)) -
                           Poly::monomial(eps() * Scalar(Rat(1, 2)), 2));
}

int failures = 0;

void report(int idx, const std::string& name, bool ok, double secs) {
  std::printf("[%s] criterion %2d: %-58s (%.1fs)\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
              secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run(int idx, const std::string& name, const std::function<bool()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    note = e.what();
    ok = false;
  }
  auto t1 = std::chrono::steady_clock::now();
  report(idx, name, ok, std::chrono::duration<double>(t1 - t0).count());
  if (!note.empty()) std::printf("       exception: %s\n", note.c_str());
}

// ---------------------------------------------------------------- criterion 1
bool criterion1() {
  Potential P = example_potential();
  BTable B = two_point(P, 2, 8, 8);
  auto tau = tau_from_affine(B, 8, 2);
  auto coeff = [&](int h, std::initializer_list<int> idx) {
    TMono m = 0;
    for (int i : idx) m = tmono_mul(m, tmono_of(i));
    return tau[h].coeff(m);
  };
  bool ok = true;
  ok = ok && coeff(1, {1, 1, 2}) == Scalar(Rat(1));
  ok = ok && coeff(1, {4}) == Scalar(Rat(1, 3));
  ok = ok && coeff(1, {2, 2, 2}) == eps() * Scalar(Rat(4, 3));
  ok = ok && coeff(1, {6}) == eps() * Scalar(Rat(2));
  ok = ok && coeff(1, {1, 2, 3}) == eps() * Scalar(Rat(6));
  ok = ok && coeff(2, {1, 1, 1, 1, 2, 2}) == Scalar(Rat(1, 2));
  ok = ok && coeff(2, {1, 1, 1, 5}) == Scalar(Rat(5, 3));
  ok = ok && coeff(2, {1, 7}) == Scalar(Rat(7, 3));
  ok = ok && coeff(1, {8}) == eps(2) * Scalar(Rat(6));
  ok = ok && coeff(1, {2, 3, 3}) == eps(2) * Scalar(Rat(9));
  ok = ok && coeff(2, {1, 1, 2, 4}) == Scalar(Rat(13, 3));
  ok = ok && coeff(2, {2, 2, 2, 2}) == Scalar(Rat(-2, 3));
  ok = ok && coeff(2, {4, 4}) == Scalar(Rat(13, 18));
  return ok;
}

// ---------------------------------------------------------------- criterion 2
bool criterion2() {
  Potential P = example_potential();
  BTable B = two_point(P, 3, 16, 16);
  CorrelatorTable T;
  connected_correlators(P, B, 0, 1, 16, T);
  connected_correlators(P, B, 1, 1, 16, T);
  connected_correlators(P, B, 2, 1, 16, T);
  // full printed series through z^{-17}: indices <= 16 at hbar^1, hbar^3
  std::map<std::pair<int, int>, Scalar> want;
  want[{1, 4}] = Scalar(Rat(1, 3));
  want[{1, 6}] = eps() * Scalar(Rat(2));
  want[{1, 8}] = eps(2) * Scalar(Rat(6));
  want[{1, 10}] = eps(3) * Scalar(Rat(40, 3));
  want[{1, 12}] = eps(4) * Scalar(Rat(25));
  want[{1, 14}] = eps(5) * Scalar(Rat(42));
  want[{2, 14}] = eps() * Scalar(Rat(385, 9));
  want[{1, 16}] = eps(6) * Scalar(Rat(196, 3));
  want[{2, 16}] = eps(2) * Scalar(Rat(4340, 9));
  bool ok = true;
  for (int g = 0; g <= 2; ++g)
    for (int k = 1; k <= 16; ++k) {
      auto it = want.find({g, k});
      Scalar expect = it == want.end() ? Scalar() : it->second;
      ok = ok && T.get(g, 1, {k}) == expect;
    }
  return ok;
}

// ---------------------------------------------------------------- criterion 3
bool criterion3() {
  Potential P = example_potential();
  BTable B = two_point(P, 4, 16, 16);
  CorrelatorTable T;
  connected_correlators(P, B, 1, 2, 8, T);
  connected_correlators(P, B, 2, 2, 8, T);
  connected_correlators(P, B, 0, 2, 8, T);
  // printed n=2 table through (z1^-9, z2^-9); the hbar^2 eps^4 entry is the
  // known erratum: the paper prints "359 hbar2 eps^4/6", read as hbar^2 by
  // the hbar-grading.
  std::map<std::tuple<int, int, int>, Scalar> want;
  auto W = [&](int g, int a, int b, Scalar v) { want[{g, a, b}] = std::move(v); };
  W(1, 1, 7, Scalar(Rat(7, 3)));
  W(1, 4, 4, Scalar(Rat(4, 3)));
  W(1, 2, 8, Scalar(Rat(40, 3)));
  W(1, 3, 7, eps() * Scalar(Rat(7)));
  W(1, 4, 6, eps() * Scalar(Rat(8)));
  W(1, 5, 5, eps() * Scalar(Rat(25, 3)));
  W(1, 4, 8, eps(2) * Scalar(Rat(152, 3)));
  W(1, 5, 7, eps(2) * Scalar(Rat(140, 3)));
  W(1, 6, 6, eps(2) * Scalar(Rat(48)));
  W(1, 6, 8, eps(3) * Scalar(Rat(184)));
  W(1, 7, 7, eps(3) * Scalar(Rat(539, 3)));
  W(2, 8, 8, Scalar(Rat(-680, 9)));
  W(1, 8, 8, eps(4) * Scalar(Rat(-359, 6)));
  bool ok = true;
  for (int g = 0; g <= 2; ++g)
    for (int a = 1; a <= 8; ++a)
      for (int b = a; b <= 8; ++b) {
        auto it = want.find({g, a, b});
        Scalar expect = it == want.end() ? Scalar() : it->second;
        ok = ok && T.get(g, 2, {a, b}) == expect;
      }
  return ok;
}

// ------------------------------------------------------- criteria 4, 5 and 8
struct Crit45Data {
  bool theorem1 = true;
  bool strings = true;
  bool free_energy = true;
};

Crit45Data crit45(const Poly& x) {
  Crit45Data out;
  Potential P = Potential::from_V(x.integral());
  SpectralCurve C = SpectralCurve::build(x, 46);
  TrEngine E(C);
  const int KM = 19;
  BTable B = two_point(P, 4, 4 * KM, 4 * KM, 4 * KM);
  CorrelatorTable TG, TT;
  std::vector<std::pair<int, int>> slices{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {2, 1}};
  for (auto [g, n] : slices) {
    connected_correlators(P, B, g, n, KM, TG);
    tr_correlators_z(E.omega(g, n), C, KM, TT);
  }
  for (const auto& [key, v] : TT.entries()) {
    const auto& [g, n, ks] = key;
    if (!(TG.get(g, n, ks) == v)) out.theorem1 = false;
  }
  for (const auto& [key, v] : TG.entries()) {
    const auto& [g, n, ks] = key;
    if (!(TT.get(g, n, ks) == v)) out.theorem1 = false;
  }
  // criterion 5: correlator-level string identities on BOTH pipelines, at
  // the caps of criterion 4, plus the TR-side residue identities
  connected_correlators(P, B, 0, 2, KM, TG);
  TT.mark_certified(0, 2, KM);  // Bergman-in-z has no decaying part
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 1}}) {
    if (!string_equation_check(P, TG, g, n, KM - 1).ok) out.strings = false;
    if (!string_equation_check(P, TT, g, n, KM - 1).ok) out.strings = false;
  }
  // n = 0 instances: <alpha_1>_{g,1} = 0 for the undeformed model
  for (int g = 1; g <= 2; ++g)
    if (!string_equation_check(P, TG, g, 0, KM - 1).ok) out.strings = false;
  if (!E.string_residue_02()) out.strings = false;
  if (!E.string_residue_gn(1, 1, 0)) out.strings = false;
  if (!E.string_residue_gn(0, 3, 1)) out.strings = false;
  if (!E.string_residue_gn(1, 2, 0)) out.strings = false;
  if (!E.string_residue_vanishing(1, 1, 1, 1)) out.strings = false;
  if (!E.string_residue_vanishing(1, 1, 0, 3)) out.strings = false;
  if (!E.string_residue_vanishing(0, 3, 0, 3)) out.strings = false;
  out.free_energy = E.free_energy(2).is_zero();
  return out;
}

// ---------------------------------------------------------------- criterion 6
bool criterion6() {
  std::vector<Potential> pots{Potential::from_V(zpow(3, Rat(1, 6))), example_potential(),
                              Potential::from_V(zpow(4, Rat(1, 4)) - zpow(2, Rat(3, 2)))};
  for (auto& P : pots) {
    if (!kac_schwarz_check(P, 3).ok) return false;
    WaveEntry psi = wave_function(P, 1, 3);
    auto res = ks_residual_series(P, psi.expand(15 + 3 * P.r() + 8), 15);
    for (const auto& s : res)
      if (!s.zero_within_window()) return false;
    auto resd = ks_residual_series(P, psi.dual().expand(15 + 3 * P.r() + 8), 15, true);
    for (const auto& s : resd)
      if (!s.zero_within_window()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- criterion 7
bool criterion7() {
  Potential P = Potential::from_V(zpow(4, Rat(1, 12)));
  int hmax = 2, wcomplete = 4 * hmax;
  BTable B = two_point(P, hmax, wcomplete + 2, wcomplete + 2);
  auto tau = tau_from_affine(B, wcomplete, hmax);
  return hirota_check(tau, P.x(), 0, 6, hmax, wcomplete).ok &&
         hirota_check(tau, P.x(), 1, 6, hmax, wcomplete).ok;
}

// ---------------------------------------------------------------- criterion 9
bool criterion9() {
  // r = 2 pure: spectral-curve route vs the independent DVV oracle, all
  // stable (g,n) with 2g-2+n <= 4
  {
    RSpinConvention conv = RSpinConvention::make(2, Rat(1, 2));
    std::vector<Scalar> xc(3);
    xc[2] = Scalar::with_ring(conv.ring, Rat(1, 2));
    Poly x{std::move(xc)};
    SpectralCurve C = SpectralCurve::build(x, 44);
    TrEngine E(C);
    LambdaChart L = lambda_chart(x, conv.A, 44);
    std::vector<std::pair<int, int>> slices{{0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 1},
                                            {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}};
    CorrelatorTable lam;
    for (auto [g, n] : slices) tr_correlators_lambda(E.omega(g, n), C, L, 13, lam);
    for (auto [g, n] : slices) {
      int kpsi = 3 * g - 3 + n;
      if (kpsi < 0) continue;
      RSpinTable A = extract_rspin_chi(lam, conv, g, n, std::min(kpsi, 5));
      RSpinTable Bt = extract_rspin_relabel(lam, conv, g, n, std::min(kpsi, 5));
      if (!(A.entries() == Bt.entries())) return false;
      // entry-by-entry against DVV, and completeness of the table
      std::map<std::vector<int>, Rat> dvv_expected;
      std::function<void(std::vector<int>&, int, int)> gen = [&](std::vector<int>& cur,
                                                                 int pos, int lo) {
        if (pos == n) {
          long tot = 0;
          for (int k : cur) tot += k;
          if (tot == 3 * g - 3 + n) {
            mpq_class v = dvv_intersection(g, cur);
            if (v != 0) dvv_expected[cur] = Rat(v);
          }
          return;
        }
        for (int k = lo; k <= 3 * g - 3 + n; ++k) {
          cur[pos] = k;
          gen(cur, pos + 1, k);
        }
      };
      std::vector<int> cur(n, 0);
      gen(cur, 0, 0);
      for (const auto& [taus, v] : dvv_expected) {
        RSpinTable::Ins ins;
        for (int k : taus) ins.push_back({0, k});
        if (!(A.get(g, ins) == v)) return false;
      }
      for (const auto& [key, v] : A.entries()) {
        std::vector<int> taus;
        for (auto& [i, k] : key.second) {
          if (i != 0) return false;
          taus.push_back(k);
        }
        if (!(Rat(dvv_intersection(key.first, taus)) == v)) return false;
        if (!rspin_dimension_ok(2, key.first, key.second)) return false;
      }
    }
  }
  // r = 3 pure potential V = z^4/12: the two extraction routes agree
  // entry-by-entry and the dimension condition gates the table
  {
    RSpinConvention conv = RSpinConvention::make(3, Rat(1, 3));
    Poly V = Poly::monomial(Scalar::with_ring(conv.ring, Rat(1, 12)), 4);
    Potential P = Potential::from_V(V);
    std::vector<std::pair<int, int>> slices{{0, 3}, {0, 4}, {0, 5}, {0, 6}, {1, 1},
                                            {1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}};
    int kmax_by_n[7] = {0, 15, 15, 12, 13, 10, 11};
    int hmax = 4;
    BTable B = two_point(P, hmax, 68, 68, 68);
    CorrelatorTable zc;
    for (auto [g, n] : slices) connected_correlators(P, B, g, n, kmax_by_n[n], zc);
    LambdaChart L = lambda_chart(P.x(), conv.A, 70);
    for (auto [g, n] : slices) {
      CorrelatorTable lam;
      gkm_to_lambda(zc, g, n, L, kmax_by_n[n], lam);
      int kpsi = (8 * (g - 1) + 4 * n - n) / 3;  // dimension bound on single k
      kpsi = std::max(0, std::min(kpsi, 4));
      RSpinTable A = extract_rspin_chi(lam, conv, g, n, kpsi);
      RSpinTable Bt = extract_rspin_relabel(lam, conv, g, n, kpsi);
      if (!(A.entries() == Bt.entries())) return false;
      for (const auto& [key, v] : A.entries())
        if (!rspin_dimension_ok(3, key.first, key.second) && v != 0) return false;
    }
  }
  return true;
}

// --------------------------------------------------------------- criterion 10
bool criterion10() {
  // residue route through eps^6
  {
    const Ring* ring = Ring::make({{"eps", SymKind::Truncated, 0, 0}}, 6);
    Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(3)), 2);
    Potential P = Potential::deformed(U, {0}, ring);
    Scalar res = anomaly_residue_route(P);
    Scalar closed = anomaly_closed_form_d1(U, 0, ring);
    if (!(res == closed)) return false;
    if (!(closed == Scalar::symbol(ring, 0, 3) * Scalar(Rat(1, 36)))) return false;
    DeformedRun run = deformed_pipeline(U, {0}, ring, 3, 6, {{0, 1}, {1, 1}});
    auto f = anomaly_from_correlators(run.corr, 1);
    if (!f[0].is_zero()) return false;
    if (!(f[1] == Scalar::symbol(ring, 0, 3) * Scalar(Rat(1, 72)))) return false;
  }
  // string identity through eps^4, hbar^2, z^-12 with exactly this f
  {
    const Ring* ring = Ring::make({{"eps", SymKind::Truncated, 0, 0}}, 4);
    Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(3)), 2);
    DeformedRun run =
        deformed_pipeline(U, {0}, ring, 2, 13, {{0, 1}, {1, 1}, {0, 2}, {0, 3}, {1, 2}});
    Scalar f1 = Scalar::symbol(ring, 0, 3) * Scalar(Rat(1, 72));
    if (!(anomaly_from_correlators(run.corr, 1)[1] == f1)) return false;
    if (!string_equation_check(run.P, run.corr, 1, 0, 12, &f1).ok) return false;
    if (!string_equation_check(run.P, run.corr, 0, 2, 12).ok) return false;
    if (!string_equation_check(run.P, run.corr, 1, 1, 12).ok) return false;
  }
  return true;
}

// --------------------------------------------------------------- criterion 11
bool criterion11() {
  const Ring* ring = Ring::make({{"eps", SymKind::Truncated, 0, 0}}, 3);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(2)), 1);
  GiventalData G = givental_data(U, {0}, ring, 3);
  if (!givental_v_symmetric(G)) return false;
  if (!givental_r_relation(G)) return false;
  if (!givental_r_symplectic(G)) return false;
  for (int k = 0; k <= G.kcap; ++k)
    for (int a = 0; a < G.r - 1; ++a)
      for (int b = 0; b < G.r - 1; ++b) {
        Rat want = (k == 0 && a == b) ? 1 : 0;
        if (!(G.R[k][a][b].substitute(0, Rat(0)).rational_part() == want)) return false;
      }
  for (const auto& [key, v] : G.T) {
    Rat want = (key.second == 1 && key.first == 0) ? 1 : 0;
    if (!(v.substitute(0, Rat(0)).rational_part() == want)) return false;
  }
  for (const auto& row : G.Q)
    for (const auto& q : row)
      if (!(q.substitute(0, Rat(0)).rational_part() == 0)) return false;
  return true;
}

// --------------------------------------------------------------- criterion 12
bool criterion12() {
  // involution property and regularity on both acceptance curves
  for (Poly x : {zpow(3, Rat(1)) - zpow(1, Rat(3)), zpow(3, Rat(1, 3)) - zpow(1, Rat(1))}) {
    SpectralCurve C = SpectralCurve::build(x, 30);
    for (const auto& cp : C.crit()) {
      Series u = Series::monomial(Scalar(Rat(1)), 1, 24);
      Series twice = cp.invol.compose(cp.invol);
      if (!(twice - u).truncated(20).zero_within_window()) return false;
    }
    TrEngine E(C);
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}, {2, 1}})
      if (!E.regularity_check(g, n)) return false;
    if (!E.regularity_check_bergman()) return false;
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}, {2, 1}})
      if (!E.omega(g, n).symmetric() || !E.omega(g, n).no_simple_poles()) return false;
  }
  // homogeneity of the deformed-family correlators (deg z = 1/3,
  // deg hbar = 4/3, deg e = 2/3): each entry is a single e-monomial with
  // 2 deg_e = sum k - 4(2g-2+n)
  Potential P = example_potential();
  BTable B = two_point(P, 3, 30, 30);
  CorrelatorTable T;
  connected_correlators(P, B, 1, 1, 14, T);
  connected_correlators(P, B, 2, 1, 14, T);
  connected_correlators(P, B, 0, 3, 10, T);
  connected_correlators(P, B, 1, 2, 10, T);
  const Ring* ring = eps_ring();
  for (const auto& [key, v] : T.entries()) {
    const auto& [g, n, ks] = key;
    long total = 0;
    for (int k : ks) total += k;
    long num = total - 4 * (2 * g - 2 + n);
    if (num < 0 || num % 2 != 0) {
      if (!v.is_zero()) return false;
      continue;
    }
    unsigned e = static_cast<unsigned>(num / 2);
    if (!(v == v.coeff_of(0, e) * Scalar::symbol(ring, 0, e))) return false;
  }
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance suite (exact arithmetic)\n");
  run(1, "partition-function coefficients, V=z^4/12-(e/2)z^2", criterion1);
  run(2, "one-point differentials through z^-17", criterion2);
  run(3, "two-point differentials through z1^-9 z2^-9", criterion3);

  Crit45Data a, b;
  {
    auto t0 = std::chrono::steady_clock::now();
    a = crit45(zpow(3, Rat(1, 3)) - zpow(1, Rat(1)));
    b = crit45(zpow(3, Rat(1)) - zpow(1, Rat(3)));
    auto t1 = std::chrono::steady_clock::now();
    double dt = std::chrono::duration<double>(t1 - t0).count();
    report(4, "theorem-1 equality through z^-20, both curves", a.theorem1 && b.theorem1, dt);
    report(5, "string-equation suites, both pipelines + residues", a.strings && b.strings, 0.0);
  }
  run(6, "quantum curve / Kac-Schwarz, three potentials", criterion6);
  run(7, "Hirota and x-reduction residues, V=z^4/12", criterion7);
  report(8, "free-energy vanishing w_{2,0}=0, both curves", a.free_energy && b.free_energy, 0.0);
  run(9, "r-spin numbers: r=2 vs DVV oracle; r=3 route agreement", criterion9);
  run(10, "deformed anomaly f = hbar eps^3/72 and string identity", criterion10);
  run(11, "Givental data sanity (eps^0 and first order)", criterion11);
  run(12, "property suites: homogeneity/symmetry/involution/regularity", criterion12);

  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", failures);
  return 1;
}
