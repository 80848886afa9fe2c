// Command-line driver: parse a potential or curve, run the requested
// pipeline, emit JSON/CSV tables and verification reports.
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 infeasible caps.

#include <CLI11.hpp>
#include <json.hpp>

#include "gkmtr/deformed.hpp"
#include "gkmtr/dvv.hpp"
#include "gkmtr/expand.hpp"
#include "gkmtr/expr.hpp"
#include "gkmtr/io.hpp"
#include "gkmtr/numeric.hpp"
#include "gkmtr/rspin.hpp"
#include "gkmtr/tau.hpp"

#include <fstream>
#include <iostream>

using namespace gkmtr;

namespace {

struct Caps {
  int gmax = 1;
  int nmax = 2;
  int zorder = 10;
  int horder = 3;
  int eorder = 4;
  std::string backend = "exact";
  unsigned precision = 128;
  std::string format = "json";
  std::string out;
};

void add_caps(CLI::App* cmd, Caps& caps) {
  cmd->add_option("--gmax", caps.gmax, "largest genus");
  cmd->add_option("--nmax", caps.nmax, "largest number of insertions");
  cmd->add_option("--zorder", caps.zorder, "z^{-1} expansion order per leg");
  cmd->add_option("--horder", caps.horder, "hbar truncation order");
  cmd->add_option("--eorder", caps.eorder, "eps truncation order (deformed)");
  cmd->add_option("--backend", caps.backend, "exact | numeric")
      ->check(CLI::IsMember({"exact", "numeric"}));
  cmd->add_option("--precision", caps.precision, "numeric backend mantissa bits");
  cmd->add_option("--format", caps.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", caps.out, "output path (stdout when absent)");
}

void emit(const Caps& caps, const RunMeta& meta, const CorrelatorTable& corr,
          const std::vector<ReportLine>& reports, const std::string& extra_json = "") {
  std::string payload;
  if (caps.format == "csv") {
    payload = to_csv(corr);
  } else {
    payload = to_json(meta, corr, reports);
    if (!extra_json.empty()) {
      // splice the extra object into the top-level document
      payload.erase(payload.rfind('}'));
      payload.pop_back();  // newline
      payload += ",\n" + extra_json + "\n}\n";
    }
  }
  if (caps.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(caps.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + caps.out);
    f << payload;
  }
}

const Ring* ring_for(const Expr& e) {
  std::vector<SymbolDef> syms;
  for (const auto& name : expr_params(e)) syms.push_back({name, SymKind::Free, 0, 0});
  return Ring::make(std::move(syms));
}

Potential potential_from_text(const std::string& text) {
  Expr e = parse_expr(text);
  return Potential::from_V(expr_to_poly(e, ring_for(e)));
}

Poly curve_from_text(const std::string& text) {
  Expr e = parse_expr(text);
  return expr_to_poly(e, ring_for(e));
}

RunMeta meta_for(const std::string& mode, const std::string& pot, const Caps& caps) {
  RunMeta m;
  m.mode = mode;
  m.potential = pot;
  m.caps = {{"gmax", std::to_string(caps.gmax)},
            {"nmax", std::to_string(caps.nmax)},
            {"zorder", std::to_string(caps.zorder)},
            {"horder", std::to_string(caps.horder)},
            {"eorder", std::to_string(caps.eorder)},
            {"backend", caps.backend}};
  return m;
}

int hbar_needed(int gmax, int nmax) { return std::max(1, 2 * gmax - 2 + nmax); }

CorrelatorTable gkm_tables(const Potential& P, int gmax, int nmax, int kmax) {
  int hmax = hbar_needed(gmax, nmax);
  int ext = std::max(kmax + 1, nmax * kmax);
  BTable B = two_point(P, hmax, ext, ext, ext);
  CorrelatorTable T;
  for (int g = 0; g <= gmax; ++g)
    for (int n = 1; n <= nmax; ++n)
      if (2 * g - 2 + n <= hmax) connected_correlators(P, B, g, n, kmax, T);
  return T;
}

int cmd_gkm(const std::string& pot, const Caps& caps, bool emit_tau) {
  Potential P = potential_from_text(pot);
  CorrelatorTable T = gkm_tables(P, caps.gmax, caps.nmax, caps.zorder);
  std::vector<ReportLine> reports;
  std::string extra;
  if (emit_tau) {
    int hmax = caps.horder;
    int cap = (P.r() + 1) * hmax;
    int ext = cap + 2;
    BTable B = two_point(P, hmax, ext, ext, ext);
    auto tau = tau_from_affine(B, cap, hmax);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int h = 0; h <= hmax; ++h) {
      for (const auto& [mono, cval] : tau[h].terms()) {
        if (mono == 0 && h == 0) continue;
        nlohmann::ordered_json e;
        e["hbar"] = h;
        std::vector<int> idx;
        for (int i = 1; i <= 16; ++i)
          for (unsigned t = 0; t < tmono_exp(mono, i); ++t) idx.push_back(i);
        e["indices"] = idx;
        e["value"] = scalar_to_string(cval);
        arr.push_back(e);
      }
    }
    extra = "\"tau\": " + arr.dump(2);
  }
  emit(caps, meta_for("gkm", pot, caps), T, reports, extra);
  return 0;
}

int cmd_tr(const std::string& xs, const Caps& caps) {
  Poly x = curve_from_text(xs);
  CorrelatorTable T;
  std::vector<ReportLine> reports;
  if (caps.backend == "numeric") {
    NumericTr N(x, caps.precision);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (int g = 0; g <= caps.gmax; ++g)
      for (int n = 1; n <= caps.nmax; ++n) {
        if (2 * g - 2 + n <= 0) continue;
        for (auto& [ks, v] : N.correlators_z(g, n, caps.zorder)) {
          nlohmann::ordered_json e;
          e["g"] = g;
          e["n"] = n;
          e["indices"] = ks;
          mp_exp_t ex;
          e["re"] = v.re.get_str(ex, 10, 24) + "e" + std::to_string(ex);
          e["im"] = v.im.get_str(ex, 10, 24) + "e" + std::to_string(ex);
          arr.push_back(e);
        }
      }
    emit(caps, meta_for("tr-numeric", xs, caps), T, reports,
         "\"numeric-correlators\": " + arr.dump(2));
    return 0;
  }
  SpectralCurve C = SpectralCurve::build(x, 2 * (3 * caps.gmax + caps.nmax) + 8);
  TrEngine E(C);
  for (int g = 0; g <= caps.gmax; ++g)
    for (int n = 1; n <= caps.nmax; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      tr_correlators_z(E.omega(g, n), C, caps.zorder, T);
    }
  for (int g = 2; g <= caps.gmax; ++g) {
    ReportLine r;
    r.name = "free-energy g=" + std::to_string(g);
    Scalar w = E.free_energy(g);
    r.ok = true;
    r.detail = scalar_to_string(w);
    reports.push_back(r);
  }
  emit(caps, meta_for("tr", xs, caps), T, reports);
  return 0;
}

int cmd_verify_theorem1(const std::string& xs, const Caps& caps) {
  Poly x = curve_from_text(xs);
  // V with V' = x
  Potential P = Potential::from_V(x.integral());
  SpectralCurve C = SpectralCurve::build(x, 2 * (3 * caps.gmax + caps.nmax) + 8);
  TrEngine E(C);
  std::vector<std::pair<int, int>> slices;
  for (int g = 0; g <= caps.gmax; ++g)
    for (int n = 1; n <= caps.nmax; ++n)
      if (2 * g - 2 + n > 0) slices.push_back({g, n});
  int kmax = caps.zorder;
  int hmax = 0, next = 1;
  for (auto [g, n] : slices) {
    hmax = std::max(hmax, 2 * g - 2 + n);
    next = std::max(next, n);
  }
  int ext = std::max(kmax + 1, next * kmax);
  BTable B = two_point(P, hmax, ext, ext, ext);
  CorrelatorTable TG, TT;
  bool ok = true;
  std::vector<ReportLine> reports;
  for (auto [g, n] : slices) {
    connected_correlators(P, B, g, n, kmax, TG);
    tr_correlators_z(E.omega(g, n), C, kmax, TT);
    bool slice_ok = true;
    for (const auto& [key, v] : TT.entries()) {
      const auto& [gg, nn, ks] = key;
      if (gg != g || nn != n) continue;
      if (!(TG.get(g, n, ks) == v)) slice_ok = false;
    }
    for (const auto& [key, v] : TG.entries()) {
      const auto& [gg, nn, ks] = key;
      if (gg != g || nn != n) continue;
      if (!(TT.get(g, n, ks) == v)) slice_ok = false;
    }
    reports.push_back({"theorem1 (" + std::to_string(g) + "," + std::to_string(n) + ")",
                       slice_ok, ""});
    ok = ok && slice_ok;
  }
  emit(caps, meta_for("verify-theorem1", xs, caps), TG, reports);
  return ok ? 0 : 1;
}

int cmd_verify_string(const std::string& pot, const Caps& caps) {
  Potential P = potential_from_text(pot);
  CorrelatorTable T = gkm_tables(P, caps.gmax, caps.nmax + 1, caps.zorder);
  bool ok = true;
  std::vector<ReportLine> reports;
  for (int g = 0; g <= caps.gmax; ++g)
    for (int n = 0; n <= caps.nmax; ++n) {
      if (2 * g - 2 + n + 1 <= 0) continue;
      auto rep = string_equation_check(P, T, g, n, caps.zorder - 1);
      reports.push_back({"string (" + std::to_string(g) + "," + std::to_string(n) + ")",
                         rep.ok, ""});
      ok = ok && rep.ok;
    }
  emit(caps, meta_for("verify-string", pot, caps), T, reports);
  return ok ? 0 : 1;
}

int cmd_verify_qc(const std::string& pot, const Caps& caps) {
  Potential P = potential_from_text(pot);
  auto qc = quantum_curve_check(P, caps.horder);
  std::vector<ReportLine> reports;
  reports.push_back({"kac-schwarz", qc.report.ok, ""});
  reports.push_back({"S0 primitive", true, qc.s0.str()});
  CorrelatorTable empty;
  emit(caps, meta_for("verify-qc", pot, caps), empty, reports);
  return qc.report.ok ? 0 : 1;
}

int cmd_verify_hirota(const std::string& pot, const Caps& caps, int degcap, int kred) {
  Potential P = potential_from_text(pot);
  int hmax = caps.horder;
  int wcomplete = (P.r() + 1) * hmax;
  int ext = wcomplete + 2;
  BTable B = two_point(P, hmax, ext, ext, ext);
  auto tau = tau_from_affine(B, wcomplete, hmax);
  bool ok = true;
  std::vector<ReportLine> reports;
  for (int k = 0; k <= kred; ++k) {
    auto rep = hirota_check(tau, P.x(), k, degcap, hmax, wcomplete);
    reports.push_back({"hirota k=" + std::to_string(k), rep.ok, ""});
    ok = ok && rep.ok;
  }
  CorrelatorTable empty;
  emit(caps, meta_for("verify-hirota", pot, caps), empty, reports);
  return ok ? 0 : 1;
}

int cmd_rspin(int r, const Caps& caps) {
  // pure potential V = z^{r+1}/(r(r+1))
  Rat ar(1, r);
  RSpinConvention conv = RSpinConvention::make(r, ar);
  std::vector<Scalar> xc(static_cast<size_t>(r) + 1);
  xc[r] = Scalar::with_ring(conv.ring, ar);
  Poly x{std::move(xc)};
  Potential P = Potential::from_V(x.integral());
  int kpsi = std::max(1, caps.zorder / r);
  int kmax = r * kpsi + r;
  CorrelatorTable zc = gkm_tables(P, caps.gmax, caps.nmax, std::max(kmax, caps.nmax * 2));
  LambdaChart L = lambda_chart(x, conv.A, 4 * kmax + 8);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  bool ok = true;
  for (int g = 0; g <= caps.gmax; ++g)
    for (int n = 1; n <= caps.nmax; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      CorrelatorTable lam;
      gkm_to_lambda(zc, g, n, L, kmax, lam);
      RSpinTable T = extract_rspin_chi(lam, conv, g, n, kpsi);
      for (const auto& [key, v] : T.entries()) {
        const auto& [gg, ins] = key;
        nlohmann::ordered_json e;
        e["g"] = gg;
        nlohmann::ordered_json insj = nlohmann::ordered_json::array();
        for (auto& [i, k] : ins) insj.push_back({i, k});
        e["insertions"] = insj;
        e["value"] = rat_to_string(v);
        arr.push_back(e);
        if (r == 2) {
          std::vector<int> taus;
          for (auto& [i, k] : ins) taus.push_back(k);
          if (!(v == Rat(dvv_intersection(gg, taus)))) ok = false;
        }
      }
    }
  CorrelatorTable empty;
  std::vector<ReportLine> reports;
  if (r == 2) reports.push_back({"dvv-oracle", ok, ""});
  emit(caps, meta_for("rspin", "r=" + std::to_string(r), caps), empty, reports,
       "\"rspin\": " + arr.dump(2));
  return ok ? 0 : 1;
}

int cmd_verify_rspin_cross(int r, const Caps& caps) {
  Rat ar(1, r);
  RSpinConvention conv = RSpinConvention::make(r, ar);
  std::vector<Scalar> xc(static_cast<size_t>(r) + 1);
  xc[r] = Scalar::with_ring(conv.ring, ar);
  Poly x{std::move(xc)};
  Potential P = Potential::from_V(x.integral());
  int kpsi = std::max(1, caps.zorder / r);
  int kmax = r * kpsi + r;
  CorrelatorTable zc = gkm_tables(P, caps.gmax, caps.nmax, std::max(kmax, caps.nmax * 2));
  LambdaChart L = lambda_chart(x, conv.A, 4 * kmax + 8);
  bool ok = true;
  std::vector<ReportLine> reports;
  for (int g = 0; g <= caps.gmax; ++g)
    for (int n = 1; n <= caps.nmax; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      CorrelatorTable lam;
      gkm_to_lambda(zc, g, n, L, kmax, lam);
      RSpinTable A = extract_rspin_chi(lam, conv, g, n, kpsi);
      RSpinTable Bt = extract_rspin_relabel(lam, conv, g, n, kpsi);
      bool slice = A.entries() == Bt.entries();
      for (const auto& [key, v] : A.entries())
        if (!rspin_dimension_ok(r, key.first, key.second) && v != 0) slice = false;
      reports.push_back({"rspin-cross (" + std::to_string(g) + "," + std::to_string(n) + ")",
                         slice, ""});
      ok = ok && slice;
    }
  CorrelatorTable empty;
  emit(caps, meta_for("verify-rspin-cross", "r=" + std::to_string(r), caps), empty, reports);
  return ok ? 0 : 1;
}

std::pair<DeformedV2, const Ring*> deformed_from_text(const std::string& text, int eorder) {
  Expr e = parse_expr(text);
  std::vector<SymbolDef> syms;
  for (const auto& name : expr_params(e)) syms.push_back({name, SymKind::Truncated, 0, 0});
  const Ring* ring = Ring::make(std::move(syms), eorder);
  return {expr_to_deformed_v2(e, ring), ring};
}

int cmd_deformed(const std::string& v2, const Caps& caps) {
  auto [dv, ring] = deformed_from_text(v2, caps.eorder);
  std::vector<std::pair<int, int>> slices;
  for (int g = 0; g <= caps.gmax; ++g)
    for (int n = 1; n <= caps.nmax; ++n)
      if (2 * g - 2 + n <= caps.horder) slices.push_back({g, n});
  DeformedRun run = deformed_pipeline(dv.U, dv.eps_syms, ring, caps.horder, caps.zorder, slices);
  auto f = anomaly_from_correlators(run.corr, caps.gmax);
  std::vector<ReportLine> reports;
  for (int g = 0; g <= caps.gmax; ++g)
    reports.push_back({"f_" + std::to_string(g), true, scalar_to_string(f[g])});
  emit(caps, meta_for("deformed", v2, caps), run.corr, reports);
  return 0;
}

int cmd_verify_deformed_string(const std::string& v2, const Caps& caps) {
  auto [dv, ring] = deformed_from_text(v2, caps.eorder);
  std::vector<std::pair<int, int>> slices;
  for (int g = 0; g <= caps.gmax; ++g)
    for (int n = 1; n <= caps.nmax + 1; ++n)
      if (2 * g - 2 + n <= caps.horder) slices.push_back({g, n});
  DeformedRun run = deformed_pipeline(dv.U, dv.eps_syms, ring, caps.horder, caps.zorder, slices);
  auto f = anomaly_from_correlators(run.corr, caps.gmax);
  bool ok = f[0].is_zero();
  std::vector<ReportLine> reports;
  reports.push_back({"f_0 = 0", f[0].is_zero(), scalar_to_string(f[0])});
  if (dv.eps_syms.size() == 1) {
    Scalar closed = anomaly_closed_form_d1(dv.U, dv.eps_syms[0], ring) * Scalar(Rat(1, 2));
    bool match = caps.gmax >= 1 && f[1] == closed;
    reports.push_back({"f_1 = eps/(24 U(1/eps))", match, scalar_to_string(f[1])});
    ok = ok && match;
  }
  for (int g = 0; g <= caps.gmax; ++g)
    for (int n = 0; n <= caps.nmax; ++n) {
      if (2 * g - 2 + n + 1 <= 0 || 2 * g - 2 + n + 1 > caps.horder) continue;
      const Scalar* fg = (g < static_cast<int>(f.size())) ? &f[g] : nullptr;
      auto rep = string_equation_check(run.P, run.corr, g, n, caps.zorder - 1, fg);
      reports.push_back({"deformed-string (" + std::to_string(g) + "," + std::to_string(n) + ")",
                         rep.ok, ""});
      ok = ok && rep.ok;
    }
  emit(caps, meta_for("verify-deformed-string", v2, caps), run.corr, reports);
  return ok ? 0 : 1;
}

int cmd_givental(int r, const Caps& caps, int kcap) {
  const Ring* ring = Ring::make({{"e", SymKind::Truncated, 0, 0}}, caps.eorder);
  Poly U = Poly::monomial(Scalar::with_ring(ring, Rat(r)), r - 1);
  GiventalData G = givental_data(U, {0}, ring, kcap);
  bool ok = givental_v_symmetric(G) && givental_r_relation(G) && givental_r_symplectic(G);
  std::vector<ReportLine> reports;
  reports.push_back({"V symmetric", givental_v_symmetric(G), ""});
  reports.push_back({"R defining relation", givental_r_relation(G), ""});
  reports.push_back({"R symplectic", givental_r_symplectic(G), ""});
  nlohmann::ordered_json j;
  j["R"] = nlohmann::ordered_json::array();
  for (int k = 0; k <= G.kcap; ++k) {
    nlohmann::ordered_json mat = nlohmann::ordered_json::array();
    for (auto& row : G.R[k]) {
      nlohmann::ordered_json rj = nlohmann::ordered_json::array();
      for (auto& v : row) rj.push_back(scalar_to_string(v));
      mat.push_back(rj);
    }
    j["R"].push_back(mat);
  }
  j["T"] = nlohmann::ordered_json::array();
  for (auto& [key, v] : G.T)
    j["T"].push_back({{"a", key.first}, {"k", key.second}, {"value", scalar_to_string(v)}});
  CorrelatorTable empty;
  emit(caps, meta_for("givental", "r=" + std::to_string(r), caps), empty, reports,
       "\"givental\": " + j.dump(2));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact GKM / topological recursion engine"};
  app.set_config("--config")->configurable(false);
  app.require_subcommand(1);

  Caps caps;
  std::string potential, xcurve;
  bool emit_tau = false;
  int rr = 2, kcap = 3, degcap = 6, kred = 1;

  auto* gkm = app.add_subcommand("gkm", "matrix-model correlators / tau coefficients");
  gkm->add_option("--potential", potential, "V(z)")->required();
  gkm->add_flag("--emit-tau,--emit", emit_tau, "also emit tau-expansion coefficients");
  add_caps(gkm, caps);

  auto* tr = app.add_subcommand("tr", "topological recursion correlators");
  tr->add_option("--x", xcurve, "x(z) of the spectral curve")->required();
  add_caps(tr, caps);

  auto* rspin = app.add_subcommand("rspin", "r-spin intersection numbers (pure potential)");
  rspin->add_option("--r", rr, "spin order r >= 2")->required();
  add_caps(rspin, caps);

  auto* deformed = app.add_subcommand("deformed", "eps-adic deformed pipeline");
  deformed->add_option("--potential", potential, "V''(z) = U/prod(1-eps z)")->required();
  add_caps(deformed, caps);

  auto* givental = app.add_subcommand("givental", "R-matrix / T-vector / Q-data");
  givental->add_option("--r", rr, "spin order")->required();
  givental->add_option("--kcap", kcap, "matrix order cap");
  add_caps(givental, caps);

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* vstring = verify->add_subcommand("string", "string-equation identities");
  vstring->add_option("--potential", potential)->required();
  add_caps(vstring, caps);
  auto* vhirota = verify->add_subcommand("hirota", "Hirota / x-reduction residues");
  vhirota->add_option("--potential", potential)->required();
  vhirota->add_option("--degcap", degcap, "total (T,T')-monomial degree cap");
  vhirota->add_option("--kred", kred, "largest x-power insertion");
  add_caps(vhirota, caps);
  auto* vqc = verify->add_subcommand("qc", "quantum curve / Kac-Schwarz");
  vqc->add_option("--potential", potential)->required();
  add_caps(vqc, caps);
  auto* vtheorem1 = verify->add_subcommand("theorem1", "GKM vs recursion equality");
  vtheorem1->add_option("--x", xcurve)->required();
  add_caps(vtheorem1, caps);
  auto* vrspin = verify->add_subcommand("rspin-cross", "two r-spin extraction routes");
  vrspin->add_option("--r", rr)->required();
  add_caps(vrspin, caps);
  auto* vdef = verify->add_subcommand("deformed-string", "deformed string + anomaly");
  vdef->add_option("--potential", potential)->required();
  add_caps(vdef, caps);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gkm->parsed()) return cmd_gkm(potential, caps, emit_tau);
    if (tr->parsed()) return cmd_tr(xcurve, caps);
    if (rspin->parsed()) return cmd_rspin(rr, caps);
    if (deformed->parsed()) return cmd_deformed(potential, caps);
    if (givental->parsed()) return cmd_givental(rr, caps, kcap);
    if (verify->parsed()) {
      if (vstring->parsed()) return cmd_verify_string(potential, caps);
      if (vhirota->parsed()) return cmd_verify_hirota(potential, caps, degcap, kred);
      if (vqc->parsed()) return cmd_verify_qc(potential, caps);
      if (vtheorem1->parsed()) return cmd_verify_theorem1(xcurve, caps);
      if (vrspin->parsed()) return cmd_verify_rspin_cross(rr, caps);
      if (vdef->parsed()) return cmd_verify_deformed_string(potential, caps);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: infeasible caps: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
