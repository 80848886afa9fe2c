#pragma once

#include "gkmtr/potential.hpp"

namespace gkmtr {

// hbar-graded z^{-1}-expansion: psi[m] is the hbar^m coefficient as a series
// in t = 1/z.
using HSeries = std::vector<Series>;

// Wave function Psi_k, one exact rational function in z per hbar-order
// (denominators are powers of V'').
struct WaveEntry {
  int k = 1;
  std::vector<RatFun> h;  // h[m]: hbar^m coefficient

  int hmax() const { return static_cast<int>(h.size()) - 1; }
  // hbar -> -hbar twist (the dual family)
  WaveEntry dual() const;
  HSeries expand(int zmax) const;
};

// Formal Gaussian construction: shift phi -> phi + z, second moment
// -hbar/V''(z), Wick-expand the cubic-and-higher vertices against
// (phi + z)^{ k-1 }.  The hbar^0 part is exactly z^{k-1}.
WaveEntry wave_function(const Potential& P, int k, int hmax);

// Q_V = z - (hbar/x') d_z + (hbar/2) x''/x'^2; dual flips the hbar terms.
WaveEntry apply_q(const Potential& P, const WaveEntry& psi, bool dual = false);

// (x(Q) - x(z)) Psi per hbar-order; zero for the true wave function.
std::vector<RatFun> ks_residual(const Potential& P, const WaveEntry& psi, bool dual = false);

struct KsReport {
  bool ok = true;
  int h_fail = -1;  // first failing hbar order
  int z_fail = 0;   // first failing z^{-k} index (series checker only)
};

// Exact rational-function check of (x(Q_V) - x)Psi_V = 0 and the dual
// equation; certified through hbar^hmax.
KsReport kac_schwarz_check(const Potential& P, int hmax);

// Series-space variant of the residual, usable with a perturbed family.
HSeries ks_residual_series(const Potential& P, const HSeries& psi, int zmax, bool dual = false);

// Quantum-curve view: same constraint as kac_schwarz_check; additionally
// returns S0(z) = int z dx(z) (polynomial primitive).  S1 = -log(x')/2 is
// kept symbolic by the conjugation identity and has no independent content.
struct QuantumCurveData {
  KsReport report;
  Poly s0;
};
QuantumCurveData quantum_curve_check(const Potential& P, int hmax);

// Rational helpers shared by the pipelines.
Rat binomial(long n, long k);
Rat double_factorial_odd(long m);  // (2m-1)!! with (-1)!! = 1
Rat factorial(long n);

}  // namespace gkmtr
