#pragma once

#include "gkmtr/poly.hpp"

#include <map>
#include <vector>

namespace gkmtr {

// High-precision complex scalar for the numeric recursion backend
// (GMP floats, default 128-bit mantissa).
struct CNum {
  mpf_class re, im;

  CNum() : re(0), im(0) {}
  CNum(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}
  explicit CNum(const Rat& q) : re(mpf_class(q)), im(0) {}

  CNum operator+(const CNum& o) const { return {re + o.re, im + o.im}; }
  CNum operator-(const CNum& o) const { return {re - o.re, im - o.im}; }
  CNum operator-() const { return {-re, -im}; }
  CNum operator*(const CNum& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CNum operator/(const CNum& o) const {
    mpf_class d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  mpf_class abs2() const { return re * re + im * im; }
};

// Numeric mirror of the exact topological recursion: same residue algorithm
// over complex coefficients, for curves whose ramification data does not
// split over Q.  Comparisons are relative with tolerance 1e-20 by default.
class NumericTr {
 public:
  explicit NumericTr(const Poly& x, unsigned prec_bits = 128);

  int r() const { return static_cast<int>(xc_.size()) - 1; }
  const std::vector<CNum>& critical_points() const { return roots_; }

  // leg tensor of omega_{g,n} (legs (beta, order)), then z-mode correlators
  using Key = std::vector<std::pair<int, int>>;
  const std::map<Key, CNum>& omega(int g, int n);
  std::map<std::vector<int>, CNum> correlators_z(int g, int n, int kmax);

  static bool close(const CNum& a, const Rat& b, double rel_tol = 1e-20);

 private:
  unsigned prec_;
  int umax_ = 24;
  std::vector<CNum> xc_;   // coefficients of x
  std::vector<CNum> xpc_;  // coefficients of x'
  std::vector<CNum> roots_;
  struct Local {
    CNum z;
    std::vector<CNum> invol;   // s(u), index = power of u (from 1)
    std::vector<CNum> sprime;
    std::vector<CNum> Pser;    // P(u) Laurent from u^{-2}: index i -> u^{i-2}
  };
  std::vector<Local> loc_;
  std::map<std::pair<int, int>, std::map<Key, CNum>> memo_;
  void build_local();
  std::map<Key, CNum> compute(int g, int n1);
};

}  // namespace gkmtr
