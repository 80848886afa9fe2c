#pragma once

#include "gkmtr/series.hpp"

#include <map>

namespace gkmtr {

// Rational function num(z) / base(z)^pow.  The denominator is kept in the
// factored form the pipelines produce (powers of V''(z), of U_r(z), ...),
// which keeps addition and division exact without multivariate gcd.
class RatFun {
public:
  RatFun() : base_(Scalar(Rat(1))), pow_(0) {}
  RatFun(Poly num) : num_(std::move(num)), base_(Scalar(Rat(1))), pow_(0) {}
  RatFun(Poly num, Poly base, int pow);

  static RatFun zero() { return RatFun(); }

  const Poly& num() const { return num_; }
  const Poly& base() const { return base_; }
  int pow() const { return pow_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const Scalar& s);
  friend RatFun operator*(const Scalar& s, const RatFun& a) { return a * s; }
  RatFun& operator+=(const RatFun& o) { *this = *this + o; return *this; }
  RatFun& operator-=(const RatFun& o) { *this = *this - o; return *this; }
  friend bool operator==(const RatFun& a, const RatFun& b);

  RatFun derivative() const;

  // Expansion in t = z^{-1}, certified through t^hi.
  Series expand_at_inf(int hi) const;
  // Laurent expansion in u = z - a, certified through u^hi.
  Series laurent_at(const Scalar& a, int hi) const;
  // Residues: coefficient of (z-a)^{-1}, resp. -[z^{-1}] at infinity.
  Scalar residue_at(const Scalar& a) const;
  Scalar residue_at_infinity(int guard_hi = 8) const;

  std::string str() const;

private:
  void reduce();
  Poly num_;
  Poly base_;
  int pow_;
};

// Exact partial-fraction decomposition of num/den over the given simple-or-
// multiple poles: num/den = poly_part + sum c_{b,m} / (z - b)^m.
struct PartialFractions {
  Poly polynomial_part;
  // (pole index, order m>=1) -> coefficient
  std::map<std::pair<size_t, int>, Scalar> terms;
};
PartialFractions partial_fractions(const Poly& num, const Poly& den,
                                   const std::vector<Scalar>& poles);
// Reassemble (for verification); returns num'/den' as a pair with den' = den.
bool partial_fractions_reassemble_equals(const PartialFractions& pf,
                                         const std::vector<Scalar>& poles,
                                         const Poly& num, const Poly& den);

}  // namespace gkmtr
