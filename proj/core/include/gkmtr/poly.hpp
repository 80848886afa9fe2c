#pragma once

#include "gkmtr/scalar.hpp"

#include <optional>
#include <vector>

namespace gkmtr {

// Dense univariate polynomial over Scalar in the geometric variable z.
// Multivariate content (deformation / extension symbols) lives in the
// coefficients.
class Poly {
public:
  Poly() = default;
  Poly(Scalar c) { c_.push_back(std::move(c)); trim(); }
  Poly(const Rat& q) : Poly(Scalar(q)) {}
  explicit Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly monomial(Scalar c, int deg);
  static Poly z() { return monomial(Scalar(Rat(1)), 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  const Scalar& coeff(int k) const;
  const Scalar& lead() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
  Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
  Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
  friend Poly operator*(const Poly& a, const Scalar& s);
  friend Poly operator*(const Scalar& s, const Poly& a) { return a * s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative() const;
  // Antiderivative with zero constant term; coefficient division must be exact.
  Poly integral() const;
  Poly shift(int k) const;  // multiply by z^k, k >= 0
  Scalar eval(const Scalar& x) const;
  // Taylor coefficients of p(a+u) in u
  std::vector<Scalar> taylor_at(const Scalar& a) const;

  // Division with remainder; requires invertible leading coefficient of d, or
  // a divisor whose leading nilpotent layers admit layered division.
  static void divmod(const Poly& a, const Poly& d, Poly& q, Poly& r);
  // Exact division; raises if a remainder survives.
  static Poly divexact(const Poly& a, const Poly& d);
  // True (and quotient) if d divides a exactly.
  static std::optional<Poly> try_divide(const Poly& a, const Poly& d);

  // Inverse of a polynomial whose constant term is a unit and all other
  // coefficients are nilpotent (deformation truncation); result is a Poly.
  std::optional<Poly> adic_inverse() const;

  // Pure-rational helpers (raise if a coefficient has symbols).
  static Poly gcd_rational(Poly a, Poly b);
  bool squarefree_rational() const;
  // All roots in Q, with multiplicities verified simple; nullopt on failure
  // to split.  Intended for splitting x'(z).
  std::optional<std::vector<Rat>> rational_roots_simple() const;

  std::string str(const std::string& var = "z") const;

private:
  void trim();
  std::vector<Scalar> c_;  // c_[k] multiplies z^k; invariant: no trailing zero
};

}  // namespace gkmtr
