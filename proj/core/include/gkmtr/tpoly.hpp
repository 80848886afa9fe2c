#pragma once

#include "gkmtr/partition.hpp"
#include "gkmtr/scalar.hpp"
#include "gkmtr/series.hpp"

#include <map>

namespace gkmtr {

// Monomial in the KP times T_1..T_16, one nibble of exponent per index.
using TMono = uint64_t;

TMono tmono_mul(TMono a, TMono b);
TMono tmono_of(int index, unsigned exp = 1);   // T_index^exp
unsigned tmono_exp(TMono m, int index);
int tmono_weight(TMono m);                     // sum k * e_k
int tmono_degree(TMono m);                     // sum e_k
std::string tmono_str(TMono m);

// Sparse polynomial in T_1..T_16 over Scalar.
class TPoly {
public:
  TPoly() = default;
  explicit TPoly(Scalar c) { if (!c.is_zero()) t_[0] = std::move(c); }

  static TPoly monomial(TMono m, Scalar c);

  bool is_zero() const { return t_.empty(); }
  const std::map<TMono, Scalar>& terms() const { return t_; }
  Scalar coeff(TMono m) const;

  TPoly operator-() const;
  TPoly& operator+=(const TPoly& o);
  friend TPoly operator+(TPoly a, const TPoly& b) { a += b; return a; }
  friend TPoly operator-(TPoly a, const TPoly& b) { a += -b; return a; }
  friend TPoly operator*(const TPoly& a, const Scalar& s);
  friend bool operator==(const TPoly& a, const TPoly& b) { return a.t_ == b.t_; }

  // Product with a cap on the T-weight (sum k*e_k) of retained monomials;
  // weight_cap < 0 keeps everything.
  static TPoly mul(const TPoly& a, const TPoly& b, int weight_cap = -1);

  // Substitute T_k -> v_k (scalar values).
  Scalar eval(const std::vector<Scalar>& v) const;
  // Substitute T_k -> series s_k(t); result certified through the tightest
  // window of the inputs actually used.
  Series eval_series(const std::vector<Series>& s) const;

  std::string str() const;

private:
  std::map<TMono, Scalar> t_;
};

// Complete homogeneous generators h_0..h_n in the convention
// sum_k h_k y^k = exp(sum_m T_m y^m).
std::vector<TPoly> complete_homogeneous(int n);

// Schur polynomial S_mu(T) in the same convention (Jacobi-Trudi).
TPoly schur(const Partition& mu);

}  // namespace gkmtr
