#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <vector>
#include <stdexcept>

namespace gkmtr {

using Rat = mpq_class;

std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

// canonicalized n/d (mpq_class's two-argument constructor does not reduce
// and requires a positive denominator)
inline Rat ratq(long n, long d) {
  Rat q(n, d < 0 ? -d : d);
  if (d < 0) q = -q;
  q.canonicalize();
  return q;
}

// Extension symbols adjoined to Q.
//   Free:      ordinary parameter, no relation.
//   PowerRoot: s^order = value (value a nonzero rational); exponents reduced mod order.
//   Truncated: nilpotent deformation parameter; the ring truncates the total
//              degree across all Truncated symbols at trunc_total.
enum class SymKind : uint8_t { Free, PowerRoot, Truncated };

struct SymbolDef {
  std::string name;
  SymKind kind = SymKind::Free;
  unsigned order = 0;  // PowerRoot only
  Rat value = 0;       // PowerRoot only
};

class Ring {
public:
  // Interned: equal descriptions yield the same pointer, valid for the process
  // lifetime. At most 8 symbols per ring.
  static const Ring* make(std::vector<SymbolDef> symbols, unsigned trunc_total = 0);

  const std::vector<SymbolDef>& symbols() const { return syms_; }
  unsigned trunc_total() const { return trunc_total_; }
  int index_of(const std::string& name) const;  // -1 if absent

private:
  Ring() = default;
  std::vector<SymbolDef> syms_;
  unsigned trunc_total_ = 0;
  friend class Scalar;
};

// Element of Q or of a declared quotient ring over Q.  Monomials in the ring
// symbols are packed 8 bits per exponent into a 64-bit key.
class Scalar {
public:
  Scalar() = default;
  Scalar(const Rat& q) { if (q != 0) t_.emplace_back(0u, q); }
  Scalar(long n) : Scalar(Rat(n)) {}
  Scalar(int n) : Scalar(Rat(n)) {}

  static Scalar symbol(const Ring* ring, int sym_index, unsigned exp = 1);
  static Scalar with_ring(const Ring* ring, const Rat& q);

  const Ring* ring() const { return ring_; }
  bool is_zero() const { return t_.empty(); }
  bool is_rational() const;
  // Raises if any symbol exponent survives.
  Rat to_rational() const;
  // Rational part (coefficient of the trivial monomial).
  Rat rational_part() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
  friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Exact inverse.  Defined for single invertible monomials and for units of
  // the form c*(1+n) with n nilpotent; raises otherwise.
  Scalar inverse() const;
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  Scalar pow(long e) const;

  // Substitute a rational value for a Free symbol.
  Scalar substitute(int sym_index, const Rat& v) const;
  // Degree in a given symbol (0 for zero scalar).
  unsigned degree_in(int sym_index) const;
  // Coefficient of sym^k (a scalar over the remaining symbols).
  Scalar coeff_of(int sym_index, unsigned k) const;

  size_t term_count() const { return t_.size(); }
  std::string str() const;  // human-readable, deterministic

  const std::vector<std::pair<uint64_t, Rat>>& terms() const { return t_; }

private:
  void add_term(uint64_t mono, const Rat& c);
  void require_compatible(const Scalar& o);
  const Ring* ring_ = nullptr;
  std::vector<std::pair<uint64_t, Rat>> t_;  // sorted by key, no zero coeffs
  friend struct ScalarOps;
};

inline Scalar operator*(const Scalar& a, const Rat& q) { return a * Scalar(q); }
inline Scalar operator*(const Rat& q, const Scalar& a) { return a * Scalar(q); }

}  // namespace gkmtr
