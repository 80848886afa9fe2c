#include "gkmtr/ratfun.hpp"

#include <sstream>

namespace gkmtr {

RatFun::RatFun(Poly num, Poly base, int pow)
    : num_(std::move(num)), base_(std::move(base)), pow_(pow) {
  if (base_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (pow_ < 0) throw std::invalid_argument("negative denominator power");
  if (base_.degree() == 0) {
    // constant base folds into the numerator
    Scalar inv = base_.lead().inverse();
    num_ = num_ * inv.pow(pow_);
    base_ = Poly(Scalar(Rat(1)));
    pow_ = 0;
  }
  reduce();
}

void RatFun::reduce() {
  if (num_.is_zero()) {
    pow_ = 0;
    base_ = Poly(Scalar(Rat(1)));
    return;
  }
  while (pow_ > 0) {
    auto q = Poly::try_divide(num_, base_);
    if (!q) break;
    num_ = *q;
    --pow_;
  }
  if (pow_ == 0) base_ = Poly(Scalar(Rat(1)));
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.pow_ == 0 && b.pow_ == 0) return RatFun(a.num_ + b.num_);
  const Poly& base = a.pow_ > 0 ? a.base_ : b.base_;
  if (a.pow_ > 0 && b.pow_ > 0 && !(a.base_ == b.base_))
    throw std::logic_error("rational function bases differ");
  int p = std::max(a.pow_, b.pow_);
  Poly na = a.num_, nb = b.num_;
  for (int k = a.pow_; k < p; ++k) na = na * base;
  for (int k = b.pow_; k < p; ++k) nb = nb * base;
  return RatFun(na + nb, base, p);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun();
  if (a.pow_ > 0 && b.pow_ > 0 && !(a.base_ == b.base_))
    throw std::logic_error("rational function bases differ");
  const Poly& base = a.pow_ > 0 ? a.base_ : b.base_;
  return RatFun(a.num_ * b.num_, base, a.pow_ + b.pow_);
}

RatFun operator*(const RatFun& a, const Scalar& s) {
  RatFun r = a;
  r.num_ = r.num_ * s;
  if (r.num_.is_zero()) return RatFun();
  return r;
}

bool operator==(const RatFun& a, const RatFun& b) {
  // cross-multiplied comparison
  Poly lhs = a.num_, rhs = b.num_;
  for (int k = 0; k < b.pow_; ++k) lhs = lhs * b.base_;
  for (int k = 0; k < a.pow_; ++k) rhs = rhs * a.base_;
  return lhs == rhs;
}

RatFun RatFun::derivative() const {
  if (pow_ == 0) return RatFun(num_.derivative());
  Poly n = num_.derivative() * base_ - num_ * base_.derivative() * Scalar(Rat(pow_));
  return RatFun(std::move(n), base_, pow_ + 1);
}

Series RatFun::expand_at_inf(int hi) const {
  Series n = expand_poly_at_inf(num_, hi + pow_ * std::max(0, base_.degree()) + 4);
  if (pow_ == 0) return n.truncated(hi);
  Series binv = expand_inv_poly_at_inf(base_, hi + num_.degree() + pow_ * base_.degree() + 4);
  Series r = n;
  for (int k = 0; k < pow_; ++k) r = r * binv;
  return r.truncated(hi);
}

Series RatFun::laurent_at(const Scalar& a, int hi) const {
  Poly nu(num_.taylor_at(a));
  Series n = Series::from_poly_in_t(nu);
  if (pow_ == 0) return n.truncated(hi);
  Poly bu(base_.taylor_at(a));
  Series b = Series::from_poly_in_t(bu);
  int v = b.valuation();
  if (v > b.hi()) throw std::domain_error("denominator vanishes identically at point");
  int win = hi + pow_ * v + bu.degree() + 4;
  Series binv = b.truncated(win).inverse();
  Series r = n.truncated(win);
  for (int k = 0; k < pow_; ++k) r = r * binv;
  return r.truncated(hi);
}

Scalar RatFun::residue_at(const Scalar& a) const {
  Series l = laurent_at(a, 1);
  return l.coeff_or_zero(-1);
}

Scalar RatFun::residue_at_infinity(int guard_hi) const {
  Series s = expand_at_inf(std::max(1, guard_hi));
  return -s.coeff_or_zero(1);
}

std::string RatFun::str() const {
  std::ostringstream os;
  os << "(" << num_.str() << ")";
  if (pow_ > 0) os << " / (" << base_.str() << ")^" << pow_;
  return os.str();
}

PartialFractions partial_fractions(const Poly& num, const Poly& den,
                                   const std::vector<Scalar>& poles) {
  PartialFractions pf;
  if (den.is_zero()) throw std::domain_error("partial fractions: zero denominator");
  // verify the denominator splits over the given points
  Poly rest = den;
  std::vector<int> mult(poles.size(), 0);
  for (size_t i = 0; i < poles.size(); ++i) {
    Poly lin = Poly::z() - Poly(poles[i]);
    for (;;) {
      auto q = Poly::try_divide(rest, lin);
      if (!q) break;
      rest = *q;
      ++mult[i];
    }
  }
  if (rest.degree() != 0)
    throw std::domain_error("denominator does not split over the declared poles");
  Scalar lead = rest.coeff(0);

  Poly q, r;
  Poly::divmod(num, den, q, r);
  pf.polynomial_part = q;

  RatFun frac(r, den, 1);
  for (size_t i = 0; i < poles.size(); ++i) {
    if (mult[i] == 0) continue;
    Series l = frac.laurent_at(poles[i], 0);
    for (int m = 1; m <= mult[i]; ++m) {
      Scalar c = l.coeff_or_zero(-m);
      if (!c.is_zero()) pf.terms[{i, m}] = c;
    }
  }
  (void)lead;
  return pf;
}

bool partial_fractions_reassemble_equals(const PartialFractions& pf,
                                         const std::vector<Scalar>& poles,
                                         const Poly& num, const Poly& den) {
  // lhs = (poly_part + sum c/(z-b)^m) * den ; compare with num
  Poly acc = pf.polynomial_part * den;
  for (const auto& [key, c] : pf.terms) {
    Poly lin = Poly::z() - Poly(poles[key.first]);
    Poly linm(Scalar(Rat(1)));
    for (int k = 0; k < key.second; ++k) linm = linm * lin;
    acc = acc + Poly::divexact(den, linm) * c;
  }
  return acc == num;
}

}  // namespace gkmtr
