#include "gkmtr/series.hpp"

#include <algorithm>
#include <sstream>

namespace gkmtr {

namespace {
const Scalar kZero{};

int wadd(int a, int b) {
  if (a >= Series::EXACT || b >= Series::EXACT) return Series::EXACT;
  return a + b;
}
}  // namespace

void Series::normalize() {
  size_t front = 0;
  while (front < c_.size() && c_[front].is_zero()) ++front;
  if (front > 0) {
    c_.erase(c_.begin(), c_.begin() + front);
    lo_ += static_cast<int>(front);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (c_.empty()) lo_ = wadd(hi_, 1);
  if (lo_ > hi_ && !c_.empty()) throw std::logic_error("series window corrupt");
}

Series Series::constant(Scalar c, int hi) {
  return monomial(std::move(c), 0, hi);
}

Series Series::monomial(Scalar c, int k, int hi) {
  Series s;
  s.hi_ = hi;
  if (hi < k || c.is_zero()) {
    s.lo_ = wadd(hi, 1);
    return s;
  }
  s.lo_ = k;
  s.c_.push_back(std::move(c));
  return s;
}

Series Series::from_poly_in_t(const Poly& p) {
  Series s;
  s.hi_ = EXACT;
  s.lo_ = 0;
  s.c_ = p.coeffs();
  s.normalize();
  return s;
}

bool Series::zero_within_window() const { return c_.empty(); }

const Scalar& Series::coeff(int k) const {
  if (k > hi_) throw std::out_of_range("uncertified series coefficient");
  if (k < lo_ || k - lo_ >= static_cast<int>(c_.size())) return kZero;
  return c_[k - lo_];
}

int Series::valuation() const {
  return c_.empty() ? wadd(hi_, 1) : lo_;
}

Series Series::truncated(int new_hi) const {
  if (new_hi >= hi_) return *this;
  Series s;
  s.hi_ = new_hi;
  s.lo_ = lo_;
  for (int k = lo_; k <= new_hi && k - lo_ < static_cast<int>(c_.size()); ++k)
    s.c_.push_back(c_[k - lo_]);
  s.normalize();
  return s;
}

Series Series::shifted(int d) const {
  Series s = *this;
  s.lo_ += d;
  s.hi_ = wadd(s.hi_, d);
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

Series operator+(const Series& a, const Series& b) {
  Series s;
  s.hi_ = std::min(a.hi_, b.hi_);
  s.lo_ = std::min(a.lo_, b.lo_);
  if (s.lo_ > s.hi_) { s.lo_ = wadd(s.hi_, 1); return s; }
  if (s.hi_ >= Series::EXACT) {
    // both effectively polynomial windows: size by the stored supports
    int top = -1;
    if (!a.c_.empty()) top = std::max(top, a.lo_ + static_cast<int>(a.c_.size()) - 1);
    if (!b.c_.empty()) top = std::max(top, b.lo_ + static_cast<int>(b.c_.size()) - 1);
    if (top < s.lo_) { s.lo_ = wadd(s.hi_, 1); return s; }
    s.c_.assign(static_cast<size_t>(top - s.lo_ + 1), Scalar());
  } else {
    s.c_.assign(static_cast<size_t>(s.hi_ - s.lo_ + 1), Scalar());
  }
  for (size_t i = 0; i < a.c_.size(); ++i) {
    int k = a.lo_ + static_cast<int>(i);
    if (k >= s.lo_ && k - s.lo_ < static_cast<int>(s.c_.size())) s.c_[k - s.lo_] += a.c_[i];
  }
  for (size_t i = 0; i < b.c_.size(); ++i) {
    int k = b.lo_ + static_cast<int>(i);
    if (k >= s.lo_ && k - s.lo_ < static_cast<int>(s.c_.size())) s.c_[k - s.lo_] += b.c_[i];
  }
  s.normalize();
  return s;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  Series s;
  s.hi_ = std::min(wadd(a.hi_, b.lo_), wadd(b.hi_, a.lo_));
  if (a.c_.empty() || b.c_.empty()) {
    s.lo_ = wadd(s.hi_, 1);
    return s;
  }
  s.lo_ = a.lo_ + b.lo_;
  int top = s.hi_;
  if (top >= Series::EXACT)
    top = a.lo_ + static_cast<int>(a.c_.size()) - 1 + b.lo_ + static_cast<int>(b.c_.size()) - 1;
  if (top < s.lo_) { s.lo_ = wadd(s.hi_, 1); return s; }
  s.c_.assign(static_cast<size_t>(top - s.lo_ + 1), Scalar());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    int ka = a.lo_ + static_cast<int>(i);
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      int k = ka + b.lo_ + static_cast<int>(j);
      if (k > top) break;
      s.c_[k - s.lo_] += a.c_[i] * b.c_[j];
    }
  }
  s.normalize();
  return s;
}

Series operator*(const Series& a, const Scalar& x) {
  Series s = a;
  if (x.is_zero()) {
    s.c_.clear();
    s.lo_ = wadd(s.hi_, 1);
    return s;
  }
  for (auto& c : s.c_) c = c * x;
  s.normalize();
  return s;
}

Series Series::dt() const {
  Series s;
  s.hi_ = (hi_ >= EXACT) ? EXACT : hi_ - 1;
  s.lo_ = lo_ - 1;
  s.c_.resize(c_.size());
  for (size_t i = 0; i < c_.size(); ++i)
    s.c_[i] = c_[i] * Scalar(Rat(lo_ + static_cast<long>(i)));
  s.normalize();
  return s;
}

Series Series::inverse() const {
  if (c_.empty()) throw std::domain_error("series inverse of zero");
  if (hi_ >= EXACT) throw std::domain_error("series inverse needs a finite window; truncate first");
  int v = lo_;
  Scalar a0inv = c_[0].inverse();
  int n = hi_ - v;                 // coefficients a_{v..v+n} known
  Series s;
  s.lo_ = -v;
  s.hi_ = hi_ - 2 * v;
  s.c_.assign(static_cast<size_t>(n + 1), Scalar());
  s.c_[0] = a0inv;
  for (int m = 1; m <= n; ++m) {
    Scalar acc;
    for (int j = 1; j <= m; ++j) {
      const Scalar& aj = (j < static_cast<int>(c_.size())) ? c_[j] : kZero;
      if (aj.is_zero() || s.c_[m - j].is_zero()) continue;
      acc += aj * s.c_[m - j];
    }
    s.c_[m] = -(a0inv * acc);
  }
  s.normalize();
  return s;
}

Series Series::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Series r = Series::constant(Scalar(Rat(1)), hi_ >= EXACT ? EXACT : hi_);
  Series b = *this;
  // keep the window of the base so certification follows product rules
  while (e > 0) {
    if (e & 1) r = r * b;
    b = (e > 1) ? b * b : b;
    e >>= 1;
  }
  return r;
}

Series Series::exp0() const {
  if (!c_.empty() && valuation() < 1) throw std::domain_error("exp0 needs valuation >= 1");
  if (hi_ >= EXACT) throw std::domain_error("exp0 needs finite window");
  int n = hi_;
  Series s;
  s.lo_ = 0;
  s.hi_ = n;
  s.c_.assign(static_cast<size_t>(n + 1), Scalar());
  s.c_[0] = Scalar(Rat(1));
  // k f_k = sum_{j=1..k} j a_j f_{k-j}
  for (int k = 1; k <= n; ++k) {
    Scalar acc;
    for (int j = 1; j <= k; ++j) {
      const Scalar& aj = coeff_or_zero(j);
      if (aj.is_zero() || s.c_[k - j].is_zero()) continue;
      acc += Scalar(Rat(j)) * aj * s.c_[k - j];
    }
    s.c_[k] = acc * Scalar(Rat(1, k));
  }
  s.normalize();
  return s;
}

Series Series::log1p() const {
  if (!c_.empty() && valuation() < 1) throw std::domain_error("log1p needs valuation >= 1");
  if (hi_ >= EXACT) throw std::domain_error("log1p needs finite window");
  int n = hi_;
  // (1+s) g' = s'  =>  k g_k = k s_k - sum_{j=1..k-1} j g_j s_{k-j}
  Series g;
  g.lo_ = 0;
  g.hi_ = n;
  g.c_.assign(static_cast<size_t>(n + 1), Scalar());
  for (int k = 1; k <= n; ++k) {
    Scalar acc = Scalar(Rat(k)) * coeff_or_zero(k);
    for (int j = 1; j < k; ++j) {
      const Scalar& sj = coeff_or_zero(k - j);
      if (sj.is_zero() || g.c_[j].is_zero()) continue;
      acc -= Scalar(Rat(j)) * g.c_[j] * sj;
    }
    g.c_[k] = acc * Scalar(Rat(1, k));
  }
  g.normalize();
  return g;
}

Series Series::pow_frac(const Rat& pq) const {
  Series l = log1p();
  return (l * Scalar(pq)).exp0();
}

Series Series::compose(const Series& g) const {
  if (!g.c_.empty() && !c_.empty() && g.valuation() < 1)
    throw std::domain_error("compose needs inner valuation >= 1");
  if (lo_ < 0 && !c_.empty())
    throw std::domain_error("compose needs a nonnegative outer window");
  int top = c_.empty() ? -1 : lo_ + static_cast<int>(c_.size()) - 1;
  Series acc;  // exact zero
  for (int k = top; k >= 0; --k) {
    acc = acc * g;
    const Scalar& ck = coeff(k);
    if (!ck.is_zero()) acc = acc + Series::constant(ck, acc.hi());
  }
  if (hi_ < EXACT) acc = acc.truncated(std::min(acc.hi(), hi_));
  return acc;
}

Series eval_poly(const Poly& p, const Series& g) {
  Series acc;  // exact zero
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * g;
    const Scalar& ck = p.coeff(k);
    if (!ck.is_zero()) acc = acc + Series::constant(ck, acc.hi());
  }
  return acc;
}

Series Series::reversion() const {
  if (c_.empty() || valuation() != 1) throw std::domain_error("reversion needs valuation 1");
  if (hi_ >= EXACT) throw std::domain_error("reversion needs finite window");
  int n = hi_;
  Scalar f1inv = c_[0].inverse();
  Series g = Series::monomial(f1inv, 1, n);
  // Newton: g <- g - (f(g) - t) / f'(g)
  Series t = Series::monomial(Scalar(Rat(1)), 1, n);
  for (int it = 0; it < 64; ++it) {
    Series err = compose(g) - t;
    if (err.zero_within_window()) break;
    Series fp = dt().compose(g);
    Series corr = err * fp.inverse();
    g = (g - corr).truncated(n);
  }
  Series check = compose(g) - t;
  if (!check.zero_within_window()) throw std::logic_error("series reversion failed to converge");
  return g;
}

std::string Series::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    int k = lo_ + static_cast<int>(i);
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].str() << ")";
    if (k != 0) os << "*" << var << "^" << k;
  }
  if (first) os << "0";
  if (hi_ < EXACT) os << " + O(" << var << "^" << (hi_ + 1) << ")";
  return os.str();
}

Series kth_root_at_inf(const Series& s, int k, const Scalar& lead_root) {
  if (k < 1) throw std::invalid_argument("root order must be positive");
  if (s.zero_within_window()) throw std::domain_error("root of zero series");
  int v = s.valuation();
  if (v % k != 0)
    throw std::domain_error("leading exponent not divisible by the root order");
  const Scalar& lead = s.coeff(v);
  if (!(lead_root.pow(k) == lead))
    throw std::domain_error("leading term is not the k-th power of the given root");
  Series unit = s.shifted(-v) * lead.inverse();  // 1 + O(t)
  Series w = unit - Series::constant(Scalar(Rat(1)), unit.hi());
  Series root_unit = w.pow_frac(Rat(1, k));
  return (root_unit * lead_root).shifted(v / k);
}

std::optional<Scalar> scalar_kth_root(const Scalar& s, int k) {
  if (!s.is_rational()) return std::nullopt;
  Rat q = s.to_rational();
  if (q == 0) return Scalar(Rat(0));
  bool neg = q < 0;
  if (neg && k % 2 == 0) return std::nullopt;
  mpq_class a = abs(q);
  mpz_class rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), a.get_num().get_mpz_t(), k);
  int exact_d = mpz_root(rd.get_mpz_t(), a.get_den().get_mpz_t(), k);
  if (!exact_n || !exact_d) return std::nullopt;
  Rat r(rn, rd);
  r.canonicalize();
  return Scalar(neg ? -r : r);
}

Series expand_poly_at_inf(const Poly& p, int hi) {
  // t = 1/z, so z^k -> t^{-k}
  Series out = Series::zero_to(hi);
  for (int k = 0; k <= p.degree(); ++k)
    out += Series::monomial(p.coeff(k), -k, hi);
  return out;
}

Series expand_inv_poly_at_inf(const Poly& p, int hi) {
  if (p.is_zero()) throw std::domain_error("1/0 expansion");
  // Split off the layer with zero total degree in truncated symbols.
  const Ring* ring = nullptr;
  for (const auto& c : p.coeffs())
    if (c.ring()) ring = c.ring();
  std::vector<int> trunc_syms;
  if (ring)
    for (size_t i = 0; i < ring->symbols().size(); ++i)
      if (ring->symbols()[i].kind == SymKind::Truncated) trunc_syms.push_back(static_cast<int>(i));

  Poly p0 = p;
  if (!trunc_syms.empty()) {
    std::vector<Scalar> cs;
    for (const auto& c : p.coeffs()) {
      Scalar s = c;
      for (int idx : trunc_syms) s = s.coeff_of(idx, 0);
      cs.push_back(s);
    }
    p0 = Poly(std::move(cs));
  }
  if (p0.is_zero()) throw std::domain_error("1/p expansion: zero leading layer");

  int pad = 0;
  Poly q = p - p0;
  if (!q.is_zero() && ring)
    pad = static_cast<int>(ring->trunc_total()) * std::max(0, q.degree() - p0.degree());
  int work_hi = hi + pad + 1;

  Series inv0 = expand_poly_at_inf(p0, work_hi + 2 * p0.degree()).truncated(work_hi + 2 * p0.degree()).inverse();
  inv0 = inv0.truncated(work_hi);
  if (q.is_zero()) return inv0.truncated(hi);

  Series qs = expand_poly_at_inf(q, work_hi);
  Series qq = qs * inv0;  // nilpotent coefficients
  Series acc = inv0;
  Series term = inv0;
  unsigned tmax = ring ? ring->trunc_total() : 0;
  for (unsigned k = 0; k <= tmax; ++k) {
    term = term * qq;
    if (term.zero_within_window()) break;
    if (k % 2 == 0) acc -= term;
    else acc += term;
  }
  return acc.truncated(hi);
}

}  // namespace gkmtr
