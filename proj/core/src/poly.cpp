#include "gkmtr/poly.hpp"

#include <algorithm>
#include <sstream>

namespace gkmtr {

namespace {
const Scalar kZero{};

bool invertible(const Scalar& s) {
  if (s.is_zero()) return false;
  try {
    (void)s.inverse();
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}
}  // namespace

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(Scalar c, int deg) {
  Poly p;
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<size_t>(deg) + 1, Scalar());
  p.c_[deg] = std::move(c);
  return p;
}

const Scalar& Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[k];
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.c_.resize(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < r.c_.size(); ++i) {
    if (i < a.c_.size()) r.c_[i] += a.c_[i];
    if (i < b.c_.size()) r.c_[i] += b.c_[i];
  }
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar());
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

Poly operator*(const Poly& a, const Scalar& s) {
  Poly r;
  if (s.is_zero()) return r;
  r.c_ = a.c_;
  for (auto& c : r.c_) c = c * s;
  r.trim();
  return r;
}

Poly Poly::derivative() const {
  Poly r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = c_[k] * Scalar(Rat(static_cast<long>(k)));
  r.trim();
  return r;
}

Poly Poly::integral() const {
  Poly r;
  if (c_.empty()) return r;
  r.c_.resize(c_.size() + 1);
  for (size_t k = 0; k < c_.size(); ++k)
    r.c_[k + 1] = c_[k] * Scalar(Rat(1, static_cast<long>(k + 1)));
  r.trim();
  return r;
}

Poly Poly::shift(int k) const {
  Poly r;
  if (c_.empty()) return r;
  r.c_.assign(c_.size() + k, Scalar());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i + k] = c_[i];
  return r;
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc;
  for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

std::vector<Scalar> Poly::taylor_at(const Scalar& a) const {
  std::vector<Scalar> work = c_;
  std::vector<Scalar> out;
  size_t n = c_.size();
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = n - 1; k-- > j;) work[k] += work[k + 1] * a;
    out.push_back(work[j]);
  }
  return out;
}

void Poly::divmod(const Poly& a, const Poly& d, Poly& q, Poly& r) {
  if (d.is_zero()) throw std::domain_error("poly division by zero");
  // Peel nilpotent leading monomials into a tail so the head has an
  // invertible leading coefficient; then divide in layers.
  Poly head = d, tail;
  while (!head.is_zero() && !invertible(head.lead())) {
    tail += Poly::monomial(head.lead(), head.degree());
    auto cs = head.coeffs();
    cs.pop_back();
    head = Poly(std::move(cs));
    head.trim();
  }
  if (head.is_zero()) throw std::domain_error("poly division: no invertible layer");
  const Scalar lead_inv = head.lead().inverse();
  const int hd = head.degree();

  q = Poly();
  Poly rem = a;
  for (int guard = 0; guard < 512; ++guard) {
    // plain division of rem by head
    Poly qk;
    while (!rem.is_zero() && rem.degree() >= hd) {
      Scalar f = rem.lead() * lead_inv;
      Poly t = Poly::monomial(std::move(f), rem.degree() - hd);
      qk += t;
      rem -= t * head;
    }
    q += qk;
    if (qk.is_zero() || tail.is_zero()) break;
    rem -= qk * tail;  // maintain a == q*d + rem
    if (rem.is_zero() || rem.degree() < hd) break;
  }
  r = rem;
}

Poly Poly::divexact(const Poly& a, const Poly& d) {
  Poly q, r;
  divmod(a, d, q, r);
  if (!r.is_zero()) throw std::domain_error("poly division not exact");
  return q;
}

std::optional<Poly> Poly::try_divide(const Poly& a, const Poly& d) {
  Poly q, r;
  try {
    divmod(a, d, q, r);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  if (!r.is_zero()) return std::nullopt;
  return q;
}

std::optional<Poly> Poly::adic_inverse() const {
  if (is_zero()) return std::nullopt;
  if (!invertible(coeff(0))) return std::nullopt;
  if (degree() == 0) return Poly(coeff(0).inverse());
  const Ring* ring = nullptr;
  for (const auto& c : c_)
    if (c.ring()) ring = c.ring();
  if (!ring) return std::nullopt;
  const Scalar c0inv = coeff(0).inverse();
  Poly n = (*this * c0inv) - Poly(Scalar(Rat(1)));  // candidate nilpotent part
  Poly acc(Scalar(Rat(1)));
  Poly term(Scalar(Rat(1)));
  for (unsigned k = 0; k <= ring->trunc_total() + 1; ++k) {
    term = term * n;
    if (term.is_zero()) break;
    if (k % 2 == 0) acc -= term;
    else acc += term;
  }
  Poly inv = acc * c0inv;
  if (!(inv * *this == Poly(Scalar(Rat(1))))) return std::nullopt;
  return inv;
}

Poly Poly::gcd_rational(Poly a, Poly b) {
  for (const auto& c : a.coeffs())
    if (!c.is_rational()) throw std::domain_error("gcd needs rational coefficients");
  for (const auto& c : b.coeffs())
    if (!c.is_rational()) throw std::domain_error("gcd needs rational coefficients");
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = a * a.lead().inverse();
  return a;
}

bool Poly::squarefree_rational() const {
  if (degree() <= 1) return true;
  Poly g = gcd_rational(*this, derivative());
  return g.degree() == 0;
}

namespace {
// divisors of |n|, capped; empty result signals blowup
std::vector<mpz_class> divisors(const mpz_class& n0, size_t cap = 4096) {
  mpz_class n = abs(n0);
  std::vector<mpz_class> ds{1};
  if (n <= 1) return ds;
  mpz_class rem = n, p = 2;
  size_t guard = 0;
  while (rem > 1) {
    if (++guard > 3000000) return {};
    if (p * p > rem) p = rem;
    if (mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) {
      size_t base = ds.size();
      mpz_class pk = 1;
      while (mpz_divisible_p(rem.get_mpz_t(), p.get_mpz_t())) {
        rem /= p;
        pk *= p;
        for (size_t i = 0; i < base; ++i) {
          ds.push_back(ds[i] * pk);
          if (ds.size() > cap) return {};
        }
      }
    }
    p += (p == 2) ? 1 : 2;
  }
  return ds;
}

Rat eval_int_poly(const std::vector<mpz_class>& f, const Rat& x) {
  Rat acc = 0;
  for (size_t k = f.size(); k-- > 0;) acc = acc * x + Rat(f[k]);
  return acc;
}
}  // namespace

std::optional<std::vector<Rat>> Poly::rational_roots_simple() const {
  if (is_zero() || degree() < 1) return std::vector<Rat>{};
  std::vector<Rat> rc;
  for (const auto& c : c_) {
    if (!c.is_rational()) return std::nullopt;
    rc.push_back(c.to_rational());
  }
  mpz_class den_lcm = 1;
  for (auto& q : rc) {
    mpz_class d = q.get_den();
    den_lcm = den_lcm / gcd(den_lcm, d) * d;
  }
  std::vector<mpz_class> p;
  for (auto& q : rc) p.push_back(mpz_class(q * den_lcm));

  std::vector<Rat> roots;
  size_t v = 0;
  while (v < p.size() && p[v] == 0) ++v;
  if (v > 1) return std::nullopt;  // z=0 is a multiple root
  if (v == 1) roots.push_back(Rat(0));
  p.erase(p.begin(), p.begin() + v);

  while (p.size() > 1) {
    auto d0 = divisors(p.front());
    auto dl = divisors(p.back());
    if (d0.empty() || dl.empty()) return std::nullopt;
    bool found = false;
    Rat root;
    for (const auto& a : d0) {
      for (const auto& b : dl) {
        for (int sgn = 0; sgn < 2; ++sgn) {
          Rat cand(sgn ? mpz_class(-a) : a, b);
          cand.canonicalize();
          if (eval_int_poly(p, cand) == 0) {
            found = true;
            root = cand;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
    roots.push_back(root);
    // synthetic deflation over Q, then re-clear denominators
    std::vector<Rat> qr(p.size() - 1);
    Rat carry = 0;
    for (size_t k = p.size(); k-- > 1;) {
      qr[k - 1] = Rat(p[k]) + carry;
      carry = qr[k - 1] * root;
    }
    mpz_class l = 1;
    for (auto& qq : qr) {
      mpz_class d = qq.get_den();
      l = l / gcd(l, d) * d;
    }
    p.assign(qr.size(), 0);
    for (size_t k = 0; k < qr.size(); ++k) p[k] = mpz_class(qr[k] * l);
  }

  std::vector<Rat> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1]) return std::nullopt;
  return roots;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].str() << ")";
    if (k == 1) os << "*" << var;
    else if (k > 1) os << "*" << var << "^" << k;
  }
  return os.str();
}

}  // namespace gkmtr
