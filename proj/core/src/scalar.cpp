#include "gkmtr/scalar.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace gkmtr {

std::string rat_to_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

namespace {
std::mutex g_ring_mutex;
std::vector<std::unique_ptr<Ring>>& ring_pool() {
  static std::vector<std::unique_ptr<Ring>> pool;
  return pool;
}
}  // namespace

const Ring* Ring::make(std::vector<SymbolDef> symbols, unsigned trunc_total) {
  if (symbols.size() > 8) throw std::invalid_argument("at most 8 ring symbols");
  for (auto& s : symbols) {
    if (s.kind == SymKind::PowerRoot && (s.order < 2 || s.value == 0))
      throw std::invalid_argument("bad PowerRoot symbol " + s.name);
  }
  std::lock_guard<std::mutex> lock(g_ring_mutex);
  for (auto& r : ring_pool()) {
    if (r->trunc_total_ != trunc_total || r->syms_.size() != symbols.size()) continue;
    bool same = true;
    for (size_t i = 0; i < symbols.size(); ++i) {
      const auto& a = r->syms_[i];
      const auto& b = symbols[i];
      if (a.name != b.name || a.kind != b.kind || a.order != b.order || a.value != b.value) {
        same = false;
        break;
      }
    }
    if (same) return r.get();
  }
  auto r = std::unique_ptr<Ring>(new Ring());
  r->syms_ = std::move(symbols);
  r->trunc_total_ = trunc_total;
  ring_pool().push_back(std::move(r));
  return ring_pool().back().get();
}

int Ring::index_of(const std::string& name) const {
  for (size_t i = 0; i < syms_.size(); ++i)
    if (syms_[i].name == name) return static_cast<int>(i);
  return -1;
}

namespace {

inline unsigned mono_exp(uint64_t m, int i) { return (m >> (8 * i)) & 0xffu; }
inline uint64_t mono_set(uint64_t m, int i, unsigned e) {
  m &= ~(uint64_t(0xff) << (8 * i));
  m |= uint64_t(e & 0xffu) << (8 * i);
  return m;
}

// Reduce a raw monomial by the ring relations.  Returns false if the term dies
// (truncated away); multiplies *c by the PowerRoot reduction factors.
bool reduce_mono(const Ring* ring, uint64_t& m, Rat* c) {
  if (!ring) {
    if (m != 0) throw std::logic_error("symbol term without ring");
    return true;
  }
  const auto& syms = ring->symbols();
  unsigned trunc_deg = 0;
  for (size_t i = 0; i < syms.size(); ++i) {
    unsigned e = mono_exp(m, static_cast<int>(i));
    if (e == 0) continue;
    switch (syms[i].kind) {
      case SymKind::Free:
        break;
      case SymKind::PowerRoot: {
        unsigned ord = syms[i].order;
        if (e >= ord) {
          unsigned q = e / ord;
          if (c) {
            Rat f = 1;
            for (unsigned k = 0; k < q; ++k) f *= syms[i].value;
            *c *= f;
          }
          e %= ord;
          m = mono_set(m, static_cast<int>(i), e);
        }
        break;
      }
      case SymKind::Truncated:
        trunc_deg += e;
        break;
    }
  }
  if (trunc_deg > ring->trunc_total()) return false;
  return true;
}

// Product of two already-reduced monomials; false if truncated away.
bool mono_mul(const Ring* ring, uint64_t a, uint64_t b, uint64_t& out, Rat* c) {
  size_t n = ring ? ring->symbols().size() : 0;
  uint64_t m = 0;
  for (size_t i = 0; i < n; ++i) {
    unsigned e = mono_exp(a, static_cast<int>(i)) + mono_exp(b, static_cast<int>(i));
    if (e > 255) throw std::overflow_error("symbol exponent overflow");
    m = mono_set(m, static_cast<int>(i), e);
  }
  if (!ring && (a | b)) throw std::logic_error("symbol term without ring");
  if (!reduce_mono(ring, m, c)) return false;
  out = m;
  return true;
}

}  // namespace

Scalar Scalar::symbol(const Ring* ring, int sym_index, unsigned exp) {
  if (!ring || sym_index < 0 || sym_index >= static_cast<int>(ring->symbols().size()))
    throw std::invalid_argument("bad symbol index");
  Scalar s;
  s.ring_ = ring;
  uint64_t m = mono_set(0, sym_index, exp);
  Rat c = 1;
  if (reduce_mono(ring, m, &c) && c != 0) s.t_.emplace_back(m, c);
  return s;
}

Scalar Scalar::with_ring(const Ring* ring, const Rat& q) {
  Scalar s(q);
  s.ring_ = ring;
  return s;
}

bool Scalar::is_rational() const {
  return t_.empty() || (t_.size() == 1 && t_[0].first == 0);
}

Rat Scalar::to_rational() const {
  if (t_.empty()) return 0;
  if (!is_rational()) throw std::domain_error("scalar is not rational: " + str());
  return t_[0].second;
}

Rat Scalar::rational_part() const {
  if (!t_.empty() && t_[0].first == 0) return t_[0].second;
  return 0;
}

void Scalar::require_compatible(const Scalar& o) {
  if (!ring_) ring_ = o.ring_;
  else if (o.ring_ && o.ring_ != ring_)
    throw std::logic_error("mixing scalars from different rings");
}

void Scalar::add_term(uint64_t mono, const Rat& c) {
  if (c == 0) return;
  auto it = std::lower_bound(t_.begin(), t_.end(), mono,
                             [](const auto& p, uint64_t k) { return p.first < k; });
  if (it != t_.end() && it->first == mono) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  } else {
    t_.insert(it, {mono, c});
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& p : r.t_) p.second = -p.second;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_compatible(o);
  for (const auto& p : o.t_) add_term(p.first, p.second);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_compatible(o);
  for (const auto& p : o.t_) add_term(p.first, -p.second);
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar r;
  r.ring_ = a.ring_ ? a.ring_ : b.ring_;
  if (a.ring_ && b.ring_ && a.ring_ != b.ring_)
    throw std::logic_error("mixing scalars from different rings");
  if (a.t_.empty() || b.t_.empty()) return r;
  for (const auto& pa : a.t_) {
    for (const auto& pb : b.t_) {
      Rat c = pa.second * pb.second;
      uint64_t m;
      if (!mono_mul(r.ring_, pa.first, pb.first, m, &c)) continue;
      r.add_term(m, c);
    }
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.t_.size() != b.t_.size()) return false;
  for (size_t i = 0; i < a.t_.size(); ++i)
    if (a.t_[i].first != b.t_[i].first || a.t_[i].second != b.t_[i].second) return false;
  return true;
}

Scalar Scalar::inverse() const {
  if (t_.empty()) throw std::domain_error("division by zero scalar");
  if (t_.size() == 1) {
    uint64_t m = t_[0].first;
    if (m == 0) {
      Scalar r;
      r.ring_ = ring_;
      r.t_.emplace_back(0u, Rat(1) / t_[0].second);
      return r;
    }
    // Invert the monomial symbol by symbol.
    Scalar r = with_ring(ring_, Rat(1) / t_[0].second);
    const auto& syms = ring_->symbols();
    for (size_t i = 0; i < syms.size(); ++i) {
      unsigned e = mono_exp(m, static_cast<int>(i));
      if (e == 0) continue;
      if (syms[i].kind != SymKind::PowerRoot)
        throw std::domain_error("scalar not invertible: " + str());
      // s^-1 = s^(ord-1)/value
      unsigned ord = syms[i].order;
      Scalar inv_sym = symbol(ring_, static_cast<int>(i), ord - 1) * Scalar(Rat(1) / syms[i].value);
      r = r * inv_sym.pow(e);
    }
    return r;
  }
  // Unit plus nilpotent part: c*(1 + n) with every non-leading term nilpotent.
  if (t_[0].first != 0)
    throw std::domain_error("scalar not invertible: " + str());
  if (!ring_) throw std::domain_error("scalar not invertible: " + str());
  const auto& syms = ring_->symbols();
  Scalar n;  // nilpotent remainder / c
  n.ring_ = ring_;
  Rat c = t_[0].second;
  for (size_t k = 1; k < t_.size(); ++k) {
    bool nil = false;
    for (size_t i = 0; i < syms.size(); ++i)
      if (mono_exp(t_[k].first, static_cast<int>(i)) > 0 && syms[i].kind == SymKind::Truncated)
        nil = true;
    if (!nil) throw std::domain_error("scalar not invertible: " + str());
    n.t_.emplace_back(t_[k].first, t_[k].second / c);
  }
  // (1+n)^-1 = sum (-n)^k, finite by nilpotency
  Scalar acc = with_ring(ring_, 1);
  Scalar term = with_ring(ring_, 1);
  for (unsigned k = 0; k <= ring_->trunc_total(); ++k) {
    term = term * n;
    if (term.is_zero()) break;
    if (k % 2 == 0) acc -= term; else acc += term;
  }
  return acc * Scalar(Rat(1) / c);
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r = ring_ ? with_ring(ring_, 1) : Scalar(Rat(1));
  Scalar b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::substitute(int sym_index, const Rat& v) const {
  if (!ring_) return *this;
  Scalar r;
  r.ring_ = ring_;
  for (const auto& p : t_) {
    unsigned e = mono_exp(p.first, sym_index);
    Rat c = p.second;
    for (unsigned k = 0; k < e; ++k) c *= v;
    r.add_term(mono_set(p.first, sym_index, 0), c);
  }
  return r;
}

unsigned Scalar::degree_in(int sym_index) const {
  unsigned d = 0;
  for (const auto& p : t_) d = std::max(d, mono_exp(p.first, sym_index));
  return d;
}

Scalar Scalar::coeff_of(int sym_index, unsigned k) const {
  Scalar r;
  r.ring_ = ring_;
  for (const auto& p : t_)
    if (mono_exp(p.first, sym_index) == k)
      r.add_term(mono_set(p.first, sym_index, 0), p.second);
  return r;
}

std::string Scalar::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& p : t_) {
    if (!first) os << " + ";
    first = false;
    os << p.second;
    if (p.first != 0 && ring_) {
      for (size_t i = 0; i < ring_->symbols().size(); ++i) {
        unsigned e = mono_exp(p.first, static_cast<int>(i));
        if (e == 0) continue;
        os << "*" << ring_->symbols()[i].name;
        if (e > 1) os << "^" << e;
      }
    }
  }
  return os.str();
}

}  // namespace gkmtr
