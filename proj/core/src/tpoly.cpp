#include "gkmtr/tpoly.hpp"

#include <sstream>

namespace gkmtr {

TMono tmono_of(int index, unsigned exp) {
  if (index < 1 || index > 16) throw std::out_of_range("T index out of range 1..16");
  if (exp > 15) throw std::overflow_error("T exponent > 15");
  return static_cast<uint64_t>(exp) << (4 * (index - 1));
}

unsigned tmono_exp(TMono m, int index) { return (m >> (4 * (index - 1))) & 0xfu; }

TMono tmono_mul(TMono a, TMono b) {
  TMono r = 0;
  for (int i = 1; i <= 16; ++i) {
    unsigned e = tmono_exp(a, i) + tmono_exp(b, i);
    if (e > 15) throw std::overflow_error("T exponent overflow");
    r |= static_cast<uint64_t>(e) << (4 * (i - 1));
  }
  return r;
}

int tmono_weight(TMono m) {
  int w = 0;
  for (int i = 1; i <= 16; ++i) w += i * static_cast<int>(tmono_exp(m, i));
  return w;
}

int tmono_degree(TMono m) {
  int d = 0;
  for (int i = 1; i <= 16; ++i) d += static_cast<int>(tmono_exp(m, i));
  return d;
}

std::string tmono_str(TMono m) {
  if (m == 0) return "1";
  std::ostringstream os;
  bool first = true;
  for (int i = 1; i <= 16; ++i) {
    unsigned e = tmono_exp(m, i);
    if (!e) continue;
    if (!first) os << "*";
    first = false;
    os << "T" << i;
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

TPoly TPoly::monomial(TMono m, Scalar c) {
  TPoly p;
  if (!c.is_zero()) p.t_[m] = std::move(c);
  return p;
}

Scalar TPoly::coeff(TMono m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Scalar() : it->second;
}

TPoly TPoly::operator-() const {
  TPoly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

TPoly& TPoly::operator+=(const TPoly& o) {
  for (const auto& [m, c] : o.t_) {
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  return *this;
}

TPoly operator*(const TPoly& a, const Scalar& s) {
  TPoly r;
  if (s.is_zero()) return r;
  for (const auto& [m, c] : a.t_) {
    Scalar v = c * s;
    if (!v.is_zero()) r.t_[m] = std::move(v);
  }
  return r;
}

TPoly TPoly::mul(const TPoly& a, const TPoly& b, int weight_cap) {
  TPoly r;
  for (const auto& [ma, ca] : a.t_) {
    for (const auto& [mb, cb] : b.t_) {
      TMono m = tmono_mul(ma, mb);
      if (weight_cap >= 0 && tmono_weight(m) > weight_cap) continue;
      Scalar v = ca * cb;
      if (v.is_zero()) continue;
      auto it = r.t_.find(m);
      if (it == r.t_.end()) r.t_[m] = std::move(v);
      else {
        it->second += v;
        if (it->second.is_zero()) r.t_.erase(it);
      }
    }
  }
  return r;
}

Scalar TPoly::eval(const std::vector<Scalar>& v) const {
  Scalar acc;
  for (const auto& [m, c] : t_) {
    Scalar term = c;
    for (int i = 1; i <= 16; ++i) {
      unsigned e = tmono_exp(m, i);
      if (!e) continue;
      if (i > static_cast<int>(v.size())) throw std::out_of_range("eval: missing T value");
      term = term * v[i - 1].pow(e);
    }
    acc += term;
  }
  return acc;
}

Series TPoly::eval_series(const std::vector<Series>& s) const {
  Series acc;  // exact zero
  for (const auto& [m, c] : t_) {
    Series term = Series::constant(c);
    for (int i = 1; i <= 16; ++i) {
      unsigned e = tmono_exp(m, i);
      if (!e) continue;
      if (i > static_cast<int>(s.size())) throw std::out_of_range("eval_series: missing T value");
      term = term * s[i - 1].pow(e);
    }
    acc += term;
  }
  return acc;
}

std::string TPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << tmono_str(m);
  }
  return os.str();
}

std::vector<TPoly> complete_homogeneous(int n) {
  // k h_k = sum_{m=1..k} m T_m h_{k-m}
  std::vector<TPoly> h(static_cast<size_t>(n) + 1);
  h[0] = TPoly(Scalar(Rat(1)));
  for (int k = 1; k <= n; ++k) {
    TPoly acc;
    for (int m = 1; m <= k && m <= 16; ++m) {
      TPoly tm = TPoly::monomial(tmono_of(m), Scalar(Rat(m)));
      acc += TPoly::mul(tm, h[k - m]);
    }
    h[k] = acc * Scalar(Rat(1, k));
  }
  return h;
}

namespace {
// determinant by cofactor expansion along the first column, pruning zeros
TPoly det_rec(const std::vector<std::vector<const TPoly*>>& m, std::vector<int>& rows,
              std::vector<int>& cols) {
  size_t n = rows.size();
  if (n == 0) return TPoly(Scalar(Rat(1)));
  if (n == 1) return *m[rows[0]][cols[0]];
  TPoly acc;
  int col = cols[0];
  std::vector<int> subcols(cols.begin() + 1, cols.end());
  for (size_t i = 0; i < n; ++i) {
    const TPoly* e = m[rows[i]][col];
    if (e->is_zero()) continue;
    std::vector<int> subrows;
    subrows.reserve(n - 1);
    for (size_t j = 0; j < n; ++j)
      if (j != i) subrows.push_back(rows[j]);
    TPoly minor = det_rec(m, subrows, subcols);
    TPoly term = TPoly::mul(*e, minor);
    if (i % 2 == 0) acc += term;
    else acc += -term;
  }
  return acc;
}
}  // namespace

TPoly schur(const Partition& mu) {
  int l = mu.length();
  if (l == 0) return TPoly(Scalar(Rat(1)));
  int hmax = 0;
  for (int i = 0; i < l; ++i) hmax = std::max(hmax, mu.parts[i] - i + l - 1);
  auto h = complete_homogeneous(hmax);
  TPoly zero;
  std::vector<std::vector<const TPoly*>> m(l, std::vector<const TPoly*>(l));
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      int idx = mu.parts[i] - (i + 1) + (j + 1);
      m[i][j] = (idx < 0) ? &zero : &h[idx];
    }
  }
  std::vector<int> rows(l), cols(l);
  for (int i = 0; i < l; ++i) rows[i] = cols[i] = i;
  return det_rec(m, rows, cols);
}

}  // namespace gkmtr
