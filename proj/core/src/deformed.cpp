#include "gkmtr/deformed.hpp"

#include "gkmtr/wave.hpp"

namespace gkmtr {

DeformedRun deformed_pipeline(const Poly& U, const std::vector<int>& eps_syms,
                              const Ring* ring, int hmax, int kmax,
                              const std::vector<std::pair<int, int>>& gn_slices) {
  DeformedRun run{Potential::deformed(U, eps_syms, ring), BTable{}, CorrelatorTable{}};
  int nmax = 1;
  for (auto [g, n] : gn_slices) nmax = std::max(nmax, n);
  int ext = std::max(kmax, nmax * kmax - 1) + 1;
  run.B = two_point(run.P, hmax, ext, ext, ext);
  for (auto [g, n] : gn_slices) connected_correlators(run.P, run.B, g, n, kmax, run.corr);
  return run;
}

std::vector<Scalar> anomaly_from_correlators(const CorrelatorTable& corr, int gmax) {
  std::vector<Scalar> f(static_cast<size_t>(gmax) + 1);
  for (int g = 0; g <= gmax; ++g) f[g] = -corr.get(g, 1, {1});
  return f;
}

Scalar anomaly_residue_route(const Potential& P) {
  // omega~_{0,2}(z,z)/dx = (1/4) x''^2/x'^3 - (1/6) x'''/x'^2, poles/U tracked
  const Poly& pole = P.pole_poly();
  Poly x2 = P.deriv(3);
  Poly x3 = P.deriv(4);
  RatFun t1(x2 * x2 * pole * pole * pole * Scalar(Rat(1, 4)), P.den_base(), 3);
  RatFun t2(x3 * pole * pole * Scalar(Rat(1, 6)), P.den_base(), 2);
  RatFun f = t1 - t2;
  int guard = 3 * P.den_base().degree() + 8;
  if (P.x().coeff(0).ring()) guard += 2 * P.x().degree();
  return f.residue_at_infinity(guard);
}

Scalar anomaly_closed_form_d1(const Poly& U, int eps_sym, const Ring* ring) {
  // eps/(12 U(1/eps)) = eps^r / (12 * sum_j u_j eps^{r-1-j})
  int rm1 = U.degree();
  Scalar den;
  for (int j = 0; j <= rm1; ++j) {
    Scalar uj = U.coeff(j);
    den += uj * Scalar::symbol(ring, eps_sym, rm1 - j);
  }
  Scalar num = Scalar::symbol(ring, eps_sym, rm1 + 1);
  return num * (den * Scalar(Rat(12))).inverse();
}

namespace {

Poly poly_compose(const Poly& f, const Poly& g) {
  Poly acc;
  for (int k = f.degree(); k >= 0; --k) {
    acc = acc * g;
    acc = acc + Poly(f.coeff(k));
  }
  return acc;
}

// bivariate over (l1, l2): vector over l1-powers of Poly in l2
struct Bi {
  std::vector<Poly> c;
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
};

Bi bi_mul(const Bi& a, const Bi& b) {
  Bi r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Poly());
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

Bi bi_sub(Bi a, const Bi& b) {
  if (a.c.size() < b.c.size()) a.c.resize(b.c.size());
  for (size_t i = 0; i < b.c.size(); ++i) a.c[i] -= b.c[i];
  a.trim();
  return a;
}

Bi bi_add(Bi a, const Bi& b) {
  if (a.c.size() < b.c.size()) a.c.resize(b.c.size());
  for (size_t i = 0; i < b.c.size(); ++i) a.c[i] += b.c[i];
  a.trim();
  return a;
}

// exact division by (l1 - l2)
Bi bi_div_l1_minus_l2(const Bi& a) {
  // long division in l1: divisor l1 - l2 (monic in l1, remainder in l2)
  Bi q;
  Bi rem = a;
  int d;
  while ((d = static_cast<int>(rem.c.size()) - 1) >= 1) {
    const Poly lead = rem.c[d];  // by value: the slot is cleared below
    if (lead.is_zero()) {
      rem.c.pop_back();
      continue;
    }
    if (static_cast<int>(q.c.size()) < d) q.c.resize(d);
    q.c[d - 1] += lead;
    // rem -= lead * (l1^d - l1^{d-1} l2)
    rem.c[d] = Poly();
    rem.c[d - 1] += lead * Poly::z();
    rem.trim();
  }
  if (!rem.is_zero() && !rem.c[0].is_zero())
    throw std::logic_error("bivariate division by (l1 - l2) not exact");
  q.trim();
  return q;
}

}  // namespace

Scalar GiventalData::V(int a, int b, int k, int l) const {
  auto it = v.find({a, b, k, l});
  return it == v.end() ? Scalar() : it->second;
}

GiventalData givental_data(const Poly& U, const std::vector<int>& eps_syms,
                           const Ring* ring, int kcap) {
  GiventalData G;
  Potential P = Potential::deformed(U, eps_syms, ring);
  const int r = P.r();
  G.r = r;
  G.kcap = kcap;
  int qcap = r * (kcap + 1);  // Q indices needed: rk + a <= r*kcap + r - 2

  // lambda(z) = z (x/z^r)^{1/r}, adic-polynomial in z
  const Poly& x = P.x();
  Poly w;  // x / z^r - 1
  {
    std::vector<Scalar> cs;
    for (int k = r; k <= x.degree(); ++k) cs.push_back(x.coeff(k));
    for (int k = 0; k < r; ++k)
      if (!x.coeff(k).is_zero())
        throw std::invalid_argument("givental_data expects U = r z^{r-1} shape");
    w = Poly(std::move(cs)) - Poly(Scalar(Rat(1)));
  }
  unsigned tmax = ring->trunc_total();
  Poly lam(Scalar(Rat(1)));
  {
    // (1 + w)^{1/r} by the binomial series; w is nilpotent
    Poly acc(Scalar(Rat(1)));
    Poly wp(Scalar(Rat(1)));
    Rat coef = 1;
    for (unsigned j = 1; j <= tmax + 1; ++j) {
      wp = wp * w;
      if (wp.is_zero()) break;
      coef = coef * (Rat(1, r) - Rat(static_cast<long>(j) - 1)) / Rat(static_cast<long>(j));
      acc += wp * Scalar(coef);
    }
    lam = acc * Poly::z();  // lambda(z) = z + O(eps)
  }
  // z(lambda): fixed-point inversion, one eps-order per sweep
  Poly zl = Poly::z();
  for (unsigned it = 0; it <= tmax + 1; ++it)
    zl = zl - (poly_compose(lam, zl) - Poly::z());
  if (!(poly_compose(lam, zl) == Poly::z()))
    throw std::logic_error("adic inversion of lambda(z) failed");
  G.h.assign(static_cast<size_t>(qcap) + 2, Scalar());
  for (int k = 0; k <= zl.degree() && k <= qcap + 1; ++k) G.h[k] = zl.coeff(k);

  // Bergman tail: dz1 dz2/(z1-z2)^2 - dl1 dl2/(l1-l2)^2 = sum Q_{m,n} l1^m l2^n
  // with z_i = z(l_i):  z'(l1) z'(l2) / D^2 - 1 over (l1-l2)^2, D the divided
  // difference of z.
  Poly zp = zl.derivative();
  Bi D;  // (z(l1) - z(l2))/(l1 - l2)
  {
    Bi num;
    num.c.resize(static_cast<size_t>(zl.degree()) + 1);
    for (int k = 0; k <= zl.degree(); ++k) {
      // z(l1) - z(l2): l1^k coefficient c_k minus polynomial in l2
      num.c[k] += Poly(zl.coeff(k));
      num.c[0] -= Poly::monomial(zl.coeff(k), k);
    }
    num.trim();
    D = bi_div_l1_minus_l2(num);
  }
  Bi numer;
  {
    Bi zz;
    zz.c.resize(static_cast<size_t>(zp.degree()) + 1);
    for (int k = 0; k <= zp.degree(); ++k) zz.c[k] = Poly(zp.coeff(k));  // z'(l1)
    Bi z2;
    z2.c.push_back(zp);  // z'(l2)
    Bi dd = bi_mul(D, D);
    Bi lhs = bi_mul(zz, z2);
    numer = bi_sub(lhs, dd);  // z'(l1) z'(l2) - D^2
  }
  // Q(l1,l2) = numer / ((l1-l2)^2 D^2): D = 1 + nilpotent -> invertible
  Bi qnum = bi_div_l1_minus_l2(bi_div_l1_minus_l2(numer));
  // divide by D^2 = 1 + N adically: q * sum_k (-N)^k
  Bi D2 = bi_mul(D, D);
  Bi qpoly = qnum;
  {
    Bi one;
    one.c.push_back(Poly(Scalar(Rat(1))));
    Bi N = bi_sub(D2, one);
    Bi term = qnum;
    for (unsigned k = 1; k <= tmax + 1; ++k) {
      term = bi_mul(term, N);
      if (term.is_zero()) break;
      qpoly = (k % 2 == 1) ? bi_sub(qpoly, term) : bi_add(qpoly, term);
    }
  }
  G.Q.assign(static_cast<size_t>(qcap) + 1, std::vector<Scalar>(static_cast<size_t>(qcap) + 1));
  for (int m = 0; m <= qcap && m < static_cast<int>(qpoly.c.size()); ++m)
    for (int nn = 0; nn <= qcap; ++nn) G.Q[m][nn] = qpoly.c[m].coeff(nn);

  // V-matrix
  for (int a = 0; a <= r - 2; ++a)
    for (int b = 0; b <= r - 2; ++b)
      for (int k = 0; k <= kcap; ++k)
        for (int l = 0; l <= kcap; ++l) {
          int qm = r * k + a, qn = r * l + b;
          if (qm > qcap || qn > qcap) continue;
          Rat f = ratq(1, -r);
          for (int i = 0; i < k; ++i) f *= ratq(a + 1 + i * r, r);
          for (int j = 0; j < l; ++j) f *= ratq(b + 1 + j * r, r);
          if ((k + l) % 2 != 0) f = -f;
          Scalar val = G.Q[qm][qn] * Scalar(f);
          if (!val.is_zero()) G.v[{a, b, k, l}] = val;
        }

  // R-matrix from M(z,w) = I - (z+w) V(z,w) = R*(-z) R(-w):
  // R*_k = (-1)^k M_{k,0}, R_l = (-1)^l M_{0,l}
  int dim = r - 1;
  auto Mkl = [&](int k, int l, int a, int b) -> Scalar {
    Scalar s;
    if (k == 0 && l == 0 && a == b) s += Scalar(Rat(1));
    if (k >= 1) s -= G.V(a, b, k - 1, l);
    if (l >= 1) s -= G.V(a, b, k, l - 1);
    return s;
  };
  G.R.assign(static_cast<size_t>(kcap) + 1,
             std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim)));
  for (int l = 0; l <= kcap; ++l)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Scalar val = Mkl(0, l, a, b);
        if (l % 2 != 0) val = -val;
        G.R[l][a][b] = val;
      }

  // T-vector
  for (int k = 1; k <= kcap; ++k)
    for (int a = 0; a <= r - 2; ++a) {
      Scalar val;
      if (k == 1 && a == 0) val += Scalar(Rat(1));
      int idx = r * k + a + 1;
      if (idx < static_cast<int>(G.h.size())) {
        Rat f(-r);
        for (int i = 0; i <= k; ++i) f *= ratq(a + 1 + i * r, r);
        if (k % 2 != 0) f = -f;
        val += G.h[idx] * Scalar(f);
      }
      if (!val.is_zero()) G.T[{a, k}] = val;
    }
  return G;
}

bool givental_v_symmetric(const GiventalData& G) {
  for (const auto& [key, val] : G.v) {
    auto [a, b, k, l] = key;
    if (!(G.V(b, a, l, k) == val)) return false;
  }
  return true;
}

namespace {
// adjoint wrt eta(phi_a, phi_b) = delta_{a+b, r-2}: (R*)^a_b = R^{b'}_{a'}
Scalar rstar(const GiventalData& G, int k, int a, int b) {
  int dim = G.r - 1;
  return G.R[k][dim - 1 - b][dim - 1 - a];
}
}  // namespace

bool givental_r_relation(const GiventalData& G) {
  int dim = G.r - 1;
  for (int k = 0; k <= G.kcap; ++k)
    for (int l = 0; l <= G.kcap; ++l)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          // M_{k,l} = (-1)^{k+l} sum_c R*_k[a][c] R_l[c][b]
          Scalar lhs;
          if (k == 0 && l == 0 && a == b) lhs += Scalar(Rat(1));
          if (k >= 1) lhs -= G.V(a, b, k - 1, l);
          if (l >= 1) lhs -= G.V(a, b, k, l - 1);
          Scalar rhs;
          for (int c = 0; c < dim; ++c) rhs += rstar(G, k, a, c) * G.R[l][c][b];
          if ((k + l) % 2 != 0) rhs = -rhs;
          if (!(lhs == rhs)) return false;
        }
  return true;
}

bool givental_r_symplectic(const GiventalData& G) {
  int dim = G.r - 1;
  // sum_{k+l=m} (-1)^k R*_k R_l = delta_{m,0} I
  for (int m = 0; m <= G.kcap; ++m)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Scalar acc;
        for (int k = 0; k <= m; ++k) {
          int l = m - k;
          Scalar t;
          for (int c = 0; c < dim; ++c) t += rstar(G, k, a, c) * G.R[l][c][b];
          if (k % 2 != 0) t = -t;
          acc += t;
        }
        Scalar want = (m == 0 && a == b) ? Scalar(Rat(1)) : Scalar();
        if (!(acc == want)) return false;
      }
  return true;
}

}  // namespace gkmtr
