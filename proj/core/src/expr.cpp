#include "gkmtr/expr.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace gkmtr {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  Expr parse() {
    Expr e = sum();
    skip();
    if (pos != s.size()) throw ParseError("unexpected trailing input", pos);
    return e;
  }

  Expr sum() {
    Expr e = term();
    for (;;) {
      if (eat('+')) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Add;
        n->lhs = e;
        n->rhs = term();
        e = n;
      } else if (eat('-')) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Sub;
        n->lhs = e;
        n->rhs = term();
        e = n;
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (eat('*')) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Mul;
        n->lhs = e;
        n->rhs = factor();
        e = n;
      } else if (eat('/')) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Div;
        n->lhs = e;
        n->rhs = factor();
        e = n;
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    if (eat('-')) {
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Neg;
      n->lhs = factor();
      return n;
    }
    Expr base = atom();
    if (eat('^')) {
      skip();
      size_t p0 = pos;
      bool neg = eat('-');
      if (neg) throw ParseError("negative exponent", p0);
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
        throw ParseError("exponent must be a nonnegative integer", pos);
      long e = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        e = e * 10 + (s[pos] - '0');
        if (e > 64) throw ParseError("exponent too large", pos);
        ++pos;
      }
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Pow;
      n->lhs = base;
      n->exponent = static_cast<int>(e);
      return n;
    }
    return base;
  }

  Expr atom() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Expr e = sum();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        num += s[pos++];
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Num;
      n->value = rat_from_string(num);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        id += s[pos++];
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Var;
      n->name = id;
      return n;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

void collect_params(const Expr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->kind == ExprNode::Var && e->name != "z") out.insert(e->name);
  collect_params(e->lhs, out);
  collect_params(e->rhs, out);
}

}  // namespace

Expr parse_expr(const std::string& text) {
  Parser p{text};
  return p.parse();
}

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  std::function<void(const Expr&)> pr = [&](const Expr& n) {
    switch (n->kind) {
      case ExprNode::Num:
        os << n->value;
        break;
      case ExprNode::Var:
        os << n->name;
        break;
      case ExprNode::Add:
        os << "(";
        pr(n->lhs);
        os << " + ";
        pr(n->rhs);
        os << ")";
        break;
      case ExprNode::Sub:
        os << "(";
        pr(n->lhs);
        os << " - ";
        pr(n->rhs);
        os << ")";
        break;
      case ExprNode::Mul:
        os << "(";
        pr(n->lhs);
        os << " * ";
        pr(n->rhs);
        os << ")";
        break;
      case ExprNode::Div:
        os << "(";
        pr(n->lhs);
        os << " / ";
        pr(n->rhs);
        os << ")";
        break;
      case ExprNode::Pow:
        pr(n->lhs);
        os << "^" << n->exponent;
        break;
      case ExprNode::Neg:
        os << "(-";
        pr(n->lhs);
        os << ")";
        break;
    }
  };
  pr(e);
  return os.str();
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Num:
      return a->value == b->value;
    case ExprNode::Var:
      return a->name == b->name;
    case ExprNode::Pow:
      return a->exponent == b->exponent && expr_equal(a->lhs, b->lhs);
    case ExprNode::Neg:
      return expr_equal(a->lhs, b->lhs);
    default:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

std::set<std::string> expr_params(const Expr& e) {
  std::set<std::string> out;
  collect_params(e, out);
  return out;
}

Poly expr_to_poly(const Expr& e, const Ring* ring) {
  switch (e->kind) {
    case ExprNode::Num:
      return Poly(Scalar::with_ring(ring, e->value));
    case ExprNode::Var: {
      if (e->name == "z") return Poly::z();
      int idx = ring->index_of(e->name);
      if (idx < 0) throw std::invalid_argument("unknown parameter " + e->name);
      return Poly(Scalar::symbol(ring, idx));
    }
    case ExprNode::Add:
      return expr_to_poly(e->lhs, ring) + expr_to_poly(e->rhs, ring);
    case ExprNode::Sub:
      return expr_to_poly(e->lhs, ring) - expr_to_poly(e->rhs, ring);
    case ExprNode::Mul:
      return expr_to_poly(e->lhs, ring) * expr_to_poly(e->rhs, ring);
    case ExprNode::Div: {
      Poly num = expr_to_poly(e->lhs, ring);
      Poly den = expr_to_poly(e->rhs, ring);
      if (den.degree() != 0)
        throw std::invalid_argument("polynomial mode: division only by constants");
      return num * den.coeff(0).inverse();
    }
    case ExprNode::Pow: {
      Poly b = expr_to_poly(e->lhs, ring);
      Poly r(Scalar::with_ring(ring, Rat(1)));
      for (int i = 0; i < e->exponent; ++i) r = r * b;
      return r;
    }
    case ExprNode::Neg:
      return -expr_to_poly(e->lhs, ring);
  }
  throw std::logic_error("unreachable");
}

DeformedV2 expr_to_deformed_v2(const Expr& e, const Ring* ring) {
  // evaluate as num/den over the ring, then insist den = prod (1 - eps_i z)
  std::function<std::pair<Poly, Poly>(const Expr&)> ev = [&](const Expr& n)
      -> std::pair<Poly, Poly> {
    switch (n->kind) {
      case ExprNode::Num:
        return {Poly(Scalar::with_ring(ring, n->value)), Poly(Scalar::with_ring(ring, Rat(1)))};
      case ExprNode::Var: {
        if (n->name == "z") return {Poly::z(), Poly(Scalar::with_ring(ring, Rat(1)))};
        int idx = ring->index_of(n->name);
        if (idx < 0) throw std::invalid_argument("unknown parameter " + n->name);
        return {Poly(Scalar::symbol(ring, idx)), Poly(Scalar::with_ring(ring, Rat(1)))};
      }
      case ExprNode::Add: {
        auto [an, ad] = ev(n->lhs);
        auto [bn, bd] = ev(n->rhs);
        return {an * bd + bn * ad, ad * bd};
      }
      case ExprNode::Sub: {
        auto [an, ad] = ev(n->lhs);
        auto [bn, bd] = ev(n->rhs);
        return {an * bd - bn * ad, ad * bd};
      }
      case ExprNode::Mul: {
        auto [an, ad] = ev(n->lhs);
        auto [bn, bd] = ev(n->rhs);
        return {an * bn, ad * bd};
      }
      case ExprNode::Div: {
        auto [an, ad] = ev(n->lhs);
        auto [bn, bd] = ev(n->rhs);
        return {an * bd, ad * bn};
      }
      case ExprNode::Pow: {
        auto [bn, bd] = ev(n->lhs);
        Poly rn(Scalar::with_ring(ring, Rat(1))), rd = rn;
        for (int i = 0; i < n->exponent; ++i) {
          rn = rn * bn;
          rd = rd * bd;
        }
        return {rn, rd};
      }
      case ExprNode::Neg: {
        auto [an, ad] = ev(n->lhs);
        return {-an, ad};
      }
    }
    throw std::logic_error("unreachable");
  };
  auto [num, den] = ev(e);
  DeformedV2 out;
  // Reverse the denominator (w = 1/z): each (1 - eps z) factor becomes the
  // monic linear factor (w - eps), so peeling strictly lowers the degree.
  // (Adic division by (1 - eps z) itself would always succeed: it is a unit
  // of the truncated ring.)
  int d = den.degree();
  std::vector<Scalar> rev(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) rev[k] = den.coeff(d - k);
  Poly den_rev{std::move(rev)};
  for (size_t i = 0; i < ring->symbols().size(); ++i) {
    if (ring->symbols()[i].kind != SymKind::Truncated) continue;
    Poly lin = Poly::z() - Poly(Scalar::symbol(ring, static_cast<int>(i)));
    while (den_rev.degree() >= 1) {
      auto q = Poly::try_divide(den_rev, lin);
      if (!q) break;
      den_rev = *q;
      out.eps_syms.push_back(static_cast<int>(i));
    }
  }
  if (den_rev.degree() != 0)
    throw std::invalid_argument("deformed mode: denominator must be a product of (1 - eps z)");
  out.U = num * den_rev.coeff(0).inverse();
  return out;
}

}  // namespace gkmtr
