#pragma once

#include <compare>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lring/operand.hpp"
#include "lring/rational.hpp"

namespace lring {

enum class NodeKind : std::uint8_t { constant, leaf, pow, ring_op, mul, add };
enum class RingOpKind : std::uint8_t { lambda, sigma, adams };

struct ExprNode;

/// Immutable expression tree over ring operations and lambda/sigma/psi
/// operator nodes. Construction canonicalizes: nested sums/products are
/// flattened and sorted under a fixed total order, rational constants are
/// merged, and the degree-0/1 operator axioms are applied eagerly.
class Expr {
 public:
  Expr() = default;

  static Expr constant(Rational q);
  static Expr leaf(OperandId id);
  static Expr add(std::vector<Expr> children);
  static Expr mul(std::vector<Expr> children);
  static Expr pow(const Expr& base, int exponent);

  const ExprNode& node() const { return *n_; }
  const ExprNode* raw() const { return n_.get(); }
  bool valid() const { return n_ != nullptr; }

  friend Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
  friend Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) {
    return add({a, mul({constant(-1), b})});
  }
  friend Expr operator-(const Expr& a) { return mul({constant(-1), a}); }

  Expr scaled(const Rational& q) const { return mul({constant(q), *this}); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : n_(std::move(n)) {}
  static Expr wrap(ExprNode&& node);

  std::shared_ptr<const ExprNode> n_;

  friend Expr apply_ring_op(RingOpKind, int, const Expr&);
};

struct ExprNode {
  NodeKind kind;
  Rational value;              // constant
  OperandId operand = 0;       // leaf
  RingOpKind op = RingOpKind::lambda;
  int degree = 0;              // ring_op degree or pow exponent
  std::vector<Expr> children;  // pow: {base}; ring_op: {child}; add/mul: sorted
};

namespace detail {

inline int kind_rank(NodeKind k) {
  // fixed order: Const < Leaf < Pow < RingOp < Mul < Add
  switch (k) {
    case NodeKind::constant: return 0;
    case NodeKind::leaf: return 1;
    case NodeKind::pow: return 2;
    case NodeKind::ring_op: return 3;
    case NodeKind::mul: return 4;
    case NodeKind::add: return 5;
  }
  return 6;
}

inline std::strong_ordering expr_cmp(const Expr& a, const Expr& b) {
  if (a.raw() == b.raw()) return std::strong_ordering::equal;
  const ExprNode& x = a.node();
  const ExprNode& y = b.node();
  if (auto c = kind_rank(x.kind) <=> kind_rank(y.kind); c != 0) return c;
  switch (x.kind) {
    case NodeKind::constant:
      return x.value < y.value    ? std::strong_ordering::less
             : x.value == y.value ? std::strong_ordering::equal
                                  : std::strong_ordering::greater;
    case NodeKind::leaf:
      return x.operand <=> y.operand;
    case NodeKind::pow:
      if (auto c = expr_cmp(x.children[0], y.children[0]); c != 0) return c;
      return x.degree <=> y.degree;
    case NodeKind::ring_op:
      if (auto c = static_cast<int>(x.op) <=> static_cast<int>(y.op); c != 0) return c;
      if (auto c = x.degree <=> y.degree; c != 0) return c;
      return expr_cmp(x.children[0], y.children[0]);
    case NodeKind::mul:
    case NodeKind::add: {
      std::size_t n = std::min(x.children.size(), y.children.size());
      for (std::size_t i = 0; i < n; ++i)
        if (auto c = expr_cmp(x.children[i], y.children[i]); c != 0) return c;
      return x.children.size() <=> y.children.size();
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace detail

inline bool structural_equal(const Expr& a, const Expr& b) {
  return detail::expr_cmp(a, b) == std::strong_ordering::equal;
}

inline Expr Expr::wrap(ExprNode&& node) {
  return Expr(std::make_shared<const ExprNode>(std::move(node)));
}

inline Expr Expr::constant(Rational q) {
  ExprNode n;
  n.kind = NodeKind::constant;
  n.value = std::move(q);
  n.value.canonicalize();
  return wrap(std::move(n));
}

inline Expr Expr::leaf(OperandId id) {
  ExprNode n;
  n.kind = NodeKind::leaf;
  n.operand = id;
  return wrap(std::move(n));
}

inline Expr Expr::add(std::vector<Expr> children) {
  std::vector<Expr> flat;
  Rational c = 0;
  for (auto& ch : children) {
    if (!ch.valid()) throw domain_error("invalid expression");
    if (ch.node().kind == NodeKind::add) {
      for (const auto& g : ch.node().children) {
        if (g.node().kind == NodeKind::constant)
          c += g.node().value;
        else
          flat.push_back(g);
      }
    } else if (ch.node().kind == NodeKind::constant) {
      c += ch.node().value;
    } else {
      flat.push_back(std::move(ch));
    }
  }
  if (!lring::is_zero(c)) flat.push_back(constant(c));
  if (flat.empty()) return constant(0);
  std::sort(flat.begin(), flat.end(),
            [](const Expr& a, const Expr& b) { return detail::expr_cmp(a, b) < 0; });
  if (flat.size() == 1) return flat[0];
  ExprNode n;
  n.kind = NodeKind::add;
  n.children = std::move(flat);
  return wrap(std::move(n));
}

inline Expr Expr::mul(std::vector<Expr> children) {
  std::vector<Expr> flat;
  Rational c = 1;
  for (auto& ch : children) {
    if (!ch.valid()) throw domain_error("invalid expression");
    if (ch.node().kind == NodeKind::mul) {
      for (const auto& g : ch.node().children) {
        if (g.node().kind == NodeKind::constant)
          c *= g.node().value;
        else
          flat.push_back(g);
      }
    } else if (ch.node().kind == NodeKind::constant) {
      c *= ch.node().value;
    } else {
      flat.push_back(std::move(ch));
    }
  }
  if (lring::is_zero(c)) return constant(0);
  if (!lring::is_one(c)) flat.push_back(constant(c));
  if (flat.empty()) return constant(1);
  std::sort(flat.begin(), flat.end(),
            [](const Expr& a, const Expr& b) { return detail::expr_cmp(a, b) < 0; });
  if (flat.size() == 1) return flat[0];
  ExprNode n;
  n.kind = NodeKind::mul;
  n.children = std::move(flat);
  return wrap(std::move(n));
}

inline Expr Expr::pow(const Expr& base, int exponent) {
  if (!base.valid()) throw domain_error("invalid expression");
  if (exponent < 0) throw domain_error("Expr::pow: exponent must be >= 0");
  if (exponent == 0) return constant(1);
  if (exponent == 1) return base;
  if (base.node().kind == NodeKind::constant) {
    Rational v = 1;
    for (int i = 0; i < exponent; ++i) v *= base.node().value;
    return constant(v);
  }
  ExprNode n;
  n.kind = NodeKind::pow;
  n.degree = exponent;
  n.children = {base};
  return wrap(std::move(n));
}

/// lambda^0 = sigma^0 = 1 and the degree-1 identities are applied here;
/// psi^0 is rejected. Everything else stays syntactic.
inline Expr apply_ring_op(RingOpKind kind, int n, const Expr& e) {
  if (!e.valid()) throw domain_error("invalid expression");
  if (n < 0) throw domain_error("operator degree must be >= 0");
  if (n == 0) {
    if (kind == RingOpKind::adams) throw domain_error("adams degree 0 is undefined");
    return Expr::constant(1);
  }
  if (n == 1) return e;
  ExprNode node;
  node.kind = NodeKind::ring_op;
  node.op = kind;
  node.degree = n;
  node.children = {e};
  return Expr::wrap(std::move(node));
}

inline Expr make_free(const std::string& name) { return Expr::leaf(make_free_operand(name)); }

inline Expr lambda_(int n, const Expr& e) { return apply_ring_op(RingOpKind::lambda, n, e); }
inline Expr sigma_(int n, const Expr& e) { return apply_ring_op(RingOpKind::sigma, n, e); }
inline Expr adams_(int n, const Expr& e) { return apply_ring_op(RingOpKind::adams, n, e); }

namespace detail {

/// Renders |e| and reports the sign separately, so sums can join with +/-.
inline std::pair<bool, std::string> render_signed(const Expr& e);

inline std::string render_atom(const Expr& e) {
  auto [neg, text] = render_signed(e);
  return neg ? "-" + text : text;
}

/// Wraps sums (and negative-signed products) in parentheses for * and ^.
inline std::string render_factor(const Expr& e) {
  auto [neg, text] = render_signed(e);
  if (e.node().kind == NodeKind::add || neg) return "(" + (neg ? "-" + text : text) + ")";
  return text;
}

/// Power bases parse as single atoms: anything but a leaf or operator call
/// needs parentheses.
inline std::string render_pow_base(const Expr& e) {
  NodeKind k = e.node().kind;
  std::string text = render_atom(e);
  if (k == NodeKind::leaf || k == NodeKind::ring_op) return text;
  return "(" + text + ")";
}

inline std::pair<bool, std::string> render_signed(const Expr& e) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case NodeKind::constant: {
      Rational q = n.value;
      bool neg = sgn(q) < 0;
      if (neg) q = -q;
      return {neg, to_string(q)};
    }
    case NodeKind::leaf:
      return {false, OperandTable::instance().info(n.operand).name};
    case NodeKind::pow:
      return {false, render_pow_base(n.children[0]) + "^" + std::to_string(n.degree)};
    case NodeKind::ring_op: {
      const char* name = n.op == RingOpKind::lambda  ? "lambda"
                         : n.op == RingOpKind::sigma ? "sigma"
                                                     : "adams";
      return {false, std::string(name) + "(" + std::to_string(n.degree) + ", " +
                         render_atom(n.children[0]) + ")"};
    }
    case NodeKind::mul: {
      Rational coeff = 1;
      std::string body;
      for (const auto& ch : n.children) {
        if (ch.node().kind == NodeKind::constant) {
          coeff *= ch.node().value;
          continue;
        }
        if (!body.empty()) body += "*";
        body += render_factor(ch);
      }
      bool neg = sgn(coeff) < 0;
      if (neg) coeff = -coeff;
      std::string out;
      if (coeff.get_num() != 1) out += coeff.get_num().get_str() + "*";
      out += body;
      if (coeff.get_den() != 1) out += "/" + coeff.get_den().get_str();
      return {neg, out};
    }
    case NodeKind::add: {
      std::string out;
      bool first = true;
      for (const auto& ch : n.children) {
        auto [neg, text] = render_signed(ch);
        if (first) {
          out += neg ? "-" + text : text;
          first = false;
        } else {
          out += neg ? " - " : " + ";
          out += text;
        }
      }
      return {false, out};
    }
  }
  return {false, "?"};
}

}  // namespace detail

/// Deterministic text in the CLI grammar; parse(render(e)) is structurally
/// equal to e.
inline std::string render(const Expr& e) { return detail::render_atom(e); }

}  // namespace lring
