#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "lring/expr.hpp"
#include "lring/lambda_context.hpp"
#include "lring/ratfn.hpp"

namespace lring {

/// lam^k(h^1) for a genus-g curve part: degrees 1..g are free generators,
/// g < k <= 2g reduce through L^{k-g} lam^{2g-k}, k > 2g vanish.
inline Poly curve_lambda_generator(OperandId h, int genus, int k) {
  if (k < 0) return Poly::zero();
  if (k == 0) return Poly::one();
  if (k <= genus) return Poly::variable(VarKey::lambda(h, k));
  if (k <= 2 * genus) {
    Monomial m = Monomial::var(VarKey::lefschetz(), k - genus);
    int kk = 2 * genus - k;
    if (kk > 0) m = m.times(Monomial::var(VarKey::lambda(h, kk), 1));
    return Poly::term(m, 1);
  }
  return Poly::zero();
}

namespace detail {

inline std::string preview(const Expr& e) {
  std::string s = render(e);
  if (s.size() > 96) s = s.substr(0, 93) + "...";
  return s;
}

/// Attaches the innermost failing node once; outer frames pass through.
inline std::string with_node_context(const std::string& msg, const Expr& e) {
  if (msg.find("[at ") != std::string::npos) return msg;
  return msg + " [at " + preview(e) + "]";
}

/// Image of psi^k(x) in lambda-generators, by operand kind.
inline Poly adams_var_lambda_image(VarKey v) {
  const OperandInfo& info = OperandTable::instance().info(v.operand());
  auto& ctx = LambdaRingContext::instance();
  int k = v.degree();
  switch (info.kind) {
    case OperandKind::free_element: {
      std::vector<Poly> images;
      images.reserve(static_cast<std::size_t>(k));
      for (int j = 1; j <= k; ++j) images.push_back(Poly::variable(VarKey::lambda(v.operand(), j)));
      return eval_conversion_poly(ctx.adams_in_lambda(k), images);
    }
    case OperandKind::curve_chow: {
      std::vector<Poly> images;
      images.reserve(static_cast<std::size_t>(k));
      for (int j = 1; j <= k; ++j) images.push_back(curve_lambda_generator(v.operand(), info.genus, j));
      return eval_conversion_poly(ctx.adams_in_lambda(k), images);
    }
    default:
      throw domain_error("adams variable attached to a 1-dimensional operand");
  }
}

}  // namespace detail

/// Partial Adams action delegated to one operand: replaces the Adams
/// variables of d (or scales the exponents of a 1-dimensional d) by their
/// psi^n images, leaving every other operand untouched. Iterating over all
/// operands appearing in p realizes psi^n(p).
inline RatFn operand_apply_adams(OperandId d, int n, const RatFn& p) {
  if (n < 1) throw domain_error("operand_apply_adams: n must be >= 1");
  if (n == 1) return p;
  const OperandInfo& info = OperandTable::instance().info(d);
  RatFn r = p;
  switch (info.kind) {
    case OperandKind::free_element:
    case OperandKind::curve_chow: {
      Poly num = p.numerator().map_monomials([&](VarKey v, int e) {
        if (v.kind() == VarKind::adams_var && v.operand() == d)
          return std::make_pair(VarKey::adams(d, n * v.degree()), e);
        return std::make_pair(v, e);
      });
      r = RatFn::from_poly(std::move(num));
      for (const auto& [f, m] : p.denominator())
        for (int i = 0; i < m; ++i) r.divide_by_one_minus(f.lpow, f.tpow);
      r.multiply_monomial(p.unit().sign, p.unit().lpow, p.unit().tpow);
      return r;
    }
    case OperandKind::lefschetz: {
      Poly num = p.numerator().map_monomials([&](VarKey v, int e) {
        if (v.kind() == VarKind::lefschetz) return std::make_pair(v, n * e);
        return std::make_pair(v, e);
      });
      r = RatFn::from_poly(std::move(num));
      for (const auto& [f, m] : p.denominator())
        for (int i = 0; i < m; ++i) r.divide_by_one_minus(n * f.lpow, f.tpow);
      r.multiply_monomial(p.unit().sign, n * p.unit().lpow, p.unit().tpow);
      return r;
    }
    case OperandKind::poly_var: {
      bool is_t = d == t_var_id();
      Poly num = p.numerator().map_monomials([&](VarKey v, int e) {
        if (v.kind() == VarKind::named && v.operand() == d) return std::make_pair(v, n * e);
        return std::make_pair(v, e);
      });
      r = RatFn::from_poly(std::move(num));
      for (const auto& [f, m] : p.denominator())
        for (int i = 0; i < m; ++i) r.divide_by_one_minus(f.lpow, is_t ? n * f.tpow : f.tpow);
      r.multiply_monomial(p.unit().sign, p.unit().lpow, is_t ? n * p.unit().tpow : p.unit().tpow);
      return r;
    }
  }
  throw domain_error("operand_apply_adams: bad operand kind");
}

/// psi^n of a whole Adams-form rational function, in one pass. Correct
/// because psi^n is a ring homomorphism acting variable-wise here.
inline RatFn ratfn_apply_adams(const RatFn& p, int n) {
  if (n < 1) throw domain_error("ratfn_apply_adams: n must be >= 1");
  if (n == 1 || p.is_zero()) return p;
  Poly num = p.numerator().map_monomials([&](VarKey v, int e) {
    switch (v.kind()) {
      case VarKind::adams_var:
        return std::make_pair(VarKey::adams(v.operand(), n * v.degree()), e);
      case VarKind::lefschetz:
      case VarKind::named:
        return std::make_pair(v, n * e);
      case VarKind::lambda_var:
      case VarKind::sigma_var:
        throw domain_error("apply_adams requires Adams form");
    }
    return std::make_pair(v, e);
  });
  RatFn r = RatFn::from_poly(std::move(num));
  for (const auto& [f, m] : p.denominator())
    for (int i = 0; i < m; ++i) r.divide_by_one_minus(n * f.lpow, n * f.tpow);
  r.multiply_monomial(p.unit().sign, n * p.unit().lpow, n * p.unit().tpow);
  return r;
}

/// Substitutes every Adams variable of d in p by its lambda-polynomial;
/// identity for 1-dimensional operands whose variables are already
/// generators.
inline RatFn operand_subs_adams(OperandId d, const RatFn& p) {
  const OperandInfo& info = OperandTable::instance().info(d);
  if (info.kind == OperandKind::lefschetz || info.kind == OperandKind::poly_var) return p;
  std::unordered_map<std::uint64_t, std::vector<Poly>> powers;
  auto image_pow = [&](VarKey v, int e) -> const Poly& {
    auto& cache = powers[v.bits()];
    if (cache.empty()) {
      cache.push_back(Poly::one());
      cache.push_back(detail::adams_var_lambda_image(v));
    }
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * cache[1]);
    return cache[static_cast<std::size_t>(e)];
  };
  // many terms share the same Adams part of the monomial; substitute each
  // distinct part once
  std::unordered_map<Monomial, Poly, MonomialHash> part_cache;
  Poly out;
  for (const auto& [m, c] : p.numerator().terms()) {
    Monomial rest, part;
    for (const auto& f : m.factors()) {
      if (f.var.kind() == VarKind::adams_var && f.var.operand() == d)
        part = part.times(Monomial::var(f.var, f.exp));
      else
        rest = rest.times(Monomial::var(f.var, f.exp));
    }
    auto it = part_cache.find(part);
    if (it == part_cache.end()) {
      Poly img = Poly::one();
      for (const auto& f : part.factors()) img = img * image_pow(f.var, f.exp);
      it = part_cache.emplace(std::move(part), std::move(img)).first;
    }
    for (const auto& [im, ic] : it->second.terms()) out.add_term(im.times(rest), ic * c);
  }
  RatFn r = RatFn::from_poly(std::move(out));
  for (const auto& [f, m] : p.denominator())
    for (int i = 0; i < m; ++i) r.divide_by_one_minus(f.lpow, f.tpow);
  r.multiply_monomial(p.unit().sign, p.unit().lpow, p.unit().tpow);
  return r;
}

/// Lambda-form emission: substitutes the Adams variables of every operand.
inline RatFn subs_adams_all(const RatFn& p) {
  std::vector<OperandId> ops;
  p.numerator().for_each_var([&](VarKey v) {
    if (v.kind() != VarKind::adams_var) return;
    for (OperandId d : ops)
      if (d == v.operand()) return;
    ops.push_back(v.operand());
  });
  RatFn r = p;
  for (OperandId d : ops) r = operand_subs_adams(d, r);
  return r;
}

namespace detail {

using AdamsMemo = std::unordered_map<const ExprNode*, RatFn>;

inline RatFn to_adams_impl(const Expr& e, AdamsMemo& memo) {
  if (auto it = memo.find(e.raw()); it != memo.end()) return it->second;
  const ExprNode& n = e.node();
  RatFn result;
  switch (n.kind) {
    case NodeKind::constant:
      result = RatFn::constant(n.value);
      break;
    case NodeKind::leaf: {
      const OperandInfo& info = OperandTable::instance().info(n.operand);
      switch (info.kind) {
        case OperandKind::lefschetz:
          result = RatFn::from_poly(Poly::variable(VarKey::lefschetz()));
          break;
        case OperandKind::poly_var:
          result = RatFn::from_poly(Poly::variable(VarKey::named(n.operand)));
          break;
        default:
          result = RatFn::from_poly(Poly::variable(VarKey::adams(n.operand, 1)));
      }
      break;
    }
    case NodeKind::add: {
      for (const auto& ch : n.children) result += to_adams_impl(ch, memo);
      break;
    }
    case NodeKind::mul: {
      result = RatFn::one();
      for (const auto& ch : n.children) result *= to_adams_impl(ch, memo);
      break;
    }
    case NodeKind::pow:
      result = to_adams_impl(n.children[0], memo).pow(n.degree);
      break;
    case NodeKind::ring_op: {
      try {
        RatFn child = to_adams_impl(n.children[0], memo);
        if (n.op == RingOpKind::adams) {
          result = ratfn_apply_adams(child, n.degree);
        } else if (auto c = child.as_constant()) {
          // rationals carry the binomial lambda-structure
          result = RatFn::constant(n.op == RingOpKind::lambda ? binom_rising(*c, n.degree)
                                                              : binom_falling(*c, n.degree));
        } else {
          std::vector<RatFn> images;
          images.reserve(static_cast<std::size_t>(n.degree));
          images.push_back(child);
          for (int k = 2; k <= n.degree; ++k) images.push_back(ratfn_apply_adams(child, k));
          auto& ctx = LambdaRingContext::instance();
          Poly conv = n.op == RingOpKind::lambda ? ctx.lambda_in_adams(n.degree)
                                                 : ctx.sigma_in_adams(n.degree);
          result = eval_conversion(conv, images);
        }
      } catch (const inconsistency_error& ex) {
        throw inconsistency_error(with_node_context(ex.what(), e));
      } catch (const inversion_error& ex) {
        throw inversion_error(with_node_context(ex.what(), e));
      } catch (const error& ex) {
        throw error(with_node_context(ex.what(), e));
      }
      break;
    }
  }
  memo.emplace(e.raw(), result);
  return result;
}

/// Direct lambda-form of one operator applied to a leaf (the shortcut path).
inline RatFn leaf_op_lambda_form(RingOpKind op, int deg, OperandId id) {
  const OperandInfo& info = OperandTable::instance().info(id);
  auto& ctx = LambdaRingContext::instance();
  switch (info.kind) {
    case OperandKind::lefschetz:
    case OperandKind::poly_var: {
      // 1-dimensional: lam^n = psi^n = x^n, sig^n = 0 for n >= 2
      if (op == RingOpKind::sigma) return RatFn::zero();
      VarKey v = info.kind == OperandKind::lefschetz ? VarKey::lefschetz() : VarKey::named(id);
      return RatFn::from_poly(Poly::variable(v, deg));
    }
    case OperandKind::free_element: {
      if (op == RingOpKind::lambda)
        return RatFn::from_poly(Poly::variable(VarKey::lambda(id, deg)));
      std::vector<Poly> images;
      for (int j = 1; j <= deg; ++j) images.push_back(Poly::variable(VarKey::lambda(id, j)));
      Poly conv = op == RingOpKind::sigma ? ctx.op_transform(deg) : ctx.adams_in_lambda(deg);
      return RatFn::from_poly(eval_conversion_poly(conv, images));
    }
    case OperandKind::curve_chow: {
      if (op == RingOpKind::lambda)
        return RatFn::from_poly(curve_lambda_generator(id, info.genus, deg));
      std::vector<Poly> images;
      for (int j = 1; j <= deg; ++j) images.push_back(curve_lambda_generator(id, info.genus, j));
      Poly conv = op == RingOpKind::sigma ? ctx.op_transform(deg) : ctx.adams_in_lambda(deg);
      return RatFn::from_poly(eval_conversion_poly(conv, images));
    }
  }
  throw domain_error("leaf_op_lambda_form: bad operand kind");
}

inline RatFn to_lambda_impl(const Expr& e, AdamsMemo& lambda_memo, AdamsMemo& adams_memo) {
  if (auto it = lambda_memo.find(e.raw()); it != lambda_memo.end()) return it->second;
  const ExprNode& n = e.node();
  RatFn result;
  switch (n.kind) {
    case NodeKind::constant:
      result = RatFn::constant(n.value);
      break;
    case NodeKind::leaf: {
      const OperandInfo& info = OperandTable::instance().info(n.operand);
      switch (info.kind) {
        case OperandKind::lefschetz:
          result = RatFn::from_poly(Poly::variable(VarKey::lefschetz()));
          break;
        case OperandKind::poly_var:
          result = RatFn::from_poly(Poly::variable(VarKey::named(n.operand)));
          break;
        default:
          result = RatFn::from_poly(Poly::variable(VarKey::lambda(n.operand, 1)));
      }
      break;
    }
    case NodeKind::add: {
      for (const auto& ch : n.children) result += to_lambda_impl(ch, lambda_memo, adams_memo);
      break;
    }
    case NodeKind::mul: {
      result = RatFn::one();
      for (const auto& ch : n.children) result *= to_lambda_impl(ch, lambda_memo, adams_memo);
      break;
    }
    case NodeKind::pow:
      result = to_lambda_impl(n.children[0], lambda_memo, adams_memo).pow(n.degree);
      break;
    case NodeKind::ring_op: {
      const Expr& child = n.children[0];
      if (child.node().kind == NodeKind::leaf) {
        result = leaf_op_lambda_form(n.op, n.degree, child.node().operand);
      } else if (child.node().kind == NodeKind::constant) {
        const Rational& c = child.node().value;
        result = RatFn::constant(n.op == RingOpKind::lambda  ? binom_rising(c, n.degree)
                                 : n.op == RingOpKind::sigma ? binom_falling(c, n.degree)
                                                             : c);
      } else {
        // an operator over a composite subtree still needs the Adams route
        result = subs_adams_all(to_adams_impl(e, adams_memo));
      }
      break;
    }
  }
  lambda_memo.emplace(e.raw(), result);
  return result;
}

}  // namespace detail

/// Canonical Adams form: a rational function whose variables are Adams
/// operations of the leaves plus L and polynomial variables.
inline RatFn to_adams(const Expr& e) {
  detail::AdamsMemo memo;
  return detail::to_adams_impl(e, memo);
}

/// Lambda-generator form. With the shortcut, subtrees that are already
/// polynomial in lambda-operators (operators applied directly to leaves, and
/// operator-free combinations) skip the Adams round-trip.
inline RatFn to_lambda(const Expr& e, bool use_shortcut = true) {
  if (!use_shortcut) return subs_adams_all(to_adams(e));
  detail::AdamsMemo lambda_memo, adams_memo;
  return detail::to_lambda_impl(e, lambda_memo, adams_memo);
}

}  // namespace lring
