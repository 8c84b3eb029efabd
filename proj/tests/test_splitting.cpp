// Splitting-principle oracle: a positive class splits as a multiset of
// monomial "roots" (with multiplicity), on which the operators have explicit
// symmetric-function meanings:
//
//   sigma^n -> e_n of the multiset     (alternating powers)
//   lambda^n -> h_n of the multiset    (symmetric powers)
//   psi^n   -> p_n of the multiset     (power sums)
//
// Products split into pairwise products of roots, sums into unions, and an
// integer c splits into c copies of the trivial root (giving the binomial
// constant structure). Evaluating an expression in this model is completely
// independent of the conversion tables, so it cross-checks the whole
// simplification pipeline on the positive fragment.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "lring/simplify.hpp"

using namespace lring;

namespace {

constexpr int kRoots = 6;

OperandId root_id(int i) {
  static std::vector<OperandId> ids = [] {
    std::vector<OperandId> v;
    for (int k = 0; k < kRoots; ++k)
      v.push_back(make_free_operand("r" + std::to_string(k)));
    return v;
  }();
  return ids[static_cast<std::size_t>(i)];
}

Poly root_var(int i) { return Poly::variable(VarKey::adams(root_id(i), 1)); }

// truncated series in an auxiliary degree slot, coefficients are Polys
using Tr = std::vector<Poly>;

Tr tr_one(int n) {
  Tr v(static_cast<std::size_t>(n) + 1);
  v[0] = Poly::one();
  return v;
}

Tr tr_mul(const Tr& a, const Tr& b) {
  Tr r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// prod over roots m with multiplicity c of (1 + m t)^c        -> e_n
// prod over roots m with multiplicity c of (1 - m t)^{-c}     -> h_n
Poly multiset_symmetric(const Poly& cls, int n, bool elementary) {
  Tr acc = tr_one(n);
  for (const auto& [mono, coeff] : cls.terms()) {
    REQUIRE(is_integer(coeff));
    REQUIRE(sgn(coeff) > 0);
    long c = coeff.get_num().get_si();
    Tr factor(static_cast<std::size_t>(n) + 1);
    Monomial power = Monomial::one();
    for (int j = 0; j <= n; ++j) {
      Rational binom = elementary ? binom_falling(Rational(c), j) : binom_rising(Rational(c), j);
      factor[static_cast<std::size_t>(j)] = Poly::term(power, binom);
      power = power.times(mono);
    }
    acc = tr_mul(acc, factor);
  }
  return acc[static_cast<std::size_t>(n)];
}

Poly multiset_power_sum(const Poly& cls, int n) {
  Poly r;
  for (const auto& [mono, coeff] : cls.terms()) r.add_term(mono.pow(n), coeff);
  return r;
}

// direct semantic evaluation of a positive expression in the root model
Poly oracle_eval(const Expr& e) {
  const ExprNode& node = e.node();
  switch (node.kind) {
    case NodeKind::constant:
      return Poly::constant(node.value);
    case NodeKind::leaf: {
      const OperandInfo& info = OperandTable::instance().info(node.operand);
      if (info.kind == OperandKind::lefschetz) return Poly::variable(VarKey::lefschetz());
      if (info.kind == OperandKind::poly_var) return Poly::variable(VarKey::named(node.operand));
      // the generic free element splits into the full set of roots
      Poly sum;
      for (int i = 0; i < kRoots; ++i) sum += root_var(i);
      return sum;
    }
    case NodeKind::add: {
      Poly acc;
      for (const auto& ch : node.children) acc += oracle_eval(ch);
      return acc;
    }
    case NodeKind::mul: {
      Poly acc = Poly::one();
      for (const auto& ch : node.children) acc = acc * oracle_eval(ch);
      return acc;
    }
    case NodeKind::pow:
      return oracle_eval(node.children[0]).pow(node.degree);
    case NodeKind::ring_op: {
      Poly child = oracle_eval(node.children[0]);
      switch (node.op) {
        case RingOpKind::sigma: return multiset_symmetric(child, node.degree, true);
        case RingOpKind::lambda: return multiset_symmetric(child, node.degree, false);
        case RingOpKind::adams: return multiset_power_sum(child, node.degree);
      }
    }
  }
  throw error("oracle_eval: bad node");
}

// engine route: Adams form, then psi^k(x) -> p_k(roots)
Poly engine_eval(const Expr& e, OperandId x) {
  RatFn form = to_adams(e);
  REQUIRE(form.denominator().empty());
  Poly form_poly = form.to_poly();
  Poly out;
  for (const auto& [mono, coeff] : form_poly.terms()) {
    Poly term = Poly::constant(coeff);
    Monomial rest;
    for (const auto& f : mono.factors()) {
      if (f.var.kind() == VarKind::adams_var && f.var.operand() == x) {
        Poly pk;
        for (int i = 0; i < kRoots; ++i) pk += root_var(i).pow(f.var.degree());
        term = term * pk.pow(f.exp);
      } else {
        rest = rest.times(Monomial::var(f.var, f.exp));
      }
    }
    out += term.times_monomial(rest);
  }
  return out;
}

}  // namespace

TEST_CASE("engine agrees with the splitting-principle model on fixed cases") {
  Expr x = make_free("split_x");
  OperandId xid = x.node().operand;
  Expr L = Expr::leaf(lefschetz_id());
  Expr t = Expr::leaf(t_var_id());

  std::vector<Expr> cases = {
      lambda_(3, x),
      sigma_(3, x),
      adams_(3, x),
      lambda_(2, sigma_(2, x)),           // operator composition needs specialness
      sigma_(2, lambda_(2, x)),
      adams_(2, lambda_(3, x)),
      lambda_(2, x * L + Expr::constant(1)),
      sigma_(3, x + L + t),
      lambda_(2, adams_(2, x) + Expr::constant(2)),
      lambda_(4, x * x),
      sigma_(2, sigma_(2, sigma_(2, x))),
  };
  for (const auto& e : cases) {
    INFO(render(e));
    CHECK(engine_eval(e, xid) == oracle_eval(e));
  }
}

TEST_CASE("engine agrees with the splitting-principle model on random positive trees") {
  Expr x = make_free("split_r");
  OperandId xid = x.node().operand;
  std::mt19937 rng(90210);
  std::uniform_int_distribution<int> pick(0, 6), cpick(0, 3), deg(2, 3);

  // operator budget keeps e_n/h_n expansions tractable
  auto rand_tree = [&](auto&& self, int depth, int op_budget) -> Expr {
    int choice = depth <= 0 ? pick(rng) % 3 : pick(rng);
    switch (choice) {
      case 0: return Expr::constant(cpick(rng));
      case 1: return Expr::leaf(pick(rng) % 2 ? lefschetz_id() : t_var_id());
      case 2: return x;
      case 3: return self(self, depth - 1, op_budget) + self(self, depth - 1, op_budget);
      case 4: return self(self, depth - 1, op_budget) * self(self, depth - 1, op_budget);
      default: {
        int n = deg(rng);
        if (op_budget < n) return x;
        Expr child = self(self, depth - 1, op_budget / n);
        switch (pick(rng) % 3) {
          case 0: return lambda_(n, child);
          case 1: return sigma_(n, child);
          default: return adams_(n, child);
        }
      }
    }
  };

  int done = 0;
  while (done < 25) {
    Expr e = rand_tree(rand_tree, 3, 6);
    if (e.node().kind == NodeKind::constant || e.node().kind == NodeKind::leaf) continue;
    INFO(render(e));
    CHECK(engine_eval(e, xid) == oracle_eval(e));
    ++done;
  }
}
