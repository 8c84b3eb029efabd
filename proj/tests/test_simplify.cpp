#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <random>
#include <thread>

#include "lring/parse.hpp"
#include "lring/simplify.hpp"

using namespace lring;

namespace {

Poly adams_poly(const RatFn& r) { return r.to_poly(); }

Expr X() {
  static Expr x = make_free("sx");
  return x;
}
Expr Y() {
  static Expr y = make_free("sy");
  return y;
}
OperandId xid() { return X().node().operand; }
OperandId yid() { return Y().node().operand; }

Poly pvar(VarKey v, int e = 1) { return Poly::variable(v, e); }

}  // namespace

TEST_CASE("worked example in Adams form") {
  Expr e = lambda_(2, adams_(2, X()) - Y().scaled(Rational(1, 2)));
  Poly got = adams_poly(to_adams(e));

  VarKey p2x = VarKey::adams(xid(), 2), p4x = VarKey::adams(xid(), 4);
  VarKey p1y = VarKey::adams(yid(), 1), p2y = VarKey::adams(yid(), 2);
  // psi4(x)/2 + psi2(x)^2/2 - psi2(x)*y/2 + y^2/8 - psi2(y)/4
  Poly want = pvar(p4x).scaled(Rational(1, 2)) + pvar(p2x, 2).scaled(Rational(1, 2)) -
              (pvar(p2x) * pvar(p1y)).scaled(Rational(1, 2)) + pvar(p1y, 2).scaled(Rational(1, 8)) -
              pvar(p2y).scaled(Rational(1, 4));
  CHECK(got == want);
}

TEST_CASE("worked example in lambda form") {
  Expr e = lambda_(2, adams_(2, X()) - Y().scaled(Rational(1, 2)));
  VarKey x1 = VarKey::lambda(xid(), 1), x2 = VarKey::lambda(xid(), 2);
  VarKey x3 = VarKey::lambda(xid(), 3), x4 = VarKey::lambda(xid(), 4);
  VarKey y1 = VarKey::lambda(yid(), 1), y2 = VarKey::lambda(yid(), 2);
  // x^2 y/2 - 2x lam3(x) + 3y^2/8 - y lam2(x) + lam2(x)^2 - lam2(y)/2 + 2 lam4(x)
  Poly want = (pvar(x1, 2) * pvar(y1)).scaled(Rational(1, 2)) -
              (pvar(x1) * pvar(x3)).scaled(2) + pvar(y1, 2).scaled(Rational(3, 8)) -
              pvar(y1) * pvar(x2) + pvar(x2, 2) - pvar(y2).scaled(Rational(1, 2)) +
              pvar(x4).scaled(2);
  CHECK(adams_poly(to_lambda(e, false)) == want);
  CHECK(adams_poly(to_lambda(e, true)) == want);
}

TEST_CASE("adams operators compose multiplicatively") {
  Expr e = adams_(3, adams_(2, X()));
  CHECK(adams_poly(to_adams(e)) == pvar(VarKey::adams(xid(), 6)));

  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> d(2, 4);
  for (int rep = 0; rep < 10; ++rep) {
    int i = d(rng), j = d(rng);
    Expr body = X() * Y() + Expr::leaf(lefschetz_id()).scaled(3);
    CHECK(adams_poly(to_adams(adams_(i, adams_(j, body)))) ==
          adams_poly(to_adams(adams_(i * j, body))));
  }
}

TEST_CASE("one-dimensional objects") {
  Expr L = Expr::leaf(lefschetz_id());
  for (int n = 2; n <= 10; ++n) {
    CHECK(to_adams(sigma_(n, L)).is_zero());
    CHECK(adams_poly(to_adams(lambda_(n, L))) == pvar(VarKey::lefschetz(), n));
    CHECK(adams_poly(to_adams(adams_(n, L))) == pvar(VarKey::lefschetz(), n));
  }
  Expr t = Expr::leaf(t_var_id());
  CHECK(to_adams(sigma_(3, t)).is_zero());
  CHECK(adams_poly(to_adams(lambda_(4, t))) == pvar(VarKey::t(), 4));
}

TEST_CASE("integer and rational constants fold through the binomial structure") {
  CHECK(to_adams(lambda_(3, Expr::constant(2))).as_constant() == Rational(4));
  for (int c = -3; c <= 4; ++c) {
    for (int n = 2; n <= 5; ++n) {
      CHECK(to_adams(lambda_(n, Expr::constant(c))).as_constant() ==
            binom_rising(Rational(c), n));
      CHECK(to_adams(sigma_(n, Expr::constant(c))).as_constant() ==
            binom_falling(Rational(c), n));
      CHECK(to_adams(adams_(n, Expr::constant(c))).as_constant() == Rational(c));
    }
  }
  CHECK(to_adams(lambda_(2, Expr::constant(Rational(1, 2)))).as_constant() ==
        binom_rising(Rational(1, 2), 2));
}

TEST_CASE("operand-delegated partial Adams action") {
  RatFn p = RatFn::from_poly(pvar(VarKey::adams(xid(), 1)) * pvar(VarKey::adams(yid(), 3)));
  RatFn q = operand_apply_adams(xid(), 2, p);
  CHECK(q.to_poly() == pvar(VarKey::adams(xid(), 2)) * pvar(VarKey::adams(yid(), 3)));
  // the other operand is untouched until its own turn
  RatFn q2 = operand_apply_adams(yid(), 2, q);
  CHECK(q2.to_poly() == pvar(VarKey::adams(xid(), 2)) * pvar(VarKey::adams(yid(), 6)));

  RatFn lef = RatFn::from_poly(pvar(VarKey::lefschetz(), 2) + pvar(VarKey::lefschetz(), -1));
  CHECK(operand_apply_adams(lefschetz_id(), 3, lef).to_poly() ==
        pvar(VarKey::lefschetz(), 6) + pvar(VarKey::lefschetz(), -3));

  CHECK(operand_apply_adams(xid(), 1, p).to_poly() == p.to_poly());
  CHECK(ratfn_apply_adams(p, 1).to_poly() == p.to_poly());
}

TEST_CASE("operand-delegated lambda substitution") {
  auto& ctx = LambdaRingContext::instance();
  RatFn p = RatFn::from_poly(pvar(VarKey::adams(xid(), 3)));
  Poly got = operand_subs_adams(xid(), p).to_poly();
  // psi3(x) = 3 lam3(x) - 3 lam1 lam2 + lam1^3
  Poly want = pvar(VarKey::lambda(xid(), 3)).scaled(3) -
              (pvar(VarKey::lambda(xid(), 1)) * pvar(VarKey::lambda(xid(), 2))).scaled(3) +
              pvar(VarKey::lambda(xid(), 1), 3);
  CHECK(got == want);
  CHECK(eval_conversion_poly(ctx.adams_in_lambda(3),
                             {pvar(VarKey::lambda(xid(), 1)), pvar(VarKey::lambda(xid(), 2)),
                              pvar(VarKey::lambda(xid(), 3))}) == want);

  RatFn lef = RatFn::from_poly(pvar(VarKey::lefschetz(), 5));
  CHECK(operand_subs_adams(lefschetz_id(), lef).to_poly() == pvar(VarKey::lefschetz(), 5));
}

TEST_CASE("to_adams is a ring homomorphism on random expressions") {
  std::mt19937 rng(314159);
  std::uniform_int_distribution<int> pick(0, 4), coef(-3, 3), deg(2, 4);
  auto rand_expr = [&](auto&& self, int depth) -> Expr {
    if (depth <= 0) {
      int which = pick(rng);
      if (which == 0) return Expr::constant(Rational(coef(rng), 2));
      if (which == 1) return Expr::leaf(lefschetz_id());
      return pick(rng) % 2 ? X() : Y();
    }
    switch (pick(rng)) {
      case 0: return self(self, depth - 1) + self(self, depth - 1);
      case 1: return self(self, depth - 1) * self(self, depth - 1);
      case 2: return lambda_(deg(rng), self(self, depth - 1));
      case 3: return sigma_(deg(rng), self(self, depth - 1));
      default: return adams_(deg(rng), self(self, depth - 1));
    }
  };
  for (int i = 0; i < 30; ++i) {
    Expr a = rand_expr(rand_expr, 3), b = rand_expr(rand_expr, 3);
    CHECK(ratfn_equal(to_adams(a + b), to_adams(a) + to_adams(b)));
    CHECK(ratfn_equal(to_adams(a * b), to_adams(a) * to_adams(b)));
  }
}

TEST_CASE("lambda addition law in the free ring") {
  for (int n = 1; n <= 6; ++n) {
    RatFn lhs = to_adams(lambda_(n, X() + Y()));
    RatFn rhs;
    for (int i = 0; i <= n; ++i) rhs += to_adams(lambda_(i, X())) * to_adams(lambda_(n - i, Y()));
    CHECK(ratfn_equal(lhs, rhs));
  }
}

TEST_CASE("opposite-structure identity") {
  for (int n = 1; n <= 8; ++n) {
    RatFn acc;
    for (int i = 0; i <= n; ++i) {
      RatFn term = to_adams(sigma_(i, X())) * to_adams(lambda_(n - i, X()));
      if (i % 2 == 1) term.scale(-1);
      acc += term;
    }
    CHECK(acc.is_zero());
  }
}

TEST_CASE("concurrent simplification shares the caches safely") {
  // four workers hammer the conversion cache and the operand table at once;
  // each uses its own free operand, so the results must agree in shape
  std::vector<std::thread> pool;
  std::array<Poly, 4> results;
  for (int w = 0; w < 4; ++w)
    pool.emplace_back([&results, w] {
      Expr a = make_free("ca" + std::to_string(w));
      Poly acc;
      for (int n = 2; n <= 9; ++n) acc += to_lambda(lambda_(n, X() + Y()) * a).to_poly();
      results[static_cast<std::size_t>(w)] = acc;
    });
  for (auto& t : pool) t.join();
  CHECK(results[0].n_terms() > 0);
  for (int w = 1; w < 4; ++w)
    CHECK(results[static_cast<std::size_t>(w)].n_terms() == results[0].n_terms());
}

TEST_CASE("shortcut and full route agree on a random suite") {
  std::mt19937 rng(2718281);
  std::uniform_int_distribution<int> pick(0, 5), coef(-3, 3), deg(2, 4);
  auto rand_expr = [&](auto&& self, int depth) -> Expr {
    if (depth <= 0) {
      int which = pick(rng);
      if (which == 0) return Expr::constant(coef(rng));
      if (which == 1) return Expr::leaf(lefschetz_id());
      if (which == 2) return Expr::leaf(t_var_id());
      return pick(rng) % 2 ? X() : Y();
    }
    switch (pick(rng)) {
      case 0: return self(self, depth - 1) + self(self, depth - 1);
      case 1: return self(self, depth - 1) * self(self, depth - 1);
      case 2: return Expr::pow(self(self, depth - 1), 2);
      case 3: return lambda_(deg(rng), self(self, depth - 1));
      case 4: return sigma_(deg(rng), self(self, depth - 1));
      default: return adams_(deg(rng), self(self, depth - 1));
    }
  };
  for (int i = 0; i < 40; ++i) {
    Expr e = rand_expr(rand_expr, 3);
    CHECK(ratfn_equal(to_lambda(e, true), to_lambda(e, false)));
  }
}
