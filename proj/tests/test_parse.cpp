#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "lring/parse.hpp"

using namespace lring;

TEST_CASE("parsing the worked example") {
  Expr got = parse_expr("lambda(2, adams(2, x) - y/2)");
  OperandId x = OperandTable::instance().intern_free("x");
  OperandId y = OperandTable::instance().intern_free("y");
  Expr want = lambda_(2, adams_(2, Expr::leaf(x)) - Expr::leaf(y).scaled(Rational(1, 2)));
  CHECK(structural_equal(got, want));
}

TEST_CASE("reserved leaves and operators") {
  Expr e = parse_expr("sigma(3, L^2 + 1)");
  REQUIRE(e.node().kind == NodeKind::ring_op);
  CHECK(e.node().op == RingOpKind::sigma);
  CHECK(e.node().degree == 3);

  Expr t = parse_expr("t");
  CHECK(t.node().kind == NodeKind::leaf);
  CHECK(t.node().operand == t_var_id());
}

TEST_CASE("parse errors carry position and reason") {
  CHECK_THROWS_AS(parse_expr("lambda(x, 2)"), parse_error);
  CHECK_THROWS_AS(parse_expr("adams(0, x)"), parse_error);
  CHECK_THROWS_AS(parse_expr("x /"), parse_error);
  CHECK_THROWS_AS(parse_expr("x / y"), parse_error);
  CHECK_THROWS_AS(parse_expr("x ^ -2"), parse_error);
  CHECK_THROWS_AS(parse_expr("(x + y"), parse_error);
  CHECK_THROWS_AS(parse_expr("x + "), parse_error);
  CHECK_THROWS_AS(parse_expr("x y"), parse_error);
  try {
    parse_expr("x +\n* y");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("interned names are shared within a session") {
  Expr a = parse_expr("shared_name");
  Expr b = parse_expr("shared_name + 0");
  CHECK(structural_equal(a, b));
}

namespace {

Expr random_tree(std::mt19937& rng, int depth) {
  static const Expr leaves[] = {
      Expr::leaf(OperandTable::instance().intern_free("x")),
      Expr::leaf(OperandTable::instance().intern_free("y")),
      Expr::leaf(lefschetz_id()),
      Expr::leaf(t_var_id()),
  };
  std::uniform_int_distribution<int> choice(0, depth <= 0 ? 1 : 6);
  std::uniform_int_distribution<int> lpick(0, 3), coef(-6, 6), deg(0, 4), expn(2, 4);
  switch (choice(rng)) {
    case 0: {
      int c = coef(rng);
      int d = 1 + (c & 1);
      return Expr::constant(Rational(c, d));
    }
    case 1:
      return leaves[lpick(rng)];
    case 2:
      return random_tree(rng, depth - 1) + random_tree(rng, depth - 1);
    case 3:
      return random_tree(rng, depth - 1) * random_tree(rng, depth - 1);
    case 4:
      return Expr::pow(random_tree(rng, depth - 1), expn(rng));
    case 5:
      return lambda_(deg(rng), random_tree(rng, depth - 1));
    case 6: {
      int n = deg(rng);
      Expr child = random_tree(rng, depth - 1);
      return n == 0 ? sigma_(n, child) : adams_(n, child);
    }
  }
  return leaves[0];
}

}  // namespace

TEST_CASE("parse(render(e)) round-trips random trees") {
  std::mt19937 rng(160920251);
  for (int i = 0; i < 250; ++i) {
    Expr e = random_tree(rng, 6);
    std::string text = render(e);
    INFO(text);
    Expr back = parse_expr(text);
    CHECK(structural_equal(e, back));
  }
}
