#pragma once

#include <atomic>
#include <string>

#include "lring/simplify.hpp"

namespace lring {

inline Expr point() { return Expr::constant(1); }
inline Expr lefschetz() { return Expr::leaf(lefschetz_id()); }

/// [P^n] = 1 + L + ... + L^n.
inline Expr proj(int n) {
  if (n < 0) throw domain_error("proj: dimension must be >= 0");
  std::vector<Expr> terms;
  for (int k = 0; k <= n; ++k) terms.push_back(Expr::pow(lefschetz(), k));
  return Expr::add(std::move(terms));
}

/// Symmetric and alternating powers on motive expressions.
inline Expr sym(int n, const Expr& e) { return lambda_(n, e); }
inline Expr alt(int n, const Expr& e) { return sigma_(n, e); }

/// An abstract genus-g curve: [X] = 1 + h1 + L with h1 the middle Chow part.
struct CurveHandle {
  OperandId chow;
  int genus;
  std::string name;
};

inline CurveHandle curve(int genus, const std::string& name = "") {
  if (genus < 1) throw domain_error("curve: genus must be >= 1");
  static std::atomic<int> counter{0};
  std::string base = name.empty() ? "c" + std::to_string(counter++) : name;
  OperandId id = OperandTable::instance().add(OperandKind::curve_chow, "h1_" + base, genus);
  return CurveHandle{id, genus, base};
}

inline Expr chow_part(const CurveHandle& h) { return Expr::leaf(h.chow); }

inline Expr curve_class(const CurveHandle& h) {
  return Expr::constant(1) + chow_part(h) + lefschetz();
}

/// lam^k(h1) reduced to the degree <= g generators.
inline Poly reduce_chow(const CurveHandle& h, int k) {
  if (k < 0) throw domain_error("reduce_chow: k must be >= 0");
  return curve_lambda_generator(h.chow, h.genus, k);
}

/// [Jac(X)] = sum_{k=0}^{2g} lam^k(h1) = P_X(1).
inline Expr jacobian(const CurveHandle& h) {
  std::vector<Expr> terms;
  for (int k = 0; k <= 2 * h.genus; ++k) terms.push_back(lambda_(k, chow_part(h)));
  return Expr::add(std::move(terms));
}

/// Picard classes coincide with the Jacobian class.
inline Expr picard(const CurveHandle& h) { return jacobian(h); }

/// P_X at a monomial argument t^tpow L^lpow: sum_{n=0}^{2g} lam^n(h1) arg^n,
/// in lambda-generator form. lpow may be negative.
inline Poly P_eval(const CurveHandle& h, int lpow, int tpow) {
  if (tpow < 0) throw domain_error("P_eval: negative t power");
  Poly acc;
  for (int n = 0; n <= 2 * h.genus; ++n) {
    Monomial arg = Monomial::var(VarKey::lefschetz(), lpow * n)
                       .times(Monomial::var(VarKey::t(), tpow * n));
    acc += reduce_chow(h, n).times_monomial(arg);
  }
  return acc;
}

/// Z_X at a monomial argument u: P_X(u) / ((1 - u)(1 - L u)) with canonical
/// factors. The argument u = 1 is a pole.
inline RatFn Z_eval(const CurveHandle& h, int lpow, int tpow) {
  if (tpow < 0) throw domain_error("Z_eval: negative t power");
  if (lpow == 0 && tpow == 0) throw domain_error("Z_eval: argument 1 is a pole");
  RatFn r = RatFn::from_poly(P_eval(h, lpow, tpow));
  r.divide_by_one_minus(lpow, tpow);
  r.divide_by_one_minus(lpow + 1, tpow);
  return r;
}

}  // namespace lring
