#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "lring/poly.hpp"

namespace lring {

/// Canonical denominator factor (1 - t^tpow * L^lpow), lpow, tpow >= 0,
/// not both zero.
struct Factor {
  int lpow;
  int tpow;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

using FactorSet = std::map<Factor, int>;  // factor -> multiplicity >= 1

/// Signed monomial unit: sign * L^lpow * t^tpow with Laurent powers.
struct Unit {
  int sign = 1;
  int lpow = 0;
  int tpow = 0;
};

inline Poly expand_factor(const Factor& f) {
  Monomial m = Monomial::var(VarKey::lefschetz(), f.lpow).times(Monomial::var(VarKey::t(), f.tpow));
  Poly p = Poly::one();
  p.add_term(m, -1);
  return p;
}

inline std::string factor_monomial_text(const Factor& f) {
  std::string s;
  if (f.tpow != 0) {
    s += "t";
    if (f.tpow != 1) s += "^" + std::to_string(f.tpow);
  }
  if (f.lpow != 0) {
    if (!s.empty()) s += "*";
    s += "L";
    if (f.lpow != 1) s += "^" + std::to_string(f.lpow);
  }
  return s.empty() ? "1" : s;
}

/// unit * num / prod (1 - t^b L^a)^m. The stored factors are canonical; units
/// absorb the sign and monomial from normalizing e.g. (L^k - 1) or (1 - L^-k).
class RatFn {
 public:
  RatFn() = default;

  static RatFn from_poly(Poly p) {
    RatFn r;
    r.num_ = std::move(p);
    r.normalize();
    return r;
  }

  static RatFn constant(const Rational& c) { return from_poly(Poly::constant(c)); }
  static RatFn zero() { return RatFn(); }
  static RatFn one() { return constant(1); }

  bool is_zero() const { return num_.is_zero(); }
  const Poly& numerator() const { return num_; }
  const FactorSet& denominator() const { return den_; }
  const Unit& unit() const { return u_; }

  std::optional<Rational> as_constant() const {
    if (num_.is_zero()) return Rational(0);
    if (!den_.empty() || u_.lpow != 0 || u_.tpow != 0) return std::nullopt;
    auto c = num_.as_constant();
    if (!c) return std::nullopt;
    return u_.sign < 0 ? -*c : *c;
  }

  /// Divides by (1 - t^tpow L^lpow) where the exponents may be negative
  /// (both nonpositive); normalizes to a canonical factor plus unit.
  void divide_by_one_minus(int lpow, int tpow) {
    if (lpow == 0 && tpow == 0) throw domain_error("factor (1 - 1) is zero");
    if (lpow >= 0 && tpow >= 0) {
      den_[Factor{lpow, tpow}] += 1;
    } else if (lpow <= 0 && tpow <= 0) {
      // 1 - m = -m (1 - m^{-1})
      u_.sign = -u_.sign;
      u_.lpow -= lpow;
      u_.tpow -= tpow;
      den_[Factor{-lpow, -tpow}] += 1;
    } else {
      throw domain_error("mixed-sign factor exponents are not supported");
    }
  }

  /// Multiplies by the polynomial (1 - t^b L^a), cancelling a stored copy of
  /// the identical factor when present.
  void multiply_by_one_minus(int lpow, int tpow) {
    if (lpow < 0 || tpow < 0) throw domain_error("multiply_by_one_minus: negative exponents");
    auto it = den_.find(Factor{lpow, tpow});
    if (it != den_.end()) {
      if (--it->second == 0) den_.erase(it);
      return;
    }
    num_ = num_ * expand_factor(Factor{lpow, tpow});
    normalize();
  }

  void scale(const Rational& c) {
    num_ = num_.scaled(c);
    normalize();
  }

  void multiply_monomial(int sign, int lpow, int tpow) {
    u_.sign *= sign;
    u_.lpow += lpow;
    u_.tpow += tpow;
  }

  /// Replaces the numerator with an exact quotient and drops one copy of f.
  void consume_factor(const Factor& f, Poly quotient) {
    auto it = den_.find(f);
    if (it == den_.end()) throw domain_error("consume_factor: factor not present");
    if (--it->second == 0) den_.erase(it);
    num_ = std::move(quotient);
    normalize();
  }

  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RatFn r;
    for (const auto& [f, m] : a.den_) r.den_[f] = m;
    for (const auto& [f, m] : b.den_) {
      auto it = r.den_.find(f);
      if (it == r.den_.end())
        r.den_[f] = m;
      else
        it->second = std::max(it->second, m);
    }
    r.u_.sign = 1;
    r.u_.lpow = std::min(a.u_.lpow, b.u_.lpow);
    r.u_.tpow = std::min(a.u_.tpow, b.u_.tpow);
    Poly pa = a.scaled_numerator_against(r, a.u_, a.den_);
    Poly pb = b.scaled_numerator_against(r, b.u_, b.den_);
    r.num_ = pa + pb;
    r.normalize();
    return r;
  }

  friend RatFn operator-(const RatFn& a, const RatFn& b) {
    RatFn nb = b;
    nb.u_.sign = -nb.u_.sign;
    return a + nb;
  }

  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    if (a.is_zero() || b.is_zero()) return RatFn();
    RatFn r;
    r.u_.sign = a.u_.sign * b.u_.sign;
    r.u_.lpow = a.u_.lpow + b.u_.lpow;
    r.u_.tpow = a.u_.tpow + b.u_.tpow;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    for (const auto& [f, m] : b.den_) r.den_[f] += m;
    r.normalize();
    return r;
  }

  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }

  RatFn pow(int e) const {
    if (e < 0) throw domain_error("RatFn::pow: negative exponent");
    RatFn r = one();
    RatFn base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return r;
  }

  /// Requires an empty denominator; folds the unit into the polynomial.
  /// Negative t powers must be absorbed by the numerator.
  Poly to_poly() const {
    if (!den_.empty())
      throw inconsistency_error("rational function has a residual denominator: " + render());
    Poly p = u_.sign < 0 ? -num_ : num_;
    Monomial shift = Monomial::var(VarKey::lefschetz(), u_.lpow).times(Monomial::var(VarKey::t(), u_.tpow));
    if (u_.tpow < 0) {
      int mn = p.min_exponent(VarKey::t());
      if (mn + u_.tpow < 0)
        throw inconsistency_error("negative power of t remains after evaluation");
    }
    return p.times_monomial(shift);
  }

  std::string render() const {
    std::string out;
    if (u_.sign < 0) out += "-";
    if (u_.lpow != 0) out += "L^" + std::to_string(u_.lpow) + " * ";
    if (u_.tpow != 0) out += "t^" + std::to_string(u_.tpow) + " * ";
    out += "(" + num_.render() + ")";
    if (!den_.empty()) {
      out += " / ";
      for (const auto& [f, m] : den_) {
        out += "(1 - " + factor_monomial_text(f) + ")";
        if (m != 1) out += "^" + std::to_string(m);
      }
    }
    return out;
  }

  /// Pulls the numerator's monomial content in L and t into the unit; zero
  /// numerators reset the whole value.
  void normalize() {
    if (num_.is_zero()) {
      u_ = Unit{};
      den_.clear();
      return;
    }
    const VarKey L = VarKey::lefschetz();
    const VarKey T = VarKey::t();
    int ml = num_.min_exponent(L);
    int mt = num_.min_exponent(T);
    if (ml != 0 || mt != 0) {
      num_ = num_.times_monomial(Monomial::var(L, -ml).times(Monomial::var(T, -mt)));
      u_.lpow += ml;
      u_.tpow += mt;
    }
  }

 private:
  Poly scaled_numerator_against(const RatFn& target, const Unit& u, const FactorSet& den) const {
    Poly p = num_;
    if (u.sign < 0) p = -p;
    Monomial shift = Monomial::var(VarKey::lefschetz(), u.lpow - target.u_.lpow)
                         .times(Monomial::var(VarKey::t(), u.tpow - target.u_.tpow));
    p = p.times_monomial(shift);
    for (const auto& [f, m] : target.den_) {
      auto it = den.find(f);
      int have = it == den.end() ? 0 : it->second;
      for (int k = have; k < m; ++k) p = p * expand_factor(f);
    }
    return p;
  }

  Unit u_;
  Poly num_;
  FactorSet den_;
};

/// Cancels every denominator factor that exactly divides the numerator.
/// Deterministic sweep in factor order, restarted after each hit; idempotent.
inline RatFn ratfn_cancel(RatFn r) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [f, m] : r.denominator()) {
      auto q = poly_exact_div(r.numerator(), expand_factor(f));
      if (q) {
        r.consume_factor(f, std::move(*q));
        progress = true;
        break;
      }
    }
  }
  return r;
}

/// Factorization of a polynomial into unit * scalar * product of canonical
/// factors; throws inversion_error outside this class.
struct PolyFactorization {
  Unit unit;
  Rational scalar;
  FactorSet factors;
};

inline PolyFactorization factor_canonical(const Poly& p) {
  if (p.is_zero()) throw inversion_error("cannot invert zero");
  const VarKey L = VarKey::lefschetz();
  const VarKey T = VarKey::t();
  for (const auto& [m, c] : p.terms())
    for (const auto& f : m.factors())
      if (!(f.var == L || f.var == T))
        throw inversion_error("numerator depends on a non-invertible variable: " + f.var.display());

  PolyFactorization out;
  out.scalar = 1;
  Poly q = p;
  int ml = q.min_exponent(L), mt = q.min_exponent(T);
  if (ml != 0 || mt != 0) {
    q = q.times_monomial(Monomial::var(L, -ml).times(Monomial::var(T, -mt)));
    out.unit.lpow = ml;
    out.unit.tpow = mt;
  }
  while (true) {
    if (auto c = q.as_constant()) {
      if (sgn(*c) < 0) {
        out.unit.sign = -out.unit.sign;
        out.scalar = -*c;
      } else {
        out.scalar = *c;
      }
      return out;
    }
    // smallest non-constant monomial must be one of the (1 - m) factors
    std::optional<Monomial> smallest;
    for (const auto& [m, c] : q.terms()) {
      if (m.is_one()) continue;
      if (!smallest || m < *smallest) smallest = m;
    }
    Factor f{smallest->exponent(L), smallest->exponent(T)};
    auto quotient = poly_exact_div(q, expand_factor(f));
    if (!quotient)
      throw inversion_error("numerator is not a product of canonical factors: " + p.render());
    out.factors[f] += 1;
    q = std::move(*quotient);
  }
}

inline RatFn ratfn_inv(const RatFn& a) {
  if (a.is_zero()) throw inversion_error("cannot invert zero");
  PolyFactorization f = factor_canonical(a.numerator());
  Poly num = Poly::constant(Rational(1) / f.scalar);
  for (const auto& [fac, m] : a.denominator())
    for (int k = 0; k < m; ++k) num = num * expand_factor(fac);
  RatFn r = RatFn::from_poly(std::move(num));
  for (const auto& [fac, m] : f.factors)
    for (int k = 0; k < m; ++k) r.divide_by_one_minus(fac.lpow, fac.tpow);
  r.multiply_monomial(f.unit.sign * a.unit().sign, -f.unit.lpow - a.unit().lpow,
                      -f.unit.tpow - a.unit().tpow);
  return r;
}

enum class RatOp { add, mul, inv };

inline RatFn ratfn_arith(RatOp op, const RatFn& a, const RatFn& b = RatFn()) {
  switch (op) {
    case RatOp::add:
      return a + b;
    case RatOp::mul:
      return a * b;
    case RatOp::inv:
      return ratfn_inv(a);
  }
  throw domain_error("ratfn_arith: bad op");
}

/// Equality as formal fractions, by cross multiplication.
inline bool ratfn_equal(const RatFn& a, const RatFn& b) {
  Poly lhs = a.numerator();
  Poly rhs = b.numerator();
  for (const auto& [f, m] : b.denominator())
    for (int k = 0; k < m; ++k) lhs = lhs * expand_factor(f);
  for (const auto& [f, m] : a.denominator())
    for (int k = 0; k < m; ++k) rhs = rhs * expand_factor(f);
  if (a.unit().sign * b.unit().sign < 0) rhs = -rhs;
  int dl = a.unit().lpow - b.unit().lpow;
  int dt = a.unit().tpow - b.unit().tpow;
  // shift so both sides stay polynomial in t
  lhs = lhs.times_monomial(Monomial::var(VarKey::lefschetz(), std::max(dl, 0))
                               .times(Monomial::var(VarKey::t(), std::max(dt, 0))));
  rhs = rhs.times_monomial(Monomial::var(VarKey::lefschetz(), std::max(-dl, 0))
                               .times(Monomial::var(VarKey::t(), std::max(-dt, 0))));
  return lhs == rhs;
}

}  // namespace lring
