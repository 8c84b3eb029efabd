#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lring/monomial.hpp"
#include "lring/rational.hpp"

namespace lring {

/// Sparse multivariate polynomial over exact rationals. Exponents of the
/// Lefschetz variable may be negative (Laurent); all other exponents are >= 0.
class Poly {
 public:
  using TermMap = std::unordered_map<Monomial, Rational, MonomialHash>;

  Poly() = default;

  static Poly zero() { return Poly(); }
  static Poly one() { return constant(1); }

  static Poly constant(Rational c) {
    Poly p;
    if (!lring::is_zero(c)) p.t_.emplace(Monomial::one(), std::move(c));
    return p;
  }

  static Poly variable(VarKey v, int exp = 1) { return term(Monomial::var(v, exp), 1); }

  static Poly term(Monomial m, Rational c) {
    check_exponents(m);
    Poly p;
    if (!lring::is_zero(c)) p.t_.emplace(std::move(m), std::move(c));
    return p;
  }

  bool is_zero() const { return t_.empty(); }
  std::size_t n_terms() const { return t_.size(); }
  const TermMap& terms() const { return t_; }

  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
  }

  std::optional<Rational> as_constant() const {
    if (t_.empty()) return Rational(0);
    if (t_.size() == 1 && t_.begin()->first.is_one()) return t_.begin()->second;
    return std::nullopt;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (lring::is_zero(c)) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (lring::is_zero(it->second)) t_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b, std::move(a); }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b, std::move(a); }

  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    // multiply with the smaller operand outermost
    const Poly& s = a.t_.size() <= b.t_.size() ? a : b;
    const Poly& l = a.t_.size() <= b.t_.size() ? b : a;
    Poly r;
    r.t_.reserve(l.t_.size() * 2);
    for (const auto& [ms, cs] : s.t_) {
      for (const auto& [ml, cl] : l.t_) {
        Monomial m = ms.times(ml);
        auto [it, inserted] = r.t_.try_emplace(std::move(m), cs);
        if (inserted) {
          it->second *= cl;
        } else {
          it->second += cs * cl;
          if (lring::is_zero(it->second)) r.t_.erase(it);
        }
      }
    }
    return r;
  }

  Poly& operator*=(const Poly& o) { return *this = *this * o, *this; }

  Poly scaled(const Rational& c) const {
    if (lring::is_zero(c)) return Poly();
    Poly r = *this;
    for (auto& [m, v] : r.t_) v *= c;
    return r;
  }

  Poly times_monomial(const Monomial& m, const Rational& c = 1) const {
    if (lring::is_zero(c)) return Poly();
    Poly r;
    r.t_.reserve(t_.size());
    for (const auto& [mm, cc] : t_) r.t_.emplace(mm.times(m), cc * c);
    return r;
  }

  Poly pow(int e) const {
    if (e < 0) throw domain_error("Poly::pow: negative exponent");
    Poly r = one();
    Poly base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return r;
  }

  /// Replaces every occurrence of v by r, expanding and collecting.
  /// Creating negative exponents of a non-Lefschetz variable is an error.
  Poly substitute(VarKey v, const Poly& r) const {
    std::vector<Poly> pow_cache{one()};
    auto power = [&](int e) -> const Poly& {
      while (static_cast<int>(pow_cache.size()) <= e) pow_cache.push_back(pow_cache.back() * r);
      return pow_cache[static_cast<std::size_t>(e)];
    };
    // negative exponents of v are only substitutable when r is a monomial
    std::optional<Monomial> r_mono;
    Rational r_coeff;
    if (r.t_.size() == 1) {
      r_mono = r.t_.begin()->first;
      r_coeff = r.t_.begin()->second;
    }
    Poly out;
    for (const auto& [m, c] : t_) {
      int e = 0;
      Monomial rest = m.without(v, &e);
      if (e == 0) {
        out.add_term(m, c);
      } else if (e > 0) {
        for (const auto& [pm, pc] : power(e).t_) out.add_term(rest.times(pm), c * pc);
      } else {
        if (!r_mono) throw domain_error("substitute: negative exponent needs a monomial image");
        Monomial img = r_mono->pow(e);
        if (lring::is_zero(r_coeff)) throw domain_error("substitute: zero image of a negative power");
        Rational coeff = c / rational_pow(r_coeff, -e);
        out.add_term(rest.times(img), coeff);
      }
    }
    check_poly_exponents(out);
    return out;
  }

  /// Rewrites every monomial through fn(var, exp) -> (var', exp'); collects.
  Poly map_monomials(const std::function<std::pair<VarKey, int>(VarKey, int)>& fn) const {
    Poly out;
    for (const auto& [m, c] : t_) {
      Monomial nm;
      for (const auto& f : m.factors()) {
        auto [nv, ne] = fn(f.var, f.exp);
        if (ne != 0) nm = nm.times(Monomial::var(nv, ne));
      }
      out.add_term(nm, c);
    }
    return out;
  }

  int min_exponent(VarKey v) const {
    bool seen = false;
    int mn = 0;
    for (const auto& [m, c] : t_) {
      int e = m.exponent(v);
      if (!seen || e < mn) mn = e;
      seen = true;
    }
    return mn;
  }

  int max_exponent(VarKey v) const {
    int mx = 0;
    for (const auto& [m, c] : t_) {
      int e = m.exponent(v);
      if (e > mx) mx = e;
    }
    return mx;
  }

  bool contains_kind(VarKind k) const {
    for (const auto& [m, c] : t_)
      for (const auto& f : m.factors())
        if (f.var.kind() == k) return true;
    return false;
  }

  template <typename Fn>
  void for_each_var(Fn&& fn) const {
    for (const auto& [m, c] : t_)
      for (const auto& f : m.factors()) fn(f.var);
  }

  /// Max over terms of sum(weight(var) * exp).
  long weighted_degree(const std::function<long(VarKey)>& weight) const {
    long best = 0;
    for (const auto& [m, c] : t_) {
      long d = 0;
      for (const auto& f : m.factors()) d += weight(f.var) * f.exp;
      if (d > best) best = d;
    }
    return best;
  }

  std::vector<std::pair<Monomial, Rational>> sorted_terms() const {
    std::vector<std::pair<Monomial, Rational>> v(t_.begin(), t_.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return b.first < a.first; });
    return v;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (const auto& [m, c] : a.t_) {
      auto it = b.t_.find(m);
      if (it == b.t_.end() || it->second != c) return false;
    }
    return true;
  }

  /// Canonical text: terms in descending monomial order, "p/q" coefficients,
  /// variables as psi{k}(x), lam{k}(x), L, t.
  std::string render() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : sorted_terms()) {
      Rational a = c;
      bool neg = sgn(a) < 0;
      if (neg) a = -a;
      if (first) {
        if (neg) out += "-";
        first = false;
      } else {
        out += neg ? " - " : " + ";
      }
      std::string mono;
      for (const auto& f : m.factors()) {
        if (!mono.empty()) mono += "*";
        mono += f.var.display();
        if (f.exp != 1) mono += "^" + std::to_string(f.exp);
      }
      if (mono.empty()) {
        out += to_string(a);
      } else if (is_one(a)) {
        out += mono;
      } else {
        out += to_string(a) + "*" + mono;
      }
    }
    return out;
  }

 private:
  static Rational rational_pow(const Rational& q, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
  }

  static void check_exponents(const Monomial& m) {
    for (const auto& f : m.factors())
      if (f.exp < 0 && f.var.kind() != VarKind::lefschetz)
        throw domain_error("negative exponent of a non-Lefschetz variable");
  }

  static void check_poly_exponents(const Poly& p) {
    for (const auto& [m, c] : p.t_) check_exponents(m);
  }

  TermMap t_;
};

namespace detail {

/// Fast path for divisors c0 + cm*m with m != 1: monomials split into orbits
/// base*m^j, where the quotient follows the first-order recurrence
/// q_j = (p_j - cm*q_{j-1})/c0 and exactness means the last running value
/// vanishes. One pass instead of term-by-term long division.
inline std::optional<Poly> divide_by_binomial(const Poly& p, const Rational& c0,
                                              const Rational& cm, const Monomial& m) {
  // designated variable of m used to index the orbit position
  const VarPow& lead = m.factors().front();
  struct Entry {
    long j;
    Rational c;
  };
  std::unordered_map<Monomial, std::vector<Entry>, MonomialHash> orbits;
  for (const auto& [mono, c] : p.terms()) {
    // exponents are nonnegative here (caller shifts), so plain division floors
    long j = static_cast<long>(mono.exponent(lead.var)) / lead.exp;
    Monomial base = mono.times(m.pow(static_cast<int>(-j)));
    orbits[base].push_back({j, c});
  }
  Poly q;
  for (auto& [base, entries] : orbits) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.j < b.j; });
    Rational qprev = 0;
    std::size_t idx = 0;
    const long jlast = entries.back().j;
    for (long j = entries.front().j; j <= jlast; ++j) {
      if (idx < entries.size() && lring::is_zero(qprev) && entries[idx].j > j)
        j = entries[idx].j;  // skip a dead gap
      Rational pj = 0;
      if (idx < entries.size() && entries[idx].j == j) pj = entries[idx++].c;
      Rational qj = (pj - cm * qprev) / c0;
      qj.canonicalize();
      if (!lring::is_zero(qj)) q.add_term(base.times(m.pow(static_cast<int>(j))), qj);
      qprev = std::move(qj);
    }
    // beyond the last term the recurrence must stay at zero
    if (!lring::is_zero(qprev)) return std::nullopt;
  }
  return q;
}

}  // namespace detail

/// Exact quotient a/b, or nullopt when b does not divide a. Long division
/// under the fixed monomial order; Laurent powers of L are shifted out first.
inline std::optional<Poly> poly_exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw domain_error("poly_exact_div: division by zero");
  if (a.is_zero()) return Poly::zero();

  const VarKey L = VarKey::lefschetz();
  int sa = std::min(a.min_exponent(L), 0);
  int sb = std::min(b.min_exponent(L), 0);
  Poly na = sa < 0 ? a.times_monomial(Monomial::var(L, -sa)) : a;
  Poly nb = sb < 0 ? b.times_monomial(Monomial::var(L, -sb)) : b;

  if (nb.n_terms() == 2) {
    Rational c0, cm;
    Monomial m;
    bool has_const = false;
    for (const auto& [mono, c] : nb.terms()) {
      if (mono.is_one()) {
        c0 = c;
        has_const = true;
      } else {
        m = mono;
        cm = c;
      }
    }
    if (has_const) {
      auto q = detail::divide_by_binomial(na, c0, cm, m);
      if (!q) return std::nullopt;
      int shift = sb - sa;
      if (shift != 0) *q = q->times_monomial(Monomial::var(L, shift));
      return q;
    }
  }

  // leading term of the divisor
  auto bt = nb.sorted_terms();
  const Monomial& blm = bt.front().first;
  const Rational& blc = bt.front().second;

  std::map<Monomial, Rational, std::greater<Monomial>> rem;
  for (const auto& [m, c] : na.terms()) rem.emplace(m, c);

  Poly q;
  while (!rem.empty()) {
    const auto& [rm, rc] = *rem.begin();
    if (!blm.divides(rm)) return std::nullopt;
    Monomial qm = rm.divided_by(blm);
    Rational qc = rc / blc;
    q.add_term(qm, qc);
    for (const auto& [bm, bc] : bt) {
      Monomial m = qm.times(bm);
      Rational delta = qc * bc;
      auto it = rem.find(m);
      if (it == rem.end()) {
        rem.emplace(std::move(m), -delta);
      } else {
        it->second -= delta;
        if (lring::is_zero(it->second)) rem.erase(it);
      }
    }
  }
  int shift = sb - sa;
  if (shift != 0) q = q.times_monomial(Monomial::var(L, shift));
  return q;
}

enum class PolyOp { add, mul, pow };

/// Uniform arithmetic entry point (pow takes the exponent via `exponent`).
inline Poly poly_arith(PolyOp op, const Poly& a, const Poly& b, int exponent = 0) {
  switch (op) {
    case PolyOp::add:
      return a + b;
    case PolyOp::mul:
      return a * b;
    case PolyOp::pow:
      return a.pow(exponent);
  }
  throw domain_error("poly_arith: bad op");
}

inline Poly poly_substitute(const Poly& p, VarKey v, const Poly& r) {
  return p.substitute(v, r);
}

}  // namespace lring
