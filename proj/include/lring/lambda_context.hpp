#pragma once

#include <cstdlib>
#include <mutex>
#include <vector>

#include "lring/poly.hpp"
#include "lring/ratfn.hpp"

namespace lring {

/// Session-wide cache of the universal polynomials converting among the
/// lambda, sigma and Adams operations. Entries are computed on demand from
/// the generating-function recurrences
///
///   n*lam^n = sum_{k=1..n} psi^k * lam^{n-k}
///   n*sig^n = sum_{k=1..n} (-1)^{k-1} psi^k * sig^{n-k}
///
/// and their inversions, in abstract variables attached to a reserved
/// operand. Entries are write-once and shared across threads.
class LambdaRingContext {
 public:
  static LambdaRingContext& instance() {
    static LambdaRingContext ctx;
    return ctx;
  }

  /// Reserved operand whose psi/lam/sig variables carry the table entries.
  static OperandId abstract_id() {
    static OperandId id = OperandTable::instance().add(OperandKind::free_element, "x");
    return id;
  }

  static VarKey psi_var(int k) { return VarKey::adams(abstract_id(), k); }
  static VarKey lam_var(int k) { return VarKey::lambda(abstract_id(), k); }
  static VarKey sig_var(int k) { return VarKey::sigma(abstract_id(), k); }

  /// lam^n as a polynomial in psi^1..psi^n.
  Poly lambda_in_adams(int n) { return family(Family::l2a, n); }
  /// sig^n as a polynomial in psi^1..psi^n.
  Poly sigma_in_adams(int n) { return family(Family::s2a, n); }
  /// psi^n as a polynomial in lam^1..lam^n (integer coefficients).
  Poly adams_in_lambda(int n) { return family(Family::a2l, n); }
  /// psi^n as a polynomial in sig^1..sig^n (Newton polynomial).
  Poly adams_in_sigma(int n) { return family(Family::a2s, n); }
  /// P^op_n: sig^n in lam-variables, and equally lam^n in sig-variables.
  /// Stored in lam-variables; evaluation is positional by degree.
  Poly op_transform(int n) { return family(Family::op, n); }

  /// Independent route to psi^n in lam-variables through the mixed formula
  /// psi^n = sum_i (-1)^{n-i} i sig^{n-i} lam^i with sig^{n-i} -> P^op.
  Poly adams_mixed_check(int n) {
    if (n < 1) throw domain_error("adams_mixed_check: n must be >= 1");
    Poly acc;
    for (int i = 1; i <= n; ++i) {
      Poly term = op_transform(n - i) * Poly::variable(lam_var(i));
      term = term.scaled(Rational(((n - i) % 2 == 0) ? i : -i));
      acc += term;
    }
    return acc;
  }

 private:
  enum class Family { l2a, s2a, a2l, a2s, op };

  LambdaRingContext() {
    const char* cap = std::getenv("LRING_CTX_CAP");
    cap_ = cap ? std::atoi(cap) : 512;
    if (cap_ < 1) cap_ = 1;
  }

  Poly family(Family f, int n) {
    if (f == Family::op && n == 0) return Poly::one();
    if (n < 1) throw domain_error("conversion polynomial degree must be >= 1");
    if (n > cap_)
      throw inconsistency_error("conversion table cap exceeded (LRING_CTX_CAP=" +
                                std::to_string(cap_) + ")");
    std::lock_guard<std::mutex> lock(mu_);
    extend(n);
    switch (f) {
      case Family::l2a: return l2a_[static_cast<std::size_t>(n)];
      case Family::s2a: return s2a_[static_cast<std::size_t>(n)];
      case Family::a2l: return a2l_[static_cast<std::size_t>(n)];
      case Family::a2s: return a2s_[static_cast<std::size_t>(n)];
      case Family::op: return op_[static_cast<std::size_t>(n)];
    }
    throw domain_error("bad family");
  }

  void extend(int n) {
    if (l2a_.empty()) {
      l2a_ = {Poly::one()};
      s2a_ = {Poly::one()};
      a2l_ = {Poly::one()};  // index 0 unused
      a2s_ = {Poly::one()};
      op_ = {Poly::one()};
    }
    for (int m = static_cast<int>(l2a_.size()); m <= n; ++m) {
      Poly lam_m, sig_m;
      for (int k = 1; k <= m; ++k) {
        Poly psi_k = Poly::variable(psi_var(k));
        lam_m += psi_k * l2a_[static_cast<std::size_t>(m - k)];
        Poly s = psi_k * s2a_[static_cast<std::size_t>(m - k)];
        sig_m += (k % 2 == 1) ? s : -s;
      }
      l2a_.push_back(lam_m.scaled(Rational(1, m)));
      s2a_.push_back(sig_m.scaled(Rational(1, m)));

      // invert: psi^m = m*lam^m - sum_{k<m} psi^k lam^{m-k}
      Poly psi_lam = Poly::variable(lam_var(m)).scaled(m);
      for (int k = 1; k < m; ++k)
        psi_lam -= a2l_[static_cast<std::size_t>(k)] * Poly::variable(lam_var(m - k));
      a2l_.push_back(std::move(psi_lam));

      // invert: (-1)^{m-1} psi^m = m*sig^m - sum_{k<m} (-1)^{k-1} psi^k sig^{m-k}
      Poly psi_sig = Poly::variable(sig_var(m)).scaled(m);
      for (int k = 1; k < m; ++k) {
        Poly s = a2s_[static_cast<std::size_t>(k)] * Poly::variable(sig_var(m - k));
        psi_sig -= (k % 2 == 1) ? s : -s;
      }
      if (m % 2 == 0) psi_sig = -psi_sig;
      a2s_.push_back(std::move(psi_sig));

      // P^op_m = sum_{i=1..m} (-1)^{i+1} X_i P^op_{m-i}
      Poly pop_m;
      for (int i = 1; i <= m; ++i) {
        Poly s = Poly::variable(lam_var(i)) * op_[static_cast<std::size_t>(m - i)];
        pop_m += (i % 2 == 1) ? s : -s;
      }
      op_.push_back(std::move(pop_m));
    }
  }

  std::mutex mu_;
  int cap_;
  std::vector<Poly> l2a_, s2a_, a2l_, a2s_, op_;
};

/// Evaluates a conversion polynomial at positional images: the abstract
/// variable of degree k (of any family) maps to images[k-1].
inline RatFn eval_conversion(const Poly& conv, const std::vector<RatFn>& images) {
  std::vector<std::vector<RatFn>> powers(images.size());
  auto power = [&](int idx, int e) -> const RatFn& {
    auto& cache = powers[static_cast<std::size_t>(idx)];
    if (cache.empty()) cache.push_back(RatFn::one());
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(cache.back() * images[static_cast<std::size_t>(idx)]);
    return cache[static_cast<std::size_t>(e)];
  };
  RatFn acc;
  for (const auto& [m, c] : conv.terms()) {
    RatFn term = RatFn::constant(c);
    for (const auto& f : m.factors()) {
      int idx = f.var.degree() - 1;
      if (idx < 0 || idx >= static_cast<int>(images.size()))
        throw domain_error("eval_conversion: missing image for degree " +
                           std::to_string(f.var.degree()));
      term = term * power(idx, f.exp);
    }
    acc += term;
  }
  return acc;
}

inline Poly eval_conversion_poly(const Poly& conv, const std::vector<Poly>& images) {
  std::vector<std::vector<Poly>> powers(images.size());
  auto power = [&](int idx, int e) -> const Poly& {
    auto& cache = powers[static_cast<std::size_t>(idx)];
    if (cache.empty()) cache.push_back(Poly::one());
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(cache.back() * images[static_cast<std::size_t>(idx)]);
    return cache[static_cast<std::size_t>(e)];
  };
  Poly acc;
  for (const auto& [m, c] : conv.terms()) {
    Poly term = Poly::constant(c);
    for (const auto& f : m.factors()) {
      int idx = f.var.degree() - 1;
      if (idx < 0 || idx >= static_cast<int>(images.size()))
        throw domain_error("eval_conversion: missing image for degree " +
                           std::to_string(f.var.degree()));
      term = term * power(idx, f.exp);
    }
    acc += term;
  }
  return acc;
}

}  // namespace lring
