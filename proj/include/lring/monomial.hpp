#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

#include "lring/varkey.hpp"

namespace lring {

struct VarPow {
  VarKey var;
  int exp;  // nonzero; may be negative only for the Lefschetz variable
  friend bool operator==(const VarPow&, const VarPow&) = default;
};

/// Sparse monomial: variables sorted ascending by VarKey, exponents nonzero.
class Monomial {
 public:
  Monomial() = default;

  static Monomial one() { return Monomial(); }

  static Monomial var(VarKey v, int exp = 1) {
    Monomial m;
    if (exp != 0) m.vp_.push_back({v, exp});
    return m;
  }

  bool is_one() const { return vp_.empty(); }
  const std::vector<VarPow>& factors() const { return vp_; }
  std::size_t num_vars() const { return vp_.size(); }

  int exponent(VarKey v) const {
    for (const auto& f : vp_)
      if (f.var == v) return f.exp;
    return 0;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& f : vp_) d += f.exp;
    return d;
  }

  Monomial times(const Monomial& o) const {
    Monomial r;
    r.vp_.reserve(vp_.size() + o.vp_.size());
    std::size_t i = 0, j = 0;
    while (i < vp_.size() && j < o.vp_.size()) {
      if (vp_[i].var < o.vp_[j].var) {
        r.vp_.push_back(vp_[i++]);
      } else if (o.vp_[j].var < vp_[i].var) {
        r.vp_.push_back(o.vp_[j++]);
      } else {
        int e = vp_[i].exp + o.vp_[j].exp;
        if (e != 0) r.vp_.push_back({vp_[i].var, e});
        ++i, ++j;
      }
    }
    for (; i < vp_.size(); ++i) r.vp_.push_back(vp_[i]);
    for (; j < o.vp_.size(); ++j) r.vp_.push_back(o.vp_[j]);
    return r;
  }

  Monomial pow(int k) const {
    Monomial r = *this;
    for (auto& f : r.vp_) f.exp *= k;
    if (k == 0) r.vp_.clear();
    return r;
  }

  /// Removes v entirely; returns the removed exponent.
  Monomial without(VarKey v, int* removed_exp = nullptr) const {
    Monomial r;
    r.vp_.reserve(vp_.size());
    if (removed_exp) *removed_exp = 0;
    for (const auto& f : vp_) {
      if (f.var == v) {
        if (removed_exp) *removed_exp = f.exp;
      } else {
        r.vp_.push_back(f);
      }
    }
    return r;
  }

  /// Componentwise divisibility (assumes both sides have nonnegative exps).
  bool divides(const Monomial& num) const {
    std::size_t i = 0, j = 0;
    while (i < vp_.size()) {
      if (j >= num.vp_.size()) return false;
      if (num.vp_[j].var < vp_[i].var) {
        ++j;
      } else if (vp_[i].var == num.vp_[j].var) {
        if (num.vp_[j].exp < vp_[i].exp) return false;
        ++i, ++j;
      } else {
        return false;
      }
    }
    return true;
  }

  Monomial divided_by(const Monomial& den) const { return times(den.pow(-1)); }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.vp_ == b.vp_; }

  /// Fixed monomial order: total degree first, then lexicographic on the
  /// ascending VarKey sequence (higher exponent on the first differing
  /// variable wins). Deterministic; compatible with multiplication.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
    std::size_t i = 0, j = 0;
    while (i < a.vp_.size() && j < b.vp_.size()) {
      if (a.vp_[i].var == b.vp_[j].var) {
        if (auto c = a.vp_[i].exp <=> b.vp_[j].exp; c != 0) return c;
        ++i, ++j;
      } else if (a.vp_[i].var < b.vp_[j].var) {
        // a has a variable b lacks (exp 0 in b) at the earliest position
        return a.vp_[i].exp <=> 0;
      } else {
        return 0 <=> b.vp_[j].exp;
      }
    }
    if (i < a.vp_.size()) return a.vp_[i].exp <=> 0;
    if (j < b.vp_.size()) return 0 <=> b.vp_[j].exp;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& f : vp_) {
      h ^= f.var.bits();
      h *= 1099511628211ull;
      h ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(f.exp));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::vector<VarPow> vp_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace lring
