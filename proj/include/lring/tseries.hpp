#pragma once

#include <variant>
#include <vector>

#include "lring/ratfn.hpp"

namespace lring {

/// Power series in a formal bookkeeping variable, truncated at a fixed order,
/// with RatFn coefficients. Operations never look past the truncation order.
class TSeries {
 public:
  explicit TSeries(int order) : coeffs_(static_cast<std::size_t>(order) + 1) {
    if (order < 0) throw domain_error("TSeries: negative order");
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const RatFn& coeff(int r) const {
    if (r < 0 || r > order()) throw domain_error("TSeries::coeff: index out of range");
    return coeffs_[static_cast<std::size_t>(r)];
  }

  void set_coeff(int r, RatFn value) {
    if (r < 0 || r > order()) throw domain_error("TSeries::set_coeff: index out of range");
    coeffs_[static_cast<std::size_t>(r)] = std::move(value);
  }

  void add_coeff(int r, const RatFn& value) {
    if (r < 0 || r > order()) throw domain_error("TSeries::add_coeff: index out of range");
    coeffs_[static_cast<std::size_t>(r)] += value;
  }

  friend TSeries operator+(const TSeries& a, const TSeries& b) {
    check_orders(a, b);
    TSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) r.coeffs_[static_cast<std::size_t>(i)] = a.coeff(i) + b.coeff(i);
    return r;
  }

  friend TSeries operator*(const TSeries& a, const TSeries& b) {
    check_orders(a, b);
    TSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i) {
      if (a.coeff(i).is_zero()) continue;
      for (int j = 0; i + j <= a.order(); ++j) {
        if (b.coeff(j).is_zero()) continue;
        r.coeffs_[static_cast<std::size_t>(i + j)] += a.coeff(i) * b.coeff(j);
      }
    }
    return r;
  }

  TSeries pow(int k) const {
    if (k < 0) throw domain_error("TSeries::pow: negative exponent");
    TSeries r(order());
    r.set_coeff(0, RatFn::one());
    TSeries base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return r;
  }

  TSeries scaled(const Rational& c) const {
    TSeries r = *this;
    for (auto& x : r.coeffs_) x.scale(c);
    return r;
  }

  TSeries scaled(const RatFn& c) const {
    TSeries r(order());
    for (int i = 0; i <= order(); ++i) r.coeffs_[static_cast<std::size_t>(i)] = coeff(i) * c;
    return r;
  }

 private:
  static void check_orders(const TSeries& a, const TSeries& b) {
    if (a.order() != b.order()) throw domain_error("TSeries: truncation order mismatch");
  }

  std::vector<RatFn> coeffs_;
};

enum class SeriesOp { add, mul, pow, scale, coeff };

/// Uniform entry point; coeff extraction returns the RatFn alternative.
inline std::variant<TSeries, RatFn> series_ops(SeriesOp op, const TSeries& a,
                                               const TSeries* b = nullptr, int k = 0,
                                               const RatFn* scalar = nullptr) {
  switch (op) {
    case SeriesOp::add:
      if (!b) throw domain_error("series_ops: add needs two series");
      return a + *b;
    case SeriesOp::mul:
      if (!b) throw domain_error("series_ops: mul needs two series");
      return a * *b;
    case SeriesOp::pow:
      return a.pow(k);
    case SeriesOp::scale:
      if (!scalar) throw domain_error("series_ops: scale needs a scalar");
      return a.scaled(*scalar);
    case SeriesOp::coeff:
      return a.coeff(k);
  }
  throw domain_error("series_ops: bad op");
}

}  // namespace lring
