#pragma once

#include <chrono>
#include <numeric>
#include <string>
#include <vector>

#include "lring/groups.hpp"
#include "lring/motives.hpp"
#include "lring/partitions.hpp"
#include "lring/tseries.hpp"

namespace lring {

/// dim M_L(X, r, d) = r^2 (2g - 2 + p) + 1 with deg L = 2g - 2 + p.
inline long moduli_dimension(int g, int p, int r) {
  return static_cast<long>(r) * r * (2 * g - 2 + p) + 1;
}

/// Weighted degree with L -> 1 and the k-th generator -> k.
inline long motive_weighted_degree(const Poly& m) {
  return m.weighted_degree([](VarKey v) -> long {
    switch (v.kind()) {
      case VarKind::lefschetz:
      case VarKind::named:
        return 1;
      default:
        return v.degree();
    }
  });
}

namespace detail {

inline int floor_div(long num, long den) {
  Integer q;
  Integer n(static_cast<long>(num)), d(static_cast<long>(den));
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return static_cast<int>(q.get_si());
}

/// Cache of lam^k([X]) in generator form for one curve.
class CurveClassPowers {
 public:
  explicit CurveClassPowers(const CurveHandle& h) : h_(h), cls_(curve_class(h)) {}

  // by value: growing the cache reallocates, so references would dangle
  Poly lam_X(int k) {
    if (k < 0) return Poly::zero();
    while (static_cast<int>(cache_.size()) <= k) {
      int n = static_cast<int>(cache_.size());
      cache_.push_back(to_lambda(lambda_(n, cls_)).to_poly());
    }
    return cache_[static_cast<std::size_t>(k)];
  }

  /// lam^n([X] + L^2) = sum_k lam^k([X]) L^{2(n-k)}  (L^2 is 1-dimensional).
  Poly lam_X_plus_L2(int n) {
    Poly acc;
    for (int k = 0; k <= n; ++k)
      acc += lam_X(k).times_monomial(Monomial::var(VarKey::lefschetz(), 2 * (n - k)));
    return acc;
  }

  /// lam^n([X] L + 1) = sum_k lam^k([X]) L^k.
  Poly lam_XL_plus_1(int n) {
    Poly acc;
    for (int k = 0; k <= n; ++k)
      acc += lam_X(k).times_monomial(Monomial::var(VarKey::lefschetz(), k));
    return acc;
  }

 private:
  CurveHandle h_;
  Expr cls_;
  std::vector<Poly> cache_;
};

}  // namespace detail

/// Moduli of semistable vector bundles, explicit rank 2 and 3 formulas.
/// Requires gcd(r, d) = 1 and genus >= 2; the class is a polynomial in the
/// generators, so every denominator must cancel.
inline Poly vb_moduli(const CurveHandle& h, int r, int d) {
  if (h.genus < 2) throw domain_error("vb_moduli: genus must be >= 2");
  if (r != 2 && r != 3) throw domain_error("vb_moduli: explicit formulas exist for rank 2 and 3");
  if (std::gcd(r, d) != 1) throw domain_error("vb_moduli: rank and degree must be coprime");
  int g = h.genus;
  Poly jac = P_eval(h, 0, 0);
  Poly pxl = P_eval(h, 1, 0);
  RatFn total;
  if (r == 2) {
    Poly num = jac * pxl - (jac * jac).times_monomial(Monomial::var(VarKey::lefschetz(), g));
    total = RatFn::from_poly(std::move(num));
    total.divide_by_one_minus(1, 0);  // (L-1)(L^2-1) = (1-L)(1-L^2)
    total.divide_by_one_minus(2, 0);
  } else {
    Poly pxl2 = P_eval(h, 2, 0);
    Poly one_L_L2 = Poly::one() + Poly::variable(VarKey::lefschetz()) +
                    Poly::variable(VarKey::lefschetz(), 2);
    Poly one_L_sq = (Poly::one() + Poly::variable(VarKey::lefschetz())).pow(2);
    Poly inner = (jac * jac * one_L_L2).times_monomial(Monomial::var(VarKey::lefschetz(), 3 * g - 1)) -
                 (jac * pxl * one_L_sq).times_monomial(Monomial::var(VarKey::lefschetz(), 2 * g - 1)) +
                 pxl * pxl2;
    total = RatFn::from_poly(jac * inner);
    total.divide_by_one_minus(1, 0);
    total.divide_by_one_minus(2, 0);
    total.divide_by_one_minus(2, 0);
    total.divide_by_one_minus(3, 0);
  }
  return ratfn_cancel(total).to_poly();
}

/// General-rank del Bano-type sum over compositions of r; must agree with
/// vb_moduli for r = 2, 3.
inline Poly vb_moduli_general(const CurveHandle& h, int r, int d) {
  if (h.genus < 2) throw domain_error("vb_moduli_general: genus must be >= 2");
  if (r < 1) throw domain_error("vb_moduli_general: rank must be >= 1");
  if (std::gcd(r, d) != 1) throw domain_error("vb_moduli_general: rank and degree must be coprime");
  int g = h.genus;
  Poly jac = P_eval(h, 0, 0);

  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      comps.push_back(cur);
      return;
    }
    for (int part = 1; part <= rest; ++part) {
      cur.push_back(part);
      self(self, rest - part);
      cur.pop_back();
    }
  };
  rec(rec, r);

  RatFn total;
  for (const auto& comp : comps) {
    int s = static_cast<int>(comp.size());
    RatFn term = RatFn::from_poly(jac.pow(s));
    if (s % 2 == 0) term.scale(-1);  // (-1)^{s-1}
    for (int k = 1; k < s; ++k) term.divide_by_one_minus(1, 0);
    for (int j = 0; j < s; ++j)
      for (int i = 1; i < comp[static_cast<std::size_t>(j)]; ++i) term *= Z_eval(h, i, 0);
    for (int j = 0; j + 1 < s; ++j)
      term.divide_by_one_minus(comp[static_cast<std::size_t>(j)] + comp[static_cast<std::size_t>(j + 1)], 0);

    Rational exp = 0;
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j) exp += Rational(comp[i] * comp[j]) * (g - 1);
    int partial = 0;
    for (int i = 0; i + 1 < s; ++i) {
      partial += comp[static_cast<std::size_t>(i)];
      exp += Rational(comp[static_cast<std::size_t>(i)] + comp[static_cast<std::size_t>(i + 1)]) *
             frac_part(Rational(-partial * d, r));
    }
    if (!is_integer(exp))
      throw inconsistency_error("vb_moduli_general: non-integer Lefschetz exponent");
    term.multiply_monomial(1, static_cast<int>(exp.get_num().get_si()), 0);
    total += term;
  }
  return ratfn_cancel(total).to_poly();
}

/// The proven Bialynicki-Birula formulas for [M_L(X, r, d)], r <= 3, with the
/// two lambda pre-expansions applied eagerly. Result is the lambda-generator
/// polynomial; a residual denominator is an internal inconsistency.
inline Poly higgs_bb(const CurveHandle& h, int p, int r) {
  if (h.genus < 2) throw domain_error("higgs_bb: genus must be >= 2");
  if (p < 1) throw domain_error("higgs_bb: twist excess p must be >= 1");
  int g = h.genus;
  const VarKey L = VarKey::lefschetz();
  Poly jac = P_eval(h, 0, 0);

  if (r == 1) return jac.times_monomial(Monomial::var(L, g - 1 + p));

  detail::CurveClassPowers powers(h);
  if (r == 2) {
    Poly pxl = P_eval(h, 1, 0);
    Poly num = jac * pxl - (jac * jac).times_monomial(Monomial::var(L, g));
    RatFn t1 = RatFn::from_poly(num.times_monomial(Monomial::var(L, 4 * g - 4 + 4 * p)));
    t1.divide_by_one_minus(1, 0);
    t1.divide_by_one_minus(2, 0);

    Poly sum;
    for (int i = 1; i <= (2 * g - 1 + p) / 2; ++i) sum += powers.lam_X(2 * g - 1 + p - 2 * i);
    RatFn t2 = RatFn::from_poly((jac * sum).times_monomial(Monomial::var(L, 4 * g - 4 + 3 * p)));
    return ratfn_cancel(t1 + t2).to_poly();
  }
  if (r == 3) {
    Poly pxl = P_eval(h, 1, 0);
    Poly pxl2 = P_eval(h, 2, 0);
    Poly one_L_L2 = Poly::one() + Poly::variable(L) + Poly::variable(L, 2);
    Poly one_L_sq = (Poly::one() + Poly::variable(L)).pow(2);

    Poly inner = (jac * jac * one_L_L2).times_monomial(Monomial::var(L, 3 * g - 1)) -
                 (jac * pxl * one_L_sq).times_monomial(Monomial::var(L, 2 * g - 1)) + pxl * pxl2;
    RatFn t1 = RatFn::from_poly((jac * inner).times_monomial(Monomial::var(L, 9 * g - 9 + 9 * p)));
    t1.divide_by_one_minus(1, 0);
    t1.divide_by_one_minus(2, 0);
    t1.divide_by_one_minus(2, 0);
    t1.divide_by_one_minus(3, 0);

    // the two correction sums share the prefactor L^{9g-9+7p} P_X(1)^2 / (L-1)
    Poly sum23;
    int bound2 = detail::floor_div(2 + 3L * (2 * g - 2 + p), 6);  // floor(1/3 + (2g-2+p)/2)
    for (int i = 1; i <= bound2; ++i) {
      int n = -2 * i + 2 * g - 2 + p;
      sum23 += powers.lam_X_plus_L2(n).times_monomial(Monomial::var(L, i + g));
      sum23 -= powers.lam_XL_plus_1(n);
    }
    int bound3 = detail::floor_div(4 + 3L * (2 * g - 2 + p), 6);  // floor(2/3 + (2g-2+p)/2)
    for (int i = 1; i <= bound3; ++i) {
      int n = -2 * i + 2 * g - 1 + p;
      sum23 += powers.lam_X_plus_L2(n).times_monomial(Monomial::var(L, i + g - 1));
      sum23 -= powers.lam_XL_plus_1(n);
    }
    RatFn t23 =
        RatFn::from_poly((jac * jac * sum23).times_monomial(Monomial::var(L, 9 * g - 9 + 7 * p)));
    t23.scale(-1);  // 1/(L-1) = -1/(1-L)
    t23.divide_by_one_minus(1, 0);

    Poly sum4;
    for (int i = 1; i <= 2 * g - 2 + p; ++i) {
      int jlo = std::max(2 - 2 * g - p + i, 1 - i);
      int jhi = detail::floor_div(2 * g - 1 + p - i, 2);
      for (int j = jlo; j <= jhi; ++j)
        sum4 += powers.lam_X(-i + j + 2 * g - 2 + p) * powers.lam_X(-i - 2 * j + 2 * g - 1 + p);
    }
    RatFn t4 = RatFn::from_poly((jac * sum4).times_monomial(Monomial::var(L, 9 * g - 9 + 6 * p)));

    return ratfn_cancel(t1 + t23 + t4).to_poly();
  }
  throw domain_error("higgs_bb: rank must be 1, 2 or 3");
}

/// Z_X(t^tpow L^lpow) in Adams form: the numerator carries lam^n(h1) written
/// out in the psi variables of h1, so psi_j can act by degree scaling.
inline RatFn zeta_adams(const CurveHandle& h, int lpow, int tpow) {
  if (lpow == 0 && tpow == 0) throw domain_error("zeta_adams: argument 1 is a pole");
  auto& ctx = LambdaRingContext::instance();
  Poly num;
  for (int n = 0; n <= 2 * h.genus; ++n) {
    Poly coeff = Poly::one();
    if (n >= 1)
      coeff = ctx.lambda_in_adams(n).map_monomials([&](VarKey v, int e) {
        return std::make_pair(VarKey::adams(h.chow, v.degree()), e);
      });
    num += coeff.times_monomial(
        Monomial::var(VarKey::lefschetz(), lpow * n).times(Monomial::var(VarKey::t(), tpow * n)));
  }
  RatFn r = RatFn::from_poly(std::move(num));
  r.divide_by_one_minus(lpow, tpow);
  r.divide_by_one_minus(lpow + 1, tpow);
  return r;
}

/// The partition sum H_n(t): per-cell factors
/// (-t^{a-l} L^a)^p t^{(1-g)(2l+1)} Z_X(t^h L^a), in Adams form. Negative t
/// powers live in the unit.
inline RatFn adhm_H_n(int n, const CurveHandle& h, int p) {
  if (n < 1) throw domain_error("adhm_H_n: n must be >= 1");
  if (h.genus < 2) throw domain_error("adhm_H_n: genus must be >= 2");
  if (p < 1) throw domain_error("adhm_H_n: p must be >= 1");
  int g = h.genus;
  RatFn total;
  for (const auto& part : partitions(n)) {
    RatFn term = RatFn::one();
    for (const auto& cell : hook_stats(part)) {
      int sign = (p % 2 == 0) ? 1 : -1;
      term.multiply_monomial(sign, p * cell.arm,
                             p * (cell.arm - cell.leg) + (1 - g) * (2 * cell.leg + 1));
      term *= zeta_adams(h, cell.arm, cell.hook);
    }
    total += term;
  }
  return total;
}

/// Coefficient of T^r in the Moebius-weighted logarithm, times (1-t)(1-Lt).
/// Truncation bounds j <= r, k <= r/j, n <= r/j are forced by the minimum
/// T-degree jk of each contribution.
inline RatFn adhm_H_r(int r, const CurveHandle& h, int p) {
  if (r < 1) throw domain_error("adhm_H_r: r must be >= 1");
  std::vector<RatFn> hn(static_cast<std::size_t>(r) + 1);
  for (int n = 1; n <= r; ++n) hn[static_cast<std::size_t>(n)] = adhm_H_n(n, h, p);

  TSeries acc(r);
  for (int j = 1; j <= r; ++j) {
    int mu = moebius(j);
    if (mu == 0) continue;
    TSeries sj(r);
    for (int n = 1; j * n <= r; ++n)
      sj.set_coeff(j * n, ratfn_apply_adams(hn[static_cast<std::size_t>(n)], j));
    TSeries sjk = sj;
    for (int k = 1; j * k <= r; ++k) {
      if (k > 1) sjk = sjk * sj;
      int sign = (k % 2 == 1) ? 1 : -1;  // (-1)^{k+1}
      acc = acc + sjk.scaled(Rational(sign * mu, j * k));
    }
  }
  RatFn hr = acc.coeff(r);
  hr.multiply_by_one_minus(0, 1);
  hr.multiply_by_one_minus(1, 1);
  return hr;
}

/// Mozgovoy's conjectural motive: cancel the t-factors out of H_r, evaluate
/// at t = 1 and apply the sign and Lefschetz prefactor. Emits the
/// lambda-generator polynomial.
inline Poly adhm_motive(const CurveHandle& h, int p, int r) {
  int g = h.genus;
  RatFn hr = adhm_H_r(r, h, p);
  hr = ratfn_cancel(hr);

  auto has_pure_t_factor = [](const RatFn& f) {
    for (const auto& [fac, m] : f.denominator())
      if (fac.lpow == 0) return true;
    return false;
  };
  if (has_pure_t_factor(hr)) {
    // pure-t factors that resist cancellation in Adams form may still divide
    // after the curve relations are applied
    hr = ratfn_cancel(subs_adams_all(hr));
    if (has_pure_t_factor(hr))
      throw inconsistency_error("H_r not polynomial in t: factor stayed in the denominator");
  }

  // evaluate t = 1: the surviving factors (1 - t^b L^a) have a > 0
  Poly num = hr.numerator().substitute(VarKey::t(), Poly::one());
  RatFn at1 = RatFn::from_poly(std::move(num));
  for (const auto& [f, m] : hr.denominator())
    for (int i = 0; i < m; ++i) at1.divide_by_one_minus(f.lpow, 0);
  at1.multiply_monomial(hr.unit().sign, hr.unit().lpow, 0);
  at1 = ratfn_cancel(subs_adams_all(ratfn_cancel(at1)));

  Poly motive = at1.to_poly();
  int sign = ((p * r) % 2 == 0) ? 1 : -1;
  motive = motive.times_monomial(
      Monomial::var(VarKey::lefschetz(), r * r * (g - 1) + p * r * (r + 1) / 2), sign);
  if (motive.min_exponent(VarKey::lefschetz()) < 0)
    throw inconsistency_error("adhm_motive: negative Lefschetz power in the final class");
  return motive;
}

struct MozgovoyReport {
  int genus = 0;
  int p = 0;
  int rank = 0;
  bool equal = false;
  long n_terms = 0;
  long weighted_degree = 0;
  long runtime_ms = 0;
  std::string error;  // empty on success
};

/// Compares the proven and the conjectural motive formulas symbolically.
/// perturb_bb changes one coefficient of the proven side (negative-control
/// fixture).
inline MozgovoyReport verify_mozgovoy(int g, int p, int r, bool perturb_bb = false) {
  MozgovoyReport rep;
  rep.genus = g;
  rep.p = p;
  rep.rank = r;
  auto start = std::chrono::steady_clock::now();
  try {
    if (g < 2) throw domain_error("verify_mozgovoy: genus must be >= 2");
    if (p < 1) throw domain_error("verify_mozgovoy: p must be >= 1");
    if (r < 1 || r > 3) throw domain_error("verify_mozgovoy: rank must be 1, 2 or 3");
    CurveHandle h = curve(g, "X");
    Poly bb = higgs_bb(h, p, r);
    if (perturb_bb) bb.add_term(Monomial::var(VarKey::lefschetz(), 1), 1);
    Poly adhm = adhm_motive(h, p, r);
    rep.equal = (bb - adhm).is_zero();
    rep.n_terms = static_cast<long>(bb.n_terms());
    rep.weighted_degree = std::max(motive_weighted_degree(bb), motive_weighted_degree(adhm));
  } catch (const std::exception& ex) {
    rep.error = ex.what();
  }
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

}  // namespace lring
