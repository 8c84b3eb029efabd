#pragma once

#include <numeric>
#include <variant>
#include <vector>

#include "lring/motives.hpp"

namespace lring {

/// Connected semisimple group data: invariant degrees plus the two arithmetic
/// identities used to validate them (sum(2d_i - 1) = dim, prod d_i = |W|).
struct GroupDescriptor {
  std::string name;
  int rank;
  std::vector<int> degrees;
  int dimension;
  Integer weyl_order;
  int pi1_order;
};

inline GroupDescriptor semisimple_group(std::string name, std::vector<int> degrees, int dimension,
                                        Integer weyl_order, int pi1_order) {
  GroupDescriptor g{std::move(name), static_cast<int>(degrees.size()), std::move(degrees),
                    dimension, std::move(weyl_order), pi1_order};
  long sum = 0;
  Integer prod = 1;
  for (int d : g.degrees) {
    if (d < 1) throw domain_error("invariant degrees must be positive");
    sum += 2 * d - 1;
    prod *= d;
  }
  if (sum != g.dimension)
    throw inconsistency_error(g.name + ": sum(2d_i - 1) != dim");
  if (prod != g.weyl_order)
    throw inconsistency_error(g.name + ": prod d_i != |W|");
  return g;
}

enum class GroupFamily { A, B, C, D, E6, E7, E8, F4, G2, SL, GL, PSL, SO, Sp, Spin };

inline GroupFamily group_family_from_name(const std::string& s) {
  if (s == "A") return GroupFamily::A;
  if (s == "B") return GroupFamily::B;
  if (s == "C") return GroupFamily::C;
  if (s == "D") return GroupFamily::D;
  if (s == "E6") return GroupFamily::E6;
  if (s == "E7") return GroupFamily::E7;
  if (s == "E8") return GroupFamily::E8;
  if (s == "F4") return GroupFamily::F4;
  if (s == "G2") return GroupFamily::G2;
  if (s == "SL") return GroupFamily::SL;
  if (s == "GL") return GroupFamily::GL;
  if (s == "PSL") return GroupFamily::PSL;
  if (s == "SO") return GroupFamily::SO;
  if (s == "Sp") return GroupFamily::Sp;
  if (s == "Spin") return GroupFamily::Spin;
  throw domain_error("unknown group family: " + s);
}

namespace detail {

inline GroupDescriptor type_A(int n, const std::string& name, int pi1) {
  if (n < 1) throw domain_error("type A rank must be >= 1");
  std::vector<int> deg;
  for (int k = 2; k <= n + 1; ++k) deg.push_back(k);
  return semisimple_group(name, std::move(deg), n * (n + 2), factorial(static_cast<unsigned>(n + 1)),
                          pi1);
}

inline GroupDescriptor type_BC(int n, const std::string& name, int pi1) {
  if (n < 1) throw domain_error("type B/C rank must be >= 1");
  std::vector<int> deg;
  for (int k = 1; k <= n; ++k) deg.push_back(2 * k);
  Integer w = factorial(static_cast<unsigned>(n));
  mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned>(n));
  return semisimple_group(name, std::move(deg), n * (2 * n + 1), std::move(w), pi1);
}

inline GroupDescriptor type_D(int n, const std::string& name, int pi1) {
  if (n < 2) throw domain_error("type D rank must be >= 2");
  std::vector<int> deg;
  for (int k = 1; k < n; ++k) deg.push_back(2 * k);
  deg.push_back(n);
  std::sort(deg.begin(), deg.end());
  Integer w = factorial(static_cast<unsigned>(n));
  mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned>(n - 1));
  return semisimple_group(name, std::move(deg), n * (2 * n - 1), std::move(w), pi1);
}

}  // namespace detail

/// GL_n is not semisimple; its class is the explicit bundle count.
inline Expr gl_class(int n) {
  if (n < 1) throw domain_error("GL rank must be >= 1");
  std::vector<Expr> factors;
  for (int k = 0; k < n; ++k)
    factors.push_back(Expr::pow(lefschetz(), n) - Expr::pow(lefschetz(), k));
  return Expr::mul(std::move(factors));
}

/// Standard degree tables. preset(GL, n) yields the explicit class instead of
/// a descriptor.
inline std::variant<GroupDescriptor, Expr> preset(GroupFamily family, int n = 0) {
  using detail::type_A;
  using detail::type_BC;
  using detail::type_D;
  switch (family) {
    case GroupFamily::A: return type_A(n, "A" + std::to_string(n), 1);
    case GroupFamily::B: return type_BC(n, "B" + std::to_string(n), 1);
    case GroupFamily::C: return type_BC(n, "C" + std::to_string(n), 1);
    case GroupFamily::D: return type_D(n, "D" + std::to_string(n), 1);
    case GroupFamily::E6: return semisimple_group("E6", {2, 5, 6, 8, 9, 12}, 78, 51840, 1);
    case GroupFamily::E7:
      return semisimple_group("E7", {2, 6, 8, 10, 12, 14, 18}, 133, 2903040, 1);
    case GroupFamily::E8:
      return semisimple_group("E8", {2, 8, 12, 14, 18, 20, 24, 30}, 248, 696729600, 1);
    case GroupFamily::F4: return semisimple_group("F4", {2, 6, 8, 12}, 52, 1152, 1);
    case GroupFamily::G2: return semisimple_group("G2", {2, 6}, 14, 12, 1);
    case GroupFamily::SL:
      if (n < 2) throw domain_error("SL_n needs n >= 2");
      return type_A(n - 1, "SL" + std::to_string(n), 1);
    case GroupFamily::PSL:
      if (n < 2) throw domain_error("PSL_n needs n >= 2");
      return type_A(n - 1, "PSL" + std::to_string(n), n);
    case GroupFamily::Sp:
      if (n < 2 || n % 2 != 0) throw domain_error("Sp_n needs even n >= 2");
      return type_BC(n / 2, "Sp" + std::to_string(n), 1);
    case GroupFamily::SO:
      if (n <= 2) throw domain_error("SO_n needs n >= 3");
      return n % 2 == 1 ? type_BC((n - 1) / 2, "SO" + std::to_string(n), 2)
                        : type_D(n / 2, "SO" + std::to_string(n), 2);
    case GroupFamily::Spin:
      if (n <= 2) throw domain_error("Spin_n needs n >= 3");
      return n % 2 == 1 ? type_BC((n - 1) / 2, "Spin" + std::to_string(n), 1)
                        : type_D(n / 2, "Spin" + std::to_string(n), 1);
    case GroupFamily::GL: return gl_class(n);
  }
  throw domain_error("bad group family");
}

/// [G] = L^dim prod (1 - L^{-d_i}); the prefactor clears all Laurent powers.
inline Poly group_motive(const GroupDescriptor& g) {
  Poly acc = Poly::term(Monomial::var(VarKey::lefschetz(), g.dimension), 1);
  for (int d : g.degrees) {
    Poly f = Poly::one();
    f.add_term(Monomial::var(VarKey::lefschetz(), -d), -1);
    acc = acc * f;
  }
  if (acc.min_exponent(VarKey::lefschetz()) < 0)
    throw inconsistency_error(g.name + ": motive kept a negative Lefschetz power");
  return acc;
}

/// [BG] = 1/[G], in canonical factored form. The closed formula is proven
/// for the special and low-rank classical cases (GL_n, SL_n, Sp_2n, SO_n,
/// PSL_2, PSL_3) and conjectural in general; it is computed for every
/// descriptor regardless.
inline RatFn bg(const GroupDescriptor& g) { return ratfn_inv(RatFn::from_poly(group_motive(g))); }

/// [Bun(X, G)] = |pi1(G)| L^{(g-1) dim G} prod_i Z_X(L^{-d_i}).
/// Proven for SL_n, conjectural in general; computed for every descriptor.
inline RatFn bun(const GroupDescriptor& g, const CurveHandle& h) {
  RatFn acc = RatFn::constant(g.pi1_order);
  acc.multiply_monomial(1, (h.genus - 1) * g.dimension, 0);
  for (int d : g.degrees) acc *= Z_eval(h, -d, 0);
  return acc;
}

}  // namespace lring
