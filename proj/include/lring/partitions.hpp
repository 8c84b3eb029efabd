#pragma once

#include <vector>

#include "lring/rational.hpp"

namespace lring {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;

/// All partitions of n, reverse-lexicographic ([n] first, [1,...,1] last).
inline std::vector<Partition> partitions(int n) {
  if (n < 0) throw domain_error("partitions: negative n");
  std::vector<Partition> out;
  Partition cur;
  // descend: place parts no larger than `cap`
  auto rec = [&](auto&& self, int rest, int cap) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, cap); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Partitions of n into exactly k positive parts, weakly decreasing.
inline std::vector<Partition> ordered_partitions(int n, int k) {
  if (n < 0 || k < 0) throw domain_error("ordered_partitions: negative argument");
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int rest, int parts_left, int cap) -> void {
    if (parts_left == 0) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    // each remaining part is >= 1 and <= cap
    for (int part = std::min(rest - (parts_left - 1), cap); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, parts_left - 1, part);
      cur.pop_back();
    }
  };
  if (k == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  rec(rec, n, k, n);
  return out;
}

/// Number of parts equal to i.
inline int multiplicity(const Partition& a, int i) {
  int c = 0;
  for (int p : a)
    if (p == i) ++c;
  return c;
}

struct Cell {
  int i, j;  // 1-based row/column
  int arm;   // a(i,j) = lambda_i - j
  int leg;   // l(i,j) = max{l : lambda_l >= j} - i
  int hook;  // a + l + 1
};

/// Arm/leg/hook statistics for every cell of the Young diagram.
inline std::vector<Cell> hook_stats(const Partition& p) {
  std::vector<Cell> cells;
  for (int i = 1; i <= static_cast<int>(p.size()); ++i) {
    for (int j = 1; j <= p[static_cast<std::size_t>(i - 1)]; ++j) {
      int arm = p[static_cast<std::size_t>(i - 1)] - j;
      int maxl = 0;
      for (int l = 1; l <= static_cast<int>(p.size()); ++l)
        if (p[static_cast<std::size_t>(l - 1)] >= j) maxl = l;
      int leg = maxl - i;
      cells.push_back(Cell{i, j, arm, leg, arm + leg + 1});
    }
  }
  return cells;
}

/// Classical Moebius function.
inline int moebius(int j) {
  if (j <= 0) throw domain_error("moebius: argument must be positive");
  int result = 1;
  for (int p = 2; p * p <= j; ++p) {
    if (j % p == 0) {
      j /= p;
      if (j % p == 0) return 0;
      result = -result;
    }
  }
  if (j > 1) result = -result;
  return result;
}

/// q - floor(q), exact and in [0, 1).
inline Rational frac_part(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

}  // namespace lring
