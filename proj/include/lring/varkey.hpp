#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "lring/operand.hpp"

namespace lring {

enum class VarKind : std::uint8_t {
  lefschetz = 0,
  named = 1,      // a poly_var operand such as t
  lambda_var = 2, // lam{k}(x)
  sigma_var = 3,  // sig{k}(x), used by the conversion tables
  adams_var = 4,  // psi{k}(x)
};

/// A polynomial variable, packed as kind(8) | operand(32) | degree(24).
/// The packing gives the fixed total order: kind, then operand id, then degree.
class VarKey {
 public:
  constexpr VarKey() : bits_(0) {}

  static VarKey lefschetz() { return VarKey(VarKind::lefschetz, 0, 0); }
  static VarKey named(OperandId op) { return VarKey(VarKind::named, op, 0); }
  static VarKey t() { return named(t_var_id()); }
  static VarKey lambda(OperandId op, int degree) {
    check_degree(degree);
    return VarKey(VarKind::lambda_var, op, degree);
  }
  static VarKey sigma(OperandId op, int degree) {
    check_degree(degree);
    return VarKey(VarKind::sigma_var, op, degree);
  }
  static VarKey adams(OperandId op, int degree) {
    check_degree(degree);
    return VarKey(VarKind::adams_var, op, degree);
  }

  VarKind kind() const { return static_cast<VarKind>(bits_ >> 56); }
  OperandId operand() const { return static_cast<OperandId>((bits_ >> 24) & 0xffffffffu); }
  int degree() const { return static_cast<int>(bits_ & 0xffffffu); }
  std::uint64_t bits() const { return bits_; }

  friend bool operator==(VarKey a, VarKey b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(VarKey a, VarKey b) { return a.bits_ <=> b.bits_; }

  std::string display() const {
    const auto& table = OperandTable::instance();
    switch (kind()) {
      case VarKind::lefschetz:
        return "L";
      case VarKind::named:
        return table.info(operand()).name;
      case VarKind::lambda_var: {
        const std::string& n = table.info(operand()).name;
        if (degree() == 1) return n;
        return "lam" + std::to_string(degree()) + "(" + n + ")";
      }
      case VarKind::sigma_var:
        return "sig" + std::to_string(degree()) + "(" + table.info(operand()).name + ")";
      case VarKind::adams_var: {
        const std::string& n = table.info(operand()).name;
        if (degree() == 1) return n;
        return "psi" + std::to_string(degree()) + "(" + n + ")";
      }
    }
    return "?";
  }

 private:
  VarKey(VarKind k, OperandId op, int degree)
      : bits_((static_cast<std::uint64_t>(k) << 56) |
              (static_cast<std::uint64_t>(op) << 24) |
              static_cast<std::uint64_t>(degree)) {}

  static void check_degree(int degree) {
    if (degree < 1 || degree >= (1 << 24)) throw domain_error("operator degree out of range");
  }

  std::uint64_t bits_;
};

}  // namespace lring
