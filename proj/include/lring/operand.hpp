#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>

#include "lring/error.hpp"

namespace lring {

using OperandId = std::uint32_t;

enum class OperandKind : std::uint8_t {
  lefschetz,     // the class of the affine line, written L
  poly_var,      // polynomial extension variable (t and friends); 1-dimensional
  free_element,  // element of a free lambda-ring, all lambda-powers independent
  curve_chow,    // h^1 part of the Chow decomposition of a genus-g curve
};

struct OperandInfo {
  OperandKind kind;
  std::string name;
  int genus = 0;  // curve_chow only
};

/// Session-wide registry of operand descriptors. Ids are allocated atomically
/// with respect to concurrent construction; entries are append-only and their
/// addresses are stable (deque), so returned references stay valid.
class OperandTable {
 public:
  static OperandTable& instance() {
    static OperandTable table;
    return table;
  }

  OperandId add(OperandKind kind, std::string name, int genus = 0) {
    std::lock_guard<std::mutex> lock(mu_);
    entries_.push_back(OperandInfo{kind, std::move(name), genus});
    return static_cast<OperandId>(entries_.size() - 1);
  }

  /// Reuses an existing free element of the same name (parser path).
  OperandId intern_free(const std::string& name) {
    if (name.empty()) throw domain_error("operand name must be non-empty");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = interned_.find(name);
    if (it != interned_.end()) return it->second;
    entries_.push_back(OperandInfo{OperandKind::free_element, name, 0});
    OperandId id = static_cast<OperandId>(entries_.size() - 1);
    interned_.emplace(name, id);
    return id;
  }

  const OperandInfo& info(OperandId id) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (id >= entries_.size()) throw domain_error("unknown operand id");
    return entries_[id];
  }

  OperandId lefschetz_id() const { return 0; }
  OperandId t_id() const { return 1; }

 private:
  OperandTable() {
    entries_.push_back(OperandInfo{OperandKind::lefschetz, "L", 0});
    entries_.push_back(OperandInfo{OperandKind::poly_var, "t", 0});
  }

  mutable std::mutex mu_;
  std::deque<OperandInfo> entries_;
  std::map<std::string, OperandId> interned_;
};

inline OperandId lefschetz_id() { return OperandTable::instance().lefschetz_id(); }
inline OperandId t_var_id() { return OperandTable::instance().t_id(); }

inline OperandId make_free_operand(const std::string& name) {
  if (name.empty()) throw domain_error("operand name must be non-empty");
  return OperandTable::instance().add(OperandKind::free_element, name);
}

inline OperandId make_poly_var_operand(const std::string& name) {
  if (name.empty()) throw domain_error("operand name must be non-empty");
  return OperandTable::instance().add(OperandKind::poly_var, name);
}

}  // namespace lring
