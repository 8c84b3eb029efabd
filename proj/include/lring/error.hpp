#pragma once

#include <stdexcept>
#include <string>

namespace lring {

/// Base for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad argument or precondition violation (maps to CLI exit code 2).
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error(what) {}
};

/// Expression text could not be parsed.
class parse_error : public error {
 public:
  parse_error(const std::string& what, int line, int column)
      : error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// A rational-function inverse was requested outside the factorable class.
class inversion_error : public error {
 public:
  explicit inversion_error(const std::string& what) : error(what) {}
};

/// A result violated a structural guarantee, e.g. a residual denominator in a
/// motive that must be polynomial (maps to CLI exit code 3).
class inconsistency_error : public error {
 public:
  explicit inconsistency_error(const std::string& what) : error(what) {}
};

}  // namespace lring
