#pragma once

#include <stdexcept>
#include <string>

namespace dhtk {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed file contents: bad JSON, bad "p/q" literals, schema violations.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Structurally valid input that violates a precondition (non-convex data,
/// degenerate sections, non-generic directions, bad parameter ranges).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// Input that parses and satisfies local invariants but is globally
/// inconsistent (localization closure violations, negative densities,
/// cross-validation mismatches).
class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& what) : Error(what) {}
};

/// Randomized line selection exhausted its attempt budget.
class SelectionError : public Error {
 public:
  explicit SelectionError(const std::string& what) : Error(what) {}
};

}  // namespace dhtk
