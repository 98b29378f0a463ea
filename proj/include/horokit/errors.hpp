#pragma once

#include <stdexcept>
#include <string>

namespace horokit {

/// Bad input to a library operation (wrong range, malformed data, ...).
struct argument_error : std::invalid_argument {
  explicit argument_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A mathematically divergent request (e.g. a non-convergent tail integral).
struct domain_error : std::domain_error {
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// A configured resource limit (degree, grid, memory) was exceeded.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed; carries the invariant's name.
struct invariant_error : std::runtime_error {
  std::string invariant;
  invariant_error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), invariant(std::move(name)) {}
};

/// Configuration/schema violation (CLI layer).
struct schema_error : std::runtime_error {
  explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace horokit
