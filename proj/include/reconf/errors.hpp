#pragma once

#include <stdexcept>
#include <string>

namespace reconf {

// Error taxonomy mirrors the CLI exit-code contract:
//   invalid_instance_error -> 2, capacity_error -> 3, audit_failure -> 4.

struct invalid_instance_error : std::runtime_error {
  explicit invalid_instance_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A lemma checker found a counterexample. This is a reportable fatal result,
// not a recoverable condition.
struct audit_failure : std::runtime_error {
  explicit audit_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace reconf
