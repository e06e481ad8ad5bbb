#pragma once

#include <stdexcept>
#include <string>

namespace remr {

/// Classes of scenario-file rejection.
enum class ScenarioErrorKind {
  io,                  ///< file could not be read
  schema,              ///< field missing, wrong shape, or out of range
  pmf_sum,             ///< probabilities do not sum to 1
  dangling_reference,  ///< a plan names an unknown node or branch
  structure,           ///< path does not alternate or has no sink terminal
};

const char* to_string(ScenarioErrorKind kind) noexcept;

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(ScenarioErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ScenarioErrorKind kind() const noexcept { return kind_; }

 private:
  ScenarioErrorKind kind_;
};

/// Thrown when an exhaustive search would visit more states than allowed.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unusable CPU-usage trace input.
class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace remr
