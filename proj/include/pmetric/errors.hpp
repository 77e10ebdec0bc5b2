#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pmetric {

enum class ViolationKind { NonMetric, BadMass, ShapeMismatch, BadWeights, BadCost };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Raised when constructing a model object from data that breaks one of its
/// invariants. Carries every violation found, not just the first.
class InstanceError : public std::invalid_argument {
public:
  explicit InstanceError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
  std::vector<Violation> violations_;
};

/// Two objects that must live on the same product space do not.
class SpaceMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An LP optimum failed exact re-verification, or a proved identity was
/// observed to fail. Either is an internal defect.
class CertificationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmetric
