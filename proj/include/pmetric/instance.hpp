#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmetric/measures.hpp"

namespace pmetric {

/// A validated problem: one product space and the two distributions to compare.
struct Instance {
  SpacePtr space;
  Distribution mu;
  Distribution nu;
};

bool operator==(const Instance& a, const Instance& b);

/// Mass map entry: configuration label tuple and its mass.
using MassEntry = std::pair<std::vector<std::string>, Rational>;

/// Unvalidated description, as read from an instance file.
struct RawInstance {
  std::vector<Site> sites;
  std::vector<MassEntry> mu;
  std::vector<MassEntry> nu;
};

struct ValidationResult {
  std::optional<Instance> instance;
  std::vector<Violation> violations;

  bool ok() const { return instance.has_value(); }
};

/// Checks every invariant of sites and both mass maps and reports all
/// violations at once. Configurations missing from a mass map get mass 0.
ValidationResult validate_instance(const RawInstance& raw);

/// Inverse of validate_instance for a valid instance: lists nonzero masses
/// in configuration order.
RawInstance to_raw(const Instance& instance);

}  // namespace pmetric
