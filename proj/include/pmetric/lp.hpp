#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pmetric/rational.hpp"

namespace pmetric::lp {

enum class Sense { Maximize, Minimize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

std::string_view to_string(Status status);

/// Absent bound means unbounded on that side. Default domain is x >= 0.
struct Bounds {
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;
};

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation;
  Rational rhs;
};

class LinearProgram {
public:
  LinearProgram(std::size_t variables, Sense sense);

  std::size_t variable_count() const { return objective_.size(); }
  Sense sense() const { return sense_; }

  void set_objective(std::size_t j, Rational coefficient);
  const std::vector<Rational>& objective() const { return objective_; }

  void set_bounds(std::size_t j, Bounds bounds);
  void set_free(std::size_t j) { set_bounds(j, Bounds{std::nullopt, std::nullopt}); }
  void fix(std::size_t j, const Rational& value) { set_bounds(j, Bounds{value, value}); }
  const Bounds& bounds(std::size_t j) const { return bounds_.at(j); }

  /// Throws std::invalid_argument when the row length differs from the
  /// variable count.
  void add_constraint(std::vector<Rational> coefficients, Relation relation, Rational rhs);
  const std::vector<Constraint>& constraints() const { return constraints_; }

  /// Optional names used by dump().
  void set_name(std::size_t j, std::string name);
  const std::string& name(std::size_t j) const { return names_.at(j); }

  /// Human-readable text form for failure triage.
  std::string dump() const;

private:
  Sense sense_;
  std::vector<Rational> objective_;
  std::vector<Bounds> bounds_;
  std::vector<std::string> names_;
  std::vector<Constraint> constraints_;
};

struct LpSolution {
  Status status = Status::Infeasible;
  Rational value;                 // meaningful when Optimal
  std::vector<Rational> primal;   // meaningful when Optimal
  std::size_t pivots = 0;
};

enum class PivotRule {
  /// Least-index entering and leaving variables throughout.
  Bland,
  /// Most negative reduced cost, switching to Bland's rule while a run of
  /// consecutive degenerate pivots is long. Cycling can only happen inside
  /// such a run, so termination is kept.
  DantzigWithBlandFallback,
};

/// Exact two-phase simplex. Deterministic for a fixed input and rule. An
/// Optimal answer is re-verified against every constraint and bound before
/// returning; failure throws CertificationError.
LpSolution solve(const LinearProgram& lp, PivotRule rule = PivotRule::DantzigWithBlandFallback);

/// Every way `solution` fails to be a feasible point attaining its stated
/// value. Empty for a valid Optimal certificate.
std::vector<std::string> certificate_violations(const LinearProgram& lp,
                                                const LpSolution& solution);

}  // namespace pmetric::lp
