#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "pmetric/product_space.hpp"

namespace pmetric {

using SpacePtr = std::shared_ptr<const ProductSpace>;

/// Throws SpaceMismatch unless the two spaces are the same object or equal.
void require_same_space(const SpacePtr& a, const SpacePtr& b);

class FunctionOnX;

/// Probability vector over the configurations of a space.
class Distribution {
public:
  /// Throws InstanceError (BadMass / ShapeMismatch) unless masses are
  /// non-negative, sum to exactly 1, and there is one per configuration.
  Distribution(SpacePtr space, std::vector<Rational> mass);

  static Distribution dirac(SpacePtr space, std::size_t index);

  const ProductSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t size() const { return mass_.size(); }
  const Rational& operator[](std::size_t x) const { return mass_[x]; }
  const std::vector<Rational>& masses() const { return mass_; }

  /// mu(f) = sum_x mu(x) f(x).
  Rational integrate(const FunctionOnX& f) const;

  friend bool operator==(const Distribution& a, const Distribution& b);

private:
  SpacePtr space_;
  std::vector<Rational> mass_;
};

std::vector<Violation> mass_violations(const std::vector<Rational>& mass, std::size_t expected,
                                       std::string_view name);

/// A real-valued function on X, stored by configuration index.
class FunctionOnX {
public:
  FunctionOnX(SpacePtr space, std::vector<Rational> values);
  static FunctionOnX constant(SpacePtr space, const Rational& value);

  const ProductSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t x) const { return values_[x]; }
  const std::vector<Rational>& values() const { return values_; }

  FunctionOnX scaled(const Rational& factor) const;
  FunctionOnX negated() const { return scaled(Rational(-1)); }

  friend bool operator==(const FunctionOnX& a, const FunctionOnX& b);

private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

/// A point e of E = { e >= 0 : sum_s e_s <= 1 }.
class WeightVector {
public:
  /// Throws InstanceError (BadWeights) when e is outside E.
  explicit WeightVector(std::vector<Rational> weights);
  static WeightVector zero(std::size_t sites);
  static WeightVector unit(std::size_t sites, std::size_t s);

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t s) const { return weights_[s]; }
  const std::vector<Rational>& weights() const { return weights_; }
  Rational sum() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
  std::vector<Rational> weights_;
};

/// c_e(x, y) = sum_s e_s d_s(x, y). Throws std::invalid_argument when the
/// weight vector length differs from the site count.
Rational cost_e(const ProductSpace& space, const WeightVector& e, std::size_t x, std::size_t y);
Rational cost_e(const ProductSpace& space, const WeightVector& e, const Config& x, const Config& y);

/// General cost c(x, y) on X x X, indexed by configuration.
class CostOnPairs {
public:
  /// Only the shape is checked here; see semi_metric_violations().
  CostOnPairs(SpacePtr space, Matrix cost);
  static CostOnPairs from_weights(SpacePtr space, const WeightVector& e);

  const ProductSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t size() const { return cost_.size(); }
  const Rational& operator()(std::size_t x, std::size_t y) const { return cost_[x][y]; }
  const Matrix& matrix() const { return cost_; }

  /// Zero diagonal and c(x,z) <= c(x,y) + c(y,z). Symmetry and sign are not
  /// required.
  std::vector<Violation> semi_metric_violations() const;
  bool is_semi_metric() const { return semi_metric_violations().empty(); }
  bool is_symmetric() const;
  bool is_nonnegative() const;

private:
  SpacePtr space_;
  Matrix cost_;
};

/// Transport plan on X x X with prescribed marginals.
class Coupling {
public:
  /// Throws InstanceError (BadMass) unless the plan is non-negative and its
  /// row/column sums equal the marginals exactly.
  Coupling(Distribution first, Distribution second, Matrix plan);

  /// The product coupling mu (x) nu.
  static Coupling independent(const Distribution& first, const Distribution& second);

  const ProductSpace& space() const { return first_.space(); }
  const Distribution& first_marginal() const { return first_; }
  const Distribution& second_marginal() const { return second_; }
  const Rational& operator()(std::size_t x, std::size_t y) const { return plan_[x][y]; }
  const Matrix& plan() const { return plan_; }

  /// m(d_s) = sum_{x,y} m(x,y) d_s(x,y).
  Rational site_expectation(std::size_t s) const;
  /// max_s m(d_s).
  Rational worst_site_expectation() const;
  Rational expected_cost(const CostOnPairs& c) const;

private:
  Distribution first_;
  Distribution second_;
  Matrix plan_;
};

}  // namespace pmetric
