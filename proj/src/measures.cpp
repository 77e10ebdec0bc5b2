#include "pmetric/measures.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmetric {

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!a || !b) throw SpaceMismatch("missing product space");
  if (a != b && !(*a == *b)) throw SpaceMismatch("objects live on different product spaces");
}

std::vector<Violation> mass_violations(const std::vector<Rational>& mass, std::size_t expected,
                                       std::string_view name) {
  std::vector<Violation> out;
  const std::string who(name);
  if (mass.size() != expected) {
    out.push_back({ViolationKind::ShapeMismatch, who + " has " + std::to_string(mass.size()) +
                                                     " masses, expected " +
                                                     std::to_string(expected)});
    return out;
  }
  Rational total;
  for (std::size_t x = 0; x < mass.size(); ++x) {
    if (mass[x].sign() < 0) {
      out.push_back({ViolationKind::BadMass, who + " has negative mass " + mass[x].str() +
                                                 " at configuration " + std::to_string(x)});
    }
    total += mass[x];
  }
  if (total != Rational(1)) {
    out.push_back({ViolationKind::BadMass, who + " masses sum to " + total.str() + ", not 1"});
  }
  return out;
}

Distribution::Distribution(SpacePtr space, std::vector<Rational> mass)
    : space_(std::move(space)), mass_(std::move(mass)) {
  if (!space_) throw std::invalid_argument("Distribution: null space");
  auto v = mass_violations(mass_, space_->config_count(), "distribution");
  if (!v.empty()) throw InstanceError(std::move(v));
}

Distribution Distribution::dirac(SpacePtr space, std::size_t index) {
  std::vector<Rational> mass(space->config_count());
  mass.at(index) = 1;
  return Distribution(std::move(space), std::move(mass));
}

Rational Distribution::integrate(const FunctionOnX& f) const {
  require_same_space(space_, f.space_ptr());
  Rational total;
  for (std::size_t x = 0; x < mass_.size(); ++x) {
    if (!mass_[x].is_zero()) total += mass_[x] * f[x];
  }
  return total;
}

bool operator==(const Distribution& a, const Distribution& b) {
  return (a.space_ == b.space_ || *a.space_ == *b.space_) && a.mass_ == b.mass_;
}

FunctionOnX::FunctionOnX(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw std::invalid_argument("FunctionOnX: null space");
  if (values_.size() != space_->config_count()) {
    throw InstanceError({{ViolationKind::ShapeMismatch,
                          "function has " + std::to_string(values_.size()) +
                              " values, expected " + std::to_string(space_->config_count())}});
  }
}

FunctionOnX FunctionOnX::constant(SpacePtr space, const Rational& value) {
  const std::size_t n = space->config_count();
  return FunctionOnX(std::move(space), std::vector<Rational>(n, value));
}

FunctionOnX FunctionOnX::scaled(const Rational& factor) const {
  std::vector<Rational> out = values_;
  for (auto& v : out) v *= factor;
  return FunctionOnX(space_, std::move(out));
}

bool operator==(const FunctionOnX& a, const FunctionOnX& b) {
  return (a.space_ == b.space_ || *a.space_ == *b.space_) && a.values_ == b.values_;
}

WeightVector::WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
  std::vector<Violation> v;
  for (std::size_t s = 0; s < weights_.size(); ++s) {
    if (weights_[s].sign() < 0) {
      v.push_back({ViolationKind::BadWeights,
                   "weight " + weights_[s].str() + " at site " + std::to_string(s) + " is negative"});
    }
  }
  if (const Rational total = sum(); total > Rational(1)) {
    v.push_back({ViolationKind::BadWeights, "weights sum to " + total.str() + " > 1"});
  }
  if (!v.empty()) throw InstanceError(std::move(v));
}

WeightVector WeightVector::zero(std::size_t sites) {
  return WeightVector(std::vector<Rational>(sites));
}

WeightVector WeightVector::unit(std::size_t sites, std::size_t s) {
  std::vector<Rational> w(sites);
  w.at(s) = 1;
  return WeightVector(std::move(w));
}

Rational WeightVector::sum() const {
  Rational total;
  for (const auto& w : weights_) total += w;
  return total;
}

Rational cost_e(const ProductSpace& space, const WeightVector& e, std::size_t x, std::size_t y) {
  if (e.size() != space.site_count()) {
    throw std::invalid_argument("weight vector length does not match site count");
  }
  Rational total;
  for (std::size_t s = 0; s < e.size(); ++s) {
    if (!e[s].is_zero()) total += e[s] * space.site_distance(s, x, y);
  }
  return total;
}

Rational cost_e(const ProductSpace& space, const WeightVector& e, const Config& x,
                const Config& y) {
  return cost_e(space, e, space.index_of(x), space.index_of(y));
}

CostOnPairs::CostOnPairs(SpacePtr space, Matrix cost)
    : space_(std::move(space)), cost_(std::move(cost)) {
  if (!space_) throw std::invalid_argument("CostOnPairs: null space");
  const std::size_t n = space_->config_count();
  if (cost_.size() != n || std::any_of(cost_.begin(), cost_.end(),
                                       [n](const auto& row) { return row.size() != n; })) {
    throw InstanceError({{ViolationKind::ShapeMismatch,
                          "cost matrix is not " + std::to_string(n) + "x" + std::to_string(n)}});
  }
}

CostOnPairs CostOnPairs::from_weights(SpacePtr space, const WeightVector& e) {
  const std::size_t n = space->config_count();
  Matrix c(n, std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) c[x][y] = cost_e(*space, e, x, y);
  }
  return CostOnPairs(std::move(space), std::move(c));
}

std::vector<Violation> CostOnPairs::semi_metric_violations() const {
  std::vector<Violation> out;
  const std::size_t n = cost_.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!cost_[x][x].is_zero()) {
      out.push_back({ViolationKind::BadCost, "nonzero diagonal at " + std::to_string(x)});
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (cost_[x][z] > cost_[x][y] + cost_[y][z]) {
          out.push_back({ViolationKind::BadCost,
                         "triangle inequality fails for (" + std::to_string(x) + "," +
                             std::to_string(y) + "," + std::to_string(z) + ")"});
        }
      }
    }
  }
  return out;
}

bool CostOnPairs::is_symmetric() const {
  for (std::size_t x = 0; x < cost_.size(); ++x) {
    for (std::size_t y = x + 1; y < cost_.size(); ++y) {
      if (cost_[x][y] != cost_[y][x]) return false;
    }
  }
  return true;
}

bool CostOnPairs::is_nonnegative() const {
  for (const auto& row : cost_) {
    for (const auto& c : row) {
      if (c.sign() < 0) return false;
    }
  }
  return true;
}

Coupling::Coupling(Distribution first, Distribution second, Matrix plan)
    : first_(std::move(first)), second_(std::move(second)), plan_(std::move(plan)) {
  require_same_space(first_.space_ptr(), second_.space_ptr());
  const std::size_t n = first_.size();
  std::vector<Violation> v;
  if (plan_.size() != n || std::any_of(plan_.begin(), plan_.end(),
                                       [n](const auto& row) { return row.size() != n; })) {
    v.push_back({ViolationKind::ShapeMismatch,
                 "plan is not " + std::to_string(n) + "x" + std::to_string(n)});
    throw InstanceError(std::move(v));
  }
  std::vector<Rational> col(n);
  for (std::size_t x = 0; x < n; ++x) {
    Rational row;
    for (std::size_t y = 0; y < n; ++y) {
      if (plan_[x][y].sign() < 0) {
        v.push_back({ViolationKind::BadMass, "negative plan entry at (" + std::to_string(x) +
                                                 "," + std::to_string(y) + ")"});
      }
      row += plan_[x][y];
      col[y] += plan_[x][y];
    }
    if (row != first_[x]) {
      v.push_back({ViolationKind::BadMass, "row " + std::to_string(x) + " sums to " + row.str() +
                                               ", first marginal is " + first_[x].str()});
    }
  }
  for (std::size_t y = 0; y < n; ++y) {
    if (col[y] != second_[y]) {
      v.push_back({ViolationKind::BadMass, "column " + std::to_string(y) + " sums to " +
                                               col[y].str() + ", second marginal is " +
                                               second_[y].str()});
    }
  }
  if (!v.empty()) throw InstanceError(std::move(v));
}

Coupling Coupling::independent(const Distribution& first, const Distribution& second) {
  const std::size_t n = first.size();
  Matrix plan(n, std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) plan[x][y] = first[x] * second[y];
  }
  return Coupling(first, second, std::move(plan));
}

Rational Coupling::site_expectation(std::size_t s) const {
  const auto& space = first_.space();
  Rational total;
  for (std::size_t x = 0; x < plan_.size(); ++x) {
    for (std::size_t y = 0; y < plan_.size(); ++y) {
      if (!plan_[x][y].is_zero()) total += plan_[x][y] * space.site_distance(s, x, y);
    }
  }
  return total;
}

Rational Coupling::worst_site_expectation() const {
  Rational best;
  for (std::size_t s = 0; s < space().site_count(); ++s) best = max(best, site_expectation(s));
  return best;
}

Rational Coupling::expected_cost(const CostOnPairs& c) const {
  require_same_space(first_.space_ptr(), c.space_ptr());
  Rational total;
  for (std::size_t x = 0; x < plan_.size(); ++x) {
    for (std::size_t y = 0; y < plan_.size(); ++y) {
      if (!plan_[x][y].is_zero()) total += plan_[x][y] * c(x, y);
    }
  }
  return total;
}

}  // namespace pmetric
