#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pmetric/errors.hpp"
#include "pmetric/rational.hpp"

namespace pmetric {

using Matrix = std::vector<std::vector<Rational>>;

/// One coordinate X_s: a finite set of labelled points with a metric.
struct Site {
  std::string name;
  std::vector<std::string> points;
  Matrix metric;

  std::size_t size() const { return points.size(); }
  Rational diameter() const;

  /// Site with points "0".."n-1" and the discrete metric (all off-diagonal 1).
  static Site discrete(std::string name, std::size_t n);
};

/// Returns every invariant the site breaks; empty when it is a valid finite
/// metric space. `site_index` only decorates the messages.
std::vector<Violation> site_violations(const Site& site, std::size_t site_index);

/// A configuration x: one point index per site.
struct Config {
  std::vector<std::size_t> coords;

  std::size_t operator[](std::size_t s) const { return coords[s]; }
  std::size_t size() const { return coords.size(); }
  friend bool operator==(const Config&, const Config&) = default;
};

/// Finite product X = prod_s X_s. Configurations are indexed lexicographically
/// in site order with the first site varying slowest.
class ProductSpace {
public:
  /// Throws InstanceError listing every violated site invariant.
  explicit ProductSpace(std::vector<Site> sites);

  std::size_t site_count() const { return sites_.size(); }
  std::size_t config_count() const { return config_count_; }
  const Site& site(std::size_t s) const { return sites_.at(s); }
  const std::vector<Site>& sites() const { return sites_; }

  Config config_at(std::size_t index) const;
  std::size_t index_of(const Config& x) const;
  std::vector<Config> enumerate_configs() const;

  /// Point index of configuration `index` at site `s`.
  std::size_t coord(std::size_t index, std::size_t s) const {
    return coords_[index * sites_.size() + s];
  }

  /// d_s(x, y) = d_s(x_s, y_s). Throws std::out_of_range on a bad site index.
  const Rational& site_distance(std::size_t s, std::size_t x, std::size_t y) const;
  const Rational& site_distance(std::size_t s, const Config& x, const Config& y) const;

  /// Comma-joined point labels, e.g. "a,1".
  std::string config_label(std::size_t index) const;
  std::optional<std::size_t> find_config(const std::vector<std::string>& labels) const;

  Rational max_diameter() const;

  friend bool operator==(const ProductSpace& a, const ProductSpace& b);

private:
  std::vector<Site> sites_;
  std::size_t config_count_ = 1;
  std::vector<std::size_t> coords_;
};

bool operator==(const Site& a, const Site& b);

}  // namespace pmetric
