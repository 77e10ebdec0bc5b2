#include "pmetric/product_space.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pmetric {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonMetric: return "NonMetric";
    case ViolationKind::BadMass: return "BadMass";
    case ViolationKind::ShapeMismatch: return "ShapeMismatch";
    case ViolationKind::BadWeights: return "BadWeights";
    case ViolationKind::BadCost: return "BadCost";
  }
  return "Unknown";
}

namespace {

std::string join_details(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.kind)) + ": " + v.detail;
  }
  return out;
}

}  // namespace

InstanceError::InstanceError(std::vector<Violation> violations)
    : std::invalid_argument(join_details(violations)), violations_(std::move(violations)) {}

Rational Site::diameter() const {
  Rational best;
  for (const auto& row : metric) {
    for (const auto& d : row) best = max(best, d);
  }
  return best;
}

Site Site::discrete(std::string name, std::size_t n) {
  Site site{std::move(name), {}, Matrix(n, std::vector<Rational>(n, Rational(1)))};
  for (std::size_t a = 0; a < n; ++a) {
    site.points.push_back(std::to_string(a));
    site.metric[a][a] = 0;
  }
  return site;
}

bool operator==(const Site& a, const Site& b) {
  return a.name == b.name && a.points == b.points && a.metric == b.metric;
}

std::vector<Violation> site_violations(const Site& site, std::size_t site_index) {
  std::vector<Violation> out;
  const std::string where = "site " + std::to_string(site_index) + " ('" + site.name + "')";
  const std::size_t n = site.size();
  if (n == 0) {
    out.push_back({ViolationKind::ShapeMismatch, where + " has no points"});
    return out;
  }
  std::set<std::string> labels;
  for (const auto& p : site.points) {
    if (p.empty() || p.find(',') != std::string::npos) {
      out.push_back({ViolationKind::ShapeMismatch,
                     where + " point label '" + p + "' is empty or contains ','"});
    }
    if (!labels.insert(p).second) {
      out.push_back({ViolationKind::ShapeMismatch, where + " duplicate point label '" + p + "'"});
    }
  }
  if (site.metric.size() != n ||
      std::any_of(site.metric.begin(), site.metric.end(),
                  [n](const auto& row) { return row.size() != n; })) {
    out.push_back({ViolationKind::ShapeMismatch,
                   where + " metric is not " + std::to_string(n) + "x" + std::to_string(n)});
    return out;
  }
  const auto& d = site.metric;
  auto at = [&](std::size_t a, std::size_t b) {
    return "[" + std::to_string(a) + "][" + std::to_string(b) + "]";
  };
  for (std::size_t a = 0; a < n; ++a) {
    if (!d[a][a].is_zero()) {
      out.push_back({ViolationKind::NonMetric, where + " nonzero diagonal at " + at(a, a)});
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      if (d[a][b].sign() <= 0) {
        out.push_back({ViolationKind::NonMetric,
                       where + " non-positive distance " + d[a][b].str() + " at " + at(a, b)});
      }
      if (a < b && d[a][b] != d[b][a]) {
        out.push_back({ViolationKind::NonMetric, where + " asymmetric at " + at(a, b)});
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (d[a][c] > d[a][b] + d[b][c]) {
          out.push_back({ViolationKind::NonMetric,
                         where + " triangle inequality fails: d" + at(a, c) + " = " +
                             d[a][c].str() + " > d" + at(a, b) + " + d" + at(b, c)});
        }
      }
    }
  }
  return out;
}

ProductSpace::ProductSpace(std::vector<Site> sites) : sites_(std::move(sites)) {
  std::vector<Violation> violations;
  if (sites_.empty()) {
    violations.push_back({ViolationKind::ShapeMismatch, "product space needs at least one site"});
  }
  for (std::size_t s = 0; s < sites_.size(); ++s) {
    auto v = site_violations(sites_[s], s);
    violations.insert(violations.end(), v.begin(), v.end());
  }
  if (!violations.empty()) throw InstanceError(std::move(violations));

  for (const auto& site : sites_) config_count_ *= site.size();
  const std::size_t k = sites_.size();
  coords_.resize(config_count_ * k);
  for (std::size_t i = 0; i < config_count_; ++i) {
    std::size_t rest = i;
    for (std::size_t s = k; s-- > 0;) {
      coords_[i * k + s] = rest % sites_[s].size();
      rest /= sites_[s].size();
    }
  }
}

Config ProductSpace::config_at(std::size_t index) const {
  if (index >= config_count_) throw std::out_of_range("configuration index out of range");
  const std::size_t k = sites_.size();
  return Config{{coords_.begin() + static_cast<std::ptrdiff_t>(index * k),
                 coords_.begin() + static_cast<std::ptrdiff_t>((index + 1) * k)}};
}

std::size_t ProductSpace::index_of(const Config& x) const {
  if (x.size() != sites_.size()) throw std::invalid_argument("configuration has wrong length");
  std::size_t index = 0;
  for (std::size_t s = 0; s < sites_.size(); ++s) {
    if (x[s] >= sites_[s].size()) throw std::out_of_range("configuration coordinate out of range");
    index = index * sites_[s].size() + x[s];
  }
  return index;
}

std::vector<Config> ProductSpace::enumerate_configs() const {
  std::vector<Config> out;
  out.reserve(config_count_);
  for (std::size_t i = 0; i < config_count_; ++i) out.push_back(config_at(i));
  return out;
}

const Rational& ProductSpace::site_distance(std::size_t s, std::size_t x, std::size_t y) const {
  if (s >= sites_.size()) throw std::out_of_range("site index out of range");
  return sites_[s].metric[coord(x, s)][coord(y, s)];
}

const Rational& ProductSpace::site_distance(std::size_t s, const Config& x,
                                            const Config& y) const {
  if (s >= sites_.size()) throw std::out_of_range("site index out of range");
  return sites_[s].metric.at(x.coords.at(s)).at(y.coords.at(s));
}

std::string ProductSpace::config_label(std::size_t index) const {
  std::string out;
  for (std::size_t s = 0; s < sites_.size(); ++s) {
    if (s) out += ',';
    out += sites_[s].points[coord(index, s)];
  }
  return out;
}

std::optional<std::size_t> ProductSpace::find_config(const std::vector<std::string>& labels) const {
  if (labels.size() != sites_.size()) return std::nullopt;
  Config x;
  for (std::size_t s = 0; s < sites_.size(); ++s) {
    const auto& pts = sites_[s].points;
    const auto it = std::find(pts.begin(), pts.end(), labels[s]);
    if (it == pts.end()) return std::nullopt;
    x.coords.push_back(static_cast<std::size_t>(it - pts.begin()));
  }
  return index_of(x);
}

Rational ProductSpace::max_diameter() const {
  Rational best;
  for (const auto& site : sites_) best = max(best, site.diameter());
  return best;
}

bool operator==(const ProductSpace& a, const ProductSpace& b) { return a.sites_ == b.sites_; }

}  // namespace pmetric
