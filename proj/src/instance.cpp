#include "pmetric/instance.hpp"

#include <algorithm>
#include <set>

namespace pmetric {

namespace {

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += labels[i];
  }
  return out;
}

std::vector<Rational> resolve_masses(const ProductSpace& space,
                                     const std::vector<MassEntry>& entries, const std::string& name,
                                     std::vector<Violation>& violations) {
  std::vector<Rational> mass(space.config_count());
  std::set<std::size_t> seen;
  for (const auto& [labels, value] : entries) {
    const auto index = space.find_config(labels);
    if (!index) {
      violations.push_back({ViolationKind::ShapeMismatch,
                            name + " key '" + join_labels(labels) + "' is not a configuration"});
      continue;
    }
    if (!seen.insert(*index).second) {
      violations.push_back(
          {ViolationKind::ShapeMismatch, name + " key '" + join_labels(labels) + "' repeated"});
      continue;
    }
    mass[*index] = value;
  }
  auto v = mass_violations(mass, space.config_count(), name);
  violations.insert(violations.end(), v.begin(), v.end());
  return mass;
}

}  // namespace

bool operator==(const Instance& a, const Instance& b) {
  return *a.space == *b.space && a.mu == b.mu && a.nu == b.nu;
}

ValidationResult validate_instance(const RawInstance& raw) {
  ValidationResult result;
  auto& violations = result.violations;
  if (raw.sites.empty()) {
    violations.push_back({ViolationKind::ShapeMismatch, "instance has no sites"});
    return result;
  }
  std::set<std::string> names;
  for (std::size_t s = 0; s < raw.sites.size(); ++s) {
    if (!names.insert(raw.sites[s].name).second) {
      violations.push_back(
          {ViolationKind::ShapeMismatch, "duplicate site name '" + raw.sites[s].name + "'"});
    }
    auto v = site_violations(raw.sites[s], s);
    violations.insert(violations.end(), v.begin(), v.end());
  }
  const bool labels_ok = std::none_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.kind == ViolationKind::ShapeMismatch;
  });
  if (!labels_ok) return result;

  if (!violations.empty()) {
    // Bad metrics only: masses can still be checked against the labels.
    std::vector<Site> shapes;
    for (const auto& site : raw.sites) {
      Site copy = Site::discrete(site.name, site.size());
      copy.points = site.points;
      shapes.push_back(std::move(copy));
    }
    const ProductSpace labels_only(std::move(shapes));
    resolve_masses(labels_only, raw.mu, "mu", violations);
    resolve_masses(labels_only, raw.nu, "nu", violations);
    return result;
  }

  auto space = std::make_shared<const ProductSpace>(raw.sites);
  auto mu = resolve_masses(*space, raw.mu, "mu", violations);
  auto nu = resolve_masses(*space, raw.nu, "nu", violations);
  if (!violations.empty()) return result;

  result.instance.emplace(Instance{space, Distribution(space, std::move(mu)),
                                   Distribution(space, std::move(nu))});
  return result;
}

RawInstance to_raw(const Instance& instance) {
  RawInstance raw;
  raw.sites = instance.space->sites();
  const auto& space = *instance.space;
  auto entries = [&space](const Distribution& d) {
    std::vector<MassEntry> out;
    for (std::size_t x = 0; x < d.size(); ++x) {
      if (d[x].is_zero()) continue;
      std::vector<std::string> labels;
      for (std::size_t s = 0; s < space.site_count(); ++s) {
        labels.push_back(space.site(s).points[space.coord(x, s)]);
      }
      out.emplace_back(std::move(labels), d[x]);
    }
    return out;
  };
  raw.mu = entries(instance.mu);
  raw.nu = entries(instance.nu);
  return raw;
}

}  // namespace pmetric
