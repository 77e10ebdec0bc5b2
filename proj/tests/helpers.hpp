#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "pmetric/measures.hpp"

namespace testing {

using pmetric::Rational;

inline Rational q(const char* text) { return Rational::parse(text); }

inline std::vector<Rational> qs(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(q(t));
  return out;
}

inline pmetric::SpacePtr make_space(std::vector<pmetric::Site> sites) {
  return std::make_shared<const pmetric::ProductSpace>(std::move(sites));
}

/// Product of discrete sites named "A", "B", ... with the given sizes.
inline pmetric::SpacePtr discrete_space(std::initializer_list<std::size_t> sizes) {
  std::vector<pmetric::Site> sites;
  char name = 'A';
  for (std::size_t n : sizes) sites.push_back(pmetric::Site::discrete(std::string(1, name++), n));
  return make_space(std::move(sites));
}

inline pmetric::Distribution dist(const pmetric::SpacePtr& space,
                                  std::initializer_list<const char*> masses) {
  return pmetric::Distribution(space, qs(masses));
}

inline pmetric::FunctionOnX fn(const pmetric::SpacePtr& space,
                               std::initializer_list<const char*> values) {
  return pmetric::FunctionOnX(space, qs(values));
}

inline pmetric::WeightVector weights(std::initializer_list<const char*> values) {
  return pmetric::WeightVector(qs(values));
}

}  // namespace testing
