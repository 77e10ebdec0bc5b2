#pragma once

#include <cstddef>
#include <vector>

#include "pmetric/lp.hpp"
#include "pmetric/measures.hpp"

namespace pmetric {

/// D(mu, nu) with an optimising potential f and weight vector e:
/// f is in F_e, ||f|| <= 1 and (mu - nu)(f) = value.
struct DobrushinResult {
  Rational value;
  FunctionOnX witness_f;
  WeightVector witness_e;
};

/// Steif distance with an optimal joining and the epigraph variable t:
/// m(d_s) <= t = value for every site, with equality somewhere.
struct SteifResult {
  Rational value;
  Coupling witness_plan;
  Rational witness_t;
};

struct TransportResult {
  Rational value;
  Coupling plan;
};

struct PotentialResult {
  Rational value;
  FunctionOnX potential;
};

// LP builders. Variables are named after configuration labels so the dumps
// can be read without the instance at hand.

/// Joint program in (f, e): maximise (mu - nu)(f) subject to
/// f(x) - f(y) <= sum_s e_s d_s(x, y) for all x != y, e >= 0, sum e <= 1,
/// f(first configuration) = 0. Variables: f by configuration, then e by site.
lp::LinearProgram dobrushin_program(const Distribution& mu, const Distribution& nu);

/// Minimise t over joinings m with m(d_s) <= t for every site.
/// Variables: m(x, y) row-major, then t.
lp::LinearProgram steif_program(const Distribution& mu, const Distribution& nu);

/// Minimise m(c) over joinings. Variables: m(x, y) row-major.
lp::LinearProgram transport_program(const Distribution& mu, const Distribution& nu,
                                    const CostOnPairs& c);

/// Maximise (mu - nu)(f) subject to f(x) - f(y) <= c(x, y) for x != y and
/// f(first configuration) = 0.
lp::LinearProgram potential_program(const Distribution& mu, const Distribution& nu,
                                    const CostOnPairs& c);

/// Maximise mu(f) + nu(g) subject to f(x) + g(y) <= c(x, y) for all pairs,
/// including x = y, and f(first configuration) = 0. Variables: f then g.
lp::LinearProgram two_function_program(const Distribution& mu, const Distribution& nu,
                                       const CostOnPairs& c);

/// All of the following throw SpaceMismatch when mu and nu live on different
/// spaces, and CertificationError if an LP is not solved to a certified optimum.

DobrushinResult dobrushin_distance(const Distribution& mu, const Distribution& nu);
SteifResult steif_distance(const Distribution& mu, const Distribution& nu);

/// inf over joinings of m(c_e).
TransportResult transport_value(const Distribution& mu, const Distribution& nu,
                                const WeightVector& e);

/// sup over f in F_e of (mu - nu)(f).
PotentialResult dual_potential_value(const Distribution& mu, const Distribution& nu,
                                     const WeightVector& e);

/// Two-function program for a semi-metric c. With `restricted`, g is tied to
/// -f. Throws InstanceError (BadCost) when c is not a semi-metric.
Rational two_function_value(const Distribution& mu, const Distribution& nu, const CostOnPairs& c,
                            bool restricted);

/// Every e in E whose coordinates are multiples of 1/resolution, in
/// lexicographic order of the numerators. Throws on resolution 0.
std::vector<WeightVector> simplex_grid(std::size_t sites, unsigned resolution);

/// max over simplex_grid(resolution) of transport_value.
Rational grid_lower_bound(const Distribution& mu, const Distribution& nu, unsigned resolution);

/// Weak duality between a joining and a potential for the same cost: throws
/// CertificationError unless f is c-feasible and (mu - nu)(f) <= m(c).
void assert_weak_duality(const Coupling& plan, const FunctionOnX& f, const CostOnPairs& c);

}  // namespace pmetric
