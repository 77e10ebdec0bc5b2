#include "pmetric/metrics.hpp"

#include <stdexcept>

#include "pmetric/smoothness.hpp"

namespace pmetric {

namespace {

using lp::LinearProgram;
using lp::Relation;
using lp::Sense;

lp::LpSolution solve_optimal(const LinearProgram& program, const char* what) {
  auto solution = lp::solve(program);
  if (solution.status != lp::Status::Optimal) {
    throw CertificationError(std::string(what) + " program reported " +
                             std::string(lp::to_string(solution.status)) + "\n" + program.dump());
  }
  return solution;
}

void name_potential(LinearProgram& program, const ProductSpace& space, std::size_t offset,
                    const char* prefix) {
  for (std::size_t x = 0; x < space.config_count(); ++x) {
    program.set_name(offset + x, std::string(prefix) + "[" + space.config_label(x) + "]");
  }
}

// Marginal rows of a joining. Plan entries outside supp(mu) x supp(nu) are
// fixed at 0, so rows for zero-mass configurations are dropped.
void add_marginal_rows(LinearProgram& program, const Distribution& mu, const Distribution& nu,
                       std::size_t width) {
  const std::size_t n = mu.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (mu[x].is_zero() || nu[y].is_zero()) program.fix(x * n + y, Rational(0));
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (mu[x].is_zero()) continue;
    std::vector<Rational> row(width);
    for (std::size_t y = 0; y < n; ++y) row[x * n + y] = 1;
    program.add_constraint(std::move(row), Relation::Equal, mu[x]);
  }
  for (std::size_t y = 0; y < n; ++y) {
    if (nu[y].is_zero()) continue;
    std::vector<Rational> row(width);
    for (std::size_t x = 0; x < n; ++x) row[x * n + y] = 1;
    program.add_constraint(std::move(row), Relation::Equal, nu[y]);
  }
}

void name_plan(LinearProgram& program, const ProductSpace& space) {
  const std::size_t n = space.config_count();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      program.set_name(x * n + y,
                       "m[" + space.config_label(x) + "|" + space.config_label(y) + "]");
    }
  }
}

Coupling extract_plan(const Distribution& mu, const Distribution& nu,
                      const std::vector<Rational>& primal) {
  const std::size_t n = mu.size();
  Matrix plan(n, std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) plan[x][y] = primal[x * n + y];
  }
  return Coupling(mu, nu, std::move(plan));
}

FunctionOnX extract_function(const SpacePtr& space, const std::vector<Rational>& primal,
                             std::size_t offset) {
  const std::size_t n = space->config_count();
  return FunctionOnX(space, {primal.begin() + static_cast<std::ptrdiff_t>(offset),
                             primal.begin() + static_cast<std::ptrdiff_t>(offset + n)});
}

void enumerate_grid(std::vector<unsigned>& numerators, std::size_t s, unsigned remaining,
                    unsigned resolution, std::vector<WeightVector>& out) {
  if (s == numerators.size()) {
    std::vector<Rational> w;
    w.reserve(numerators.size());
    for (unsigned a : numerators) {
      w.emplace_back(static_cast<long>(a), static_cast<long>(resolution));
    }
    out.emplace_back(std::move(w));
    return;
  }
  for (unsigned a = 0; a <= remaining; ++a) {
    numerators[s] = a;
    enumerate_grid(numerators, s + 1, remaining - a, resolution, out);
  }
  numerators[s] = 0;
}

void require_semi_metric(const CostOnPairs& c) {
  auto v = c.semi_metric_violations();
  if (!v.empty()) throw InstanceError(std::move(v));
}

}  // namespace

LinearProgram dobrushin_program(const Distribution& mu, const Distribution& nu) {
  require_same_space(mu.space_ptr(), nu.space_ptr());
  const auto& space = mu.space();
  const std::size_t n = space.config_count();
  const std::size_t sites = space.site_count();
  LinearProgram program(n + sites, Sense::Maximize);
  name_potential(program, space, 0, "f");
  for (std::size_t x = 0; x < n; ++x) {
    program.set_objective(x, mu[x] - nu[x]);
    program.set_free(x);
  }
  program.fix(0, Rational(0));
  for (std::size_t s = 0; s < sites; ++s) program.set_name(n + s, "e[" + space.site(s).name + "]");
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      std::vector<Rational> row(n + sites);
      row[x] = 1;
      row[y] = -1;
      for (std::size_t s = 0; s < sites; ++s) row[n + s] = -space.site_distance(s, x, y);
      program.add_constraint(std::move(row), Relation::LessEqual, Rational(0));
    }
  }
  std::vector<Rational> budget(n + sites);
  for (std::size_t s = 0; s < sites; ++s) budget[n + s] = 1;
  program.add_constraint(std::move(budget), Relation::LessEqual, Rational(1));
  return program;
}

LinearProgram steif_program(const Distribution& mu, const Distribution& nu) {
  require_same_space(mu.space_ptr(), nu.space_ptr());
  const auto& space = mu.space();
  const std::size_t n = space.config_count();
  const std::size_t t = n * n;
  LinearProgram program(t + 1, Sense::Minimize);
  name_plan(program, space);
  program.set_name(t, "t");
  program.set_objective(t, Rational(1));
  add_marginal_rows(program, mu, nu, t + 1);
  for (std::size_t s = 0; s < space.site_count(); ++s) {
    std::vector<Rational> row(t + 1);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) row[x * n + y] = space.site_distance(s, x, y);
    }
    row[t] = -1;
    program.add_constraint(std::move(row), Relation::LessEqual, Rational(0));
  }
  return program;
}

LinearProgram transport_program(const Distribution& mu, const Distribution& nu,
                                const CostOnPairs& c) {
  require_same_space(mu.space_ptr(), nu.space_ptr());
  require_same_space(mu.space_ptr(), c.space_ptr());
  const std::size_t n = mu.size();
  LinearProgram program(n * n, Sense::Minimize);
  name_plan(program, mu.space());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) program.set_objective(x * n + y, c(x, y));
  }
  add_marginal_rows(program, mu, nu, n * n);
  return program;
}

LinearProgram potential_program(const Distribution& mu, const Distribution& nu,
                                const CostOnPairs& c) {
  require_same_space(mu.space_ptr(), nu.space_ptr());
  require_same_space(mu.space_ptr(), c.space_ptr());
  const std::size_t n = mu.size();
  LinearProgram program(n, Sense::Maximize);
  name_potential(program, mu.space(), 0, "f");
  for (std::size_t x = 0; x < n; ++x) {
    program.set_objective(x, mu[x] - nu[x]);
    program.set_free(x);
  }
  program.fix(0, Rational(0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      std::vector<Rational> row(n);
      row[x] = 1;
      row[y] = -1;
      program.add_constraint(std::move(row), Relation::LessEqual, c(x, y));
    }
  }
  return program;
}

LinearProgram two_function_program(const Distribution& mu, const Distribution& nu,
                                   const CostOnPairs& c) {
  require_same_space(mu.space_ptr(), nu.space_ptr());
  require_same_space(mu.space_ptr(), c.space_ptr());
  const std::size_t n = mu.size();
  LinearProgram program(2 * n, Sense::Maximize);
  name_potential(program, mu.space(), 0, "f");
  name_potential(program, mu.space(), n, "g");
  for (std::size_t x = 0; x < n; ++x) {
    program.set_objective(x, mu[x]);
    program.set_objective(n + x, nu[x]);
    program.set_free(x);
    program.set_free(n + x);
  }
  program.fix(0, Rational(0));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      std::vector<Rational> row(2 * n);
      row[x] = 1;
      row[n + y] = 1;
      program.add_constraint(std::move(row), Relation::LessEqual, c(x, y));
    }
  }
  return program;
}

DobrushinResult dobrushin_distance(const Distribution& mu, const Distribution& nu) {
  const auto program = dobrushin_program(mu, nu);
  const auto solution = solve_optimal(program, "Dobrushin");
  const std::size_t n = mu.size();
  std::vector<Rational> e(solution.primal.begin() + static_cast<std::ptrdiff_t>(n),
                          solution.primal.end());
  return {solution.value, extract_function(mu.space_ptr(), solution.primal, 0),
          WeightVector(std::move(e))};
}

SteifResult steif_distance(const Distribution& mu, const Distribution& nu) {
  const auto program = steif_program(mu, nu);
  const auto solution = solve_optimal(program, "Steif");
  return {solution.value, extract_plan(mu, nu, solution.primal), solution.primal.back()};
}

TransportResult transport_value(const Distribution& mu, const Distribution& nu,
                                const WeightVector& e) {
  require_same_space(mu.space_ptr(), nu.space_ptr());
  const auto c = CostOnPairs::from_weights(mu.space_ptr(), e);
  const auto solution = solve_optimal(transport_program(mu, nu, c), "transport");
  return {solution.value, extract_plan(mu, nu, solution.primal)};
}

PotentialResult dual_potential_value(const Distribution& mu, const Distribution& nu,
                                     const WeightVector& e) {
  require_same_space(mu.space_ptr(), nu.space_ptr());
  const auto c = CostOnPairs::from_weights(mu.space_ptr(), e);
  const auto solution = solve_optimal(potential_program(mu, nu, c), "potential");
  return {solution.value, extract_function(mu.space_ptr(), solution.primal, 0)};
}

Rational two_function_value(const Distribution& mu, const Distribution& nu, const CostOnPairs& c,
                            bool restricted) {
  require_semi_metric(c);
  if (restricted) return solve_optimal(potential_program(mu, nu, c), "restricted").value;
  return solve_optimal(two_function_program(mu, nu, c), "two-function").value;
}

std::vector<WeightVector> simplex_grid(std::size_t sites, unsigned resolution) {
  if (resolution == 0) throw std::invalid_argument("grid resolution must be positive");
  std::vector<WeightVector> out;
  std::vector<unsigned> numerators(sites, 0);
  enumerate_grid(numerators, 0, resolution, resolution, out);
  return out;
}

Rational grid_lower_bound(const Distribution& mu, const Distribution& nu, unsigned resolution) {
  Rational best;
  for (const auto& e : simplex_grid(mu.space().site_count(), resolution)) {
    best = max(best, transport_value(mu, nu, e).value);
  }
  return best;
}

void assert_weak_duality(const Coupling& plan, const FunctionOnX& f, const CostOnPairs& c) {
  const std::size_t n = f.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && f[x] - f[y] > c(x, y)) {
        throw CertificationError("potential violates f(x) - f(y) <= c(x, y) at (" +
                                 std::to_string(x) + "," + std::to_string(y) + ")");
      }
    }
  }
  const Rational gain = plan.first_marginal().integrate(f) - plan.second_marginal().integrate(f);
  const Rational cost = plan.expected_cost(c);
  if (gain > cost) {
    throw CertificationError("weak duality fails: (mu - nu)(f) = " + gain.str() +
                             " > m(c) = " + cost.str());
  }
}

}  // namespace pmetric
