#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pmetric/instance.hpp"
#include "pmetric/metrics.hpp"

namespace pmetric::verify {

/// Seeded generator. Only the raw mt19937_64 stream is used (no standard
/// distributions), so draws are identical on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  long between(long lo, long hi);
  /// p/q with p, q uniform in [1, bound].
  Rational positive_fraction(long bound);
  /// Uniform element of a non-empty vector.
  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

private:
  std::mt19937_64 engine_;
};

struct InstanceSpec {
  std::uint64_t seed = 1;
  std::size_t site_count = 1;
  std::vector<std::size_t> points_per_site{2};
  long denominator_bound = 8;
};

/// Throws std::invalid_argument unless 1 <= site_count <= 4, there is one
/// size per site, every size is in [1, 4], and the bound is positive.
void validate_spec(const InstanceSpec& spec);

/// Ranges for drawing a random InstanceSpec from a seed.
struct SuiteDims {
  std::size_t max_sites = 3;
  std::size_t max_points = 3;
  long denominator_bound = 8;
};

InstanceSpec draw_spec(std::uint64_t seed, const SuiteDims& dims);

/// Deterministic in the spec. Site metrics are shortest-path closures of
/// random positive edge weights; masses are random fractions normalised to
/// sum exactly to 1.
Instance generate_instance(const InstanceSpec& spec);

// Random objects on an existing space, drawn from `rng`.

Distribution random_distribution(const SpacePtr& space, Rng& rng, long bound);
FunctionOnX random_function(const SpacePtr& space, Rng& rng, long bound);

enum class SemiMetricKind {
  /// Symmetric, positive off the diagonal.
  Symmetric,
  /// Shortest-path closure of a directed graph.
  Asymmetric,
  /// Asymmetric closure plus a potential shift phi(y) - phi(x); usually has
  /// negative entries.
  Shifted,
};

CostOnPairs random_semi_metric(const SpacePtr& space, Rng& rng, long bound, SemiMetricKind kind);

/// A random non-constant (when possible) member of F_e: a random function of
/// the sites with positive weight, scaled by the largest factor that keeps
/// it in F_e.
FunctionOnX random_member_of_F_e(const SpacePtr& space, const WeightVector& e, Rng& rng,
                                 long bound);

/// Outcome of one proof check.
struct CheckResult {
  std::string name;
  std::uint64_t seed = 0;
  bool passed = false;
  /// Exact values behind the verdict (always present).
  std::string summary;
  /// Failure witnesses: instance, violated inequality, LP dumps.
  std::string witness;
};

struct VerificationReport {
  std::vector<CheckResult> entries;

  bool all_passed() const;
  std::size_t failures() const;
  /// One line per entry sorted by (seed, name), then witnesses for failures,
  /// then a totals line. Byte-identical for identical runs.
  std::string to_text() const;
  std::string to_structured() const;
};

// Checks. `seed` only labels the entry.

/// D(mu, nu) == Steif(mu, nu) exactly, plus witness certificates for both.
CheckResult check_theorem(const Instance& instance, std::uint64_t seed);

/// transport_value == dual_potential_value at a fixed e.
CheckResult check_duality_fixed_e(const Instance& instance, const WeightVector& e,
                                  std::uint64_t seed);

/// Both directions of ||f|| <= 1 <=> f in some F_e: if ||f|| <= 1 then
/// f in F_{Delta(f)}; for every sampled e with f in F_e, Delta_s(f) <= e_s and
/// ||f|| <= 1. Also checks the chain bound for every pair.
CheckResult check_norm_characterization(const FunctionOnX& f,
                                        const std::vector<WeightVector>& e_sample,
                                        std::uint64_t seed);

/// c-convexity (fixed point and envelope forms), 1-Lipschitz and psi^c == psi
/// agree on psi and on psi^c; psi^c passes all of them; psi^cc == psi^c.
CheckResult check_prop1(const FunctionOnX& psi, const CostOnPairs& c, std::uint64_t seed);

/// Unrestricted and g = -f two-function values coincide.
CheckResult check_prop2(const Instance& instance, const CostOnPairs& c, std::uint64_t seed);

/// Non-negativity, identity of indiscernibles, symmetry and all triangle
/// inequalities for both distances on a triple, and Steif <= max diameter.
CheckResult check_metric_axioms(const Distribution& a, const Distribution& b,
                                const Distribution& c, std::uint64_t seed);

/// grid_lower_bound over resolutions 1, 2, 4, ... up to max_resolution is
/// nondecreasing and bounded by the Steif value; exact at resolution 1 on
/// single-site spaces.
CheckResult check_grid_sandwich(const Instance& instance, unsigned max_resolution,
                                std::uint64_t seed);

struct SuiteOptions {
  std::uint64_t first_seed = 1;
  std::size_t count = 200;
  SuiteDims dims;
  /// Fixed sizes for every instance; empty means drawn from dims.
  std::vector<std::size_t> points;
  unsigned grid = 4;
  bool theorem = true;
  bool duality = true;
  bool norm = true;
  bool c_convexity = true;
  bool two_function = true;
  bool axioms = true;
  bool sandwich = true;
};

/// Instance for one suite seed (fixed points if given, otherwise drawn).
Instance suite_instance(std::uint64_t seed, const SuiteOptions& options);

/// Runs the selected checks on every seed in [first_seed, first_seed + count).
VerificationReport run_suite(const SuiteOptions& options);

}  // namespace pmetric::verify
