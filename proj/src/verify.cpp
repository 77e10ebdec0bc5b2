#include "pmetric/verify.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "pmetric/io.hpp"
#include "pmetric/smoothness.hpp"

namespace pmetric::verify {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  // Reject the low 2^64 mod n values so the remainder is unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % n;
  }
}

long Rng::between(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rational Rng::positive_fraction(long bound) {
  const long p = between(1, bound);
  const long q = between(1, bound);
  return Rational(p, q);
}

void validate_spec(const InstanceSpec& spec) {
  if (spec.site_count < 1 || spec.site_count > 4) {
    throw std::invalid_argument("site_count must be in [1, 4]");
  }
  if (spec.points_per_site.size() != spec.site_count) {
    throw std::invalid_argument("points_per_site needs one entry per site");
  }
  for (auto n : spec.points_per_site) {
    if (n < 1 || n > 4) throw std::invalid_argument("points per site must be in [1, 4]");
  }
  if (spec.denominator_bound < 1) throw std::invalid_argument("denominator_bound must be >= 1");
}

InstanceSpec draw_spec(std::uint64_t seed, const SuiteDims& dims) {
  Rng rng(seed);
  InstanceSpec spec;
  spec.seed = seed;
  spec.denominator_bound = dims.denominator_bound;
  spec.site_count = 1 + rng.below(dims.max_sites);
  spec.points_per_site.clear();
  for (std::size_t s = 0; s < spec.site_count; ++s) {
    spec.points_per_site.push_back(1 + rng.below(dims.max_points));
  }
  return spec;
}

namespace {

// In-place shortest-path closure; works for directed weights too.
void close_paths(Matrix& d) {
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = std::move(via);
      }
    }
  }
}

Matrix random_closed_metric(std::size_t n, Rng& rng, long bound, bool symmetric) {
  Matrix d(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || (symmetric && b < a)) continue;
      d[a][b] = rng.positive_fraction(bound);
      if (symmetric) d[b][a] = d[a][b];
    }
  }
  close_paths(d);
  return d;
}

Rational signed_fraction(Rng& rng, long bound) {
  if (rng.below(4) == 0) return Rational(0);
  Rational r = rng.positive_fraction(bound);
  return rng.below(2) == 0 ? r : -r;
}

}  // namespace

Instance generate_instance(const InstanceSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Site> sites;
  for (std::size_t s = 0; s < spec.site_count; ++s) {
    const std::size_t n = spec.points_per_site[s];
    Site site;
    site.name = std::string(1, static_cast<char>('A' + s));
    for (std::size_t a = 0; a < n; ++a) site.points.push_back(std::to_string(a));
    site.metric = random_closed_metric(n, rng, spec.denominator_bound, true);
    sites.push_back(std::move(site));
  }
  auto space = std::make_shared<const ProductSpace>(std::move(sites));
  auto mu = random_distribution(space, rng, spec.denominator_bound);
  auto nu = random_distribution(space, rng, spec.denominator_bound);
  return Instance{space, std::move(mu), std::move(nu)};
}

Distribution random_distribution(const SpacePtr& space, Rng& rng, long bound) {
  const std::size_t n = space->config_count();
  std::vector<Rational> w(n);
  Rational total;
  for (auto& m : w) {
    if (rng.below(4) != 0) m = rng.positive_fraction(bound);
    total += m;
  }
  if (total.is_zero()) {
    w[rng.below(n)] = 1;
    total = 1;
  }
  for (auto& m : w) m /= total;
  return Distribution(space, std::move(w));
}

FunctionOnX random_function(const SpacePtr& space, Rng& rng, long bound) {
  std::vector<Rational> values(space->config_count());
  for (auto& v : values) v = signed_fraction(rng, bound);
  return FunctionOnX(space, std::move(values));
}

CostOnPairs random_semi_metric(const SpacePtr& space, Rng& rng, long bound, SemiMetricKind kind) {
  const std::size_t n = space->config_count();
  Matrix c = random_closed_metric(n, rng, bound, kind == SemiMetricKind::Symmetric);
  if (kind == SemiMetricKind::Shifted) {
    std::vector<Rational> phi(n);
    for (auto& p : phi) p = rng.positive_fraction(bound) * Rational(rng.between(-2, 2));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) c[x][y] += phi[y] - phi[x];
    }
  }
  return CostOnPairs(space, std::move(c));
}

FunctionOnX random_member_of_F_e(const SpacePtr& space, const WeightVector& e, Rng& rng,
                                 long bound) {
  const auto g = random_function(space, rng, bound);
  // Forget the coordinates that carry no weight.
  std::vector<Rational> values(space->config_count());
  for (std::size_t x = 0; x < values.size(); ++x) {
    Config c = space->config_at(x);
    for (std::size_t s = 0; s < e.size(); ++s) {
      if (e[s].is_zero()) c.coords[s] = 0;
    }
    values[x] = g[space->index_of(c)];
  }
  FunctionOnX f(space, std::move(values));
  std::optional<Rational> scale;
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (std::size_t y = 0; y < f.size(); ++y) {
      const Rational rise = f[x] - f[y];
      if (rise.sign() <= 0) continue;
      Rational ratio = cost_e(*space, e, x, y) / rise;
      if (!scale || ratio < *scale) scale = std::move(ratio);
    }
  }
  return scale ? f.scaled(*scale) : f;
}

bool VerificationReport::all_passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.passed; }));
}

namespace {

std::vector<CheckResult> sorted_entries(const std::vector<CheckResult>& entries) {
  auto out = entries;
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.seed < b.seed; });
  return out;
}

}  // namespace

std::string VerificationReport::to_text() const {
  const auto sorted = sorted_entries(entries);
  std::ostringstream os;
  for (const auto& e : sorted) {
    os << "seed " << e.seed << " " << e.name << " " << (e.passed ? "pass" : "FAIL") << " "
       << e.summary << "\n";
  }
  for (const auto& e : sorted) {
    if (e.passed) continue;
    os << "--- failure: seed " << e.seed << " " << e.name << "\n" << e.witness << "\n";
  }
  os << "total " << sorted.size() << " checks, " << sorted.size() - failures() << " passed, "
     << failures() << " failed\n";
  return os.str();
}

std::string VerificationReport::to_structured() const {
  io::Json doc;
  doc["format"] = io::kFormatVersion;
  io::Json list = io::Json::array();
  for (const auto& e : sorted_entries(entries)) {
    io::Json j;
    j["seed"] = e.seed;
    j["check"] = e.name;
    j["status"] = e.passed ? "pass" : "fail";
    j["summary"] = e.summary;
    if (!e.passed) j["witness"] = e.witness;
    list.push_back(std::move(j));
  }
  doc["entries"] = std::move(list);
  doc["passed"] = entries.size() - failures();
  doc["failed"] = failures();
  return io::to_text(doc);
}

namespace {

CheckResult finish(std::string name, std::uint64_t seed, std::string summary,
                   const std::vector<std::string>& problems, const std::string& context) {
  CheckResult r{std::move(name), seed, problems.empty(), std::move(summary), {}};
  if (!r.passed) {
    std::ostringstream os;
    for (const auto& p : problems) os << "violated: " << p << "\n";
    os << context;
    r.witness = os.str();
  }
  return r;
}

std::string instance_context(const Instance& instance) {
  return "instance:\n" + io::write_instance(instance);
}

std::string flag(bool b) { return b ? "1" : "0"; }

}  // namespace

CheckResult check_theorem(const Instance& instance, std::uint64_t seed) {
  const auto& mu = instance.mu;
  const auto& nu = instance.nu;
  std::vector<std::string> problems;
  std::string summary;
  try {
    const auto d = dobrushin_distance(mu, nu);
    const auto s = steif_distance(mu, nu);
    summary = "dobrushin=" + d.value.str() + " steif=" + s.value.str();
    if (d.value != s.value) {
      problems.push_back("dobrushin " + d.value.str() + " != steif " + s.value.str());
    }
    if (!in_F_e(d.witness_f, d.witness_e)) problems.push_back("witness f not in F_e");
    if (dobrushin_norm(d.witness_f) > Rational(1)) problems.push_back("witness ||f|| > 1");
    if (mu.integrate(d.witness_f) - nu.integrate(d.witness_f) != d.value) {
      problems.push_back("(mu - nu)(witness f) != dobrushin value");
    }
    if (s.witness_t != s.value) problems.push_back("witness t != steif value");
    if (s.witness_plan.worst_site_expectation() != s.value) {
      problems.push_back("max_s m(d_s) = " + s.witness_plan.worst_site_expectation().str() +
                         " != steif value");
    }
    const auto c = CostOnPairs::from_weights(instance.space, d.witness_e);
    assert_weak_duality(s.witness_plan, d.witness_f, c);
    if (!problems.empty()) {
      return finish("theorem", seed, summary, problems,
                    instance_context(instance) + "dobrushin program:\n" +
                        dobrushin_program(mu, nu).dump() + "steif program:\n" +
                        steif_program(mu, nu).dump());
    }
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  return finish("theorem", seed, summary, problems, instance_context(instance));
}

CheckResult check_duality_fixed_e(const Instance& instance, const WeightVector& e,
                                  std::uint64_t seed) {
  std::vector<std::string> problems;
  std::string summary = "e=" + io::weights_json(e).dump();
  try {
    const auto t = transport_value(instance.mu, instance.nu, e);
    const auto p = dual_potential_value(instance.mu, instance.nu, e);
    summary += " transport=" + t.value.str() + " potential=" + p.value.str();
    if (t.value != p.value) {
      problems.push_back("transport " + t.value.str() + " != potential " + p.value.str());
    }
    if (!in_F_e(p.potential, e)) problems.push_back("potential not in F_e");
    const auto c = CostOnPairs::from_weights(instance.space, e);
    if (t.plan.expected_cost(c) != t.value) problems.push_back("plan cost != transport value");
    assert_weak_duality(t.plan, p.potential, c);
  } catch (const std::exception& ex) {
    problems.push_back(ex.what());
  }
  return finish("duality_fixed_e", seed, summary, problems, instance_context(instance));
}

CheckResult check_norm_characterization(const FunctionOnX& f,
                                        const std::vector<WeightVector>& e_sample,
                                        std::uint64_t seed) {
  std::vector<std::string> problems;
  const auto delta = partial_lipschitz_all(f);
  const Rational norm = dobrushin_norm(f);
  std::size_t members = 0;
  if (norm <= Rational(1)) {
    // Delta(f) is in E because every entry is >= 0 and they sum to ||f||.
    if (!in_F_e(f, WeightVector(delta))) problems.push_back("||f|| <= 1 but f not in F_Delta(f)");
  }
  for (const auto& e : e_sample) {
    if (!in_F_e(f, e)) continue;
    ++members;
    for (std::size_t s = 0; s < delta.size(); ++s) {
      if (delta[s] > e[s]) {
        problems.push_back("f in F_e but Delta_" + std::to_string(s) + " = " + delta[s].str() +
                           " > e_s = " + e[s].str());
      }
    }
    if (norm > Rational(1)) problems.push_back("f in F_e but ||f|| = " + norm.str() + " > 1");
  }
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (std::size_t y = 0; y < f.size(); ++y) {
      if (!chain_bound_holds(f, x, y)) {
        problems.push_back("chain bound fails at (" + std::to_string(x) + "," +
                           std::to_string(y) + ")");
      }
    }
  }
  const std::string summary = "norm=" + norm.str() + " sampled_members=" +
                              std::to_string(members) + "/" + std::to_string(e_sample.size());
  return finish("norm_characterization", seed, summary, problems,
                "f:\n" + io::function_json(f).dump() + "\n");
}

CheckResult check_prop1(const FunctionOnX& psi, const CostOnPairs& c, std::uint64_t seed) {
  std::vector<std::string> problems;
  const std::string kind = std::string(c.is_symmetric() ? "symmetric" : "asymmetric") +
                           (c.is_nonnegative() ? "" : ",negative");
  if (!c.is_semi_metric()) {
    problems.push_back("cost is not a semi-metric");
    return finish("c_convexity", seed, "cost=" + kind, problems, "");
  }
  auto verdicts = [&c](const FunctionOnX& h) {
    return std::array<bool, 4>{is_c_convex(h, c), is_one_lipschitz(h, c),
                               c_transform(h, c) == h, c_convex_envelope(h, c) == h};
  };
  auto agree = [](const std::array<bool, 4>& v) {
    return std::all_of(v.begin(), v.end(), [&v](bool b) { return b == v[0]; });
  };
  auto text = [](const std::array<bool, 4>& v) {
    return flag(v[0]) + flag(v[1]) + flag(v[2]) + flag(v[3]);
  };
  const auto on_psi = verdicts(psi);
  const auto psi_c = c_transform(psi, c);
  const auto on_psi_c = verdicts(psi_c);
  if (!agree(on_psi)) problems.push_back("criteria disagree on psi: " + text(on_psi));
  if (!on_psi_c[0] || !agree(on_psi_c)) {
    problems.push_back("psi^c fails a criterion: " + text(on_psi_c));
  }
  if (c_transform(psi_c, c) != psi_c) problems.push_back("psi^cc != psi^c");
  for (std::size_t x = 0; x < psi_c.size(); ++x) {
    for (std::size_t xp = 0; xp < psi_c.size(); ++xp) {
      if (psi_c[x] - psi_c[xp] < -c(x, xp)) {
        problems.push_back("reversed Lipschitz bound fails at (" + std::to_string(x) + "," +
                           std::to_string(xp) + ")");
      }
    }
  }
  const auto envelope = c_convex_envelope(psi, c);
  if (!is_c_convex(envelope, c) || !is_one_lipschitz(envelope, c)) {
    problems.push_back("envelope of zeta = psi is not c-convex");
  }
  const std::string summary = "cost=" + kind + " psi=" + text(on_psi) + " psi_c=" + text(on_psi_c);
  return finish("c_convexity", seed, summary, problems,
                "psi:\n" + io::function_json(psi).dump() + "\ncost:\n" + io::cost_json(c).dump() +
                    "\n");
}

CheckResult check_prop2(const Instance& instance, const CostOnPairs& c, std::uint64_t seed) {
  std::vector<std::string> problems;
  std::string summary = std::string("cost=") + (c.is_symmetric() ? "symmetric" : "asymmetric") +
                        (c.is_nonnegative() ? "" : ",negative");
  try {
    const Rational free_pair = two_function_value(instance.mu, instance.nu, c, false);
    const Rational tied = two_function_value(instance.mu, instance.nu, c, true);
    summary += " unrestricted=" + free_pair.str() + " restricted=" + tied.str();
    if (free_pair != tied) {
      problems.push_back("unrestricted " + free_pair.str() + " != restricted " + tied.str());
    }
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  return finish("two_function", seed, summary, problems,
                instance_context(instance) + "cost:\n" + io::cost_json(c).dump() + "\n");
}

CheckResult check_metric_axioms(const Distribution& a, const Distribution& b,
                                const Distribution& c, std::uint64_t seed) {
  std::vector<std::string> problems;
  const std::array<const Distribution*, 3> d{&a, &b, &c};
  std::string summary;
  try {
    for (int metric = 0; metric < 2; ++metric) {
      const char* name = metric == 0 ? "dobrushin" : "steif";
      Rational dist[3][3];
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          dist[i][j] = metric == 0 ? dobrushin_distance(*d[i], *d[j]).value
                                   : steif_distance(*d[i], *d[j]).value;
        }
      }
      summary += std::string(summary.empty() ? "" : " ") + name + "=(" + dist[0][1].str() + "," +
                 dist[1][2].str() + "," + dist[0][2].str() + ")";
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const std::string at = std::string(name) + "(" + std::to_string(i) + "," +
                                 std::to_string(j) + ")";
          if (dist[i][j].sign() < 0) problems.push_back(at + " < 0");
          if (dist[i][j].is_zero() != (d[i]->masses() == d[j]->masses())) {
            problems.push_back(at + " = " + dist[i][j].str() + " breaks identity of indiscernibles");
          }
          if (dist[i][j] != dist[j][i]) problems.push_back(at + " not symmetric");
          for (int k = 0; k < 3; ++k) {
            if (dist[i][k] > dist[i][j] + dist[j][k]) {
              problems.push_back(std::string(name) + " triangle fails for (" + std::to_string(i) +
                                 "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }
          }
          if (metric == 1 && dist[i][j] > a.space().max_diameter()) {
            problems.push_back(at + " exceeds max site diameter");
          }
        }
      }
    }
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  return finish("metric_axioms", seed, summary, problems, "");
}

CheckResult check_grid_sandwich(const Instance& instance, unsigned max_resolution,
                                std::uint64_t seed) {
  std::vector<std::string> problems;
  std::string summary;
  try {
    const auto steif = steif_distance(instance.mu, instance.nu);
    summary = "steif=" + steif.value.str() + " grid=";
    const std::size_t sites = instance.space->site_count();
    std::optional<Rational> previous;
    for (unsigned k = 1; k <= max_resolution; k *= 2) {
      Rational best;
      for (const auto& e : simplex_grid(sites, k)) {
        const auto t = transport_value(instance.mu, instance.nu, e);
        best = max(best, t.value);
        if (t.plan.worst_site_expectation() < steif.value) {
          problems.push_back("a joining beats the Steif optimum");
        }
      }
      summary += (previous ? "," : "") + best.str();
      if (previous && best < *previous) {
        problems.push_back("grid bound decreased at resolution " + std::to_string(k));
      }
      if (best > steif.value) {
        problems.push_back("grid bound " + best.str() + " exceeds steif at resolution " +
                           std::to_string(k));
      }
      if (k == 1 && sites == 1 && best != steif.value) {
        problems.push_back("single site: grid(1) = " + best.str() + " != steif");
      }
      previous = std::move(best);
    }
    // max_s m(d_s) is the weighted sup over E, attained at a vertex of E.
    const auto& plan = steif.witness_plan;
    Rational vertex_max;
    for (const auto& e : simplex_grid(sites, 1)) {
      Rational weighted;
      for (std::size_t s = 0; s < sites; ++s) weighted += e[s] * plan.site_expectation(s);
      vertex_max = max(vertex_max, weighted);
    }
    if (vertex_max != plan.worst_site_expectation()) {
      problems.push_back("max over vertices of E differs from max_s m(d_s)");
    }
  } catch (const std::exception& e) {
    problems.push_back(e.what());
  }
  return finish("grid_sandwich", seed, summary, problems, instance_context(instance));
}

Instance suite_instance(std::uint64_t seed, const SuiteOptions& options) {
  InstanceSpec spec = draw_spec(seed, options.dims);
  if (!options.points.empty()) {
    spec.site_count = options.points.size();
    spec.points_per_site = options.points;
  }
  return generate_instance(spec);
}

VerificationReport run_suite(const SuiteOptions& options) {
  VerificationReport report;
  const long bound = options.dims.denominator_bound;
  for (std::uint64_t seed = options.first_seed; seed < options.first_seed + options.count;
       ++seed) {
    const Instance instance = suite_instance(seed, options);
    const auto& space = instance.space;
    const std::size_t sites = space->site_count();
    // One stream per check, so a subset run draws the same cases.
    auto stream = [seed](std::uint64_t check) {
      return Rng(seed * 0x2545f4914f6cdd1dULL + 7 + (check << 56));
    };
    const auto grid4 = simplex_grid(sites, 4);

    if (options.theorem) report.entries.push_back(check_theorem(instance, seed));
    if (options.duality) {
      Rng rng = stream(1);
      report.entries.push_back(check_duality_fixed_e(instance, rng.pick(grid4), seed));
    }
    if (options.norm) {
      Rng rng = stream(2);
      auto f = random_function(space, rng, bound);
      const Rational norm = dobrushin_norm(f);
      if (!norm.is_zero() && rng.below(2) == 0) f = f.scaled(Rational(1) / norm);
      report.entries.push_back(check_norm_characterization(f, grid4, seed));

      const auto& e = rng.pick(grid4);
      const auto member = random_member_of_F_e(space, e, rng, bound);
      auto entry = check_norm_characterization(member, grid4, seed);
      entry.name = "norm_member_of_F_e";
      if (!in_F_e(member, e)) {
        entry.passed = false;
        entry.witness = "violated: constructed member is not in F_e\n" + entry.witness;
      }
      report.entries.push_back(std::move(entry));
    }
    if (options.c_convexity) {
      Rng rng = stream(3);
      const auto psi = random_function(space, rng, bound);
      const auto kind = static_cast<SemiMetricKind>(seed % 3);
      report.entries.push_back(check_prop1(psi, random_semi_metric(space, rng, bound, kind), seed));
    }
    if (options.two_function) {
      Rng rng = stream(4);
      const auto kind = static_cast<SemiMetricKind>((seed + 1) % 3);
      report.entries.push_back(
          check_prop2(instance, random_semi_metric(space, rng, bound, kind), seed));
    }
    if (options.axioms) {
      Rng rng = stream(5);
      const auto rho = random_distribution(space, rng, bound);
      report.entries.push_back(check_metric_axioms(instance.mu, instance.nu, rho, seed));
    }
    if (options.sandwich) {
      report.entries.push_back(check_grid_sandwich(instance, options.grid, seed));
    }
  }
  return report;
}

}  // namespace pmetric::verify
