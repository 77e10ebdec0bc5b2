#include "pmetric/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pmetric/io.hpp"
#include "pmetric/smoothness.hpp"
#include "pmetric/verify.hpp"

namespace pmetric::cli {

namespace {

using io::Json;

enum class Output { Text, Structured };

struct Options {
  std::string instance;
  std::string metric = "both";
  bool witness = false;
  std::string function;
  std::string weights;
  std::string cost;
  std::uint64_t seed = 1;
  std::size_t count = 200;
  std::size_t sites = 3;
  std::size_t max_points = 3;
  std::vector<std::size_t> points;
  long denom = 8;
  unsigned grid = 4;
  std::vector<std::string> checks;
  std::string out_path;
  Output output = Output::Text;
};

const std::vector<std::string> kCheckNames = {"theorem",      "duality", "norm",    "c_convexity",
                                              "two_function", "axioms",  "sandwich"};

std::string fraction(const Rational& r) { return r.numerator_str() + "/" + r.denominator_str(); }

// Exact value plus a decimal annotation.
std::string show(const Rational& r) { return fraction(r) + "  (" + to_decimal(r) + ")"; }

Json value_json(const Rational& r) {
  Json j;
  j["value"] = fraction(r);
  j["decimal"] = to_decimal(r);
  return j;
}

void print_json(std::ostream& out, const Json& j) { out << io::to_text(j); }

Instance read_instance(const std::string& path) { return io::load_instance(io::read_file(path)); }

void write_function_text(std::ostream& out, const std::string& tag, const FunctionOnX& f) {
  for (std::size_t x = 0; x < f.size(); ++x) {
    out << "  " << tag << ' ' << f.space().config_label(x) << ' ' << f[x].str() << '\n';
  }
}

int cmd_distance(const Options& opt, std::ostream& out, std::ostream& err) {
  const Instance inst = read_instance(opt.instance);
  const bool want_d = opt.metric != "steif";
  const bool want_s = opt.metric != "dobrushin";

  std::optional<DobrushinResult> d;
  std::optional<SteifResult> s;
  if (want_d) d = dobrushin_distance(inst.mu, inst.nu);
  if (want_s) s = steif_distance(inst.mu, inst.nu);
  const bool both = d && s;
  const bool equal = both && d->value == s->value;

  if (opt.output == Output::Structured) {
    Json doc;
    doc["format"] = io::kFormatVersion;
    if (d) {
      Json j = value_json(d->value);
      if (opt.witness) {
        j["witness"]["f"] = io::function_json(d->witness_f);
        j["witness"]["e"] = io::weights_json(d->witness_e);
      }
      doc["dobrushin"] = std::move(j);
    }
    if (s) {
      Json j = value_json(s->value);
      if (opt.witness) {
        j["witness"]["t"] = io::rational_json(s->witness_t);
        j["witness"]["plan"] = io::coupling_json(s->witness_plan);
      }
      doc["steif"] = std::move(j);
    }
    if (both) doc["equal"] = equal;
    print_json(out, doc);
  } else {
    if (d) out << "dobrushin " << show(d->value) << '\n';
    if (s) out << "steif     " << show(s->value) << '\n';
    if (both) out << "equal     " << (equal ? "true" : "false") << '\n';
    if (opt.witness && d) {
      out << "dobrushin witness\n";
      const auto& space = inst.space;
      for (std::size_t k = 0; k < space->site_count(); ++k) {
        out << "  e " << space->site(k).name << ' ' << d->witness_e[k].str() << '\n';
      }
      write_function_text(out, "f", d->witness_f);
    }
    if (opt.witness && s) {
      out << "steif witness\n  t " << s->witness_t.str() << '\n';
      const auto& plan = s->witness_plan;
      const auto& space = plan.space();
      for (std::size_t x = 0; x < space.config_count(); ++x) {
        for (std::size_t y = 0; y < space.config_count(); ++y) {
          if (plan(x, y).is_zero()) continue;
          out << "  m " << space.config_label(x) << '|' << space.config_label(y) << ' '
              << plan(x, y).str() << '\n';
        }
      }
    }
  }

  if (both && !equal) {
    err << "error: dobrushin and steif values differ\n"
        << dobrushin_program(inst.mu, inst.nu).dump() << '\n'
        << steif_program(inst.mu, inst.nu).dump() << '\n';
    return kCertificationError;
  }
  return kOk;
}

int cmd_transform(const Options& opt, std::ostream& out) {
  const Instance inst = read_instance(opt.instance);
  const SpacePtr& space = inst.space;
  const FunctionOnX f = io::parse_function(io::read_file(opt.function), space);

  std::optional<WeightVector> e;
  std::optional<CostOnPairs> c;
  if (!opt.weights.empty()) {
    e = io::parse_weights(io::read_file(opt.weights), *space);
    c = CostOnPairs::from_weights(space, *e);
  }
  if (!opt.cost.empty()) {
    c = io::parse_cost(io::read_file(opt.cost), space);
    auto violations = c->semi_metric_violations();
    if (!violations.empty()) throw InstanceError(std::move(violations));
  }

  const auto delta = partial_lipschitz_all(f);
  const Rational norm = dobrushin_norm(f);
  std::optional<FunctionOnX> psi_c;
  if (c) psi_c = c_transform(f, *c);

  if (opt.output == Output::Structured) {
    Json doc;
    doc["format"] = io::kFormatVersion;
    Json table = Json::object();
    for (std::size_t s = 0; s < delta.size(); ++s) {
      table[space->site(s).name] = io::rational_json(delta[s]);
    }
    doc["delta"] = std::move(table);
    doc["norm"] = value_json(norm);
    if (e) doc["in_F_e"] = in_F_e(f, *e);
    if (c) {
      doc["c_transform"] = io::function_json(*psi_c);
      doc["one_lipschitz"] = is_one_lipschitz(f, *c);
      doc["c_convex"] = *psi_c == f;
    }
    print_json(out, doc);
    return kOk;
  }

  for (std::size_t s = 0; s < delta.size(); ++s) {
    out << "delta " << space->site(s).name << ' ' << delta[s].str() << '\n';
  }
  out << "norm " << show(norm) << '\n';
  if (e) out << "in_F_e " << (in_F_e(f, *e) ? "true" : "false") << '\n';
  if (c) {
    out << "one_lipschitz " << (is_one_lipschitz(f, *c) ? "true" : "false") << '\n';
    out << "c_convex " << (*psi_c == f ? "true" : "false") << '\n';
    out << "c_transform\n";
    write_function_text(out, "psi_c", *psi_c);
  }
  return kOk;
}

verify::SuiteDims dims_of(const Options& opt) {
  return verify::SuiteDims{opt.sites, opt.max_points, opt.denom};
}

void require_dims(const Options& opt) {
  verify::InstanceSpec probe;
  probe.denominator_bound = opt.denom;
  if (opt.points.empty()) {
    probe.site_count = opt.sites;
    probe.points_per_site.assign(opt.sites, opt.max_points);
  } else {
    probe.site_count = opt.points.size();
    probe.points_per_site = opt.points;
  }
  verify::validate_spec(probe);
}

int cmd_verify(const Options& opt, std::ostream& out) {
  require_dims(opt);
  if (opt.grid == 0) throw std::invalid_argument("--grid must be positive");
  verify::SuiteOptions suite;
  suite.first_seed = opt.seed;
  suite.count = opt.count;
  suite.dims = dims_of(opt);
  suite.points = opt.points;
  suite.grid = opt.grid;
  if (!opt.checks.empty()) {
    auto on = [&](const char* name) {
      return std::find(opt.checks.begin(), opt.checks.end(), name) != opt.checks.end();
    };
    suite.theorem = on("theorem");
    suite.duality = on("duality");
    suite.norm = on("norm");
    suite.c_convexity = on("c_convexity");
    suite.two_function = on("two_function");
    suite.axioms = on("axioms");
    suite.sandwich = on("sandwich");
  }
  const auto report = verify::run_suite(suite);
  out << (opt.output == Output::Structured ? report.to_structured() : report.to_text());
  return report.all_passed() ? kOk : kCertificationError;
}

int cmd_generate(const Options& opt, std::ostream& out) {
  require_dims(opt);
  verify::InstanceSpec spec = verify::draw_spec(opt.seed, dims_of(opt));
  if (!opt.points.empty()) {
    spec.site_count = opt.points.size();
    spec.points_per_site = opt.points;
  }
  const std::string text = io::write_instance(verify::generate_instance(spec));
  if (opt.out_path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!(file << text)) throw io::ParseError("cannot write '" + opt.out_path + "'");
  return kOk;
}

void report_violations(std::ostream& err, const InstanceError& e) {
  err << "error: invalid input (" << e.violations().size() << " violation"
      << (e.violations().size() == 1 ? "" : "s") << ")\n";
  for (const auto& v : e.violations()) {
    err << "  - " << to_string(v.kind) << ": " << v.detail << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Dobrushin and Steif distances on finite product spaces", "pmetric"};
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, Output> output_names{{"text", Output::Text},
                                                   {"structured", Output::Structured}};
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", opt.output, "text or structured (JSON)")
        ->transform(CLI::CheckedTransformer(output_names, CLI::ignore_case));
  };
  auto add_dims = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "Seed (first seed for verify)");
    cmd->add_option("--sites", opt.sites, "Maximum number of sites")->check(CLI::Range(1, 4));
    cmd->add_option("--max-points", opt.max_points, "Maximum points per site")
        ->check(CLI::Range(1, 4));
    cmd->add_option("--points", opt.points, "Fixed points per site, e.g. 2,3")
        ->delimiter(',')
        ->check(CLI::Range(1, 4));
    cmd->add_option("--denom", opt.denom, "Denominator bound for drawn fractions")
        ->check(CLI::PositiveNumber);
  };

  auto* distance = app.add_subcommand("distance", "Compute D and/or the Steif distance");
  distance->add_option("--instance", opt.instance, "Instance file")->required();
  distance->add_option("--metric", opt.metric, "dobrushin, steif or both")
      ->check(CLI::IsMember({"dobrushin", "steif", "both"}));
  distance->add_flag("--witness", opt.witness, "Print optimal potential / joining");
  add_output(distance);

  auto* transform = app.add_subcommand(
      "transform", "Partial Lipschitz table, norm, F_e membership and c-transform of a function");
  transform->add_option("--instance", opt.instance, "Instance file")->required();
  transform->add_option("--function", opt.function, "Function file")->required();
  auto* wopt = transform->add_option("--weights", opt.weights, "Weight vector file");
  transform->add_option("--cost", opt.cost, "Semi-metric cost file")->excludes(wopt);
  add_output(transform);

  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized proof-check suite");
  add_dims(verify_cmd);
  verify_cmd->add_option("--count", opt.count, "Number of seeds");
  verify_cmd->add_option("--grid", opt.grid, "Largest grid resolution for the sandwich check")
      ->check(CLI::PositiveNumber);
  verify_cmd
      ->add_option("--checks", opt.checks,
                   "Subset of: theorem,duality,norm,c_convexity,two_function,axioms,sandwich")
      ->delimiter(',')
      ->check(CLI::IsMember(kCheckNames));
  add_output(verify_cmd);

  auto* generate = app.add_subcommand("generate", "Write a random instance file");
  add_dims(generate);
  generate->add_option("--out", opt.out_path, "Destination file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (distance->parsed()) return cmd_distance(opt, out, err);
    if (transform->parsed()) return cmd_transform(opt, out);
    if (verify_cmd->parsed()) return cmd_verify(opt, out);
    return cmd_generate(opt, out);
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const InstanceError& e) {
    report_violations(err, e);
    return kValidationError;
  } catch (const CertificationError& e) {
    err << "error: " << e.what() << '\n';
    return kCertificationError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCertificationError;
  }
}

}  // namespace pmetric::cli
