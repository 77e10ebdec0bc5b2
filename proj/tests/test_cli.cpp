#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "pmetric/cli.hpp"
#include "pmetric/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pmetric::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string bundled(const char* name) { return std::string(PMETRIC_INSTANCE_DIR) + "/" + name; }

// Scratch file removed at scope exit.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = (fs::temp_directory_path() /
            ("pmetric_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
               .string();
    std::ofstream(path) << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

bool contains(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("distance on bundled instances") {
  SUBCASE("bernoulli2") {
    const auto r = run({"distance", "--instance", bundled("bernoulli2.inst")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "dobrushin 1/4  (0.25)"));
    CHECK(contains(r.out, "steif     1/4  (0.25)"));
    CHECK(contains(r.out, "equal     true"));
  }
  SUBCASE("dirac") {
    const auto r = run({"distance", "--instance", bundled("dirac.inst"), "--metric", "both"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "dobrushin 3/1"));
    CHECK(contains(r.out, "equal     true"));
  }
  SUBCASE("equal measures") {
    const auto r = run({"distance", "--instance", bundled("equal.inst")});
    CHECK(contains(r.out, "dobrushin 0/1"));
    CHECK(contains(r.out, "steif     0/1"));
  }
  SUBCASE("single metric with witness") {
    const auto r = run({"distance", "--instance", bundled("bernoulli2.inst"), "--metric", "steif",
                        "--witness"});
    CHECK(r.code == 0);
    CHECK_FALSE(contains(r.out, "dobrushin"));
    CHECK_FALSE(contains(r.out, "equal"));
    CHECK(contains(r.out, "steif witness"));
    CHECK(contains(r.out, "  t 1/4"));
  }
  SUBCASE("structured output") {
    const auto r = run({"distance", "--instance", bundled("bernoulli2.inst"), "--output",
                        "structured", "--witness"});
    REQUIRE(r.code == 0);
    const auto j = pmetric::io::Json::parse(r.out);
    CHECK(j["format"] == 1);
    CHECK(j["dobrushin"]["value"] == "1/4");
    CHECK(j["steif"]["decimal"] == "0.25");
    CHECK(j["equal"] == true);
    CHECK(j["dobrushin"]["witness"]["e"].size() == 2);
    CHECK(j["steif"]["witness"]["t"] == "1/4");
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == pmetric::cli::kParseError);
  CHECK(run({"distance"}).code == pmetric::cli::kParseError);
  CHECK(run({"distance", "--instance", bundled("dirac.inst"), "--metric", "tv"}).code ==
        pmetric::cli::kParseError);
  CHECK(run({"frobnicate"}).code == pmetric::cli::kParseError);
  CHECK(run({"distance", "--instance", "/nonexistent.inst"}).code == pmetric::cli::kParseError);
  {
    TempFile bad("{\"format\": 1, \"sites\": [");
    const auto r = run({"distance", "--instance", bad.path});
    CHECK(r.code == pmetric::cli::kParseError);
    CHECK(contains(r.err, "not valid JSON"));
  }
  {
    TempFile invalid(R"({"format": 1,
      "sites": [{"name": "A", "points": ["0", "1"], "metric": [[0, 0], [0, 0]]}],
      "mu": {"0": "1/2"}, "nu": {"1": 1}})");
    const auto r = run({"distance", "--instance", invalid.path});
    CHECK(r.code == pmetric::cli::kValidationError);
    CHECK(contains(r.err, "NonMetric"));
    CHECK(contains(r.err, "BadMass"));
  }
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "distance"));
}

TEST_CASE("transform") {
  const std::string inst = bundled("bernoulli2.inst");
  SUBCASE("constant function has a zero table") {
    TempFile f(R"({"format": 1, "values": {"0,0": 2, "0,1": 2, "1,0": 2, "1,1": 2}})");
    const auto r = run({"transform", "--instance", inst, "--function", f.path});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "delta A 0\ndelta B 0\nnorm 0/1"));
  }
  SUBCASE("indicator function") {
    TempFile f(R"({"format": 1, "values": {"1,0": 1, "1,1": 1}})");
    TempFile w(R"({"format": 1, "weights": [1, 0]})");
    const auto r = run({"transform", "--instance", inst, "--function", f.path, "--weights", w.path});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "delta A 1\ndelta B 0\nnorm 1/1"));
    CHECK(contains(r.out, "in_F_e true"));
    CHECK(contains(r.out, "c_convex true"));
  }
  SUBCASE("1-Lipschitz input is echoed by the c-transform") {
    TempFile f(R"({"format": 1, "values": {"0,1": "1/2", "1,0": "-1/2"}})");
    TempFile c(R"({"format": 1, "cost": [[0,1,1,2],[1,0,2,1],[1,2,0,1],[2,1,1,0]]})");
    const auto r = run({"transform", "--instance", inst, "--function", f.path, "--cost", c.path,
                        "--output", "structured"});
    REQUIRE(r.code == 0);
    const auto j = pmetric::io::Json::parse(r.out);
    CHECK(j["one_lipschitz"] == true);
    CHECK(j["c_transform"]["0,1"] == "1/2");
    CHECK(j["c_transform"]["1,0"] == "-1/2");
    CHECK(j["c_transform"]["1,1"] == 0);
  }
  SUBCASE("cost that is not a semi-metric") {
    TempFile f(R"({"format": 1, "values": {}})");
    TempFile c(R"({"format": 1, "cost": [[0,1,1,5],[1,0,2,1],[1,2,0,1],[2,1,1,0]]})");
    const auto r = run({"transform", "--instance", inst, "--function", f.path, "--cost", c.path});
    CHECK(r.code == pmetric::cli::kValidationError);
    CHECK(contains(r.err, "BadCost"));
  }
  SUBCASE("weights outside E") {
    TempFile f(R"({"format": 1, "values": {}})");
    TempFile w(R"({"format": 1, "weights": [1, 1]})");
    const auto r = run({"transform", "--instance", inst, "--function", f.path, "--weights", w.path});
    CHECK(r.code == pmetric::cli::kValidationError);
    CHECK(contains(r.err, "BadWeights"));
  }
}

TEST_CASE("generate") {
  const auto a = run({"generate", "--seed", "11", "--points", "2,3"});
  const auto b = run({"generate", "--seed", "11", "--points", "2,3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto inst = pmetric::io::load_instance(a.out);
  CHECK(inst.space->config_count() == 6);
  CHECK(pmetric::io::write_instance(inst) == a.out);

  TempFile target("");
  CHECK(run({"generate", "--seed", "4", "--out", target.path}).code == 0);
  std::ifstream in(target.path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == run({"generate", "--seed", "4"}).out);
  CHECK(run({"distance", "--instance", target.path}).code == 0);

  const auto tiny = run({"generate", "--seed", "1", "--points", "1"});
  CHECK(pmetric::io::load_instance(tiny.out).space->config_count() == 1);
  CHECK(run({"generate", "--points", "5"}).code == pmetric::cli::kParseError);
  CHECK(run({"generate", "--denom", "0"}).code == pmetric::cli::kParseError);
}

TEST_CASE("verify") {
  const auto a = run({"verify", "--seed", "3", "--count", "1"});
  CHECK(a.code == 0);
  CHECK(contains(a.out, "total 8 checks, 8 passed, 0 failed"));
  CHECK(run({"verify", "--seed", "3", "--count", "1"}).out == a.out);
  const auto some = run({"verify", "--count", "2", "--checks", "theorem,two_function", "--points", "2,2",
                         "--output", "structured"});
  CHECK(some.code == 0);
  const auto j = pmetric::io::Json::parse(some.out);
  CHECK(j["entries"].size() == 4);
  CHECK(j["failed"] == 0);
  CHECK(run({"verify", "--checks", "everything"}).code == pmetric::cli::kParseError);
  CHECK(run({"verify", "--sites", "9"}).code == pmetric::cli::kParseError);
}
