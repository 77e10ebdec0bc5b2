#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "helpers.hpp"
#include "pmetric/instance.hpp"

using namespace pmetric;
using testing::discrete_space;
using testing::dist;
using testing::make_space;
using testing::q;
using testing::qs;

namespace {

bool has_kind(const std::vector<Violation>& vs, ViolationKind kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

Site line_site(std::string name) {
  return Site{std::move(name), {"a", "b", "c"}, {qs({"0", "3/2", "3"}), qs({"3/2", "0", "3/2"}),
                                                 qs({"3", "3/2", "0"})}};
}

RawInstance raw_two_site() {
  RawInstance raw;
  raw.sites = {Site::discrete("A", 2), Site::discrete("B", 2)};
  raw.mu = {{{"0", "0"}, q("1/2")}, {{"1", "1"}, q("1/2")}};
  raw.nu = {{{"0", "1"}, q("1")}};
  return raw;
}

}  // namespace

TEST_CASE("configurations are enumerated lexicographically") {
  SUBCASE("2 x 2") {
    const auto configs = discrete_space({2, 2})->enumerate_configs();
    REQUIRE(configs.size() == 4);
    CHECK(configs[0].coords == std::vector<std::size_t>{0, 0});
    CHECK(configs[1].coords == std::vector<std::size_t>{0, 1});
    CHECK(configs[2].coords == std::vector<std::size_t>{1, 0});
    CHECK(configs[3].coords == std::vector<std::size_t>{1, 1});
  }
  SUBCASE("single site of 3 points") {
    const auto configs = discrete_space({3})->enumerate_configs();
    REQUIRE(configs.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(configs[i].coords == std::vector<std::size_t>{i});
  }
  SUBCASE("sizes (2, 3)") {
    const auto space = discrete_space({2, 3});
    const auto configs = space->enumerate_configs();
    REQUIRE(configs.size() == 6);
    CHECK(configs.front().coords == std::vector<std::size_t>{0, 0});
    CHECK(configs.back().coords == std::vector<std::size_t>{1, 2});
    for (std::size_t i = 0; i < configs.size(); ++i) {
      CHECK(space->index_of(configs[i]) == i);
      CHECK(space->config_at(i) == configs[i]);
      CHECK(space->coord(i, 1) == configs[i][1]);
    }
    CHECK(space->config_label(5) == "1,2");
    CHECK(space->find_config({"1", "2"}) == std::optional<std::size_t>(5));
    CHECK_FALSE(space->find_config({"1", "3"}).has_value());
    CHECK_FALSE(space->find_config({"1"}).has_value());
  }
}

TEST_CASE("site distances") {
  const auto space = make_space({line_site("L"), Site::discrete("D", 2)});
  const Config x{{0, 0}}, y{{1, 1}};
  CHECK(space->site_distance(0, x, x) == Rational(0));
  CHECK(space->site_distance(0, x, y) == q("3/2"));
  CHECK(space->site_distance(1, x, y) == Rational(1));
  CHECK(space->site_distance(0, space->index_of(x), space->index_of(y)) == q("3/2"));
  CHECK_THROWS_AS(space->site_distance(2, x, y), std::out_of_range);
  CHECK_THROWS_AS(space->site_distance(2, 0, 1), std::out_of_range);
  CHECK(space->site(0).diameter() == Rational(3));
  CHECK(space->max_diameter() == Rational(3));
}

TEST_CASE("site validation reports each broken invariant") {
  auto check_kind = [](Site site) {
    const auto vs = site_violations(site, 0);
    CHECK(has_kind(vs, ViolationKind::NonMetric));
    CHECK_THROWS_AS(ProductSpace({site}), InstanceError);
  };
  SUBCASE("zero off-diagonal") {
    check_kind(Site{"S", {"a", "b"}, {qs({"0", "0"}), qs({"0", "0"})}});
  }
  SUBCASE("asymmetric") {
    check_kind(Site{"S", {"a", "b"}, {qs({"0", "1"}), qs({"2", "0"})}});
  }
  SUBCASE("nonzero diagonal") {
    check_kind(Site{"S", {"a", "b"}, {qs({"1", "1"}), qs({"1", "0"})}});
  }
  SUBCASE("triangle") {
    check_kind(Site{"S", {"a", "b", "c"},
                    {qs({"0", "1", "3"}), qs({"1", "0", "1"}), qs({"3", "1", "0"})}});
  }
  SUBCASE("negative") {
    check_kind(Site{"S", {"a", "b"}, {qs({"0", "-1"}), qs({"-1", "0"})}});
  }
  SUBCASE("shape and labels") {
    const auto vs = site_violations(Site{"S", {"a", "a"}, {qs({"0", "1"})}}, 0);
    CHECK(has_kind(vs, ViolationKind::ShapeMismatch));
    CHECK(vs.size() >= 2);
    CHECK_FALSE(site_violations(Site{"S", {}, {}}, 0).empty());
    CHECK_FALSE(site_violations(Site{"S", {"a,b"}, {qs({"0"})}}, 0).empty());
  }
  CHECK(site_violations(line_site("L"), 0).empty());
}

TEST_CASE("distributions, functions and weights") {
  const auto space = discrete_space({2});
  CHECK_NOTHROW(dist(space, {"1/3", "2/3"}));
  SUBCASE("masses must sum to one") {
    try {
      dist(space, {"1/2", "2/5"});
      FAIL("expected InstanceError");
    } catch (const InstanceError& e) {
      CHECK(has_kind(e.violations(), ViolationKind::BadMass));
    }
  }
  CHECK_THROWS_AS(dist(space, {"3/2", "-1/2"}), InstanceError);
  CHECK_THROWS_AS(dist(space, {"1"}), InstanceError);

  const auto d = Distribution::dirac(space, 1);
  CHECK(d[0] == Rational(0));
  CHECK(d[1] == Rational(1));
  const FunctionOnX f(space, qs({"2", "5"}));
  CHECK(dist(space, {"1/3", "2/3"}).integrate(f) == Rational(4));
  CHECK(f.negated()[1] == Rational(-5));
  CHECK(FunctionOnX::constant(space, Rational(7))[0] == Rational(7));
  CHECK_THROWS(FunctionOnX(space, qs({"1"})));

  CHECK_NOTHROW(testing::weights({"1/3", "2/3"}));
  CHECK_NOTHROW(testing::weights({"0", "0"}));
  CHECK_THROWS_AS(testing::weights({"2/3", "2/3"}), InstanceError);
  CHECK_THROWS_AS(testing::weights({"-1/3", "1/3"}), InstanceError);
  CHECK(WeightVector::unit(3, 1)[1] == Rational(1));
  CHECK(WeightVector::zero(3).sum() == Rational(0));
}

TEST_CASE("weighted cost c_e") {
  const auto space = make_space({line_site("L"), Site::discrete("D", 2)});
  const Config x{{0, 0}}, y{{2, 1}};
  CHECK(cost_e(*space, WeightVector::zero(2), x, y) == Rational(0));
  CHECK(cost_e(*space, WeightVector::unit(2, 0), x, y) == Rational(3));
  CHECK(cost_e(*space, WeightVector::unit(2, 1), x, y) == Rational(1));
  CHECK(cost_e(*space, testing::weights({"1/2", "1/4"}), x, y) == q("7/4"));
  CHECK_THROWS_AS(cost_e(*space, WeightVector::zero(3), x, y), std::invalid_argument);

  const auto discrete = discrete_space({2, 2});
  CHECK(cost_e(*discrete, testing::weights({"1/3", "2/3"}), 0, 3) == Rational(1));
  CHECK(cost_e(*discrete, testing::weights({"1/3", "2/3"}), 1, 1) == Rational(0));
}

TEST_CASE("cost semi-metric checks") {
  const auto space = discrete_space({2});
  const CostOnPairs metric(space, {qs({"0", "1"}), qs({"1", "0"})});
  CHECK(metric.is_semi_metric());
  CHECK(metric.is_symmetric());
  CHECK(metric.is_nonnegative());
  const CostOnPairs shifted(space, {qs({"0", "-1"}), qs({"2", "0"})});
  CHECK(shifted.is_semi_metric());
  CHECK_FALSE(shifted.is_symmetric());
  CHECK_FALSE(shifted.is_nonnegative());
  const CostOnPairs broken(space, {qs({"0", "-1"}), qs({"0", "0"})});
  CHECK_FALSE(broken.is_semi_metric());
  CHECK_FALSE(CostOnPairs(space, {qs({"1", "1"}), qs({"1", "0"})}).is_semi_metric());
  CHECK_THROWS(CostOnPairs(space, {qs({"0", "1"})}));
  CHECK(CostOnPairs::from_weights(space, testing::weights({"1/2"}))(0, 1) == q("1/2"));
}

TEST_CASE("couplings") {
  const auto space = discrete_space({2});
  const auto mu = dist(space, {"3/4", "1/4"});
  const auto nu = dist(space, {"1/4", "3/4"});
  const Coupling m(mu, nu, {qs({"1/4", "1/2"}), qs({"0", "1/4"})});
  CHECK(m.site_expectation(0) == q("1/2"));
  CHECK(m.worst_site_expectation() == q("1/2"));
  CHECK(Coupling::independent(mu, nu)(0, 1) == q("9/16"));
  CHECK_THROWS_AS(Coupling(mu, nu, {qs({"1/2", "1/4"}), qs({"0", "1/4"})}), InstanceError);
  CHECK_THROWS_AS(Coupling(mu, nu, {qs({"1/2", "1/4"}), qs({"-1/4", "1/2"})}), InstanceError);
  const auto other = dist(discrete_space({2}), {"1/2", "1/2"});
  CHECK_NOTHROW(Coupling::independent(mu, other));
  const auto bigger = dist(discrete_space({3}), {"1/2", "1/2", "0"});
  CHECK_THROWS_AS(Coupling::independent(mu, bigger), SpaceMismatch);
}

TEST_CASE("instance validation") {
  SUBCASE("valid two-site instance is accepted") {
    const auto result = validate_instance(raw_two_site());
    REQUIRE(result.ok());
    const Instance& inst = *result.instance;
    CHECK(inst.space->config_count() == 4);
    CHECK(inst.mu[0] == q("1/2"));
    CHECK(inst.mu[1] == Rational(0));
    CHECK(inst.nu[1] == Rational(1));
    CHECK(validate_instance(to_raw(inst)).instance == inst);
  }
  SUBCASE("metric with d(a,b) = 0 is NonMetric") {
    auto raw = raw_two_site();
    raw.sites[0].metric = {qs({"0", "0"}), qs({"0", "0"})};
    const auto result = validate_instance(raw);
    CHECK_FALSE(result.ok());
    CHECK(has_kind(result.violations, ViolationKind::NonMetric));
  }
  SUBCASE("masses summing to 9/10 are BadMass") {
    auto raw = raw_two_site();
    raw.nu = {{{"0", "1"}, q("9/10")}};
    const auto result = validate_instance(raw);
    CHECK(has_kind(result.violations, ViolationKind::BadMass));
  }
  SUBCASE("every violation is collected") {
    auto raw = raw_two_site();
    raw.sites[1].metric = {qs({"0", "1"}), qs({"2", "0"})};
    raw.mu.push_back({{"7", "0"}, q("0")});
    raw.mu.push_back({{"0", "0"}, q("0")});
    raw.nu = {{{"0", "1"}, q("-1")}};
    const auto result = validate_instance(raw);
    CHECK(has_kind(result.violations, ViolationKind::NonMetric));
    CHECK(has_kind(result.violations, ViolationKind::ShapeMismatch));
    CHECK(has_kind(result.violations, ViolationKind::BadMass));
    CHECK(result.violations.size() >= 4);
  }
  SUBCASE("duplicate site names") {
    auto raw = raw_two_site();
    raw.sites[1].name = "A";
    CHECK_FALSE(validate_instance(raw).ok());
  }
}
