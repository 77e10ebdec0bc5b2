#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "pmetric/smoothness.hpp"
#include "pmetric/verify.hpp"

using namespace pmetric;
using testing::discrete_space;
using testing::fn;
using testing::make_space;
using testing::q;
using testing::qs;

namespace {

// Straight from the definition, on Config objects rather than strides.
Rational delta_oracle(const FunctionOnX& f, std::size_t s) {
  const auto& space = f.space();
  const auto configs = space.enumerate_configs();
  Rational best(0);
  for (const auto& x : configs) {
    for (const auto& y : configs) {
      bool agree_off_s = true;
      for (std::size_t t = 0; t < space.site_count(); ++t) {
        if (t != s && x[t] != y[t]) agree_off_s = false;
      }
      if (!agree_off_s || x[s] == y[s]) continue;
      const Rational ratio = (f[space.index_of(x)] - f[space.index_of(y)]) /
                             space.site_distance(s, x, y);
      best = max(best, ratio);
    }
  }
  return best;
}

SpacePtr mixed_space() {
  return make_space({Site{"L", {"a", "b", "c"},
                          {qs({"0", "1/2", "2"}), qs({"1/2", "0", "3/2"}), qs({"2", "3/2", "0"})}},
                     Site::discrete("D", 2)});
}

}  // namespace

TEST_CASE("partial Lipschitz constants") {
  const auto space = discrete_space({2, 2});
  SUBCASE("constant function") {
    const auto f = FunctionOnX::constant(space, q("5/3"));
    CHECK(partial_lipschitz(f, 0) == Rational(0));
    CHECK(partial_lipschitz(f, 1) == Rational(0));
    CHECK(dobrushin_norm(f) == Rational(0));
  }
  SUBCASE("function of the other site only") {
    const auto f = fn(space, {"0", "3", "0", "3"});
    CHECK(partial_lipschitz(f, 0) == Rational(0));
    CHECK(partial_lipschitz(f, 1) == Rational(3));
  }
  SUBCASE("indicator of x_0 = 1") {
    const auto f = fn(space, {"0", "0", "1", "1"});
    CHECK(partial_lipschitz(f, 0) == Rational(1));
    CHECK(partial_lipschitz(f, 1) == Rational(0));
    CHECK(partial_lipschitz_all(f) == qs({"1", "0"}));
    CHECK(dobrushin_norm(f) == Rational(1));
  }
  SUBCASE("single-point site contributes zero") {
    const auto tiny = discrete_space({1, 2});
    CHECK(partial_lipschitz(fn(tiny, {"0", "4"}), 0) == Rational(0));
  }
  CHECK_THROWS_AS(partial_lipschitz(fn(space, {"0", "0", "0", "0"}), 2), std::out_of_range);
}

TEST_CASE("partial Lipschitz matches the definition on random functions") {
  verify::Rng rng(17);
  for (const auto& space : {mixed_space(), discrete_space({3, 2, 2}), discrete_space({1, 3})}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = verify::random_function(space, rng, 6);
      Rational sum(0);
      for (std::size_t s = 0; s < space->site_count(); ++s) {
        CHECK(partial_lipschitz(f, s) == delta_oracle(f, s));
        sum = sum + delta_oracle(f, s);
      }
      CHECK(dobrushin_norm(f) == sum);
      for (std::size_t x = 0; x < f.size(); ++x) {
        for (std::size_t y = 0; y < f.size(); ++y) CHECK(chain_bound_holds(f, x, y));
      }
    }
  }
}

TEST_CASE("norm of a sum of per-site functions") {
  const auto space = mixed_space();
  const auto g0 = qs({"0", "1", "4"});  // on L: slopes 2, 2, 3/2
  const auto g1 = qs({"0", "-1/3"});    // on D: slope 1/3
  std::vector<Rational> values;
  for (std::size_t x = 0; x < space->config_count(); ++x) {
    values.push_back(g0[space->coord(x, 0)] + g1[space->coord(x, 1)]);
  }
  const FunctionOnX f(space, values);
  CHECK(partial_lipschitz(f, 0) == Rational(2));
  CHECK(partial_lipschitz(f, 1) == q("1/3"));
  CHECK(dobrushin_norm(f) == q("7/3"));
}

TEST_CASE("F_e membership") {
  const auto space = discrete_space({2, 2});
  CHECK(in_F_e(FunctionOnX::constant(space, Rational(9)), WeightVector::zero(2)));
  SUBCASE("f lies in F_{Delta(f)} when its norm is at most one") {
    const auto f = fn(space, {"0", "1/4", "1/2", "3/4"});
    CHECK(dobrushin_norm(f) == Rational(3, 4));
    CHECK(in_F_e(f, WeightVector(partial_lipschitz_all(f))));
    CHECK_FALSE(in_F_e(f, testing::weights({"1/4", "1/2"})));
  }
  SUBCASE("twice an indicator is in no F_e") {
    const auto f = fn(space, {"0", "0", "2", "2"});
    for (const auto& e : simplex_grid(2, 4)) CHECK_FALSE(in_F_e(f, e));
  }
}

TEST_CASE("c-transform on a metric cost") {
  const auto space = mixed_space();
  const auto c = CostOnPairs::from_weights(space, testing::weights({"1/2", "1/2"}));
  SUBCASE("constant psi is unchanged") {
    const auto psi = FunctionOnX::constant(space, q("-2/7"));
    CHECK(c_transform(psi, c) == psi);
    CHECK(is_one_lipschitz(psi, c));
    CHECK(is_c_convex(psi, c));
  }
  SUBCASE("a jump of 2 across a pair at cost 1") {
    const auto discrete = discrete_space({2});
    const CostOnPairs unit(discrete, {qs({"0", "1"}), qs({"1", "0"})});
    const auto psi = fn(discrete, {"0", "2"});
    CHECK_FALSE(is_one_lipschitz(psi, unit));
    CHECK_FALSE(is_c_convex(psi, unit));
    CHECK(c_transform(psi, unit) == fn(discrete, {"0", "1"}));
  }
}

TEST_CASE("c-transform properties on random semi-metrics") {
  verify::Rng rng(99);
  const auto space = discrete_space({3, 2});
  for (auto kind : {verify::SemiMetricKind::Symmetric, verify::SemiMetricKind::Asymmetric,
                    verify::SemiMetricKind::Shifted}) {
    for (int trial = 0; trial < 15; ++trial) {
      const auto c = verify::random_semi_metric(space, rng, 5, kind);
      REQUIRE(c.is_semi_metric());
      const auto psi = verify::random_function(space, rng, 5);
      const auto psi_c = c_transform(psi, c);
      CHECK(is_one_lipschitz(psi_c, c));
      CHECK(is_c_convex(psi_c, c));
      CHECK(c_transform(psi_c, c) == psi_c);
      CHECK(is_one_lipschitz(psi, c) == is_c_convex(psi, c));
      const auto env = c_convex_envelope(psi, c);
      CHECK(is_c_convex(env, c));
      CHECK(c_convex_envelope(psi_c, c) == psi_c);
      if (is_one_lipschitz(psi, c)) CHECK(psi_c == psi);
    }
  }
}
