#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "tempora/scenarios.hpp"

using namespace tempora;

namespace {
const std::string kData = TEMPORA_DATA;
}

TEST_CASE("n-cycle coefficients") {
  const auto p5 = ncycle(NCycleSpec::canonical(5));
  for (int i = 0; i < 5; ++i) {
    const int j = (i + 1) % 5;
    const double expect = i == 4 ? -0.5 : 0.5;
    CHECK(p5.coefficients(i, j) == expect);
    CHECK(p5.coefficients(j, i) == expect);
  }
  CHECK(p5.coefficients.cwiseAbs().sum() == doctest::Approx(5.0));

  // Three-cycle: <A0A1> + <A1A2> - <A2A0>, the Leggett-Garg combination.
  const auto p3 = ncycle(NCycleSpec::canonical(3));
  const auto lg = correlation_problem(leggett_garg());
  CHECK((p3.coefficients - lg.coefficients).cwiseAbs().maxCoeff() < 1e-15);

  const Scenario s5 = ncycle_scenario(NCycleSpec::canonical(5));
  CHECK(s5.name == "ncycle5");
  CHECK(s5.objective.size() == 5);
  CHECK(s5.objective.back().coefficient == -1.0);
  CHECK((correlation_problem(s5).coefficients - p5.coefficients).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(validate(NCycleSpec{2, {1, -1}}), InputError);
  CHECK_THROWS_AS(validate(NCycleSpec{3, {1, -1, -1}}), InputError);
  CHECK_THROWS_AS(validate(NCycleSpec{3, {1, 1}}), InputError);
  CHECK_THROWS_AS(validate(NCycleSpec{3, {1, 2, -1}}), InputError);
}

TEST_CASE("closed-form n-cycle bound") {
  CHECK(ncycle_bound(3) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::abs(ncycle_bound(5) - 1.25 * (1 + std::sqrt(5.0))) < 1e-14);
  CHECK(std::abs(ncycle_bound(4) - 2 * std::sqrt(2.0)) < 1e-14);
  CHECK_THROWS_AS(ncycle_bound(2), InputError);
}

TEST_CASE("Yu-Oh rays and orthogonality graph") {
  const RaySet rays = yu_oh_rays();
  REQUIRE(rays.size() == 13);
  const auto edges = orthogonality_edges(rays);
  CHECK(edges.size() == 24);
  std::map<int, int> degree;
  std::map<std::pair<int, int>, bool> adj;
  for (const auto& [i, j] : edges) {
    CHECK(i < j);
    const auto& a = rays[static_cast<std::size_t>(i)].v;
    const auto& b = rays[static_cast<std::size_t>(j)].v;
    CHECK(a[0] * b[0] + a[1] * b[1] + a[2] * b[2] == 0);
    ++degree[i];
    ++degree[j];
    adj[{i, j}] = adj[{j, i}] = true;
  }
  int checked_pairs = 0;
  for (int i = 0; i < 13; ++i)
    for (int j = i + 1; j < 13; ++j) {
      const auto& a = rays[static_cast<std::size_t>(i)].v;
      const auto& b = rays[static_cast<std::size_t>(j)].v;
      CHECK((a[0] * b[0] + a[1] * b[1] + a[2] * b[2] == 0) == adj.contains({i, j}));
      ++checked_pairs;
    }
  CHECK(checked_pairs == 78);
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const char c = rays[i].label[0];
    if (c == 'z') CHECK(degree[static_cast<int>(i)] == 4);
    if (c == 'h') CHECK(degree[static_cast<int>(i)] == 3);
  }
  // Triangles: {z1, z2, z3} and {z_k, y_k+, y_k-}; no h vertex lies on one.
  int triangles = 0, triangles_with_h = 0;
  for (int a = 0; a < 13; ++a)
    for (int b = a + 1; b < 13; ++b)
      for (int c = b + 1; c < 13; ++c)
        if (adj.contains({a, b}) && adj.contains({b, c}) && adj.contains({a, c})) {
          ++triangles;
          for (int v : {a, b, c}) triangles_with_h += rays[static_cast<std::size_t>(v)].label[0] == 'h';
        }
  CHECK(triangles == 4);
  CHECK(triangles_with_h == 0);
}

TEST_CASE("catalog scenarios") {
  const Scenario y = yu_oh();
  CHECK(y.num_settings() == 13);
  CHECK(y.sequence_length == 2);
  CHECK(y.objective.size() == 13 + 24);
  CHECK(y.reference_values.at("nchv") == 16.0);
  CHECK(y.reference_values.at("algebraic") == 50.0);

  const Scenario g = gyni();
  CHECK(g.objective.size() == 4);
  CHECK(g.sequence_length == 3);
  CHECK(g.reference_values.at("no-signalling") == doctest::Approx(4.0 / 3.0));
  CHECK(g.reference_values.at("classical") == 1.0);

  for (const auto& name : builtin_names()) {
    const Scenario s = builtin_scenario(name);
    CHECK_NOTHROW(validate(s));
    CHECK(resolve_scenario("builtin:" + name) == s);
  }
  CHECK(builtin_names().size() == 13);
  CHECK_THROWS_AS(builtin_scenario("ncycle13"), InputError);
  CHECK_THROWS_AS(builtin_scenario("ncycle2"), InputError);
  CHECK_THROWS_AS(resolve_scenario("builtin:nope"), InputError);
}

TEST_CASE("scenario files") {
  SUBCASE("round trip of every builtin") {
    for (const auto& name : builtin_names()) {
      const Scenario s = builtin_scenario(name);
      CHECK(parse_scenario(dump_scenario(s)) == s);
    }
  }
  SUBCASE("Opt2-shaped file loads") {
    const Scenario s = load_scenario(kData + "/opt2_shaped.json");
    CHECK(s.num_settings() == 13);
    CHECK(s.sequence_length == 2);
    CHECK(resolve_scenario(kData + "/opt2_shaped.json") == s);
  }
  SUBCASE("schema errors carry positions") {
    CHECK_THROWS_WITH_AS(load_scenario(kData + "/ternary_correlator.json"),
                         doctest::Contains("correlator requires binary setting"), InputError);
    CHECK_THROWS_WITH_AS(load_scenario(kData + "/unknown_key.json"),
                         doctest::Contains("/objective/0/weight"), InputError);
    CHECK_THROWS_WITH_AS(load_scenario(kData + "/truncated.json"),
                         doctest::Contains("parse error"), InputError);
    CHECK_THROWS_AS(load_scenario(kData + "/missing.json"), InputError);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"name":"x","settings":[{"id":1,"outcomes":2}],"sequence_length":1,"objective":[]})"),
        doctest::Contains("/settings/0/id"), InputError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"name":"x","settings":[{"id":0,"outcomes":2}],"sequence_length":1,
                         "objective":[{"kind":"probability","settings":[0],"outcomes":[2],"coeff":1}]})"),
        InputError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"name":"x","settings":[{"id":0,"outcomes":2}],"sequence_length":1,
                         "objective":[{"kind":"correlator","sequence":[0,0],"coeff":1}]})"),
        InputError);
  }
  SUBCASE("simplified method only for pairwise correlators") {
    CHECK_THROWS_AS(correlation_problem(gyni()), InputError);
    CHECK_THROWS_AS(correlation_problem(yu_oh()), InputError);
  }
}
