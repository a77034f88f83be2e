#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "negwit/contextuality.hpp"

#include <chrono>
#include <cmath>
#include <random>

using namespace negwit;

namespace {

// contexts {x0,x1}, {x1,x2}, {x2,x0}, k outcomes each
Scenario triangle(int k) {
  Scenario s;
  s.labels = {"x0", "x1", "x2"};
  std::vector<std::string> o;
  for (int i = 0; i < k; ++i) o.push_back(std::to_string(i));
  s.outcomes.assign(3, o);
  s.contexts = {{0, 1}, {1, 2}, {2, 0}};
  return s;
}

// marginals of a global distribution p over decode_global order
EmpiricalModel from_global(const Scenario& sc, const std::vector<double>& p) {
  EmpiricalModel e;
  e.scenario = sc;
  for (size_t c = 0; c < sc.contexts.size(); ++c) {
    std::vector<double> t(sc.local_count(int(c)), 0.0);
    for (std::int64_t g = 0; g < sc.global_count(); ++g) {
      auto glob = sc.decode_global(g);
      std::int64_t idx = 0;
      for (int x : sc.contexts[c]) idx = idx * std::int64_t(sc.outcomes[x].size()) + glob[x];
      t[idx] += p[g];
    }
    e.tables.push_back(t);
  }
  return e;
}

// uniform over unequal outcome pairs on every edge; contextual on the odd cycle
EmpiricalModel anti_box(const Scenario& sc) {
  EmpiricalModel e;
  e.scenario = sc;
  int k = int(sc.outcomes[0].size());
  for (size_t c = 0; c < sc.contexts.size(); ++c) {
    std::vector<double> t(k * k, 0.0);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (a != b) t[a * k + b] = 1.0 / (k * (k - 1));
    e.tables.push_back(t);
  }
  return e;
}

EmpiricalModel mix(const EmpiricalModel& a, const EmpiricalModel& b, double t) {
  EmpiricalModel e = a;
  for (size_t c = 0; c < e.tables.size(); ++c)
    for (size_t s = 0; s < e.tables[c].size(); ++s) e.tables[c][s] = (1 - t) * a.tables[c][s] + t * b.tables[c][s];
  return e;
}

}  // namespace

TEST_CASE("scenarios") {
  Scenario bell = Scenario::bell_222();
  CHECK_NOTHROW(bell.validate());
  CHECK(bell.rows() == 16);
  CHECK(bell.global_count() == 16);
  CHECK(bell.decode_local(0, 2) == std::vector<int>{1, 0});
  Scenario bad = bell;
  bad.contexts.push_back({0});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  Scenario uncovered = bell;
  uncovered.labels.push_back("c");
  uncovered.outcomes.push_back({"0", "1"});
  CHECK_THROWS_AS(uncovered.validate(), std::invalid_argument);
}

TEST_CASE("incidence matrix") {
  auto M = incidence(Scenario::bell_222());
  CHECK(M.rows() == 16);
  CHECK(M.cols() == 16);
  for (int g = 0; g < M.cols(); ++g) CHECK(Eigen::VectorXd(M.col(g)).sum() == 4.0);
  Scenario one;
  one.labels = {"a", "b"};
  one.outcomes = {{"0", "1"}, {"0", "1", "2"}};
  one.contexts = {{0, 1}};
  Eigen::MatrixXd P = Eigen::MatrixXd(incidence(one));
  CHECK(P.rows() == 6);
  CHECK(P.cols() == 6);
  CHECK((P.colwise().sum().array() == 1.0).all());
  CHECK((P.rowwise().sum().array() == 1.0).all());
}

TEST_CASE("example models") {
  for (std::string name : {"chsh", "pr_box", "hardy", "identity_mix"}) {
    EmpiricalModel e = example_model(name);
    CHECK_NOTHROW(e.validate());
    for (const auto& t : e.tables) {
      double s = 0.0;
      for (double v : t) s += v;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(example_model("chsh").tables[0][0] == doctest::Approx((2 + std::sqrt(2.0)) / 8));
  CHECK_THROWS_AS(example_model("magic_square"), std::invalid_argument);
}

TEST_CASE("contextual fractions") {
  SUBCASE("Tsirelson CHSH model") {
    // Bell form of the CHSH inequality: the normalised violation (2 sqrt 2 - 2)/2 equals CF
    NcfResult r = ncf(example_model("chsh"));
    REQUIRE(r.status == SolveStatus::optimal);
    CHECK(r.cf == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-8));
    CHECK(r.ncf + r.cf == doctest::Approx(1.0));
    // the identity/PR decomposition gives a feasible but smaller noncontextual weight
    CHECK(r.ncf >= 1.0 - std::sqrt(2.0) / 2.0 - 1e-9);
  }
  SUBCASE("PR box") {
    NcfResult r = ncf(example_model("pr_box"));
    CHECK(r.cf == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(r.ncf) <= 1e-8);
  }
  SUBCASE("Hardy model") { CHECK(ncf(example_model("hardy")).cf == doctest::Approx(0.4).epsilon(1e-7)); }
  SUBCASE("noncontextual models") {
    CHECK(std::abs(ncf(example_model("identity_mix")).cf) <= 1e-8);
    Scenario sc = Scenario::bell_222();
    std::vector<double> p(16, 0.0);
    p[11] = 1.0;
    CHECK(std::abs(ncf(from_global(sc, p)).cf) <= 1e-8);
  }
  SUBCASE("primal certificate") {
    EmpiricalModel e = example_model("chsh");
    NcfResult r = ncf(e);
    Eigen::VectorXd mb = incidence(e.scenario) * r.b;
    CHECK(((e.flat() - mb).array() >= -1e-8).all());
    CHECK((r.b.array() >= -1e-10).all());
    CHECK(r.b.sum() == doctest::Approx(r.ncf).epsilon(1e-8));
  }
  SUBCASE("incompatible model") {
    EmpiricalModel e = example_model("chsh");
    e.tables[0] = {0.5, 0.5, 0.0, 0.0};
    CHECK_THROWS_AS(ncf(e), std::invalid_argument);
  }
}

TEST_CASE("Bell inequalities from the dual program") {
  for (std::string name : {"chsh", "pr_box", "hardy", "identity_mix"}) {
    EmpiricalModel e = example_model(name);
    BellForm f = bell_inequality(e);
    NcfResult r = ncf(e);
    CHECK(f.bound == 0.0);
    CHECK(f.normalized_violation == doctest::Approx(r.cf).epsilon(1e-6));
    CHECK(normalized_violation(f, e) == doctest::Approx(r.cf).epsilon(1e-6));
    // every global assignment scores at most the bound
    Eigen::VectorXd scores = Eigen::MatrixXd(incidence(e.scenario)).transpose() * f.a;
    CHECK(scores.maxCoeff() <= 1e-8);
  }
  CHECK(bell_inequality(example_model("pr_box")).violation == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::abs(bell_inequality(example_model("identity_mix")).violation) <= 1e-7);
}

TEST_CASE("binning") {
  SUBCASE("identity maps") {
    EmpiricalModel e = example_model("chsh");
    EmpiricalModel b = bin_outcomes(e, std::vector<std::vector<int>>(4, {0, 1}));
    CHECK(b.tables == e.tables);
  }
  SUBCASE("collapse to a point") {
    EmpiricalModel b = bin_outcomes(example_model("pr_box"), std::vector<std::vector<int>>(4, {0, 0}));
    CHECK(std::abs(ncf(b).cf) <= 1e-8);
  }
  SUBCASE("non-total map") {
    CHECK_THROWS_AS(bin_outcomes(example_model("chsh"), std::vector<std::vector<int>>(4, {0})), std::invalid_argument);
  }
  SUBCASE("coarse-graining never increases CF") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto start = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 200; ++trial) {
      int k = 2 + trial % 3;
      Scenario sc = triangle(k);
      std::vector<double> p(sc.global_count());
      double s = 0.0;
      for (auto& v : p) s += (v = u(rng));
      for (auto& v : p) v /= s;
      EmpiricalModel e = mix(from_global(sc, p), anti_box(sc), u(rng));
      std::vector<std::vector<int>> maps(3);
      for (auto& m : maps) {
        m.resize(k);
        m[0] = 0, m[1] = 1;
        for (int o = 2; o < k; ++o) m[o] = int(rng() % 2);
      }
      double before = ncf(e).cf, after = ncf(bin_outcomes(e, maps)).cf;
      CHECK(after <= before + 1e-8);
    }
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 10.0);
  }
}

TEST_CASE("odd cycle box is contextual") {
  // anticorrelation on every edge of a triangle has no global section
  CHECK(ncf(anti_box(triangle(2))).cf == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(ncf(anti_box(triangle(3))).cf < 1e-7);
}

TEST_CASE("JSON round trip") {
  EmpiricalModel e = example_model("hardy");
  nlohmann::json j = to_json(e);
  CHECK(j["contexts"][1] == nlohmann::json::array({"a1", "b2"}));
  CHECK(j["tables"][0]["1,1"] == 0.2);
  EmpiricalModel back = model_from_json(j);
  CHECK(back.tables == e.tables);
  CHECK(back.scenario.contexts == e.scenario.contexts);
  j["contexts"][0][0] = "zz";
  CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);
}
