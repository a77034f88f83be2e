#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "negwit/conic.hpp"
#include "negwit/wigner_witness.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

using namespace negwit;

namespace {

SdpProblem one_by_one() {
  SdpProblem p;
  p.sense = Sense::maximize;
  int b = p.add_block(1);
  p.add_objective(b, 0, 0, 1.0);
  int c = p.add_constraint(1.0);
  p.add_entry(c, b, 0, 0, 1.0);
  return p;
}

int line_count(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("trivial one by one program") {
  SdpSolution s = solve(one_by_one());
  CHECK(s.status == SolveStatus::optimal);
  CHECK(s.primal_value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(verify_strong_duality(s, 1e-6));
}

TEST_CASE("strictly feasible point of the lower program") {
  // F_k = binom(m+1, k+1)/(2^{m+1}-1), Q = diag(1/k!)/(2^{m+1}-1), substituted by hand
  const int m = 3;
  SdpProblem p = build_lower(WitnessSpec::fock(3), m);
  BlockMatrix X(2);
  const double den = std::pow(2.0, m + 1) - 1.0;
  X[0] = Eigen::MatrixXd::Zero(m + 1, m + 1);
  X[1] = Eigen::MatrixXd::Zero(m + 1, m + 1);
  double f = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) f *= k;
    X[0](k, k) = 1.0 / f / den;
    X[1](k, k) = binomial_double(m + 1, k + 1) / den;
  }
  for (int i = 0; i < p.num_constraints(); ++i) CHECK(std::abs(inner(p.constraints[i], X) - p.rhs[i]) <= 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X[0]);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("second Fock witness at level two") {
  SdpSolution s = solve(build_lower(WitnessSpec::weighted({0.0, 1.0}), 2));
  REQUIRE(s.status == SolveStatus::optimal);
  CHECK(s.primal_value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("strong duality checks") {
  SUBCASE("optimal solutions") {
    for (int n = 1; n <= 3; ++n) {
      SdpSolution s = solve(build_lower(WitnessSpec::fock(n), n + 2), 1e-8, Precision::binary64);
      REQUIRE(s.status == SolveStatus::optimal);
      CHECK(verify_strong_duality(s, 1e-6));
    }
  }
  SUBCASE("primal and dual programs") {
    WitnessSpec spec = WitnessSpec::fock(3);
    SdpSolution p = solve(build_lower(spec, 5));
    SdpSolution d = solve(build_lower_dual(spec, 5));
    REQUIRE(p.status == SolveStatus::optimal);
    REQUIRE(d.status == SolveStatus::optimal);
    CHECK(std::abs(p.primal_value - d.primal_value) <= 1e-6);
  }
  SUBCASE("hand-built gap") {
    SdpSolution s;
    s.status = SolveStatus::optimal;
    s.primal_value = 1.0;
    s.dual_value = 1.1;
    CHECK_FALSE(verify_strong_duality(s, 1e-6));
  }
}

TEST_CASE("KKT residuals of optimal solutions") {
  for (auto p : {build_lower(WitnessSpec::fock(2), 4), build_upper(WitnessSpec::fock(1), 3), one_by_one()}) {
    SdpSolution s = solve(p);
    REQUIRE(s.status == SolveStatus::optimal);
    KktResiduals r = kkt_residuals(p, s);
    CHECK(r.primal <= 1e-7);
    CHECK(r.dual <= 1e-7);
    CHECK(r.complementarity <= 1e-7);
    CHECK(r.min_eigenvalue_x >= -1e-7);
    CHECK(r.min_eigenvalue_z >= -1e-7);
  }
}

TEST_CASE("infeasible program is reported") {
  SdpProblem p = one_by_one();
  int c = p.add_constraint(2.0);
  p.add_entry(c, 0, 0, 0, 1.0);
  SdpSolution s = solve(p);
  CHECK(s.status != SolveStatus::optimal);
}

TEST_CASE("extended precision agrees with double") {
  SdpProblem p = build_upper(WitnessSpec::fock(2), 4);
  SdpSolution a = solve(p, 1e-8, Precision::binary64);
  SdpSolution b = solve(p, 1e-10, Precision::extended);
  REQUIRE(a.status == SolveStatus::optimal);
  REQUIRE(b.status == SolveStatus::optimal);
  CHECK(b.precision == Precision::extended);
  CHECK(a.primal_value == doctest::Approx(b.primal_value).epsilon(1e-7));
}

TEST_CASE("SDPA export and parse") {
  SUBCASE("one constraint") {
    // header (4 lines) plus the single constraint entry
    SdpProblem p = one_by_one();
    p.objective.clear();
    p.canonicalize();
    std::string text = export_sdpa(p);
    CHECK(line_count(text) == 5);
    CHECK(parse_sdpa(text) == p);
    p = one_by_one();
    p.canonicalize();
    text = export_sdpa(p);
    CHECK(line_count(text) == 6);
    CHECK(parse_sdpa(text) == p);
  }
  SUBCASE("round trip preserves the optimum") {
    SdpProblem p = build_upper(WitnessSpec::fock(1), 3);
    SdpProblem q = parse_sdpa(export_sdpa(p));
    CHECK(q == p);
    SdpSolution a = solve(p), b = solve(q);
    REQUIRE(a.status == SolveStatus::optimal);
    CHECK(std::abs(a.primal_value - b.primal_value) <= 1e-8);
  }
  SUBCASE("round trip on diagonal blocks and both senses") {
    SdpProblem p = build_lower_dual(WitnessSpec::fock(2), 3);
    CHECK(parse_sdpa(export_sdpa(p)) == p);
  }
  SUBCASE("no constraints") {
    SdpProblem p;
    p.add_block(1);
    CHECK_THROWS_WITH_AS(export_sdpa(p), doctest::Contains("at least one constraint"), std::invalid_argument);
  }
}

TEST_CASE("basis rescaling") {
  SUBCASE("unit scales") {
    SdpProblem p = build_lower(WitnessSpec::fock(2), 4);
    CHECK(rescale_basis(p, std::vector<double>(p.total_dim(), 1.0)) == p);
  }
  SUBCASE("optimum unchanged") {
    SdpProblem p = build_lower(WitnessSpec::fock(2), 6);
    SdpProblem q = rescale_basis(p, factorial_scales(p, 6));
    SdpSolution a = solve(p, 1e-10, Precision::extended), b = solve(q, 1e-10, Precision::extended);
    REQUIRE(a.status == SolveStatus::optimal);
    REQUIRE(b.status == SolveStatus::optimal);
    CHECK(std::abs(a.primal_value - b.primal_value) <= 1e-8);
    SdpSolution back = unscale_solution(b, p, factorial_scales(p, 6));
    for (int i = 0; i < p.num_constraints(); ++i) CHECK(std::abs(inner(p.constraints[i], back.X) - p.rhs[i]) <= 1e-7);
  }
  SUBCASE("factorial scales rescue the level twelve lower program") {
    SdpProblem p = build_lower(WitnessSpec::fock(3), 12);
    SdpSolution raw = solve(p, 1e-8, Precision::binary64);
    SdpSolution scaled = solve(rescale_basis(p, factorial_scales(p, 12)), 1e-8, Precision::binary64);
    CHECK(raw.status == SolveStatus::numerical_limit);
    REQUIRE(scaled.status == SolveStatus::optimal);
    CHECK(scaled.primal_value == doctest::Approx(0.37728).epsilon(1e-4));
  }
  SUBCASE("level twelve upper program needs extended precision") {
    SdpProblem p = build_upper(WitnessSpec::fock(3), 12);
    SdpSolution s = solve(rescale_basis(p, factorial_scales(p, 12)), 1e-8, Precision::extended);
    REQUIRE(s.status == SolveStatus::optimal);
    CHECK(s.primal_value == doctest::Approx(0.46916).epsilon(1e-4));
  }
  SUBCASE("bad scales") {
    SdpProblem p = one_by_one();
    CHECK_THROWS_AS(rescale_basis(p, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(rescale_basis(p, {1.0, 2.0}), std::invalid_argument);
  }
}

TEST_CASE("linear programs") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6: optimum at (8/5, 6/5)
  Eigen::SparseMatrix<double> A(2, 2);
  A.insert(0, 0) = 1;
  A.insert(0, 1) = 2;
  A.insert(1, 0) = 3;
  A.insert(1, 1) = 1;
  LpResult r = solve_lp(A, Eigen::Vector2d(4, 6), Eigen::Vector2d(1, 1));
  REQUIRE(r.status == SolveStatus::optimal);
  CHECK(r.value == doctest::Approx(2.8).epsilon(1e-8));
  CHECK(r.x(0) == doctest::Approx(1.6).epsilon(1e-7));
  CHECK(r.x(1) == doctest::Approx(1.2).epsilon(1e-7));
  // dual optimum b.y equals the primal optimum
  CHECK(4 * r.dual(0) + 6 * r.dual(1) == doctest::Approx(2.8).epsilon(1e-7));
  CHECK(r.dual(0) == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(r.dual(1) == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("precision names") {
  CHECK(parse_precision("double") == Precision::binary64);
  CHECK(parse_precision("extended") == Precision::extended);
  CHECK_THROWS_AS(parse_precision("single"), std::invalid_argument);
  CHECK(to_string(SolveStatus::optimal) == "optimal");
}
