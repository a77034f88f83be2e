#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "negwit/cv_states.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

using namespace negwit;

namespace {

const double pi = std::numbers::pi;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PureStateFock displaced(const PureStateFock& psi, Complex alpha, int N) {
  PureStateFock out;
  out.amplitudes.assign(N, Complex(0.0));
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < int(psi.amplitudes.size()); ++l) out.amplitudes[k] += displacement_element(k, l, alpha) * psi.amplitudes[l];
  return out;
}

double fidelity(const std::string& spec, int k) { return displaced_fidelity(named_state(parse_state_spec(spec)), k, 0.0); }

MixedDiagonal phase_averaged(const CvState& s) {
  MixedDiagonal m;
  m.F.F = fock_populations(s);
  return m;
}

// 2 pi int_0^R W(r) r dr by the trapezoid rule
double radial_mass(const MixedDiagonal& s, double R, int steps) {
  double h = R / steps, acc = 0.0;
  for (int i = 0; i <= steps; ++i) {
    double r = i * h;
    double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    acc += w * wigner_radial(s, r) * r;
  }
  return 2.0 * pi * acc * h;
}

}  // namespace

TEST_CASE("displacement matrix elements") {
  CHECK(std::abs(displacement_element(2, 2, 0.0) - 1.0) < 1e-15);
  CHECK(std::abs(displacement_element(2, 3, 0.0)) < 1e-15);
  Complex a(0.7, -0.4);
  double g = std::exp(-std::norm(a) / 2);
  CHECK(std::abs(displacement_element(0, 0, a) - g) < 1e-14);
  CHECK(std::abs(displacement_element(1, 0, a) - a * g) < 1e-14);
  CHECK(std::abs(displacement_element(0, 1, a) + std::conj(a) * g) < 1e-14);
  for (int k = 0; k <= 10; ++k)
    for (int l = 0; l <= 10; ++l)
      CHECK(std::abs(displacement_element(k, l, a) - displacement_element_sum(k, l, a)) < 1e-12);
  SUBCASE("columns are unit vectors") {
    Complex b(1.5, 0.9);
    for (int l = 0; l <= 8; ++l) {
      double s = 0.0;
      for (int k = 0; k < 120; ++k) s += std::norm(displacement_element(k, l, b));
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(default_cutoff(3, Complex(2.0, 0.0)) == 38);
  CHECK(default_cutoff(0, 0.0) == 20);
}

TEST_CASE("state spec parsing") {
  StateSpec c = parse_state_spec("cat2:alpha=1.4+0i");
  CHECK(c.kind == "cat2");
  CHECK(c.alpha == Complex(1.4, 0.0));
  StateSpec l = parse_state_spec("lossy_fock:n=3,eta=0.2");
  CHECK(l.n == 3);
  CHECK(l.eta == 0.2);
  CHECK(parse_state_spec("coherent:alpha=0.5-1.5i").alpha == Complex(0.5, -1.5));
  CHECK_THROWS_AS(parse_state_spec("cat2:beta=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state_spec("cat2:alpha"), std::invalid_argument);
  CHECK_THROWS_AS(named_state(parse_state_spec("squeezed:r=1")), std::invalid_argument);
  CHECK_THROWS_AS(named_state(parse_state_spec("pssvs:r=0")), std::invalid_argument);
  CHECK_THROWS_AS(named_state(parse_state_spec("lossy_fock:n=3,eta=1.2")), std::invalid_argument);
  CHECK_THROWS_AS(named_state(parse_state_spec("cat4:alpha=0")), std::invalid_argument);
}

TEST_CASE("named state fidelities") {
  for (double r : {0.2, 0.5, 1.0}) CHECK(fidelity("pssvs:r=" + num(r), 1) == doctest::Approx(1.0 / std::pow(std::cosh(r), 3)).epsilon(1e-10));
  CHECK(fidelity("pssvs:r=0.5", 1) == doctest::Approx(0.697437).epsilon(1e-6));
  for (double x : {0.5, 1.63, 2.59, 4.0}) {
    std::string a = num(std::sqrt(x));
    CHECK(fidelity("cat2:alpha=" + a, 2) == doctest::Approx(x * x / (2 * std::cosh(x))).epsilon(1e-9));
    CHECK(fidelity("cat4:alpha=" + a, 4) ==
          doctest::Approx(std::pow(x, 4) / 12 / (std::cosh(x) + std::cos(x))).epsilon(1e-9));
  }
  CHECK(fidelity("fock:n=3", 3) == doctest::Approx(1.0));
  CHECK(fidelity("lossy_fock:n=3,eta=0.2", 3) == doctest::Approx(0.512));
  CHECK(fidelity("lossy_fock:n=3,eta=0", 3) == doctest::Approx(1.0));
  CHECK(fidelity("coherent:alpha=1.2", 0) == doctest::Approx(std::exp(-1.44)).epsilon(1e-12));
}

TEST_CASE("named states are normalised") {
  for (std::string s : {"pssvs:r=0.7", "cat2:alpha=1.3", "cat4:alpha=2.1-0.3i", "coherent:alpha=2", "fock:n=5",
                        "lossy_fock:n=4,eta=0.35"}) {
    CvState st = named_state(parse_state_spec(s));
    auto pop = fock_populations(st);
    double total = 0.0;
    for (double p : pop) {
      CHECK(p >= -1e-15);
      CHECK(p <= 1.0 + 1e-12);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    if (auto* pure = std::get_if<PureStateFock>(&st)) CHECK(pure->norm() == doctest::Approx(1.0).epsilon(1e-9));
    // phase averaging keeps the Wigner function normalised
    CHECK(radial_mass(phase_averaged(st), 8.0, 8000) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("radial Wigner function") {
  MixedDiagonal vac{FockDiagonal{{1.0}}};
  MixedDiagonal one{FockDiagonal{{0.0, 1.0}}};
  MixedDiagonal half{FockDiagonal{{0.5, 0.5}}};
  CHECK(wigner_radial(vac, 0.0) == doctest::Approx(2.0 / pi));
  CHECK(wigner_radial(one, 0.0) == doctest::Approx(-2.0 / pi));
  CHECK(std::abs(wigner_radial(half, 0.0)) < 1e-15);
  // vacuum Gaussian (2/pi) exp(-2 r^2)
  CHECK(wigner_radial(vac, 0.8) == doctest::Approx(2.0 / pi * std::exp(-2 * 0.64)).epsilon(1e-12));
  SUBCASE("loss of at least one half leaves no negativity") {
    auto s = std::get<MixedDiagonal>(named_state(parse_state_spec("lossy_fock:n=3,eta=0.500001")));
    for (int i = 0; i <= 600; ++i) CHECK(wigner_radial(s, 0.01 * i) >= -1e-12);
    auto t = std::get<MixedDiagonal>(named_state(parse_state_spec("lossy_fock:n=3,eta=0.45")));
    CHECK(wigner_radial(t, 0.0) < 0.0);
  }
}

TEST_CASE("witness expectation") {
  for (int n = 1; n <= 5; ++n) CHECK(witness_expectation(named_state(parse_state_spec("fock:n=" + num(n))), WitnessSpec::fock(n)) == doctest::Approx(1.0));
  MixedDiagonal rho{FockDiagonal{{1.0 / 9, 4.0 / 9, 4.0 / 9}}};
  CHECK(witness_expectation(rho, WitnessSpec::weighted({1, 1})) == doctest::Approx(8.0 / 9.0));
  Complex a = std::polar(1.0, pi / 4);
  PureStateFock one{{0.0, 1.0}};
  PureStateFock moved = displaced(one, a, 60);
  CHECK(witness_expectation(moved, WitnessSpec::fock(1, a)) == doctest::Approx(1.0).epsilon(1e-10));
  SUBCASE("joint displacement invariance") {
    CvState cat = named_state(parse_state_spec("cat2:alpha=1.2"));
    PureStateFock c = std::get<PureStateFock>(cat);
    Complex b(0.4, -0.3);
    PureStateFock cb = displaced(c, b, 80);
    WitnessSpec w = WitnessSpec::weighted({0.3, 1.0, 0.5});
    WitnessSpec wb = WitnessSpec::weighted({0.3, 1.0, 0.5}, b);
    CHECK(witness_expectation(cb, wb) == doctest::Approx(witness_expectation(cat, w)).epsilon(1e-9));
  }
  CHECK_THROWS_WITH_AS(witness_expectation(PureStateFock{{0.0, 0.9}}, WitnessSpec::fock(1)), doctest::Contains("cutoff insufficient"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(witness_expectation(one, WitnessSpec::fock(1, a)), doctest::Contains("cutoff insufficient"), std::invalid_argument);
}

TEST_CASE("violation and distance") {
  auto d = violation_and_distance(witness_expectation(named_state(parse_state_spec("fock:n=3")), WitnessSpec::fock(3)), 0.427);
  REQUIRE(d.has_value());
  CHECK(*d == doctest::Approx(0.573));
  auto e = violation_and_distance(8.0 / 9.0, 0.875);
  REQUIRE(e.has_value());
  CHECK(*e == doctest::Approx(0.0139).epsilon(1e-2));
  CHECK_FALSE(violation_and_distance(0.3, 0.427).has_value());
}

TEST_CASE("level crossings of the example curves") {
  auto pssvs = level_crossings([](double r) { return 1.0 / std::pow(std::cosh(r), 3); }, 0.5, 0.01, 2.0);
  REQUIRE(pssvs.size() == 1);
  CHECK(pssvs[0] == doctest::Approx(std::acosh(std::cbrt(2.0))).epsilon(1e-9));
  auto via_state = level_crossings([](double r) { return fidelity("pssvs:r=" + num(r), 1); }, 0.5, 0.05, 1.5, 60);
  REQUIRE(via_state.size() == 1);
  CHECK(std::abs(via_state[0] - 0.70) <= 0.02);
  auto cat2 = level_crossings([](double x) { return fidelity("cat2:alpha=" + num(std::sqrt(x)), 2); }, 0.5, 0.1, 5.0, 100);
  REQUIRE(cat2.size() == 2);
  CHECK(std::abs(cat2[0] - 1.63) <= 0.03);
  CHECK(std::abs(cat2[1] - 2.59) <= 0.03);
  auto cat4 = level_crossings([](double x) { return fidelity("cat4:alpha=" + num(std::sqrt(x)), 4); }, 0.441, 0.1, 9.0, 120);
  REQUIRE(cat4.size() == 2);
  CHECK(std::abs(cat4[0] - 2.10) <= 0.05);
  CHECK(std::abs(cat4[1] - 6.53) <= 0.05);
  CHECK(level_crossings([](double x) { return x; }, 5.0, 0.0, 1.0).empty());
  CHECK_THROWS_AS(level_crossings([](double x) { return x; }, 0.0, 1.0, 0.0), std::invalid_argument);
}
