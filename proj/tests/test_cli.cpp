#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
using negwit::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch_dir() {
  auto p = std::filesystem::temp_directory_path() / "negwit_cli_test";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(negwit::cli::format_number(0.0) == "0");
  CHECK(negwit::cli::format_number(-0.0) == "0");
  CHECK(negwit::cli::format_number(0.5) == "0.5");
  CHECK(negwit::cli::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(negwit::cli::format_number(1e-20) == "1e-20");
}

TEST_CASE("threshold") {
  auto r = call({"threshold", "--n", "1", "--m-max", "2"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 3);
  CHECK(l[0] == "m,lower,upper,lower_status,upper_status");
  CHECK(l[2].rfind("2,", 0) == 0);
  CHECK(l[2].find(",0.5,") != std::string::npos);
  CHECK(l[2].find("optimal,optimal") != std::string::npos);

  auto w = call({"threshold", "--weights", "1,1", "--m-max", "4", "--m-min", "3"});
  REQUIRE(w.code == 0);
  CHECK(lines(w.out).size() == 3);

  auto bad = call({"threshold", "--n", "1", "--weights", "1,1", "--m-max", "2"});
  CHECK(bad.code == 1);
  CHECK(call({"threshold", "--n", "0", "--m-max", "2"}).code == 1);
  CHECK(call({"threshold", "--n", "1", "--m-max", "-2"}).code == 1);
  CHECK(call({"--precision", "octuple", "threshold", "--n", "1", "--m-max", "2"}).code == 1);
}

TEST_CASE("threshold solver failure") {
  auto r = call({"--tol", "1e-30", "--precision", "double", "threshold", "--weights", "1,1", "--m-max", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") == 0);
}

TEST_CASE("SDPA export") {
  auto base = scratch_dir() / "prog";
  auto r = call({"threshold", "--n", "2", "--m-max", "3", "--emit-sdpa", base.string()});
  REQUIRE(r.code == 0);
  std::string lower = slurp(base.string() + ".lower"), upper = slurp(base.string() + ".upper");
  CHECK_FALSE(lower.empty());
  CHECK_FALSE(upper.empty());
  CHECK(lower != upper);
}

TEST_CASE("witness") {
  auto r = call({"witness", "--state", "fock:n=3", "--n", "3", "--threshold-upper", "0.427"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["certified"] == true);
  CHECK(j["expectation"].get<double>() == doctest::Approx(1.0));
  CHECK(j["delta"].get<double>() == doctest::Approx(0.573));
  CHECK(j["distance_lower_bound"].get<double>() == doctest::Approx(0.573));

  auto v = call({"witness", "--state", "fock:n=0", "--n", "1", "--threshold-upper", "0.5"});
  REQUIRE(v.code == 0);
  json k = json::parse(v.out);
  CHECK(k["certified"] == false);
  CHECK(k["delta"].is_null());
  CHECK(k["distance_lower_bound"] == 0);

  CHECK(call({"witness", "--state", "unicorn:n=1", "--n", "1", "--threshold-upper", "0.5"}).code == 1);
  CHECK(call({"witness", "--state", "fock:n=1", "--n", "1"}).code == 1);
}

TEST_CASE("contextual fraction") {
  auto r = call({"cf", "--example", "pr_box"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["cf"].get<double>() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(j["bell_form"]["coefficients"].size() == 16);
  CHECK(j["normalized_violation"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));

  auto c = call({"cf", "--example", "chsh"});
  CHECK(json::parse(c.out)["cf"].get<double>() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-7));

  auto path = scratch_dir() / "model.json";
  {
    std::ofstream f(path);
    f << R"({"labels":["a","b"],"outcomes":{"a":["0","1"],"b":["0","1"]},"contexts":[["a","b"]],
             "tables":[{"0,0":0.5,"1,1":0.5}]})";
  }
  auto m = call({"cf", "--model-file", path.string()});
  REQUIRE(m.code == 0);
  CHECK(json::parse(m.out)["cf"].get<double>() < 1e-8);

  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK(call({"cf", "--model-file", path.string()}).code == 1);
  CHECK(call({"cf", "--model-file", (scratch_dir() / "missing.json").string()}).code == 1);
  CHECK(call({"cf"}).code == 1);
  CHECK(call({"cf", "--example", "magic"}).code == 1);
}

TEST_CASE("torpedo") {
  auto c = call({"torpedo", "--d-in", "3", "--mode", "classical"});
  REQUIRE(c.code == 0);
  json j = json::parse(c.out);
  CHECK(j["exact"] == "11/12");
  CHECK(j["value"].get<double>() == doctest::Approx(11.0 / 12.0));
  CHECK(j["strategy"]["d_in"] == 3);

  auto m = call({"torpedo", "--d-in", "2", "--d-msg", "3", "--mode", "classical"});
  CHECK(json::parse(m.out)["exact"] == "5/6");

  auto q = call({"torpedo", "--d-in", "3", "--mode", "quantum"});
  CHECK(json::parse(q.out)["value"] == 1);

  auto n = call({"torpedo", "--d-in", "2", "--mode", "ncf"});
  REQUIRE(n.code == 0);
  json k = json::parse(n.out);
  CHECK(k["ncf"].get<double>() == doctest::Approx(0.845299461).epsilon(1e-7));
  CHECK(k["nu"] == 0.25);
  CHECK(k["bound_holds"] == true);
  CHECK(k["columns"] == 400);

  CHECK(call({"torpedo", "--d-in", "5", "--mode", "classical"}).code == 1);
  CHECK(call({"torpedo", "--d-in", "2", "--d-msg", "3", "--mode", "quantum"}).code == 1);
  CHECK(call({"torpedo", "--d-in", "4", "--mode", "quantum"}).code == 1);
  CHECK(call({"torpedo", "--d-in", "2", "--mode", "telepathy"}).code == 1);
}

TEST_CASE("plot data") {
  auto p = call({"plotdata", "--figure", "cat2", "--points", "5"});
  REQUIRE(p.code == 0);
  auto l = lines(p.out);
  REQUIRE(l.size() == 6);
  CHECK(l[0] == "alpha_sq,fidelity,threshold,violation");
  CHECK(l[1].rfind("0.01,", 0) == 0);
  auto lossy = lines(call({"plotdata", "--figure", "lossy3", "--points", "3"}).out);
  CHECK(lossy[0] == "eta,fidelity,threshold,violation,wigner_min");
  CHECK(lossy.size() == 4);
  auto t = lines(call({"plotdata", "--figure", "threshold", "--n", "1", "--m-max", "2"}).out);
  CHECK(t.size() == 3);
  CHECK(call({"plotdata", "--figure", "mandelbrot"}).code == 1);
}

TEST_CASE("output file and determinism") {
  auto path = scratch_dir() / "out.csv";
  std::filesystem::remove(path);
  auto r = call({"--out", path.string(), "plotdata", "--figure", "pssvs", "--points", "7"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::string first = slurp(path);
  CHECK(lines(first).size() == 8);
  auto again = call({"plotdata", "--figure", "pssvs", "--points", "7"});
  CHECK(again.out == first);
  auto a = call({"threshold", "--n", "3", "--m-max", "5"});
  auto b = call({"threshold", "--n", "3", "--m-max", "5"});
  CHECK(a.out == b.out);
  auto ta = call({"torpedo", "--d-in", "2", "--mode", "classical"});
  CHECK(ta.out == call({"torpedo", "--d-in", "2", "--mode", "classical"}).out);
  CHECK(call({"--out", (scratch_dir() / "no" / "such" / "dir.csv").string(), "cf", "--example", "chsh"}).code == 1);
}

TEST_CASE("help and usage") {
  auto h = call({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("threshold") != std::string::npos);
  CHECK(call({}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
}
