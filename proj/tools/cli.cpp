#include "cli.hpp"

#include "negwit/contextuality.hpp"
#include "negwit/cv_states.hpp"
#include "negwit/torpedo.hpp"
#include "negwit/wigner_witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace negwit::cli {

namespace {

using nlohmann::json;

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string out_path;
  std::string precision;
  double tol = 1e-8;
};

json number(double v) { return json::parse(format_number(v)); }

std::optional<Precision> chosen_precision(const RunConfig& cfg) {
  if (!cfg.precision.empty()) return parse_precision(cfg.precision);
  const char* env = std::getenv("NEGWIT_PRECISION");
  if (env && *env) return precision_from_env();
  return std::nullopt;
}

std::complex<double> parse_alpha(const std::string& text) {
  if (text.empty()) return {};
  return parse_state_spec("coherent:alpha=" + text).alpha;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad weight '" + item + "'");
    w.push_back(v);
  }
  if (w.empty()) throw std::invalid_argument("empty weight list");
  return w;
}

WitnessSpec witness_from(int n, const std::string& weights, const std::string& alpha) {
  std::complex<double> a = parse_alpha(alpha);
  if (!weights.empty()) return WitnessSpec::weighted(parse_weights(weights), a);
  if (n < 1) throw std::invalid_argument("give --n or --weights");
  return WitnessSpec::fock(n, a);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path);
  if (!f) throw std::invalid_argument("cannot open " + cfg.out_path);
  f << text;
}

std::string threshold_csv(const std::vector<ThresholdBounds>& rows) {
  std::ostringstream os;
  os << "m,lower,upper,lower_status,upper_status\n";
  for (const auto& r : rows)
    os << r.m << ',' << format_number(r.lower) << ',' << format_number(r.upper) << ',' << to_string(r.lower_status) << ','
       << to_string(r.upper_status) << '\n';
  return os.str();
}

std::vector<ThresholdBounds> thresholds(const WitnessSpec& spec, int m_min, int m_max, const RunConfig& cfg) {
  ThresholdOptions opt;
  opt.tol = cfg.tol;
  opt.precision = chosen_precision(cfg);
  opt.m_min = m_min;
  auto rows = threshold_bounds(spec, m_max, opt);
  bool any = std::any_of(rows.begin(), rows.end(), [](const ThresholdBounds& r) {
    return r.lower_status == SolveStatus::optimal || r.upper_status == SolveStatus::optimal;
  });
  if (!any) throw NumericalFailure("solver failed at every level");
  return rows;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  f << text;
}

json bell_json(const BellForm& form) {
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < form.a.size(); ++i) coeffs.push_back(number(form.a(i)));
  return json{{"coefficients", coeffs}, {"bound", number(form.bound)}, {"norm", number(form.norm)}};
}

std::string curve(const std::string& header, int points, double lo, double hi,
                  const std::function<std::vector<double>(double)>& row) {
  std::ostringstream os;
  os << header << '\n';
  for (int i = 0; i < points; ++i) {
    double t = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
    os << format_number(t);
    for (double v : row(t)) os << ',' << format_number(v);
    os << '\n';
  }
  return os.str();
}

double fidelity_of(const std::string& spec, int k) { return displaced_fidelity(named_state(parse_state_spec(spec)), k, 0.0); }

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wigner negativity witnesses, contextual fractions and the Torpedo Game"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--out", cfg.out_path, "output file (default stdout)");
  app.add_option("--precision", cfg.precision, "double or extended (overrides NEGWIT_PRECISION)");
  app.add_option("--tol", cfg.tol, "solver tolerance")->check(CLI::PositiveNumber);

  int n = 0, m_max = 10, m_min = -1;
  std::string weights, alpha, sdpa;
  auto* threshold = app.add_subcommand("threshold", "bounds on the witness threshold per level");
  auto* tn = threshold->add_option("--n", n, "one-hot Fock witness");
  threshold->add_option("--weights", weights, "comma-separated a_1..a_n")->excludes(tn);
  threshold->add_option("--alpha", alpha, "displacement, e.g. 0.5+0.1i");
  threshold->add_option("--m-max", m_max, "last level")->check(CLI::PositiveNumber);
  threshold->add_option("--m-min", m_min, "first level");
  threshold->add_option("--emit-sdpa", sdpa, "write the last-level programs to PATH.lower and PATH.upper");

  std::string state;
  double threshold_upper = 0.0;
  auto* witness = app.add_subcommand("witness", "witness expectation and distance bound");
  witness->add_option("--state", state, "e.g. cat2:alpha=1.4+0i")->required();
  auto* wn = witness->add_option("--n", n, "one-hot Fock witness");
  witness->add_option("--weights", weights, "comma-separated a_1..a_n")->excludes(wn);
  witness->add_option("--alpha", alpha, "displacement");
  witness->add_option("--threshold-upper", threshold_upper, "upper bound on the threshold")->required();

  std::string model_file, example;
  auto* cf = app.add_subcommand("cf", "contextual fraction of an empirical model");
  auto* mf = cf->add_option("--model-file", model_file, "model JSON");
  cf->add_option("--example", example, "chsh, pr_box, hardy or identity_mix")->excludes(mf);

  int d_in = 2, d_msg = 0;
  std::string mode = "classical";
  auto* torpedo = app.add_subcommand("torpedo", "Torpedo Game values");
  torpedo->add_option("--d-in", d_in, "input dimension")->check(CLI::PositiveNumber);
  torpedo->add_option("--d-msg", d_msg, "message dimension (default d-in)");
  torpedo->add_option("--mode", mode, "classical, quantum or ncf")->check(CLI::IsMember({"classical", "quantum", "ncf"}));

  std::string figure;
  int points = 201;
  auto* plot = app.add_subcommand("plotdata", "CSV curves for the example figures");
  plot->add_option("--figure", figure, "pssvs, cat2, cat4, lossy3 or threshold")
      ->required()
      ->check(CLI::IsMember({"pssvs", "cat2", "cat4", "lossy3", "threshold"}));
  plot->add_option("--points", points, "grid size")->check(CLI::PositiveNumber);
  plot->add_option("--n", n, "witness for the threshold figure");
  plot->add_option("--m-max", m_max, "last level for the threshold figure");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (*threshold) {
      WitnessSpec spec = witness_from(n, weights, alpha);
      if (!sdpa.empty()) {
        write_file(sdpa + ".lower", export_sdpa(build_lower_laguerre(spec, m_max)));
        write_file(sdpa + ".upper", export_sdpa(build_upper_laguerre(spec, m_max)));
      }
      emit(cfg, threshold_csv(thresholds(spec, m_min, m_max, cfg)), out);
    } else if (*witness) {
      WitnessSpec spec = witness_from(n, weights, alpha);
      double e = witness_expectation(named_state(parse_state_spec(state)), spec);
      auto delta = violation_and_distance(e, threshold_upper);
      json j{{"expectation", number(e)},
             {"delta", delta ? number(*delta) : json(nullptr)},
             {"distance_lower_bound", number(delta.value_or(0.0))},
             {"certified", delta.has_value()}};
      emit(cfg, j.dump(2) + "\n", out);
    } else if (*cf) {
      EmpiricalModel model;
      if (!model_file.empty()) {
        std::ifstream f(model_file);
        if (!f) throw std::invalid_argument("cannot open " + model_file);
        model = model_from_json(json::parse(f));
      } else if (!example.empty()) {
        model = example_model(example);
      } else {
        throw std::invalid_argument("give --model-file or --example");
      }
      NcfResult r = ncf(model);
      if (r.status != SolveStatus::optimal) throw NumericalFailure("contextual fraction LP: " + to_string(r.status));
      BellForm form = bell_inequality(model);
      json j{{"ncf", number(r.ncf)},
             {"cf", number(r.cf)},
             {"bell_form", bell_json(form)},
             {"violation", number(form.violation)},
             {"normalized_violation", number(form.normalized_violation)}};
      emit(cfg, j.dump(2) + "\n", out);
    } else if (*torpedo) {
      if (d_msg == 0) d_msg = d_in;
      json j{{"d_in", d_in}, {"d_msg", d_msg}, {"mode", mode}};
      if (mode == "classical") {
        ClassicalOptimum opt = classical_optimum(d_in, d_msg);
        j["value"] = number(opt.value.convert_to<double>());
        j["exact"] = to_string(opt.value);
        j["strategy"] = to_json(opt.strategy);
      } else {
        if (d_msg != d_in) throw std::invalid_argument("quantum strategies need d-msg = d-in");
        QuantumStrategy s = canonical_quantum_strategy(d_in);
        double v = quantum_value(s);
        j["value"] = number(v);
        if (mode == "ncf") {
          Behaviour e = behaviour(s);
          BoundedMemoryNcf r = bounded_memory_ncf(e);
          if (r.status != SolveStatus::optimal) throw NumericalFailure("bounded-memory NCF: " + to_string(r.status));
          double nu = classical_gap(d_in).convert_to<double>();
          j["ncf"] = number(r.ncf);
          j["epsilon"] = number(1.0 - v);
          j["nu"] = number(nu);
          j["bound_holds"] = 1.0 - v >= r.ncf * nu - 1e-7;
          j["columns"] = r.columns;
        }
      }
      emit(cfg, j.dump(2) + "\n", out);
    } else if (*plot) {
      std::string text;
      if (figure == "pssvs") {
        text = curve("r,fidelity,threshold,violation", points, 0.02, 1.5, [](double r) {
          double f = fidelity_of("pssvs:r=" + format_number(r), 1);
          return std::vector<double>{f, 0.5, f - 0.5};
        });
      } else if (figure == "cat2" || figure == "cat4") {
        int k = figure == "cat2" ? 2 : 4;
        double level = k == 2 ? 0.5 : 0.441;
        text = curve("alpha_sq,fidelity,threshold,violation", points, 0.01, k == 2 ? 5.0 : 8.0, [&](double x) {
          double f = fidelity_of(figure + ":alpha=" + format_number(std::sqrt(x)), k);
          return std::vector<double>{f, level, f - level};
        });
      } else if (figure == "lossy3") {
        text = curve("eta,fidelity,threshold,violation,wigner_min", points, 0.0, 1.0, [](double eta) {
          CvState s = named_state(parse_state_spec("lossy_fock:n=3,eta=" + format_number(eta)));
          double f = displaced_fidelity(s, 3, 0.0);
          double w = wigner_radial(std::get<MixedDiagonal>(s), 0.0);
          for (int i = 1; i <= 600; ++i) w = std::min(w, wigner_radial(std::get<MixedDiagonal>(s), 0.01 * i));
          return std::vector<double>{f, 0.427, f - 0.427, w};
        });
      } else {
        text = threshold_csv(thresholds(WitnessSpec::fock(n > 0 ? n : 3), -1, m_max, cfg));
      }
      emit(cfg, text, out);
    }
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace negwit::cli
