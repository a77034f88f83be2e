#include "negwit/cv_states.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace negwit {

double PureStateFock::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s;
}

namespace {

// L_n^{(a)}(x)
double laguerre_assoc(int n, int a, double x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + a - x;
  for (int j = 1; j < n; ++j) {
    double next = ((2 * j + 1 + a - x) * cur - (j + a) * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

Complex displacement_element(int k, int l, Complex alpha) {
  if (k < 0 || l < 0) throw std::invalid_argument("Fock indices must be nonnegative");
  if (k < l) return std::conj(displacement_element(l, k, -alpha));
  double x = std::norm(alpha);
  if (x == 0.0) return k == l ? 1.0 : 0.0;
  double logmag = 0.5 * (std::lgamma(l + 1.0) - std::lgamma(k + 1.0)) + (k - l) * 0.5 * std::log(x) - x / 2;
  return std::polar(std::exp(logmag), (k - l) * std::arg(alpha)) * laguerre_assoc(l, k - l, x);
}

Complex displacement_element_sum(int k, int l, Complex alpha) {
  if (k < 0 || l < 0) throw std::invalid_argument("Fock indices must be nonnegative");
  Complex s = 0.0;
  double lf = 0.5 * (std::lgamma(k + 1.0) + std::lgamma(l + 1.0));
  for (int p = 0; p <= std::min(k, l); ++p) {
    double c = std::exp(lf - std::lgamma(p + 1.0) - std::lgamma(k - p + 1.0) - std::lgamma(l - p + 1.0));
    Complex t = c * std::pow(alpha, k - p) * std::pow(std::conj(alpha), l - p);
    s += (l - p) % 2 ? -t : t;
  }
  return std::exp(-std::norm(alpha) / 2) * s;
}

int default_cutoff(int n_max, Complex alpha) {
  return std::max(20, 4 * (n_max + int(std::ceil(std::norm(alpha)))) + 10);
}

namespace {

Complex parse_complex(const std::string& s) {
  // a, a+bi, a-bi, bi
  std::string t = s;
  if (t.empty()) throw std::invalid_argument("empty complex number");
  if (t.back() != 'i' && t.back() != 'j') return {std::stod(t), 0.0};
  t.pop_back();
  size_t split = std::string::npos;
  for (size_t i = 1; i < t.size(); ++i)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') split = i;
  if (split == std::string::npos) {
    if (t.empty() || t == "+") return {0.0, 1.0};
    if (t == "-") return {0.0, -1.0};
    return {0.0, std::stod(t)};
  }
  std::string re = t.substr(0, split), im = t.substr(split);
  double iv = im == "+" ? 1.0 : im == "-" ? -1.0 : std::stod(im);
  return {std::stod(re), iv};
}

std::vector<Complex> coherent_amplitudes(Complex alpha, int count) {
  std::vector<Complex> a(count);
  double x = std::norm(alpha);
  for (int k = 0; k < count; ++k) {
    if (x == 0.0) {
      a[k] = k == 0 ? 1.0 : 0.0;
      continue;
    }
    double logmag = k * 0.5 * std::log(x) - 0.5 * std::lgamma(k + 1.0) - x / 2;
    a[k] = std::polar(std::exp(logmag), k * std::arg(alpha));
  }
  return a;
}

// smallest cutoff >= start whose coherent tail mass is below 1e-15
int coherent_cutoff(Complex alpha, int start) {
  double x = std::norm(alpha);
  int N = start;
  while (N < 100000) {
    double logterm = N * std::log(std::max(x, 1e-300)) - std::lgamma(N + 1.0) - x;
    if (x == 0.0 || (N > x && logterm < std::log(1e-17))) break;
    N += 16;
  }
  return N;
}

}  // namespace

StateSpec parse_state_spec(const std::string& text) {
  StateSpec s;
  auto colon = text.find(':');
  s.kind = text.substr(0, colon);
  if (colon == std::string::npos) return s;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("state parameter '" + item + "' lacks '='");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    auto number = [&](auto parse) {
      try {
        return parse(val);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("bad value for state parameter '" + key + "'");
      }
    };
    if (key == "r")
      s.r = number([](const std::string& v) { return std::stod(v); });
    else if (key == "alpha")
      s.alpha = number(parse_complex);
    else if (key == "n")
      s.n = number([](const std::string& v) { return std::stoi(v); });
    else if (key == "eta")
      s.eta = number([](const std::string& v) { return std::stod(v); });
    else
      throw std::invalid_argument("unknown state parameter '" + key + "'");
  }
  return s;
}

CvState named_state(const StateSpec& spec) {
  const std::string& k = spec.kind;
  if (k == "fock") {
    if (spec.n < 0) throw std::invalid_argument("Fock index must be nonnegative");
    MixedDiagonal m;
    m.F.F.assign(spec.n + 1, 0.0);
    m.F.F[spec.n] = 1.0;
    return m;
  }
  if (k == "lossy_fock") {
    if (spec.n < 0) throw std::invalid_argument("Fock index must be nonnegative");
    if (!(spec.eta >= 0.0 && spec.eta <= 1.0)) throw std::invalid_argument("loss must lie in [0,1]");
    MixedDiagonal m;
    for (int j = 0; j <= spec.n; ++j)
      m.F.F.push_back(binomial_double(spec.n, j) * std::pow(spec.eta, spec.n - j) * std::pow(1.0 - spec.eta, j));
    return m;
  }
  if (k == "coherent" || k == "cat2" || k == "cat4") {
    Complex a = spec.alpha;
    int N = coherent_cutoff(a, default_cutoff(0, a));
    PureStateFock p;
    p.amplitudes = coherent_amplitudes(a, N);
    if (k == "coherent") return p;
    double x = std::norm(a);
    if (x == 0.0) throw std::invalid_argument("cat states need alpha != 0");
    std::vector<Complex> rot = k == "cat2" ? std::vector<Complex>{1.0, -1.0}
                                           : std::vector<Complex>{1.0, -1.0, {0.0, 1.0}, {0.0, -1.0}};
    double norm = k == "cat2" ? std::sqrt(2.0 * (1.0 + std::exp(-2.0 * x)))
                              : 2.0 * std::sqrt(1.0 + 2.0 * std::exp(-x) * std::cos(x) + std::exp(-2.0 * x));
    for (int j = 0; j < N; ++j) {
      Complex s = 0.0;
      // |u alpha> has amplitudes u^j <j|alpha>
      for (Complex u : rot) s += std::pow(u, j);
      p.amplitudes[j] *= s / norm;
    }
    return p;
  }
  if (k == "pssvs") {
    double r = spec.r;
    if (r == 0.0 || !std::isfinite(r)) throw std::invalid_argument("pssvs needs r != 0");
    double t = std::tanh(r), s = std::sinh(r), c = std::cosh(r);
    PureStateFock p;
    // squeezed vacuum c_{2m} = (-tanh r)^m sqrt((2m)!)/(2^m m!) / sqrt(cosh r), then a|2m> = sqrt(2m)|2m-1>
    double c2m = 1.0 / std::sqrt(c);
    double tail = 1.0;
    int N = default_cutoff(1, 0.0);
    for (int m = 1; m < 200000; ++m) {
      c2m *= -t * std::sqrt((2.0 * m) * (2.0 * m - 1.0)) / (2.0 * m);
      Complex amp = c2m * std::sqrt(2.0 * m) / s;
      p.amplitudes.resize(2 * m + 1, 0.0);
      p.amplitudes[2 * m - 1] = amp;
      tail -= std::norm(amp);
      if (2 * m >= N && tail < 1e-14) break;
    }
    return p;
  }
  throw std::invalid_argument("unknown state '" + k + "'");
}

double displaced_fidelity(const CvState& state, int k, Complex alpha) {
  if (k < 0) throw std::invalid_argument("Fock index must be nonnegative");
  if (const auto* p = std::get_if<PureStateFock>(&state)) {
    Complex s = 0.0;
    for (size_t l = 0; l < p->amplitudes.size(); ++l)
      if (p->amplitudes[l] != 0.0) s += std::conj(displacement_element(int(l), k, alpha)) * p->amplitudes[l];
    return std::norm(s);
  }
  const auto& F = std::get<MixedDiagonal>(state).F.F;
  double s = 0.0;
  for (size_t l = 0; l < F.size(); ++l)
    if (F[l] != 0.0) s += F[l] * std::norm(displacement_element(int(l), k, alpha));
  return s;
}

std::vector<double> fock_populations(const CvState& state) {
  if (const auto* p = std::get_if<PureStateFock>(&state)) {
    std::vector<double> out;
    for (const auto& a : p->amplitudes) out.push_back(std::norm(a));
    return out;
  }
  return std::get<MixedDiagonal>(state).F.F;
}

double wigner_radial(const MixedDiagonal& state, double r) {
  double x = 4.0 * r * r, s = 0.0;
  for (size_t k = 0; k < state.F.F.size(); ++k)
    if (state.F.F[k] != 0.0) s += state.F.F[k] * laguerre_fn(int(k), x);
  return 2.0 / std::numbers::pi * s;
}

double witness_expectation(const CvState& state, const WitnessSpec& spec) {
  spec.validate();
  auto pop = fock_populations(state);
  double mass = 0.0;
  for (double v : pop) mass += v;
  if (std::abs(1.0 - mass) > 1e-9) throw std::invalid_argument("cutoff insufficient: state norm deficit above 1e-9");
  int N = int(pop.size());
  double e = 0.0;
  for (int k = 1; k <= spec.n; ++k) {
    double w = spec.weight(k);
    if (w == 0.0) continue;
    if (spec.alpha != 0.0) {
      double covered = 0.0;
      for (int l = 0; l < N; ++l) covered += std::norm(displacement_element(l, k, spec.alpha));
      // the displaced Fock state must also fit inside the state's support
      if (1.0 - covered > 1e-9 && std::holds_alternative<PureStateFock>(state))
        throw std::invalid_argument("cutoff insufficient for the displaced witness");
    }
    e += w * displaced_fidelity(state, k, spec.alpha);
  }
  return e;
}

std::optional<double> violation_and_distance(double expectation, double upper_threshold) {
  double d = expectation - upper_threshold;
  if (d > 0.0) return d;
  return std::nullopt;
}

std::vector<double> level_crossings(const std::function<double(double)>& f, double level, double lo, double hi,
                                    int grid) {
  if (!(hi > lo) || grid < 1) throw std::invalid_argument("empty search interval");
  std::vector<double> out;
  auto g = [&](double x) { return f(x) - level; };
  double x0 = lo, g0 = g(lo);
  for (int i = 1; i <= grid; ++i) {
    double x1 = lo + (hi - lo) * i / grid, g1 = g(x1);
    if (g0 == 0.0) {
      out.push_back(x0);
    } else if ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0) {
      boost::uintmax_t iters = 200;
      auto [a, b] = boost::math::tools::toms748_solve(g, x0, x1, g0, g1,
                                                      boost::math::tools::eps_tolerance<double>(50), iters);
      out.push_back((a + b) / 2);
    }
    x0 = x1;
    g0 = g1;
  }
  if (g0 == 0.0) out.push_back(x0);
  return out;
}

}  // namespace negwit
