#include "negwit/torpedo.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace negwit {

namespace {

int mod(int a, int d) { return ((a % d) + d) % d; }

std::int64_t checked_power(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > max_encodings) throw std::length_error("encoding space exceeds the exhaustive range");
  }
  return r;
}

void decode_index(std::int64_t index, int base, std::vector<int>& digits) {
  for (auto& g : digits) {
    g = static_cast<int>(index % base);
    index /= base;
  }
}

// Optimal decodings for a fixed encoding; returns the number of won (x, z, question) triples.
int best_decoding(const TorpedoGame& game, int d_msg, const std::vector<int>& g, std::vector<std::vector<int>>* decoding) {
  const int d = game.d;
  int total = 0;
  if (decoding) decoding->assign(game.questions(), std::vector<int>(d_msg, 0));
  std::vector<int> counts(d_msg * d);
  for (int q = 0; q < game.questions(); ++q) {
    std::fill(counts.begin(), counts.end(), 0);
    std::vector<int> population(d_msg, 0);
    for (int x = 0; x < d; ++x)
      for (int z = 0; z < d; ++z) {
        int j = g[x * d + z];
        ++population[j];
        ++counts[j * d + game.forbidden(q, x, z)];
      }
    for (int j = 0; j < d_msg; ++j) {
      int best = 0;
      for (int c = 1; c < d; ++c)
        if (counts[j * d + c] < counts[j * d + best]) best = c;
      total += population[j] - counts[j * d + best];
      if (decoding) (*decoding)[q][j] = best;
    }
  }
  return total;
}

void require_game_dimension(int d) {
  if (d != 2 && !is_odd_prime(d)) throw std::invalid_argument("quantum strategies need d = 2 or an odd prime");
}

QuditOperator projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

nlohmann::json matrix_json(const QuditOperator& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

QuditOperator matrix_from_json(const nlohmann::json& rows, int d) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) throw std::invalid_argument("operator has the wrong size");
  QuditOperator m(d, d);
  for (int i = 0; i < d; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != d)
      throw std::invalid_argument("operator has the wrong size");
    for (int j = 0; j < d; ++j) m(i, j) = {rows[i][j].at(0).get<double>(), rows[i][j].at(1).get<double>()};
  }
  return m;
}

std::string rational_string(const BigRational& q) { return to_string(q); }

BigRational parse_rational(const nlohmann::json& v) {
  if (v.is_number_integer()) return BigRational(v.get<long long>());
  if (v.is_string()) return BigRational(v.get<std::string>());
  throw std::invalid_argument("probabilities must be integers or rational strings");
}

}  // namespace

int TorpedoGame::forbidden(int question, int x, int z) const {
  if (question < 0 || question > d) throw std::out_of_range("question out of range");
  if (question == 0) return mod(x, d);
  return mod((question - 1) * x - z, d);
}

std::vector<int> TorpedoGame::winning(int question, int x, int z) const {
  std::vector<int> out;
  int f = forbidden(question, x, z);
  for (int a = 0; a < d; ++a)
    if (a != f) out.push_back(a);
  return out;
}

void ClassicalStrategy::validate() const {
  if (d_in < 2 || d_msg < 1) throw std::invalid_argument("bad strategy dimensions");
  if (static_cast<int>(lambda.size()) != d_in * d_in) throw std::invalid_argument("encoding needs d_in^2 distributions");
  for (const auto& l : lambda) {
    if (static_cast<int>(l.size()) != d_msg) throw std::invalid_argument("encoding distribution has the wrong size");
    BigRational s = 0;
    for (const auto& v : l) {
      if (v < 0) throw std::invalid_argument("negative encoding probability");
      s += v;
    }
    if (s != 1) throw std::invalid_argument("encoding distribution does not sum to 1");
  }
  if (static_cast<int>(decode.size()) != d_in + 1) throw std::invalid_argument("one decoding per question is needed");
  for (const auto& t : decode) {
    if (static_cast<int>(t.size()) != d_in) throw std::invalid_argument("decoding matrix has the wrong size");
    for (int j = 0; j < d_msg; ++j) {
      BigRational s = 0;
      for (const auto& row : t) {
        if (static_cast<int>(row.size()) != d_msg) throw std::invalid_argument("decoding matrix has the wrong size");
        if (row[j] < 0) throw std::invalid_argument("negative decoding probability");
        s += row[j];
      }
      if (s != 1) throw std::invalid_argument("decoding column does not sum to 1");
    }
  }
}

ClassicalStrategy ClassicalStrategy::deterministic(int d_in, int d_msg, const std::vector<int>& encoding,
                                                   const std::vector<std::vector<int>>& decoding) {
  if (static_cast<int>(encoding.size()) != d_in * d_in || static_cast<int>(decoding.size()) != d_in + 1)
    throw std::invalid_argument("bad deterministic strategy shape");
  ClassicalStrategy s;
  s.d_in = d_in;
  s.d_msg = d_msg;
  for (int g : encoding) {
    if (g < 0 || g >= d_msg) throw std::invalid_argument("message out of range");
    std::vector<BigRational> l(d_msg, BigRational(0));
    l[g] = 1;
    s.lambda.push_back(l);
  }
  for (const auto& f : decoding) {
    if (static_cast<int>(f.size()) != d_msg) throw std::invalid_argument("bad deterministic strategy shape");
    std::vector<std::vector<BigRational>> t(d_in, std::vector<BigRational>(d_msg, BigRational(0)));
    for (int j = 0; j < d_msg; ++j) {
      if (f[j] < 0 || f[j] >= d_in) throw std::invalid_argument("answer out of range");
      t[f[j]][j] = 1;
    }
    s.decode.push_back(t);
  }
  return s;
}

ClassicalOptimum classical_optimum(int d_in, int d_msg) {
  if (d_in < 2 || d_msg < 1) throw std::invalid_argument("bad dimensions");
  const std::int64_t n = checked_power(d_msg, d_in * d_in);
  TorpedoGame game{d_in};
  std::vector<int> g(d_in * d_in), best_g;
  int best = -1;
  for (std::int64_t e = 0; e < n; ++e) {
    decode_index(e, d_msg, g);
    int v = best_decoding(game, d_msg, g, nullptr);
    if (v > best) {
      best = v;
      best_g = g;
    }
  }
  std::vector<std::vector<int>> f;
  best_decoding(game, d_msg, best_g, &f);
  ClassicalOptimum out;
  out.value = BigRational(best, d_in * d_in * game.questions());
  out.strategy = ClassicalStrategy::deterministic(d_in, d_msg, best_g, f);
  out.encodings = n;
  return out;
}

BigRational classical_value(int d_in, int d_msg) { return classical_optimum(d_in, d_msg).value; }

ClassicalOptimum classical_random_search(int d_in, int d_msg, int samples, std::uint64_t seed) {
  if (d_in < 2 || d_msg < 1 || samples < 1) throw std::invalid_argument("bad search parameters");
  TorpedoGame game{d_in};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> message(0, d_msg - 1);
  std::vector<int> g(d_in * d_in), best_g;
  int best = -1;
  for (int s = 0; s < samples; ++s) {
    for (auto& v : g) v = message(rng);
    int v = best_decoding(game, d_msg, g, nullptr);
    if (v > best) {
      best = v;
      best_g = g;
    }
  }
  std::vector<std::vector<int>> f;
  best_decoding(game, d_msg, best_g, &f);
  ClassicalOptimum out;
  out.value = BigRational(best, d_in * d_in * game.questions());
  out.strategy = ClassicalStrategy::deterministic(d_in, d_msg, best_g, f);
  out.encodings = samples;
  return out;
}

BigRational evaluate_classical(const ClassicalStrategy& s) {
  s.validate();
  TorpedoGame game{s.d_in};
  BigRational total = 0;
  for (int x = 0; x < s.d_in; ++x)
    for (int z = 0; z < s.d_in; ++z)
      for (int q = 0; q < game.questions(); ++q)
        for (int c : game.winning(q, x, z))
          for (int j = 0; j < s.d_msg; ++j) total += s.decode[q][c][j] * s.lambda[x * s.d_in + z][j];
  return total / BigRational(s.d_in * s.d_in * game.questions());
}

ClassicalStrategy explicit_model_d3() {
  std::vector<int> g(9);
  // printed table is indexed by (x, -z)
  auto set = [&](int x, int z, int j) { g[x * 3 + mod(-z, 3)] = j; };
  set(0, 0, 0), set(0, 1, 0), set(1, 1, 0);
  set(1, 0, 1), set(0, 2, 1), set(2, 2, 1);
  set(2, 0, 2), set(2, 1, 2), set(1, 2, 2);
  // T[c][j] = 1 read as f(j) = c
  std::vector<int> anti{2, 1, 0};
  std::vector<int> cycle{2, 0, 1};
  return ClassicalStrategy::deterministic(3, 3, g, {anti, anti, cycle, anti});
}

void QuantumStrategy::validate(double tol) const {
  if (d < 2) throw std::invalid_argument("bad dimension");
  if (static_cast<int>(messages.size()) != d * d) throw std::invalid_argument("one message per input pair is needed");
  for (const auto& m : messages) {
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("message dimension mismatch");
    if ((m - m.adjoint()).norm() > tol) throw std::invalid_argument("message is not Hermitian");
    if (std::abs(m.trace() - 1.0) > tol) throw std::invalid_argument("message does not have unit trace");
  }
  if (static_cast<int>(projectors.size()) != d + 1) throw std::invalid_argument("one measurement per question is needed");
  for (const auto& question : projectors) {
    if (static_cast<int>(question.size()) != d) throw std::invalid_argument("measurement needs d outcomes");
    QuditOperator sum = QuditOperator::Zero(d, d);
    for (const auto& p : question) {
      if (p.rows() != d || p.cols() != d) throw std::invalid_argument("projector dimension mismatch");
      sum += p;
    }
    if ((sum - QuditOperator::Identity(d, d)).norm() > tol) throw std::invalid_argument("projectors do not resolve identity");
  }
}

bool QuantumStrategy::positive(double tol) const {
  for (const auto& m : messages) {
    Eigen::SelfAdjointEigenSolver<QuditOperator> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) return false;
  }
  return true;
}

double quantum_value(const QuantumStrategy& s, const TorpedoGame& game) {
  if (s.d != game.d) throw std::invalid_argument("strategy and game dimensions differ");
  s.validate();
  const int d = s.d;
  double total = 0.0;
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z)
      for (int q = 0; q < game.questions(); ++q)
        for (int c : game.winning(q, x, z)) total += (s.messages[x * d + z] * s.projectors[q][c]).trace().real();
  return total / (d * d * game.questions());
}

double quantum_value(const QuantumStrategy& s) { return quantum_value(s, TorpedoGame{s.d}); }

QuantumStrategy canonical_quantum_strategy(int d) {
  require_game_dimension(d);
  QuantumStrategy s;
  s.d = d;
  s.projectors = mub_projectors(d);
  if (d == 2) {
    const std::complex<double> i(0, 1);
    QuditOperator y = i * displacement_q2(1, 1);
    QuditOperator rho = 0.5 * (QuditOperator::Identity(2, 2) -
                               (displacement_q2(1, 0) + y + displacement_q2(0, 1)) / std::sqrt(3.0));
    for (int x = 0; x < 2; ++x)
      for (int z = 0; z < 2; ++z) {
        QuditOperator D = displacement_q2(x, z);
        s.messages.push_back(D * rho * D.adjoint());
      }
    return s;
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(d - 1) = -1.0 / std::sqrt(2.0);
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z) s.messages.push_back(projector(displacement_dv(d, x, z) * psi));
  return s;
}

QuantumStrategy phase_point_strategy(int d) {
  require_game_dimension(d);
  QuantumStrategy s;
  s.d = d;
  s.projectors = mub_projectors(d);
  if (d == 2) {
    const std::complex<double> i(0, 1);
    QuditOperator y = i * displacement_q2(1, 1);
    QuditOperator a = 0.5 * (QuditOperator::Identity(2, 2) - (displacement_q2(1, 0) + y + displacement_q2(0, 1)));
    for (int x = 0; x < 2; ++x)
      for (int z = 0; z < 2; ++z) {
        QuditOperator D = displacement_q2(x, z);
        s.messages.push_back(D * a * D.adjoint());
      }
    return s;
  }
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z)
      s.messages.push_back((QuditOperator::Identity(d, d) - phase_point(d, x, z)) / double(d - 1));
  return s;
}

double key_fact_residual(int d, int x, int z, const QuditOperator& rho) {
  if (!is_odd_prime(d)) throw std::invalid_argument("dimension must be an odd prime");
  TorpedoGame game{d};
  auto proj = mub_projectors(d);
  QuditOperator sum = QuditOperator::Zero(d, d);
  for (int q = 0; q < game.questions(); ++q) sum += proj[q][game.forbidden(q, x, z)];
  return std::max(0.0, (sum * rho).trace().real());
}

double key_fact_residual(int d, int x, int z) {
  return key_fact_residual(d, x, z, canonical_quantum_strategy(d).messages[mod(x, d) * d + mod(z, d)]);
}

Behaviour::Behaviour(int d_) : d(d_), p(static_cast<std::size_t>(d_ * d_ * (d_ + 1) * d_), 0.0) {
  if (d_ < 2) throw std::invalid_argument("bad dimension");
}

double Behaviour::winning_probability() const {
  TorpedoGame game{d};
  double total = 0.0;
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z)
      for (int q = 0; q < game.questions(); ++q)
        for (int c : game.winning(q, x, z)) total += at(x, z, q, c);
  return total / (d * d * game.questions());
}

void Behaviour::validate(double tol) const {
  if (static_cast<int>(p.size()) != d * d * (d + 1) * d) throw std::invalid_argument("behaviour has the wrong size");
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z)
      for (int q = 0; q <= d; ++q) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) {
          if (at(x, z, q, c) < -tol) throw std::invalid_argument("negative probability in behaviour");
          s += at(x, z, q, c);
        }
        if (std::abs(s - 1.0) > tol) throw std::invalid_argument("behaviour distribution does not sum to 1");
      }
}

Behaviour behaviour(const QuantumStrategy& s) {
  s.validate();
  if (!s.positive()) throw std::invalid_argument("outcome distributions need positive messages");
  Behaviour e(s.d);
  for (int x = 0; x < s.d; ++x)
    for (int z = 0; z < s.d; ++z)
      for (int q = 0; q <= s.d; ++q)
        for (int c = 0; c < s.d; ++c)
          e.at(x, z, q, c) = std::max(0.0, (s.messages[x * s.d + z] * s.projectors[q][c]).trace().real());
  return e;
}

Behaviour behaviour(const ClassicalStrategy& s) {
  s.validate();
  Behaviour e(s.d_in);
  for (int x = 0; x < s.d_in; ++x)
    for (int z = 0; z < s.d_in; ++z)
      for (int q = 0; q <= s.d_in; ++q)
        for (int c = 0; c < s.d_in; ++c) {
          BigRational v = 0;
          for (int j = 0; j < s.d_msg; ++j) v += s.decode[q][c][j] * s.lambda[x * s.d_in + z][j];
          e.at(x, z, q, c) = v.convert_to<double>();
        }
  return e;
}

Behaviour mix(const Behaviour& a, const Behaviour& b, double t) {
  if (a.d != b.d) throw std::invalid_argument("behaviour dimensions differ");
  Behaviour e(a.d);
  for (std::size_t i = 0; i < e.p.size(); ++i) e.p[i] = (1.0 - t) * a.p[i] + t * b.p[i];
  return e;
}

namespace {

// outcome per (x, z, question)
using Table = std::vector<int>;

Table composite(int d, const std::vector<int>& g, const std::vector<std::vector<int>>& f) {
  Table t;
  for (int xz = 0; xz < d * d; ++xz)
    for (int q = 0; q <= d; ++q) t.push_back(f[q][g[xz]]);
  return t;
}

BoundedMemoryNcf master(const Behaviour& e, const std::vector<Table>& columns, double tol, Eigen::VectorXd* dual) {
  const int d = e.d;
  const int rows = static_cast<int>(e.p.size());
  std::vector<Eigen::Triplet<double>> trips;
  for (int k = 0; k < static_cast<int>(columns.size()); ++k)
    for (int r = 0; r < d * d * (d + 1); ++r) trips.emplace_back(r * d + columns[k][r], k, 1.0);
  Eigen::SparseMatrix<double> A(rows, static_cast<int>(columns.size()));
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(e.p.data(), rows);
  SolverOptions opt;
  opt.tol = tol;
  LpResult lp = solve_lp(A, b, Eigen::VectorXd::Ones(A.cols()), opt);
  if (lp.status != SolveStatus::optimal) {
    opt.precision = Precision::extended;
    lp = solve_lp(A, b, Eigen::VectorXd::Ones(A.cols()), opt);
  }
  if (dual) *dual = lp.dual;
  BoundedMemoryNcf out;
  out.ncf = std::clamp(lp.value, 0.0, 1.0);
  out.status = lp.status;
  out.columns = static_cast<int>(columns.size());
  out.rounds = 1;
  return out;
}

BoundedMemoryNcf ncf_full(const Behaviour& e, double tol) {
  const int d = e.d;
  const std::int64_t ng = checked_power(d, d * d);
  const std::int64_t nf = checked_power(d, d * (d + 1));
  if (ng * nf > max_encodings) throw std::length_error("column set too large for the full program");
  std::set<Table> tables;
  std::vector<int> g(d * d), fdigits(d * (d + 1));
  std::vector<std::vector<int>> f(d + 1, std::vector<int>(d));
  for (std::int64_t a = 0; a < ng; ++a) {
    decode_index(a, d, g);
    for (std::int64_t b = 0; b < nf; ++b) {
      decode_index(b, d, fdigits);
      for (int q = 0; q <= d; ++q)
        for (int j = 0; j < d; ++j) f[q][j] = fdigits[q * d + j];
      tables.insert(composite(d, g, f));
    }
  }
  return master(e, std::vector<Table>(tables.begin(), tables.end()), tol, nullptr);
}

BoundedMemoryNcf ncf_generated(const Behaviour& e, double tol) {
  const int d = e.d;
  const std::int64_t ng = checked_power(d, d * d);
  const int per_round = 25;
  std::set<Table> seen;
  std::vector<Table> columns;
  Eigen::VectorXd y(static_cast<Eigen::Index>(e.p.size()));
  for (std::size_t i = 0; i < e.p.size(); ++i) y(i) = (1.0 - e.p[i]) / (d * d * (d + 1));
  std::vector<int> g(d * d);
  std::vector<std::vector<int>> f(d + 1, std::vector<int>(d));
  std::vector<double> cost(d);
  BoundedMemoryNcf result;
  for (int round = 1;; ++round) {
    // for fixed g each f_q(j) independently minimises the dual weight it covers
    std::vector<std::pair<double, Table>> candidates;
    for (std::int64_t a = 0; a < ng; ++a) {
      decode_index(a, d, g);
      double weight = 0.0;
      for (int q = 0; q <= d; ++q)
        for (int j = 0; j < d; ++j) {
          std::fill(cost.begin(), cost.end(), 0.0);
          for (int xz = 0; xz < d * d; ++xz)
            if (g[xz] == j)
              for (int c = 0; c < d; ++c) cost[c] += y((xz * (d + 1) + q) * d + c);
          int best = static_cast<int>(std::min_element(cost.begin(), cost.end()) - cost.begin());
          f[q][j] = best;
          weight += cost[best];
        }
      if (weight < 1.0 - 10 * tol) candidates.emplace_back(weight, composite(d, g, f));
    }
    std::sort(candidates.begin(), candidates.end());
    int added = 0;
    for (auto& [w, t] : candidates) {
      if (added == per_round) break;
      if (seen.insert(t).second) {
        columns.push_back(std::move(t));
        ++added;
      }
    }
    if (added == 0 && round > 1) {
      result.rounds = round;
      return result;
    }
    if (static_cast<int>(columns.size()) > max_generated_columns)
      throw std::runtime_error("column generation did not converge within the column limit");
    if (columns.empty()) {
      result = BoundedMemoryNcf{0.0, SolveStatus::optimal, 0, round};
      return result;
    }
    Eigen::VectorXd dual;
    result = master(e, columns, tol, &dual);
    result.rounds = round;
    if (result.status != SolveStatus::optimal) return result;
    y = dual;
  }
}

}  // namespace

BoundedMemoryNcf bounded_memory_ncf(const Behaviour& e, NcfMethod method, double tol) {
  e.validate();
  if (method == NcfMethod::automatic) method = e.d == 2 ? NcfMethod::full : NcfMethod::column_generation;
  return method == NcfMethod::full ? ncf_full(e, tol) : ncf_generated(e, tol);
}

BigRational classical_gap(int d) { return BigRational(1) - classical_value(d, d); }

nlohmann::json to_json(const ClassicalStrategy& s) {
  nlohmann::json j;
  j["d_in"] = s.d_in;
  j["d_msg"] = s.d_msg;
  nlohmann::json enc = nlohmann::json::array();
  for (const auto& l : s.lambda) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& v : l) row.push_back(rational_string(v));
    enc.push_back(row);
  }
  j["encoding"] = enc;
  nlohmann::json dec = nlohmann::json::array();
  for (const auto& t : s.decode) {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& r : t) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& v : r) row.push_back(rational_string(v));
      m.push_back(row);
    }
    dec.push_back(m);
  }
  j["decoding"] = dec;
  return j;
}

ClassicalStrategy classical_strategy_from_json(const nlohmann::json& j) {
  ClassicalStrategy s;
  s.d_in = j.at("d_in").get<int>();
  s.d_msg = j.at("d_msg").get<int>();
  for (const auto& row : j.at("encoding")) {
    std::vector<BigRational> l;
    for (const auto& v : row) l.push_back(parse_rational(v));
    s.lambda.push_back(l);
  }
  for (const auto& m : j.at("decoding")) {
    std::vector<std::vector<BigRational>> t;
    for (const auto& row : m) {
      std::vector<BigRational> r;
      for (const auto& v : row) r.push_back(parse_rational(v));
      t.push_back(r);
    }
    s.decode.push_back(t);
  }
  s.validate();
  return s;
}

nlohmann::json to_json(const QuantumStrategy& s) {
  nlohmann::json j;
  j["d"] = s.d;
  nlohmann::json msgs = nlohmann::json::array();
  for (const auto& m : s.messages) msgs.push_back(matrix_json(m));
  j["messages"] = msgs;
  nlohmann::json proj = nlohmann::json::array();
  for (const auto& question : s.projectors) {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : question) ps.push_back(matrix_json(p));
    proj.push_back(ps);
  }
  j["projectors"] = proj;
  return j;
}

QuantumStrategy quantum_strategy_from_json(const nlohmann::json& j) {
  QuantumStrategy s;
  s.d = j.at("d").get<int>();
  for (const auto& m : j.at("messages")) s.messages.push_back(matrix_from_json(m, s.d));
  for (const auto& question : j.at("projectors")) {
    std::vector<QuditOperator> ps;
    for (const auto& p : question) ps.push_back(matrix_from_json(p, s.d));
    s.projectors.push_back(ps);
  }
  s.validate();
  return s;
}

}  // namespace negwit
