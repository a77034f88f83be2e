#pragma once

#include "negwit/conic.hpp"
#include "negwit/discrete_phase_space.hpp"
#include "negwit/numerics.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace negwit {

// Encodings are enumerated exhaustively only up to this count.
inline constexpr std::int64_t max_encodings = 10000000;
inline constexpr int max_generated_columns = 100000;

// Questions are indexed 0 for infinity and 1 + q for q in Z_d.
struct TorpedoGame {
  int d = 2;

  int questions() const { return d + 1; }
  // the single losing answer: x for infinity, q x - z otherwise
  int forbidden(int question, int x, int z) const;
  bool wins(int question, int x, int z, int a) const { return a != forbidden(question, x, z); }
  std::vector<int> winning(int question, int x, int z) const;
};

struct ClassicalStrategy {
  int d_in = 2;
  int d_msg = 2;
  std::vector<std::vector<BigRational>> lambda;               // [x d_in + z][j]
  std::vector<std::vector<std::vector<BigRational>>> decode;  // [question][c][j]

  void validate() const;
  static ClassicalStrategy deterministic(int d_in, int d_msg, const std::vector<int>& encoding,
                                         const std::vector<std::vector<int>>& decoding);
};

struct ClassicalOptimum {
  BigRational value;
  ClassicalStrategy strategy;
  std::int64_t encodings = 0;
};

ClassicalOptimum classical_optimum(int d_in, int d_msg);
BigRational classical_value(int d_in, int d_msg);
// Best value over random encodings with optimal decodings.
ClassicalOptimum classical_random_search(int d_in, int d_msg, int samples, std::uint64_t seed);

BigRational evaluate_classical(const ClassicalStrategy& strategy);
// The qutrit model reaching 33 of 36 winning constraints.
ClassicalStrategy explicit_model_d3();

struct QuantumStrategy {
  int d = 2;
  std::vector<QuditOperator> messages;  // [x d + z], Hermitian, unit trace
  MubProjectors projectors;             // [question][c]

  void validate(double tol = 1e-9) const;
  bool positive(double tol = 1e-10) const;
};

double quantum_value(const QuantumStrategy& strategy, const TorpedoGame& game);
double quantum_value(const QuantumStrategy& strategy);

// d = 3: D_{x,z}(|1> - |2>)/sqrt 2; d = 2: X^x Z^z rho_00 (X^x Z^z)^dagger,
// rho_00 = (I - (X + Y + Z)/sqrt 3)/2.
QuantumStrategy canonical_quantum_strategy(int d);
// odd d: (I - A_{x,z})/(d - 1); d = 2: (I - (X + Y + Z))/2 displaced, not positive
QuantumStrategy phase_point_strategy(int d);

double key_fact_residual(int d, int x, int z);
double key_fact_residual(int d, int x, int z, const QuditOperator& rho);

struct Behaviour {
  int d = 2;
  std::vector<double> p;  // [((x d + z) (d + 1) + question) d + c]

  explicit Behaviour(int d = 2);
  int index(int x, int z, int question, int c) const { return ((x * d + z) * (d + 1) + question) * d + c; }
  double& at(int x, int z, int question, int c) { return p[index(x, z, question, c)]; }
  double at(int x, int z, int question, int c) const { return p[index(x, z, question, c)]; }
  double winning_probability() const;
  void validate(double tol = 1e-9) const;
};

Behaviour behaviour(const QuantumStrategy& strategy);
Behaviour behaviour(const ClassicalStrategy& strategy);
Behaviour mix(const Behaviour& a, const Behaviour& b, double t);  // (1 - t) a + t b

enum class NcfMethod { automatic, full, column_generation };

struct BoundedMemoryNcf {
  double ncf = 0.0;
  SolveStatus status = SolveStatus::numerical_limit;
  int columns = 0;
  int rounds = 0;
};

// Largest weight of d-valued deterministic behaviours c = f_q(g(x, z)) below e.
BoundedMemoryNcf bounded_memory_ncf(const Behaviour& e, NcfMethod method = NcfMethod::automatic, double tol = 1e-9);
// nu = 1 - classical value
BigRational classical_gap(int d);

nlohmann::json to_json(const ClassicalStrategy& s);
ClassicalStrategy classical_strategy_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QuantumStrategy& s);
QuantumStrategy quantum_strategy_from_json(const nlohmann::json& j);

}  // namespace negwit
