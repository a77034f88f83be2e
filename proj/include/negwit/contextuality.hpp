#pragma once

#include "negwit/conic.hpp"

#include <json.hpp>

#include <Eigen/SparseCore>

#include <cstdint>
#include <string>
#include <vector>

namespace negwit {

// Global assignments are enumerated only up to this count.
inline constexpr std::int64_t max_global_sections = 1000000;

struct Scenario {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> contexts;  // label indices
  std::vector<std::vector<std::string>> outcomes;  // per label

  void validate() const;
  // local sections of context c, lexicographic over its labels in order
  std::int64_t local_count(int c) const;
  std::int64_t global_count() const;
  int rows() const;  // sum of local counts
  std::vector<int> decode_local(int c, std::int64_t s) const;
  std::vector<int> decode_global(std::int64_t g) const;

  static Scenario bell_222();
};

struct EmpiricalModel {
  Scenario scenario;
  std::vector<std::vector<double>> tables;  // per context, over local sections

  void validate(double tol = 1e-9) const;
  // flattened tables, the vector v^e
  Eigen::VectorXd flat() const;
};

struct BellForm {
  Eigen::VectorXd a;  // indexed like v^e
  double bound = 0.0;
  double norm = 0.0;       // sum over contexts of the largest coefficient
  double violation = 0.0;  // a.v^e - bound
  double normalized_violation = 0.0;
};

struct NcfResult {
  double ncf = 0.0;
  double cf = 0.0;
  Eigen::VectorXd b;  // subdistribution on global sections
  SolveStatus status = SolveStatus::numerical_limit;
};

Eigen::SparseMatrix<double> incidence(const Scenario& scenario);
NcfResult ncf(const EmpiricalModel& model, double tol = 1e-10);
BellForm bell_inequality(const EmpiricalModel& model, double tol = 1e-10);
double normalized_violation(const BellForm& form, const EmpiricalModel& model);

// maps[x][o] is the coarse outcome of outcome o of label x
EmpiricalModel bin_outcomes(const EmpiricalModel& model, const std::vector<std::vector<int>>& maps);

// chsh, pr_box, hardy, identity_mix
EmpiricalModel example_model(const std::string& name);

nlohmann::json to_json(const EmpiricalModel& model);
EmpiricalModel model_from_json(const nlohmann::json& j);

}  // namespace negwit
