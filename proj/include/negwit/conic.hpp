#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <compare>
#include <string>
#include <vector>

namespace negwit {

enum class Sense { minimize, maximize };
enum class Precision { binary64, extended };
enum class SolveStatus { optimal, primal_infeasible, dual_infeasible, numerical_limit };

std::string to_string(SolveStatus s);
std::string to_string(Precision p);
Precision parse_precision(const std::string& s);
// NEGWIT_PRECISION, falling back to binary64
Precision precision_from_env();

// Upper-triangular entry of a symmetric block matrix, zero-based.
struct SdpEntry {
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;
  auto operator<=>(const SdpEntry&) const = default;
};

using SparseSymMatrix = std::vector<SdpEntry>;

// opt <C,X> s.t. <B_i,X> = b_i, X psd. Positive block sizes are PSD blocks,
// negative ones are diagonal blocks of nonnegative variables.
struct SdpProblem {
  std::vector<int> blocks;
  SparseSymMatrix objective;
  std::vector<SparseSymMatrix> constraints;
  std::vector<double> rhs;
  Sense sense = Sense::maximize;

  int add_block(int size);
  int add_constraint(double b);
  // Entries accumulate; (i,j) and (j,i) address the same entry.
  void add_objective(int block, int i, int j, double v);
  void add_entry(int constraint, int block, int i, int j, double v);

  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int block_dim(int b) const { return blocks[b] < 0 ? -blocks[b] : blocks[b]; }
  int total_dim() const;
  void canonicalize();
  void validate() const;

  bool operator==(const SdpProblem&) const = default;
};

using BlockMatrix = std::vector<Eigen::MatrixXd>;

struct SdpSolution {
  BlockMatrix X;
  BlockMatrix Z;
  Eigen::VectorXd y;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  SolveStatus status = SolveStatus::numerical_limit;
  Precision precision = Precision::binary64;
  int iterations = 0;
};

struct SolverOptions {
  double tol = 1e-8;
  Precision precision = Precision::binary64;
  int max_iterations = 200;
};

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});
SdpSolution solve(const SdpProblem& problem, double tol, Precision precision);

bool verify_strong_duality(const SdpSolution& solution, double tol);

// <M, X> for a sparse symmetric M.
double inner(const SparseSymMatrix& m, const BlockMatrix& X);

struct KktResiduals {
  double primal = 0.0;
  double dual = 0.0;
  double complementarity = 0.0;
  double min_eigenvalue_x = 0.0;
  double min_eigenvalue_z = 0.0;
};

KktResiduals kkt_residuals(const SdpProblem& problem, const SdpSolution& solution);

std::string export_sdpa(const SdpProblem& problem);
SdpProblem parse_sdpa(const std::string& text);

// Congruence D M D on every matrix, D = diag(scales) over the concatenated
// block indices.
SdpProblem rescale_basis(const SdpProblem& problem, const std::vector<double>& scales);
// Maps a solution of the rescaled problem back to the original variables.
SdpSolution unscale_solution(const SdpSolution& solution, const SdpProblem& original,
                             const std::vector<double>& scales);

struct LpResult {
  SolveStatus status = SolveStatus::numerical_limit;
  double value = 0.0;
  Eigen::VectorXd x;
  // optimal y of min b.y s.t. A^T y >= c, y >= 0
  Eigen::VectorXd dual;
};

// max c.x s.t. A x <= b, x >= 0, through a diagonal-block instance of solve().
LpResult solve_lp(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  const SolverOptions& options = {});

}  // namespace negwit
