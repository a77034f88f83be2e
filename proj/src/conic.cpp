#include "negwit/conic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace negwit {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::primal_infeasible: return "primal_infeasible";
    case SolveStatus::dual_infeasible: return "dual_infeasible";
    case SolveStatus::numerical_limit: return "numerical_limit";
  }
  return "unknown";
}

std::string to_string(Precision p) { return p == Precision::extended ? "extended" : "double"; }

Precision parse_precision(const std::string& s) {
  if (s == "double" || s == "binary64") return Precision::binary64;
  if (s == "extended" || s == "quad") return Precision::extended;
  throw std::invalid_argument("unknown precision '" + s + "'");
}

Precision precision_from_env() {
  const char* v = std::getenv("NEGWIT_PRECISION");
  if (!v || !*v) return Precision::binary64;
  return parse_precision(v);
}

int SdpProblem::add_block(int size) {
  if (size == 0) throw std::invalid_argument("block size must be nonzero");
  blocks.push_back(size);
  return static_cast<int>(blocks.size()) - 1;
}

int SdpProblem::add_constraint(double b) {
  constraints.emplace_back();
  rhs.push_back(b);
  return static_cast<int>(constraints.size()) - 1;
}

namespace {

SdpEntry make_entry(int block, int i, int j, double v) {
  if (i > j) std::swap(i, j);
  return {block, i, j, v};
}

void canonicalize_matrix(SparseSymMatrix& m) {
  for (auto& e : m)
    if (e.row > e.col) std::swap(e.row, e.col);
  std::sort(m.begin(), m.end(), [](const SdpEntry& a, const SdpEntry& b) {
    return std::tie(a.block, a.row, a.col) < std::tie(b.block, b.row, b.col);
  });
  SparseSymMatrix out;
  for (const auto& e : m) {
    if (!out.empty() && out.back().block == e.block && out.back().row == e.row && out.back().col == e.col)
      out.back().value += e.value;
    else
      out.push_back(e);
  }
  std::erase_if(out, [](const SdpEntry& e) { return e.value == 0.0; });
  m = std::move(out);
}

}  // namespace

void SdpProblem::add_objective(int block, int i, int j, double v) {
  objective.push_back(make_entry(block, i, j, v));
}

void SdpProblem::add_entry(int constraint, int block, int i, int j, double v) {
  constraints.at(constraint).push_back(make_entry(block, i, j, v));
}

int SdpProblem::total_dim() const {
  int n = 0;
  for (size_t b = 0; b < blocks.size(); ++b) n += block_dim(int(b));
  return n;
}

void SdpProblem::canonicalize() {
  canonicalize_matrix(objective);
  for (auto& c : constraints) canonicalize_matrix(c);
}

void SdpProblem::validate() const {
  if (constraints.size() != rhs.size()) throw std::invalid_argument("constraint and rhs counts differ");
  auto check = [&](const SparseSymMatrix& m) {
    for (const auto& e : m) {
      if (e.block < 0 || e.block >= int(blocks.size())) throw std::invalid_argument("entry block out of range");
      int n = block_dim(e.block);
      if (e.row < 0 || e.col < 0 || e.row >= n || e.col >= n) throw std::invalid_argument("entry index out of range");
      if (blocks[e.block] < 0 && e.row != e.col) throw std::invalid_argument("off-diagonal entry in diagonal block");
      if (!std::isfinite(e.value)) throw std::invalid_argument("non-finite entry");
    }
  };
  check(objective);
  for (const auto& c : constraints) check(c);
}

double inner(const SparseSymMatrix& m, const BlockMatrix& X) {
  double s = 0.0;
  for (const auto& e : m) s += (e.row == e.col ? 1.0 : 2.0) * e.value * X[e.block](e.row, e.col);
  return s;
}

bool verify_strong_duality(const SdpSolution& solution, double tol) {
  return std::abs(solution.primal_value - solution.dual_value) <= tol;
}

KktResiduals kkt_residuals(const SdpProblem& p, const SdpSolution& s) {
  KktResiduals r;
  for (int i = 0; i < p.num_constraints(); ++i)
    r.primal = std::max(r.primal, std::abs(inner(p.constraints[i], s.X) - p.rhs[i]));
  // dual residual of sum y_i B_i - C - Z (max) or C - sum y_i B_i - Z (min)
  BlockMatrix R(p.blocks.size());
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    int n = p.block_dim(int(b));
    R[b] = Eigen::MatrixXd::Zero(n, n);
  }
  double sc = p.sense == Sense::maximize ? -1.0 : 1.0;
  auto add = [&](const SparseSymMatrix& m, double w) {
    for (const auto& e : m) {
      R[e.block](e.row, e.col) += w * e.value;
      if (e.row != e.col) R[e.block](e.col, e.row) += w * e.value;
    }
  };
  add(p.objective, sc);
  for (int i = 0; i < p.num_constraints(); ++i) add(p.constraints[i], -sc * s.y(i));
  r.min_eigenvalue_x = r.min_eigenvalue_z = 1e300;
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    R[b] -= s.Z[b];
    if (p.blocks[b] < 0) R[b] = R[b].diagonal().asDiagonal();
    r.dual = std::max(r.dual, R[b].cwiseAbs().maxCoeff());
    r.complementarity += (s.X[b].cwiseProduct(s.Z[b])).sum();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ex(s.X[b], Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ez(s.Z[b], Eigen::EigenvaluesOnly);
    r.min_eigenvalue_x = std::min(r.min_eigenvalue_x, ex.eigenvalues().minCoeff());
    r.min_eigenvalue_z = std::min(r.min_eigenvalue_z, ez.eigenvalues().minCoeff());
  }
  r.complementarity = std::abs(r.complementarity);
  return r;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string export_sdpa(const SdpProblem& problem) {
  if (problem.constraints.empty()) throw std::invalid_argument("SDPA export needs at least one constraint");
  problem.validate();
  SdpProblem p = problem;
  p.canonicalize();
  std::ostringstream os;
  // SDPA maximizes <F0,X>; a minimization is stored negated and marked
  if (p.sense == Sense::minimize) os << "* sense min\n";
  os << p.num_constraints() << "\n" << p.blocks.size() << "\n";
  for (size_t b = 0; b < p.blocks.size(); ++b) os << (b ? " " : "") << p.blocks[b];
  os << "\n";
  for (int i = 0; i < p.num_constraints(); ++i) os << (i ? " " : "") << fmt17(p.rhs[i]);
  os << "\n";
  double sc = p.sense == Sense::maximize ? 1.0 : -1.0;
  for (const auto& e : p.objective)
    os << 0 << " " << e.block + 1 << " " << e.row + 1 << " " << e.col + 1 << " " << fmt17(sc * e.value) << "\n";
  for (int i = 0; i < p.num_constraints(); ++i)
    for (const auto& e : p.constraints[i])
      os << i + 1 << " " << e.block + 1 << " " << e.row + 1 << " " << e.col + 1 << " " << fmt17(e.value) << "\n";
  return os.str();
}

SdpProblem parse_sdpa(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  SdpProblem p;
  p.sense = Sense::maximize;
  std::vector<std::string> body;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '*' || line[0] == '"') {
      if (line.find("sense min") != std::string::npos) p.sense = Sense::minimize;
      continue;
    }
    for (char& c : line)
      if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')') c = ' ';
    body.push_back(line);
  }
  std::istringstream tok;
  std::string all;
  for (const auto& l : body) all += l + "\n";
  tok.str(all);
  int m = 0, nb = 0;
  if (!(tok >> m >> nb)) throw std::invalid_argument("SDPA header truncated");
  if (m < 1) throw std::invalid_argument("SDPA problem needs at least one constraint");
  for (int b = 0; b < nb; ++b) {
    int s;
    if (!(tok >> s)) throw std::invalid_argument("SDPA block sizes truncated");
    p.add_block(s);
  }
  for (int i = 0; i < m; ++i) {
    double v;
    if (!(tok >> v)) throw std::invalid_argument("SDPA rhs truncated");
    p.add_constraint(v);
  }
  double sc = p.sense == Sense::maximize ? 1.0 : -1.0;
  int mat, blk, r, c;
  double v;
  while (tok >> mat >> blk >> r >> c >> v) {
    if (mat < 0 || mat > m || blk < 1 || blk > nb) throw std::invalid_argument("SDPA entry out of range");
    if (mat == 0)
      p.add_objective(blk - 1, r - 1, c - 1, sc * v);
    else
      p.add_entry(mat - 1, blk - 1, r - 1, c - 1, v);
  }
  p.validate();
  p.canonicalize();
  return p;
}

SdpProblem rescale_basis(const SdpProblem& problem, const std::vector<double>& scales) {
  if (int(scales.size()) != problem.total_dim()) throw std::invalid_argument("one scale per matrix index required");
  for (double s : scales)
    if (!(s > 0.0)) throw std::invalid_argument("scales must be positive");
  std::vector<int> offset(problem.blocks.size() + 1, 0);
  for (size_t b = 0; b < problem.blocks.size(); ++b) offset[b + 1] = offset[b] + problem.block_dim(int(b));
  SdpProblem out = problem;
  auto apply = [&](SparseSymMatrix& m) {
    for (auto& e : m) e.value *= scales[offset[e.block] + e.row] * scales[offset[e.block] + e.col];
  };
  apply(out.objective);
  for (auto& c : out.constraints) apply(c);
  return out;
}

SdpSolution unscale_solution(const SdpSolution& solution, const SdpProblem& original,
                             const std::vector<double>& scales) {
  SdpSolution s = solution;
  int off = 0;
  for (size_t b = 0; b < original.blocks.size(); ++b) {
    int n = original.block_dim(int(b));
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(scales.data() + off, n);
    if (b < s.X.size()) s.X[b] = d.asDiagonal() * s.X[b] * d.asDiagonal();
    if (b < s.Z.size()) s.Z[b] = d.cwiseInverse().asDiagonal() * s.Z[b] * d.cwiseInverse().asDiagonal();
    off += n;
  }
  return s;
}

LpResult solve_lp(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  const SolverOptions& options) {
  int m = int(A.rows()), n = int(A.cols());
  if (b.size() != m || c.size() != n) throw std::invalid_argument("LP dimensions do not match");
  if (m == 0) throw std::invalid_argument("LP needs at least one constraint");
  SdpProblem p;
  p.sense = Sense::maximize;
  int blk = p.add_block(-(n + m));
  for (int j = 0; j < n; ++j)
    if (c(j) != 0.0) p.add_objective(blk, j, j, c(j));
  for (int i = 0; i < m; ++i) p.add_constraint(b(i));
  for (int j = 0; j < A.outerSize(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, j); it; ++it) p.add_entry(int(it.row()), blk, j, j, it.value());
  for (int i = 0; i < m; ++i) p.add_entry(i, blk, n + i, n + i, 1.0);
  p.canonicalize();
  SdpSolution s = solve(p, options);
  LpResult r;
  r.status = s.status;
  r.value = s.primal_value;
  r.x = s.X[0].diagonal().head(n);
  r.dual = s.y;
  return r;
}

}  // namespace negwit
