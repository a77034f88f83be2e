#pragma once

#include "negwit/conic.hpp"
#include "negwit/numerics.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace negwit {

// Witness sum_k a_k D(alpha)|k><k|D(alpha)^dagger, a indexed by k = 1..n.
struct WitnessSpec {
  int n = 1;
  std::vector<double> a;
  std::complex<double> alpha{0.0, 0.0};

  static WitnessSpec fock(int n, std::complex<double> alpha = {});
  static WitnessSpec weighted(std::vector<double> a, std::complex<double> alpha = {});
  // weight of F_k, zero outside 1..n
  double weight(int k) const;
  void validate() const;
};

struct FockDiagonal {
  std::vector<double> F;
  void validate(double tol = 1e-9) const;
};

struct ThresholdBounds {
  int m = 0;
  double lower = 0.0;
  double upper = 0.0;
  SolveStatus lower_status = SolveStatus::numerical_limit;
  SolveStatus upper_status = SolveStatus::numerical_limit;
  Precision lower_precision = Precision::binary64;
  Precision upper_precision = Precision::binary64;
  // solver value of the upper program; upper may be tightened by an exact
  // dual certificate (n = 1, 2)
  double hierarchy_upper = 0.0;
  bool analytic_upper = false;
};

using RationalMatrix = std::vector<std::vector<BigRational>>;

// Programs in the monomial basis, one block for Q (or A) followed by a
// diagonal block for F (duals: y, mu split into nonnegative parts).
SdpProblem build_lower(const WitnessSpec& spec, int m);
SdpProblem build_upper(const WitnessSpec& spec, int m);
SdpProblem build_lower_dual(const WitnessSpec& spec, int m);
SdpProblem build_upper_dual(const WitnessSpec& spec, int m);

// Column weights 1/k! on the matrix block, 1 elsewhere.
std::vector<double> factorial_scales(const SdpProblem& problem, int m);

// Same optima as build_lower / build_upper, written in the basis
// p_{2j}(y) = L_j(y^2), p_{2j+1}(y) = y L^{(1)}_j(y^2) and split by parity.
SdpProblem build_lower_laguerre(const WitnessSpec& spec, int m);
SdpProblem build_upper_laguerre(const WitnessSpec& spec, int m);

// Exact coefficients c with p_a p_c = sum_k c_k L_k(y^2), a = c mod 2.
class LaguerreProducts {
 public:
  explicit LaguerreProducts(int m);
  int degree() const { return m_; }
  const std::vector<BigRational>& coef(int a, int c) const { return table_[a][c]; }
  double value(int a, int c, int k) const;

 private:
  int m_;
  std::vector<std::vector<std::vector<BigRational>>> table_;
  std::vector<std::vector<std::vector<double>>> dtable_;
};

const LaguerreProducts& laguerre_products(int m);

// Lower and upper programs over multi-index polynomial bases; weights map
// Fock multi-indices to objective coefficients.
SdpProblem laguerre_lower_program(const std::vector<MultiIndex>& basis, const std::vector<MultiIndex>& fock,
                                  const std::map<MultiIndex, double>& weights);
SdpProblem laguerre_upper_program(const std::vector<MultiIndex>& basis, const std::vector<MultiIndex>& fock,
                                  const std::map<MultiIndex, double>& weights);

std::vector<BigRational> analytic_primal(int n);
BigRational analytic_value(int n);

struct AnalyticDual {
  std::vector<BigRational> mu;
  BigRational y;
  RationalMatrix gram;  // L L^T
  RationalMatrix A;     // moment matrix of mu, equal to y * gram
};

AnalyticDual analytic_dual(int n);

struct SosCertificate {
  int n = 0;
  // P(y)^2 = norm_sq * (sum_a ratio_a y^a)^2
  BigRational norm_sq;
  RationalPoly ratios;
  RationalPoly lhs;  // sum_k (-1)^k F^n_k L_k(y^2)
  bool verified = false;
};

SosCertificate sos_certificate(int n);

Eigen::MatrixXd moment_matrix(const std::vector<double>& s, int m);
RationalMatrix moment_matrix(const std::vector<BigRational>& s, int m);

// Strictly feasible point of the lower program: F and the diagonal of Q.
struct StrictPoint {
  std::vector<BigRational> F;
  std::vector<BigRational> Q_diagonal;
};
StrictPoint strict_feasible(int m);

// Residuals of the monomial lower program at an exact point (Q dense).
std::vector<BigRational> lower_residuals(int m, const std::vector<BigRational>& F, const RationalMatrix& Q);

struct ThresholdOptions {
  double tol = 1e-8;
  // nullopt: double first, extended on failure
  std::optional<Precision> precision;
  int m_min = -1;
  // replace the upper bound by the exact dual certificate where one exists
  bool use_analytic_upper = true;
};

// Exact threshold 1/2 for the one-hot witnesses n = 1, 2, from the measure
// duals mu = delta(x)/2 and e delta(x - 2)/2 (the latter via laguerre_two_bound).
std::optional<double> analytic_threshold(const WitnessSpec& spec);

std::vector<ThresholdBounds> threshold_bounds(const WitnessSpec& spec, int m_max, const ThresholdOptions& opt = {});

// Finite check of |L_k(2)| <= 1 for k <= k_max.
bool laguerre_two_bound(int k_max);

}  // namespace negwit
