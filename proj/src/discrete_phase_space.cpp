#include "negwit/discrete_phase_space.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace negwit {

namespace {

int mod(int a, int d) { return ((a % d) + d) % d; }

void require_odd_prime(int d) {
  if (!is_odd_prime(d)) throw std::invalid_argument("dimension " + std::to_string(d) + " is not an odd prime");
}

QuditOperator power(const QuditOperator& u, int k) {
  QuditOperator r = QuditOperator::Identity(u.rows(), u.cols());
  for (int i = 0; i < k; ++i) r = r * u;
  return r;
}

// spectral projectors of u, assuming u^d = I
std::vector<QuditOperator> eigenprojectors(const QuditOperator& u, int d) {
  std::vector<QuditOperator> out;
  for (int c = 0; c < d; ++c) {
    QuditOperator p = QuditOperator::Zero(u.rows(), u.cols());
    QuditOperator uk = QuditOperator::Identity(u.rows(), u.cols());
    for (int k = 0; k < d; ++k) {
      p += root_of_unity(d, -c * k) * uk;
      uk = uk * u;
    }
    out.push_back(p / double(d));
  }
  return out;
}

std::vector<QuditOperator> basis_unitaries(int d) {
  if (d == 2) {
    QuditOperator y = std::complex<double>(0, 1) * displacement_q2(1, 1);
    return {displacement_q2(0, 1), displacement_q2(1, 0), y};
  }
  if (!is_odd_prime(d)) throw std::invalid_argument("mutually unbiased bases need d = 2 or an odd prime");
  std::vector<QuditOperator> out{displacement_dv(d, 0, 1)};
  for (int q = 0; q < d; ++q) out.push_back(displacement_dv(d, 1, q));
  return out;
}

}  // namespace

bool is_odd_prime(int d) {
  if (d < 3 || d % 2 == 0) return false;
  for (int k = 3; k * k <= d; k += 2)
    if (d % k == 0) return false;
  return true;
}

std::complex<double> root_of_unity(int d, int k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * mod(k, d) / d);
}

QuditOperator shift_x(int d) {
  QuditOperator x = QuditOperator::Zero(d, d);
  for (int k = 0; k < d; ++k) x(mod(k + 1, d), k) = 1.0;
  return x;
}

QuditOperator clock_z(int d) {
  QuditOperator z = QuditOperator::Zero(d, d);
  for (int k = 0; k < d; ++k) z(k, k) = root_of_unity(d, k);
  return z;
}

QuditOperator displacement_dv(int d, int q, int p) {
  require_odd_prime(d);
  q = mod(q, d);
  p = mod(p, d);
  int half = (d + 1) / 2;
  return root_of_unity(d, half * q * p) * power(shift_x(d), q) * power(clock_z(d), p);
}

QuditOperator displacement_q2(int x, int z) { return power(shift_x(2), mod(x, 2)) * power(clock_z(2), mod(z, 2)); }

QuditOperator parity_dv(int d) {
  if (d < 2) throw std::invalid_argument("parity needs d >= 2");
  QuditOperator p = QuditOperator::Zero(d, d);
  for (int k = 0; k < d; ++k) p(mod(-k, d), k) = 1.0;
  return p;
}

QuditOperator phase_point(int d, int x, int z) {
  QuditOperator D = displacement_dv(d, x, z);
  return D * parity_dv(d) * D.adjoint();
}

Eigen::MatrixXd dwf(const QuditOperator& rho, int d) {
  require_odd_prime(d);
  if (rho.rows() != d || rho.cols() != d) throw std::invalid_argument("density matrix has the wrong size");
  if ((rho - rho.adjoint()).norm() > 1e-10) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw std::invalid_argument("density matrix does not have unit trace");
  Eigen::SelfAdjointEigenSolver<QuditOperator> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("density matrix is not positive semidefinite");
  Eigen::MatrixXd w(d, d);
  for (int x = 0; x < d; ++x)
    for (int z = 0; z < d; ++z) w(x, z) = (phase_point(d, x, z) * rho).trace().real() / d;
  return w;
}

MubProjectors mub_projectors(int d) {
  MubProjectors out;
  for (const auto& u : basis_unitaries(d)) out.push_back(eigenprojectors(u, d));
  return out;
}

std::vector<std::vector<Eigen::VectorXcd>> mub_bases(int d) {
  std::vector<std::vector<Eigen::VectorXcd>> out;
  for (const auto& question : mub_projectors(d)) {
    std::vector<Eigen::VectorXcd> basis;
    for (const auto& p : question) {
      Eigen::Index col = 0;
      p.colwise().norm().maxCoeff(&col);
      Eigen::VectorXcd v = p.col(col).normalized();
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
          v *= std::conj(v(i)) / std::abs(v(i));
          break;
        }
      }
      basis.push_back(v);
    }
    out.push_back(basis);
  }
  return out;
}

}  // namespace negwit
