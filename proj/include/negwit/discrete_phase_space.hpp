#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace negwit {

using QuditOperator = Eigen::MatrixXcd;

bool is_odd_prime(int d);
std::complex<double> root_of_unity(int d, int k);

// X|k> = |k+1>, Z|k> = w^k |k>
QuditOperator shift_x(int d);
QuditOperator clock_z(int d);

// w^{2^{-1} q p} X^q Z^p, d an odd prime
QuditOperator displacement_dv(int d, int q, int p);
// X^x Z^z on a qubit
QuditOperator displacement_q2(int x, int z);

// |k> -> |-k mod d>
QuditOperator parity_dv(int d);
QuditOperator phase_point(int d, int x, int z);

// W(x, z) = Tr(A_{x,z} rho) / d, row x, column z
Eigen::MatrixXd dwf(const QuditOperator& rho, int d);

// Question index 0 is the question "infinity"; index 1 + q is question q.
// result[question][c] projects onto the w^c eigenvector ((-1)^c for d = 2).
using MubProjectors = std::vector<std::vector<QuditOperator>>;
MubProjectors mub_projectors(int d);
// Same bases as unit eigenvectors, first nonzero amplitude real positive.
std::vector<std::vector<Eigen::VectorXcd>> mub_bases(int d);

}  // namespace negwit
