#pragma once

#include "negwit/wigner_witness.hpp"

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace negwit {

enum class IndexMode { triangle, rectangle };

// Enumeration of the hierarchy index sets is capped to keep dense solves small.
inline constexpr std::size_t max_index_count = 10000;

struct MultiWitnessSpec {
  int M = 1;
  MultiIndex n;
  // weights on 0 != k <= n; empty means one-hot at n
  std::map<MultiIndex, double> a;
  std::vector<std::complex<double>> alpha;

  static MultiWitnessSpec fock(const MultiIndex& n);
  double weight(const MultiIndex& k) const;
  std::map<MultiIndex, double> weights() const;
  void validate() const;
};

// |k| <= m (triangle) or k <= m*1 (rectangle), lexicographic.
std::vector<MultiIndex> iterate_indices(IndexMode mode, int m, int M);

// Monomial-basis programs, one Gram/moment block over the index set and a
// diagonal block for F over the same set.
SdpProblem build_lower_multi(const MultiWitnessSpec& spec, IndexMode mode, int m);
SdpProblem build_upper_multi(const MultiWitnessSpec& spec, IndexMode mode, int m);
// Laguerre-basis equivalents, better conditioned.
SdpProblem build_lower_multi_laguerre(const MultiWitnessSpec& spec, IndexMode mode, int m);
SdpProblem build_upper_multi_laguerre(const MultiWitnessSpec& spec, IndexMode mode, int m);

ThresholdBounds multi_bounds(const MultiWitnessSpec& spec, IndexMode mode, int m, const ThresholdOptions& opt = {});

struct SingleModePoint {
  RationalMatrix Q;
  std::vector<BigRational> F;
};

struct MultiModePoint {
  std::vector<MultiIndex> index;  // rows of Q and entries of F
  RationalMatrix Q;
  std::vector<BigRational> F;
};

// Residuals of the monomial lower program over the box k <= bound.
std::vector<BigRational> box_lower_residuals(const MultiIndex& bound, const MultiModePoint& point);

// Kronecker product of single-mode lower-program points; throws if an input
// violates its own constraints.
MultiModePoint product_feasible(const std::vector<SingleModePoint>& singles);

// 1 - sum_i (1 - F_i)
double robust_fidelity_bound(const std::vector<double>& single_fidelities);

}  // namespace negwit
