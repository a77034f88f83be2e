#pragma once

#include <boost/multiprecision/float128.hpp>
#include <Eigen/Core>

#include <limits>

namespace negwit {
using Extended = boost::multiprecision::float128;
}

namespace Eigen {

template <>
struct NumTraits<negwit::Extended> : GenericNumTraits<negwit::Extended> {
  using Q = negwit::Extended;
  typedef Q Real;
  typedef Q NonInteger;
  typedef Q Nested;
  typedef Q Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return std::numeric_limits<Q>::epsilon(); }
  static inline Real dummy_precision() { return Q(1e-30); }
  static inline Real highest() { return (std::numeric_limits<Q>::max)(); }
  static inline Real lowest() { return std::numeric_limits<Q>::lowest(); }
  static inline int digits10() { return 33; }
  static inline Real infinity() { return std::numeric_limits<Q>::infinity(); }
  static inline Real quiet_NaN() { return std::numeric_limits<Q>::quiet_NaN(); }
};

}  // namespace Eigen
