#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace negwit {

using BigInteger = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

BigInteger binomial(unsigned n, unsigned k);
BigInteger factorial(unsigned n);
double binomial_double(unsigned n, unsigned k);
std::string to_string(const BigRational& q);

// L_k(x) by the three-term recurrence.
template <typename Scalar>
Scalar laguerre_poly(int k, const Scalar& x) {
  Scalar prev(1);
  if (k == 0) return prev;
  Scalar cur = Scalar(1) - x;
  for (int j = 1; j < k; ++j) {
    Scalar next = ((Scalar(2 * j + 1) - x) * cur - Scalar(j) * prev) / Scalar(j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

// (-1)^k L_k(x) exp(-x/2)
template <typename Scalar>
Scalar laguerre_fn(int k, const Scalar& x) {
  using std::exp;
  Scalar v = laguerre_poly(k, x) * exp(-x / Scalar(2));
  return (k % 2) ? -v : v;
}

// Exact polynomials in one variable, coefficient i multiplies x^i.
using RationalPoly = std::vector<BigRational>;

RationalPoly poly_mul(const RationalPoly& p, const RationalPoly& q);
RationalPoly poly_add(const RationalPoly& p, const RationalPoly& q);
RationalPoly poly_scale(const RationalPoly& p, const BigRational& c);
void poly_trim(RationalPoly& p);
// p(x) -> p(x^2)
RationalPoly poly_compose_square(const RationalPoly& p);

RationalPoly laguerre_coefficients(int k);
// generalized Laguerre L_k^{(alpha)}, integer alpha >= 0
RationalPoly laguerre_coefficients(int k, int alpha);

// Integral of x^p L_k(x) e^{-x} over the half line.
BigRational laguerre_moment(int p, int k);
// Coefficients c_k with q(x) = sum_k c_k L_k(x).
std::vector<BigRational> laguerre_expansion(const RationalPoly& q);

std::vector<BigRational> change_of_basis(const std::vector<BigRational>& nu, int m);
std::vector<BigRational> inverse_change_of_basis(const std::vector<BigRational>& mu, int m);

enum class IdentityFamily { even_even, even_odd, odd_even, odd_odd };

struct IdentityCheck {
  BigRational lhs;
  BigRational rhs;
  bool equal = false;
};

IdentityCheck zeilberger_identity_check(IdentityFamily family, unsigned s, unsigned t);

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Laguerre rule for the weight e^{-x}.
Quadrature gauss_laguerre(int n = 200);

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> k) : k_(std::move(k)) {}
  MultiIndex(std::initializer_list<int> k) : k_(k) {}
  static MultiIndex zeros(int M) { return MultiIndex(std::vector<int>(M, 0)); }
  static MultiIndex constant(int M, int v) { return MultiIndex(std::vector<int>(M, v)); }

  int size() const { return static_cast<int>(k_.size()); }
  int operator[](int i) const { return k_[i]; }
  int& operator[](int i) { return k_[i]; }
  const std::vector<int>& entries() const { return k_; }

  int total() const;
  std::int64_t pi() const;
  bool leq(const MultiIndex& other) const;
  BigInteger factorial() const;
  bool is_zero() const;
  std::string str() const;

  MultiIndex operator+(const MultiIndex& o) const;
  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::vector<int> k_;
};

BigInteger binomial(const MultiIndex& n, const MultiIndex& k);
BigInteger simplex_count(int M, int m);

}  // namespace negwit
