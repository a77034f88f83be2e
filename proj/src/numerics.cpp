#include "negwit/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace negwit {

BigInteger binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInteger r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

BigInteger factorial(unsigned n) {
  BigInteger r;
  mpz_fac_ui(r.backend().data(), n);
  return r;
}

double binomial_double(unsigned n, unsigned k) { return binomial(n, k).convert_to<double>(); }

std::string to_string(const BigRational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

RationalPoly poly_mul(const RationalPoly& p, const RationalPoly& q) {
  if (p.empty() || q.empty()) return {};
  RationalPoly r(p.size() + q.size() - 1);
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

RationalPoly poly_add(const RationalPoly& p, const RationalPoly& q) {
  RationalPoly r(std::max(p.size(), q.size()));
  for (size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (size_t i = 0; i < q.size(); ++i) r[i] += q[i];
  return r;
}

RationalPoly poly_scale(const RationalPoly& p, const BigRational& c) {
  RationalPoly r(p);
  for (auto& v : r) v *= c;
  return r;
}

void poly_trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RationalPoly poly_compose_square(const RationalPoly& p) {
  if (p.empty()) return {};
  RationalPoly r(2 * p.size() - 1);
  for (size_t i = 0; i < p.size(); ++i) r[2 * i] = p[i];
  return r;
}

RationalPoly laguerre_coefficients(int k) { return laguerre_coefficients(k, 0); }

RationalPoly laguerre_coefficients(int k, int alpha) {
  RationalPoly c(k + 1);
  for (int l = 0; l <= k; ++l) {
    BigRational v(binomial(k + alpha, k - l), factorial(l));
    c[l] = (l % 2) ? BigRational(-v) : v;
  }
  return c;
}

BigRational laguerre_moment(int p, int k) {
  if (k > p) return 0;
  BigRational v(binomial(p, k) * factorial(p));
  return (k % 2) ? BigRational(-v) : v;
}

std::vector<BigRational> laguerre_expansion(const RationalPoly& q) {
  // x^p = sum_{k<=p} (-1)^k binom(p,k) p! L_k(x)
  std::vector<BigRational> c(q.size());
  for (size_t p = 0; p < q.size(); ++p) {
    if (q[p] == 0) continue;
    for (size_t k = 0; k <= p; ++k) c[k] += q[p] * laguerre_moment(int(p), int(k));
  }
  return c;
}

std::vector<BigRational> change_of_basis(const std::vector<BigRational>& nu, int m) {
  if (int(nu.size()) < m + 1) throw std::invalid_argument("sequence shorter than m+1");
  std::vector<BigRational> mu(m + 1);
  for (int k = 0; k <= m; ++k) {
    for (int l = 0; l <= k; ++l) {
      BigRational c(binomial(k, l), factorial(l));
      mu[k] += ((k + l) % 2 ? BigRational(-c) : c) * nu[l];
    }
  }
  return mu;
}

std::vector<BigRational> inverse_change_of_basis(const std::vector<BigRational>& mu, int m) {
  if (int(mu.size()) < m + 1) throw std::invalid_argument("sequence shorter than m+1");
  std::vector<BigRational> nu(m + 1);
  for (int l = 0; l <= m; ++l)
    for (int k = 0; k <= l; ++k) nu[l] += mu[k] * BigRational(binomial(l, k) * factorial(l));
  return nu;
}

namespace {

BigRational b(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return BigRational(binomial(n, k));
}

BigRational f(int n) { return BigRational(factorial(n)); }

BigRational pow2(int e) {
  BigInteger r = 1;
  r <<= e;
  return BigRational(r);
}

IdentityCheck even_even(int s, int t) {
  BigRational lhs, rhs;
  for (int k = s; k <= t; ++k) lhs += b(2 * k, 2 * s) * b(2 * k, k) * b(2 * t - 2 * k, t - k);
  lhs /= pow2(2 * t) * f(2 * s);
  for (int i = 0; i <= 2 * t - 2 * s; ++i) {
    BigRational w = b(t, i) * b(t, 2 * t - 2 * s - i);
    if (w == 0) continue;
    rhs += f(i) * f(2 * t - 2 * s - i) * b(2 * t, t) * w * w;
  }
  rhs /= pow2(2 * s) * f(2 * t);
  return {lhs, rhs, lhs == rhs};
}

IdentityCheck even_odd(int s, int t) {
  BigRational lhs, rhs;
  for (int k = s + 1; k <= t; ++k) lhs += b(2 * k, 2 * s + 1) * b(2 * k, k) * b(2 * t - 2 * k, t - k);
  lhs /= pow2(2 * t) * f(2 * s + 1);
  for (int i = 0; i <= 2 * t - 2 * s - 1; ++i) {
    BigRational w = b(t, i) * b(t, 2 * t - 2 * s - i - 1);
    if (w == 0) continue;
    rhs += f(i) * f(2 * t - 2 * s - i - 1) * b(2 * t, t) * w * w;
  }
  rhs /= pow2(2 * s + 1) * f(2 * t);
  return {lhs, rhs, lhs == rhs};
}

IdentityCheck odd_even(int s, int t) {
  BigRational lhs, rhs;
  for (int k = 0; k <= t - s; ++k) {
    BigRational w = b(t, k + s);
    BigRational term = w * w * b(2 * k + 2 * s, 2 * s) / b(2 * t + 1, 2 * k + 2 * s);
    BigRational r = BigRational(2 * k + 2 * s + 1) * (2 * k + 2 * s + 1) /
                    (BigRational(2 * k + 1) * (2 * t - 2 * s - 2 * k + 1));
    lhs += term * (1 - r);
  }
  lhs *= f(2 * t + 1) / f(2 * s);
  for (int i = 0; i <= 2 * t + 1 - 2 * s; ++i) {
    BigRational w = b(t, i) * b(t, 2 * t - 2 * s - i + 1);
    if (w == 0) continue;
    BigRational num = pow2(2 * t - 2 * s + 1) * (2 * t + 2) * (2 * t + 2) * f(i) * f(2 * t + 1 - 2 * s - i);
    BigRational den = BigRational(2 * t - 2 * i + 2) * (4 * s + 2 * i - 2 * t);
    rhs -= num / den * w * w;
  }
  return {lhs, rhs, lhs == rhs};
}

IdentityCheck odd_odd(int s, int t) {
  BigRational lhs, rhs;
  for (int k = 0; k <= t - s; ++k) {
    BigRational w = b(t, k + s);
    if (k == 0) {
      // the factored form is 0 * infinity here
      lhs += w * w / b(2 * t + 1, 2 * s + 1);
      continue;
    }
    BigRational term = b(2 * k + 2 * s, 2 * s + 1) * w * w / b(2 * t + 1, 2 * k + 2 * s);
    BigRational r = BigRational(2 * k + 2 * s + 1) * (2 * k + 2 * s + 1) /
                    (BigRational(2 * k) * (2 * t - 2 * k - 2 * s + 1));
    lhs += term * (r - 1);
  }
  lhs *= f(2 * t + 1) / f(2 * s + 1);
  for (int i = 0; i <= 2 * t - 2 * s; ++i) {
    BigRational w = b(t, i) * b(t, 2 * t - 2 * s - i);
    if (w == 0) continue;
    BigRational num = pow2(2 * t - 2 * s) * (2 * t + 2) * (2 * t + 2) * f(i) * f(2 * t - 2 * s - i);
    BigRational den = BigRational(2 * t - 2 * i + 2) * (4 * s + 2 * i - 2 * t + 2);
    rhs += num / den * w * w;
  }
  return {lhs, rhs, lhs == rhs};
}

}  // namespace

IdentityCheck zeilberger_identity_check(IdentityFamily family, unsigned s, unsigned t) {
  if (s > t) throw std::invalid_argument("identity check needs s <= t");
  switch (family) {
    case IdentityFamily::even_even: return even_even(int(s), int(t));
    case IdentityFamily::even_odd: return even_odd(int(s), int(t));
    case IdentityFamily::odd_even: return odd_even(int(s), int(t));
    case IdentityFamily::odd_odd: return odd_odd(int(s), int(t));
  }
  return {};
}

Quadrature gauss_laguerre(int n) {
  // Golub-Welsch on the Jacobi matrix of the Laguerre recurrence
  Eigen::VectorXd diag(n), sub(n - 1);
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0;
  for (int i = 0; i < n - 1; ++i) sub(i) = i + 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  // eigenvector entries underflow for large nodes; use w = x / ((n+1) L_{n+1}(x))^2
  for (int i = 0; i < n; ++i) {
    long double x = es.eigenvalues()(i);
    long double l = laguerre_poly(n + 1, x);
    q.nodes[i] = static_cast<double>(x);
    q.weights[i] = static_cast<double>(x / ((n + 1.0L) * (n + 1.0L) * l * l));
  }
  return q;
}

int MultiIndex::total() const { return std::accumulate(k_.begin(), k_.end(), 0); }

std::int64_t MultiIndex::pi() const {
  std::int64_t p = 1;
  for (int v : k_) p *= v + 1;
  return p;
}

bool MultiIndex::leq(const MultiIndex& other) const {
  if (other.size() != size()) throw std::invalid_argument("multi-index size mismatch");
  for (int i = 0; i < size(); ++i)
    if (k_[i] > other.k_[i]) return false;
  return true;
}

BigInteger MultiIndex::factorial() const {
  BigInteger r = 1;
  for (int v : k_) r *= negwit::factorial(v);
  return r;
}

bool MultiIndex::is_zero() const {
  return std::all_of(k_.begin(), k_.end(), [](int v) { return v == 0; });
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (int i = 0; i < size(); ++i) s += (i ? "," : "") + std::to_string(k_[i]);
  return s + ")";
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.size() != size()) throw std::invalid_argument("multi-index size mismatch");
  MultiIndex r(*this);
  for (int i = 0; i < size(); ++i) r.k_[i] += o.k_[i];
  return r;
}

BigInteger binomial(const MultiIndex& n, const MultiIndex& k) {
  if (n.size() != k.size()) throw std::invalid_argument("multi-index size mismatch");
  BigInteger r = 1;
  for (int i = 0; i < n.size(); ++i) {
    if (n[i] < 0 || k[i] < 0) return 0;
    r *= binomial(unsigned(n[i]), unsigned(k[i]));
  }
  return r;
}

BigInteger simplex_count(int M, int m) { return binomial(unsigned(M + m), unsigned(m)); }

}  // namespace negwit
