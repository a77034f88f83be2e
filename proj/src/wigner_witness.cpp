#include "negwit/wigner_witness.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>

namespace negwit {

WitnessSpec WitnessSpec::fock(int n, std::complex<double> alpha) {
  WitnessSpec s;
  s.n = n;
  s.a.assign(n, 0.0);
  if (n >= 1) s.a[n - 1] = 1.0;
  s.alpha = alpha;
  return s;
}

WitnessSpec WitnessSpec::weighted(std::vector<double> a, std::complex<double> alpha) {
  WitnessSpec s;
  s.n = static_cast<int>(a.size());
  s.a = std::move(a);
  s.alpha = alpha;
  s.validate();
  return s;
}

double WitnessSpec::weight(int k) const {
  if (k < 1 || k > n) return 0.0;
  return a[k - 1];
}

void WitnessSpec::validate() const {
  if (n < 1) throw std::invalid_argument("witness needs n >= 1");
  if (int(a.size()) != n) throw std::invalid_argument("weights must have length n");
  double mx = 0.0;
  for (double v : a) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("weights must lie in [0,1]");
    mx = std::max(mx, v);
  }
  if (mx != 1.0) throw std::invalid_argument("largest weight must equal 1");
}

void FockDiagonal::validate(double tol) const {
  double s = 0.0;
  for (double v : F) {
    if (v < -tol) throw std::invalid_argument("negative Fock weight");
    s += v;
  }
  if (std::abs(s - 1.0) > tol) throw std::invalid_argument("Fock weights must sum to 1");
}

namespace {

void check_level(const WitnessSpec& spec, int m) {
  spec.validate();
  if (m < spec.n) throw std::invalid_argument("hierarchy level m must be at least n");
}

double ratio_double(const BigInteger& num, const BigInteger& den) { return BigRational(num, den).convert_to<double>(); }

}  // namespace

SdpProblem build_lower(const WitnessSpec& spec, int m) {
  check_level(spec, m);
  SdpProblem p;
  p.sense = Sense::maximize;
  int Q = p.add_block(m + 1);
  int F = p.add_block(-(m + 1));
  for (int k = 1; k <= spec.n; ++k)
    if (spec.weight(k) != 0.0) p.add_objective(F, k, k, spec.weight(k));
  int c = p.add_constraint(1.0);
  for (int k = 0; k <= m; ++k) p.add_entry(c, F, k, k, 1.0);
  for (int l = 1; l <= m; ++l) {
    c = p.add_constraint(0.0);
    for (int i = 0; i <= m; ++i) {
      int j = 2 * l - 1 - i;
      if (j > i && j <= m) p.add_entry(c, Q, i, j, 1.0);
    }
  }
  for (int l = 0; l <= m; ++l) {
    c = p.add_constraint(0.0);
    for (int i = 0; i <= m; ++i) {
      int j = 2 * l - i;
      if (j >= i && j <= m) p.add_entry(c, Q, i, j, 1.0);
    }
    for (int k = l; k <= m; ++k) {
      double v = ratio_double(binomial(k, l), factorial(l));
      p.add_entry(c, F, k, k, (k + l) % 2 ? v : -v);
    }
  }
  p.canonicalize();
  return p;
}

SdpProblem build_upper(const WitnessSpec& spec, int m) {
  check_level(spec, m);
  SdpProblem p;
  p.sense = Sense::maximize;
  int A = p.add_block(m + 1);
  int F = p.add_block(-(m + 1));
  for (int k = 1; k <= spec.n; ++k)
    if (spec.weight(k) != 0.0) p.add_objective(F, k, k, spec.weight(k));
  int c = p.add_constraint(1.0);
  for (int k = 0; k <= m; ++k) p.add_entry(c, F, k, k, 1.0);
  for (int i = 0; i <= m; ++i)
    for (int j = i; j <= m; ++j) {
      c = p.add_constraint(0.0);
      p.add_entry(c, A, i, j, i == j ? 1.0 : 0.5);
      if ((i + j) % 2) continue;
      int l = (i + j) / 2;
      for (int k = 0; k <= l; ++k) p.add_entry(c, F, k, k, -(binomial(l, k) * factorial(l)).convert_to<double>());
    }
  p.canonicalize();
  return p;
}

namespace {

// Free variables y and mu split into nonnegative parts, with slacks for
// y >= a_k + mu_k. Diagonal block layout: [y+, y-, mu+ (m+1), mu- (m+1), t (m+1)].
struct DualLayout {
  int block;
  int yp = 0, ym = 1;
  int m;
  int mup(int k) const { return 2 + k; }
  int mum(int k) const { return 3 + m + k; }
  int t(int k) const { return 4 + 2 * m + k; }
  int size() const { return 5 + 3 * m; }
};

DualLayout add_dual_common(SdpProblem& p, const WitnessSpec& spec, int m) {
  DualLayout d;
  d.m = m;
  d.block = p.add_block(-d.size());
  p.sense = Sense::minimize;
  p.add_objective(d.block, d.yp, d.yp, 1.0);
  p.add_objective(d.block, d.ym, d.ym, -1.0);
  for (int k = 0; k <= m; ++k) {
    int c = p.add_constraint(spec.weight(k));
    p.add_entry(c, d.block, d.yp, d.yp, 1.0);
    p.add_entry(c, d.block, d.ym, d.ym, -1.0);
    p.add_entry(c, d.block, d.mup(k), d.mup(k), -1.0);
    p.add_entry(c, d.block, d.mum(k), d.mum(k), 1.0);
    p.add_entry(c, d.block, d.t(k), d.t(k), -1.0);
  }
  return d;
}

}  // namespace

SdpProblem build_lower_dual(const WitnessSpec& spec, int m) {
  check_level(spec, m);
  SdpProblem p;
  int A = p.add_block(m + 1);
  DualLayout d = add_dual_common(p, spec, m);
  for (int i = 0; i <= m; ++i)
    for (int j = i; j <= m; ++j) {
      if ((i + j) % 2) continue;
      int l = (i + j) / 2;
      int c = p.add_constraint(0.0);
      p.add_entry(c, A, i, j, i == j ? 1.0 : 0.5);
      for (int k = 0; k <= l; ++k) {
        double v = (binomial(l, k) * factorial(l)).convert_to<double>();
        p.add_entry(c, d.block, d.mup(k), d.mup(k), -v);
        p.add_entry(c, d.block, d.mum(k), d.mum(k), v);
      }
    }
  p.canonicalize();
  return p;
}

SdpProblem build_upper_dual(const WitnessSpec& spec, int m) {
  check_level(spec, m);
  SdpProblem p;
  int Q = p.add_block(m + 1);
  DualLayout d = add_dual_common(p, spec, m);
  for (int l = 0; l <= m; ++l) {
    int c = p.add_constraint(0.0);
    for (int i = 0; i <= m; ++i) {
      int j = 2 * l - i;
      if (j >= i && j <= m) p.add_entry(c, Q, i, j, 1.0);
    }
    for (int k = l; k <= m; ++k) {
      double v = ratio_double(binomial(k, l), factorial(l));
      if ((k + l) % 2) v = -v;
      p.add_entry(c, d.block, d.mup(k), d.mup(k), -v);
      p.add_entry(c, d.block, d.mum(k), d.mum(k), v);
    }
  }
  p.canonicalize();
  return p;
}

std::vector<double> factorial_scales(const SdpProblem& problem, int m) {
  std::vector<double> s(problem.total_dim(), 1.0);
  double f = 1.0;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) f *= k;
    s[k] = 1.0 / f;
  }
  return s;
}

LaguerreProducts::LaguerreProducts(int m) : m_(m) {
  std::vector<RationalPoly> basis(m + 1);
  for (int a = 0; a <= m; ++a) {
    if (a % 2 == 0) {
      basis[a] = laguerre_coefficients(a / 2);
    } else {
      RationalPoly q = laguerre_coefficients((a - 1) / 2, 1);
      q.insert(q.begin(), BigRational(0));
      basis[a] = q;
    }
  }
  table_.assign(m + 1, std::vector<std::vector<BigRational>>(m + 1));
  dtable_.assign(m + 1, std::vector<std::vector<double>>(m + 1));
  for (int a = 0; a <= m; ++a)
    for (int c = a % 2; c <= m; c += 2) {
      if (c < a) {
        table_[a][c] = table_[c][a];
      } else {
        // odd products carry one factor x split between the two odd polynomials
        RationalPoly prod;
        if (a % 2 == 0) {
          prod = poly_mul(basis[a], basis[c]);
        } else {
          RationalPoly qa(basis[a].begin() + 1, basis[a].end());
          prod = poly_mul(qa, basis[c]);
        }
        table_[a][c] = laguerre_expansion(prod);
      }
      for (const auto& v : table_[a][c]) dtable_[a][c].push_back(v.convert_to<double>());
    }
}

double LaguerreProducts::value(int a, int c, int k) const {
  const auto& t = dtable_[a][c];
  return k < int(t.size()) ? t[k] : 0.0;
}

const LaguerreProducts& laguerre_products(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<LaguerreProducts>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<LaguerreProducts>(m);
  return *slot;
}

namespace {

struct LaguerreLayout {
  // parity class of each basis element, and its position inside the class block
  std::vector<int> cls, pos;
  std::vector<int> class_block;
  std::map<int, int> class_index;
  int max_degree = 0;
};

int parity_key(const MultiIndex& a) {
  int key = 0;
  for (int i = 0; i < a.size(); ++i) key |= (a[i] & 1) << i;
  return key;
}

LaguerreLayout add_classes(SdpProblem& p, const std::vector<MultiIndex>& basis) {
  LaguerreLayout L;
  std::map<int, int> counts;
  for (const auto& a : basis) {
    counts[parity_key(a)]++;
    for (int i = 0; i < a.size(); ++i) L.max_degree = std::max(L.max_degree, a[i]);
  }
  int idx = 0;
  for (auto& [key, cnt] : counts) {
    L.class_index[key] = idx++;
    L.class_block.push_back(p.add_block(cnt));
  }
  std::vector<int> fill(L.class_block.size(), 0);
  for (const auto& a : basis) {
    int ci = L.class_index[parity_key(a)];
    L.cls.push_back(ci);
    L.pos.push_back(fill[ci]++);
  }
  return L;
}

// For every Fock index k, the entries of G_k over pairs of basis elements.
struct GramEntry {
  int block, row, col;
  double value;
};

std::map<MultiIndex, std::vector<GramEntry>> gram_entries(const std::vector<MultiIndex>& basis,
                                                          const LaguerreLayout& L) {
  const LaguerreProducts& lp = laguerre_products(L.max_degree);
  std::map<MultiIndex, std::vector<GramEntry>> out;
  int M = basis.empty() ? 0 : basis[0].size();
  for (size_t u = 0; u < basis.size(); ++u)
    for (size_t v = u; v < basis.size(); ++v) {
      if (L.cls[u] != L.cls[v]) continue;
      const MultiIndex& a = basis[u];
      const MultiIndex& c = basis[v];
      // tensor product of the per-mode coefficient lists
      std::vector<std::pair<MultiIndex, double>> terms{{MultiIndex::zeros(M), 1.0}};
      for (int i = 0; i < M; ++i) {
        const auto& co = lp.coef(a[i], c[i]);
        std::vector<std::pair<MultiIndex, double>> next;
        for (const auto& [k, w] : terms)
          for (int t = 0; t < int(co.size()); ++t) {
            double x = lp.value(a[i], c[i], t);
            if (x == 0.0) continue;
            MultiIndex kk = k;
            kk[i] = t;
            next.push_back({kk, w * x});
          }
        terms = std::move(next);
      }
      int blk = L.class_block[L.cls[u]];
      for (const auto& [k, w] : terms) out[k].push_back({blk, L.pos[u], L.pos[v], w});
    }
  return out;
}

double parity_sign(const MultiIndex& k) { return k.total() % 2 ? -1.0 : 1.0; }

}  // namespace

SdpProblem laguerre_lower_program(const std::vector<MultiIndex>& basis, const std::vector<MultiIndex>& fock,
                                  const std::map<MultiIndex, double>& weights) {
  SdpProblem p;
  p.sense = Sense::maximize;
  LaguerreLayout L = add_classes(p, basis);
  int F = p.add_block(-int(fock.size()));
  std::map<MultiIndex, int> fpos;
  for (size_t i = 0; i < fock.size(); ++i) fpos[fock[i]] = int(i);
  for (const auto& [k, w] : weights) {
    auto it = fpos.find(k);
    if (it == fpos.end()) throw std::invalid_argument("weight outside the Fock index set");
    if (w != 0.0) p.add_objective(F, it->second, it->second, w);
  }
  int c = p.add_constraint(1.0);
  for (size_t i = 0; i < fock.size(); ++i) p.add_entry(c, F, int(i), int(i), 1.0);
  auto G = gram_entries(basis, L);
  std::set<MultiIndex> keys(fock.begin(), fock.end());
  for (const auto& [k, e] : G) keys.insert(k);
  for (const auto& k : keys) {
    c = p.add_constraint(0.0);
    auto git = G.find(k);
    if (git != G.end())
      for (const auto& e : git->second) p.add_entry(c, e.block, e.row, e.col, e.value);
    auto it = fpos.find(k);
    if (it != fpos.end()) p.add_entry(c, F, it->second, it->second, -parity_sign(k));
  }
  p.canonicalize();
  return p;
}

SdpProblem laguerre_upper_program(const std::vector<MultiIndex>& basis, const std::vector<MultiIndex>& fock,
                                  const std::map<MultiIndex, double>& weights) {
  // Dual of max sum w_k F_k s.t. sum F = 1, F >= 0, sum_k (-1)^|k| F_k G_k psd:
  // y = w_k + mu_k + s_k for every k, mu_k = (-1)^|k| <G_k, Q>, minimise y,
  // with y eliminated through k = 0.
  if (fock.empty() || !fock[0].is_zero()) throw std::invalid_argument("Fock index set must start at zero");
  auto w0 = weights.find(fock[0]);
  if (w0 != weights.end() && w0->second != 0.0) throw std::invalid_argument("weight at the zero index must vanish");
  SdpProblem p;
  p.sense = Sense::minimize;
  LaguerreLayout L = add_classes(p, basis);
  int S = p.add_block(-int(fock.size()));
  auto G = gram_entries(basis, L);
  auto add_mu = [&](int c, const MultiIndex& k, double scale) {
    auto it = G.find(k);
    if (it == G.end()) return;
    double sg = parity_sign(k) * scale;
    for (const auto& e : it->second) p.add_entry(c, e.block, e.row, e.col, sg * e.value);
  };
  for (const auto& [k, e] : G)
    if (std::find(fock.begin(), fock.end(), k) == fock.end())
      throw std::invalid_argument("basis products leave the Fock index set");
  auto gobj = G.find(fock[0]);
  if (gobj != G.end())
    for (const auto& e : gobj->second) p.add_objective(e.block, e.row, e.col, e.value);
  p.add_objective(S, 0, 0, 1.0);
  for (size_t i = 1; i < fock.size(); ++i) {
    auto wi = weights.find(fock[i]);
    double w = wi == weights.end() ? 0.0 : wi->second;
    int c = p.add_constraint(-w);
    add_mu(c, fock[i], 1.0);
    add_mu(c, fock[0], -1.0);
    p.add_entry(c, S, int(i), int(i), 1.0);
    p.add_entry(c, S, 0, 0, -1.0);
  }
  p.canonicalize();
  return p;
}

namespace {

std::vector<MultiIndex> single_mode_range(int m) {
  std::vector<MultiIndex> r;
  for (int k = 0; k <= m; ++k) r.push_back(MultiIndex{k});
  return r;
}

std::map<MultiIndex, double> single_mode_weights(const WitnessSpec& spec) {
  std::map<MultiIndex, double> w;
  for (int k = 1; k <= spec.n; ++k) w[MultiIndex{k}] = spec.weight(k);
  return w;
}

}  // namespace

SdpProblem build_lower_laguerre(const WitnessSpec& spec, int m) {
  check_level(spec, m);
  auto r = single_mode_range(m);
  return laguerre_lower_program(r, r, single_mode_weights(spec));
}

SdpProblem build_upper_laguerre(const WitnessSpec& spec, int m) {
  check_level(spec, m);
  auto r = single_mode_range(m);
  return laguerre_upper_program(r, r, single_mode_weights(spec));
}

BigRational analytic_value(int n) {
  if (n < 1) throw std::invalid_argument("analytic solution needs n >= 1");
  BigInteger d = 1;
  d <<= n;
  return BigRational(binomial(n, n / 2), d);
}

std::vector<BigRational> analytic_primal(int n) {
  if (n < 1) throw std::invalid_argument("analytic solution needs n >= 1");
  BigInteger d = 1;
  d <<= n;
  std::vector<BigRational> F(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (n % 2 == 0) {
      if (k % 2) continue;
      F[k] = BigRational(binomial(k, k / 2) * binomial(n - k, (n - k) / 2), d);
    } else {
      BigInteger w = binomial(n / 2, k / 2);
      F[k] = BigRational(binomial(n, n / 2) * w * w, d * binomial(n, k));
    }
  }
  return F;
}

AnalyticDual analytic_dual(int n) {
  if (n < 1) throw std::invalid_argument("analytic solution needs n >= 1");
  AnalyticDual out;
  out.y = analytic_value(n);
  out.mu.assign(n + 1, out.y);
  out.mu[n] = out.y - 1;
  // Gram matrix of the triangular factor, odd entries combined so that the
  // square roots cancel
  auto even = [](int i, int j) { return BigRational(pow(BigInteger(2), unsigned(i)) * factorial(i) * binomial(i, j)); };
  auto odd_sq = [](int i, int i2, int j) {
    // l_{2i+1,2j+1} l_{2i2+1,2j+1}
    BigInteger num = pow(BigInteger(2), unsigned(i + i2 + 1)) * factorial(i + 1) * factorial(i2 + 1) *
                     binomial(i, j) * binomial(i2, j);
    return BigRational(num, BigInteger(j + 1));
  };
  out.gram.assign(n + 1, std::vector<BigRational>(n + 1));
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      if ((a + b) % 2) continue;
      BigRational s;
      for (int c = a % 2; c <= std::min(a, b); c += 2) {
        if (a == n && c == n) continue;
        if (b == n && c == n) continue;
        if (a % 2 == 0)
          s += even(a / 2, c / 2) * even(b / 2, c / 2);
        else
          s += odd_sq((a - 1) / 2, (b - 1) / 2, (c - 1) / 2);
      }
      out.gram[a][b] = s;
    }
  out.A = moment_matrix(out.mu, n);
  return out;
}

SosCertificate sos_certificate(int n) {
  if (n < 1) throw std::invalid_argument("certificate needs n >= 1");
  SosCertificate s;
  s.n = n;
  auto F = analytic_primal(n);
  RationalPoly lhs;
  for (int k = 0; k <= n; ++k) {
    if (F[k] == 0) continue;
    RationalPoly Lk = poly_compose_square(laguerre_coefficients(k));
    lhs = poly_add(lhs, poly_scale(Lk, k % 2 ? BigRational(-F[k]) : F[k]));
  }
  poly_trim(lhs);
  s.lhs = lhs;
  s.norm_sq = F[n] / BigRational(factorial(n));
  s.ratios.assign(n + 1, BigRational(0));
  int h = n / 2;
  for (int k = 0; k <= n; k += 2) {
    if (n % 2 == 1 && k >= n) break;
    BigInteger w = binomial(h, k / 2);
    BigRational c(pow(BigInteger(2), unsigned(k / 2)) * factorial(k / 2) * w * w);
    if (n % 2 == 1) c *= BigRational(n + 1, n - k + 1);
    s.ratios[n - k] = (k / 2) % 2 ? BigRational(-c) : c;
  }
  RationalPoly sq = poly_scale(poly_mul(s.ratios, s.ratios), s.norm_sq);
  poly_trim(sq);
  s.verified = sq == lhs;
  return s;
}

Eigen::MatrixXd moment_matrix(const std::vector<double>& s, int m) {
  if (int(s.size()) < m + 1) throw std::invalid_argument("sequence shorter than m+1");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      if ((i + j) % 2) continue;
      int l = (i + j) / 2;
      double v = 0.0;
      for (int k = 0; k <= l; ++k) v += s[k] * (binomial(l, k) * factorial(l)).convert_to<double>();
      A(i, j) = v;
    }
  return A;
}

RationalMatrix moment_matrix(const std::vector<BigRational>& s, int m) {
  if (int(s.size()) < m + 1) throw std::invalid_argument("sequence shorter than m+1");
  RationalMatrix A(m + 1, std::vector<BigRational>(m + 1));
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j) {
      if ((i + j) % 2) continue;
      int l = (i + j) / 2;
      for (int k = 0; k <= l; ++k) A[i][j] += s[k] * BigRational(binomial(l, k) * factorial(l));
    }
  return A;
}

StrictPoint strict_feasible(int m) {
  StrictPoint p;
  BigInteger d = (BigInteger(1) << (m + 1)) - 1;
  for (int k = 0; k <= m; ++k) {
    p.F.push_back(BigRational(binomial(m + 1, k + 1), d));
    p.Q_diagonal.push_back(BigRational(BigInteger(1), factorial(k) * d));
  }
  return p;
}

std::vector<BigRational> lower_residuals(int m, const std::vector<BigRational>& F, const RationalMatrix& Q) {
  std::vector<BigRational> r;
  BigRational s;
  for (int k = 0; k <= m; ++k) s += F.at(k);
  r.push_back(s - 1);
  for (int l = 1; l <= m; ++l) {
    BigRational t;
    for (int i = 0; i <= m; ++i) {
      int j = 2 * l - 1 - i;
      if (j >= 0 && j <= m) t += Q[i][j];
    }
    r.push_back(t);
  }
  for (int l = 0; l <= m; ++l) {
    BigRational t;
    for (int i = 0; i <= m; ++i) {
      int j = 2 * l - i;
      if (j >= 0 && j <= m) t += Q[i][j];
    }
    for (int k = l; k <= m; ++k) {
      BigRational v(binomial(k, l), factorial(l));
      t -= ((k + l) % 2 ? BigRational(-v) : v) * F[k];
    }
    r.push_back(t);
  }
  return r;
}

namespace {

SdpSolution solve_escalating(const SdpProblem& p, const ThresholdOptions& opt) {
  if (opt.precision) return solve(p, opt.tol, *opt.precision);
  SdpSolution s = solve(p, opt.tol, Precision::binary64);
  if (s.status == SolveStatus::optimal) return s;
  return solve(p, opt.tol, Precision::extended);
}

}  // namespace

std::optional<double> analytic_threshold(const WitnessSpec& spec) {
  spec.validate();
  int ones = 0;
  for (double v : spec.a) ones += v != 0.0;
  if (ones != 1 || spec.weight(spec.n) != 1.0) return std::nullopt;
  if (spec.n == 1) return 0.5;
  if (spec.n == 2 && laguerre_two_bound(1000)) return 0.5;
  return std::nullopt;
}

std::vector<ThresholdBounds> threshold_bounds(const WitnessSpec& spec, int m_max, const ThresholdOptions& opt) {
  spec.validate();
  if (m_max < spec.n) throw std::invalid_argument("m_max must be at least n");
  double exact = 2.0;
  if (opt.use_analytic_upper) exact = analytic_threshold(spec).value_or(2.0);
  std::vector<ThresholdBounds> out;
  int m0 = opt.m_min < 0 ? spec.n : std::max(opt.m_min, spec.n);
  for (int m = m0; m <= m_max; ++m) {
    ThresholdBounds t;
    t.m = m;
    SdpSolution lo = solve_escalating(build_lower_laguerre(spec, m), opt);
    SdpSolution up = solve_escalating(build_upper_laguerre(spec, m), opt);
    t.lower = lo.primal_value;
    t.hierarchy_upper = up.primal_value;
    t.upper = up.primal_value;
    t.lower_status = lo.status;
    t.upper_status = up.status;
    t.lower_precision = lo.precision;
    t.upper_precision = up.precision;
    // every level is a valid bound, so carry the best one forward
    if (!out.empty()) {
      const ThresholdBounds& prev = out.back();
      if (prev.lower_status == SolveStatus::optimal && (lo.status != SolveStatus::optimal || prev.lower > t.lower))
        t.lower = prev.lower, t.lower_status = SolveStatus::optimal;
      if (prev.upper_status == SolveStatus::optimal && (up.status != SolveStatus::optimal || prev.upper < t.upper))
        t.upper = prev.upper, t.upper_status = SolveStatus::optimal;
    }
    if (exact < t.upper) {
      t.upper = exact;
      t.upper_status = SolveStatus::optimal;
      t.analytic_upper = true;
    }
    out.push_back(t);
  }
  return out;
}

bool laguerre_two_bound(int k_max) {
  for (int k = 0; k <= k_max; ++k)
    if (std::abs(laguerre_poly(k, 2.0)) > 1.0 + 1e-12) return false;
  return true;
}

}  // namespace negwit
