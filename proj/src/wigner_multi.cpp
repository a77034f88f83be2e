#include "negwit/wigner_multi.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace negwit {

MultiWitnessSpec MultiWitnessSpec::fock(const MultiIndex& n) {
  MultiWitnessSpec s;
  s.M = n.size();
  s.n = n;
  s.alpha.assign(s.M, {0.0, 0.0});
  return s;
}

double MultiWitnessSpec::weight(const MultiIndex& k) const {
  if (a.empty()) return k == n ? 1.0 : 0.0;
  auto it = a.find(k);
  return it == a.end() ? 0.0 : it->second;
}

std::map<MultiIndex, double> MultiWitnessSpec::weights() const {
  if (a.empty()) return {{n, 1.0}};
  return a;
}

void MultiWitnessSpec::validate() const {
  if (M < 1) throw std::invalid_argument("mode count must be positive");
  if (n.size() != M) throw std::invalid_argument("target index must have M entries");
  if (n.is_zero()) throw std::invalid_argument("target index must not be zero");
  for (int i = 0; i < M; ++i)
    if (n[i] < 0) throw std::invalid_argument("negative Fock index");
  if (!alpha.empty() && int(alpha.size()) != M) throw std::invalid_argument("alpha must have M entries");
  if (a.empty()) return;
  double mx = 0.0;
  for (const auto& [k, w] : a) {
    if (k.size() != M || k.is_zero() || !k.leq(n)) throw std::invalid_argument("weights are indexed by 0 != k <= n");
    if (w < 0.0 || w > 1.0) throw std::invalid_argument("weights must lie in [0,1]");
    mx = std::max(mx, w);
  }
  if (mx != 1.0) throw std::invalid_argument("largest weight must equal 1");
}

std::vector<MultiIndex> iterate_indices(IndexMode mode, int m, int M) {
  if (m < 0) throw std::invalid_argument("level must be nonnegative");
  if (M < 1) throw std::invalid_argument("mode count must be positive");
  std::vector<MultiIndex> out;
  MultiIndex k = MultiIndex::zeros(M);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == M) {
      if (out.size() == max_index_count) throw std::length_error("index set exceeds the enumeration cap");
      out.push_back(k);
      return;
    }
    int top = mode == IndexMode::triangle ? m - used : m;
    for (int v = 0; v <= top; ++v) {
      k[i] = v;
      rec(i + 1, used + v);
    }
    k[i] = 0;
  };
  rec(0, 0);
  return out;
}

namespace {

void check_level(const MultiWitnessSpec& spec, IndexMode mode, int m) {
  spec.validate();
  bool ok = mode == IndexMode::triangle ? m >= spec.n.total() : spec.n.leq(MultiIndex::constant(spec.M, m));
  if (!ok) throw std::invalid_argument("hierarchy level too small for the target index");
}

bool has_odd(const MultiIndex& r) {
  for (int i = 0; i < r.size(); ++i)
    if (r[i] % 2) return true;
  return false;
}

MultiIndex halve(const MultiIndex& r) {
  MultiIndex l = r;
  for (int i = 0; i < l.size(); ++i) l[i] /= 2;
  return l;
}

// prod_i (-1)^{k_i+l_i} binom(k_i,l_i) / l_i!
BigRational lower_coefficient(const MultiIndex& k, const MultiIndex& l) {
  BigRational v(binomial(k, l), l.factorial());
  return (k.total() + l.total()) % 2 ? BigRational(-v) : v;
}

void add_objective_weights(SdpProblem& p, int F, const std::vector<MultiIndex>& idx, const MultiWitnessSpec& spec) {
  for (size_t u = 0; u < idx.size(); ++u) {
    double w = spec.weight(idx[u]);
    if (w != 0.0) p.add_objective(F, int(u), int(u), w);
  }
}

// pairs u <= v grouped by a_u + a_v
std::map<MultiIndex, std::vector<std::pair<int, int>>> antidiagonals(const std::vector<MultiIndex>& idx) {
  std::map<MultiIndex, std::vector<std::pair<int, int>>> out;
  for (size_t u = 0; u < idx.size(); ++u)
    for (size_t v = u; v < idx.size(); ++v) out[idx[u] + idx[v]].push_back({int(u), int(v)});
  return out;
}

}  // namespace

SdpProblem build_lower_multi(const MultiWitnessSpec& spec, IndexMode mode, int m) {
  check_level(spec, mode, m);
  auto idx = iterate_indices(mode, m, spec.M);
  SdpProblem p;
  p.sense = Sense::maximize;
  int Q = p.add_block(int(idx.size()));
  int F = p.add_block(-int(idx.size()));
  add_objective_weights(p, F, idx, spec);
  int c = p.add_constraint(1.0);
  for (size_t u = 0; u < idx.size(); ++u) p.add_entry(c, F, int(u), int(u), 1.0);
  for (const auto& [r, pairs] : antidiagonals(idx)) {
    c = p.add_constraint(0.0);
    for (auto [u, v] : pairs) p.add_entry(c, Q, u, v, 1.0);
    if (has_odd(r)) continue;
    MultiIndex l = halve(r);
    for (size_t u = 0; u < idx.size(); ++u)
      if (l.leq(idx[u])) p.add_entry(c, F, int(u), int(u), -lower_coefficient(idx[u], l).convert_to<double>());
  }
  p.canonicalize();
  return p;
}

SdpProblem build_upper_multi(const MultiWitnessSpec& spec, IndexMode mode, int m) {
  check_level(spec, mode, m);
  auto idx = iterate_indices(mode, m, spec.M);
  SdpProblem p;
  p.sense = Sense::maximize;
  int A = p.add_block(int(idx.size()));
  int F = p.add_block(-int(idx.size()));
  add_objective_weights(p, F, idx, spec);
  int c = p.add_constraint(1.0);
  for (size_t u = 0; u < idx.size(); ++u) p.add_entry(c, F, int(u), int(u), 1.0);
  for (size_t u = 0; u < idx.size(); ++u)
    for (size_t v = u; v < idx.size(); ++v) {
      c = p.add_constraint(0.0);
      p.add_entry(c, A, int(u), int(v), u == v ? 1.0 : 0.5);
      MultiIndex r = idx[u] + idx[v];
      if (has_odd(r)) continue;
      MultiIndex l = halve(r);
      for (size_t k = 0; k < idx.size(); ++k)
        if (idx[k].leq(l))
          p.add_entry(c, F, int(k), int(k), -(binomial(l, idx[k]) * l.factorial()).convert_to<double>());
    }
  p.canonicalize();
  return p;
}

SdpProblem build_lower_multi_laguerre(const MultiWitnessSpec& spec, IndexMode mode, int m) {
  check_level(spec, mode, m);
  auto idx = iterate_indices(mode, m, spec.M);
  return laguerre_lower_program(idx, idx, spec.weights());
}

SdpProblem build_upper_multi_laguerre(const MultiWitnessSpec& spec, IndexMode mode, int m) {
  check_level(spec, mode, m);
  auto idx = iterate_indices(mode, m, spec.M);
  return laguerre_upper_program(idx, idx, spec.weights());
}

ThresholdBounds multi_bounds(const MultiWitnessSpec& spec, IndexMode mode, int m, const ThresholdOptions& opt) {
  auto run = [&](const SdpProblem& p) {
    if (opt.precision) return solve(p, opt.tol, *opt.precision);
    SdpSolution s = solve(p, opt.tol, Precision::binary64);
    if (s.status == SolveStatus::optimal) return s;
    return solve(p, opt.tol, Precision::extended);
  };
  ThresholdBounds t;
  t.m = m;
  SdpSolution lo = run(build_lower_multi_laguerre(spec, mode, m));
  SdpSolution up = run(build_upper_multi_laguerre(spec, mode, m));
  t.lower = lo.primal_value;
  t.upper = t.hierarchy_upper = up.primal_value;
  t.lower_status = lo.status;
  t.upper_status = up.status;
  t.lower_precision = lo.precision;
  t.upper_precision = up.precision;
  return t;
}

std::vector<BigRational> box_lower_residuals(const MultiIndex& bound, const MultiModePoint& point) {
  const auto& idx = point.index;
  if (point.Q.size() != idx.size() || point.F.size() != idx.size())
    throw std::invalid_argument("point dimensions do not match its index set");
  for (const auto& k : idx)
    if (!k.leq(bound)) throw std::invalid_argument("index outside the box");
  std::vector<BigRational> r;
  BigRational s;
  for (const auto& f : point.F) s += f;
  r.push_back(s - 1);
  std::map<MultiIndex, BigRational> diag;
  for (size_t u = 0; u < idx.size(); ++u)
    for (size_t v = 0; v < idx.size(); ++v) diag[idx[u] + idx[v]] += point.Q[u][v];
  for (auto& [sum, t] : diag) {
    if (!has_odd(sum)) {
      MultiIndex l = halve(sum);
      for (size_t k = 0; k < idx.size(); ++k)
        if (l.leq(idx[k])) t -= lower_coefficient(idx[k], l) * point.F[k];
    }
    r.push_back(t);
  }
  return r;
}

MultiModePoint product_feasible(const std::vector<SingleModePoint>& singles) {
  if (singles.empty()) throw std::invalid_argument("need at least one mode");
  for (const auto& s : singles) {
    int m = int(s.F.size()) - 1;
    if (m < 0 || int(s.Q.size()) != m + 1) throw std::invalid_argument("single-mode point has inconsistent sizes");
    for (const auto& v : lower_residuals(m, s.F, s.Q))
      if (v != 0) throw std::invalid_argument("single-mode point violates its constraints");
  }
  MultiModePoint out;
  out.index = {MultiIndex{}};
  out.Q = {{BigRational(1)}};
  out.F = {BigRational(1)};
  for (const auto& s : singles) {
    size_t a = out.index.size(), b = s.F.size();
    MultiModePoint next;
    for (size_t u = 0; u < a; ++u)
      for (size_t i = 0; i < b; ++i) {
        std::vector<int> e = out.index[u].entries();
        e.push_back(int(i));
        next.index.emplace_back(e);
        next.F.push_back(out.F[u] * s.F[i]);
      }
    next.Q.assign(a * b, std::vector<BigRational>(a * b));
    for (size_t u = 0; u < a; ++u)
      for (size_t v = 0; v < a; ++v)
        for (size_t i = 0; i < b; ++i)
          for (size_t j = 0; j < b; ++j) next.Q[u * b + i][v * b + j] = out.Q[u][v] * s.Q[i][j];
    out = std::move(next);
  }
  return out;
}

double robust_fidelity_bound(const std::vector<double>& single_fidelities) {
  double s = 1.0;
  for (double f : single_fidelities) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fidelities must lie in [0,1]");
    s -= 1.0 - f;
  }
  return s;
}

}  // namespace negwit
