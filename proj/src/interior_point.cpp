#include "negwit/conic.hpp"
#include "negwit/extended.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace negwit {

namespace {

template <typename Scalar>
double to_double(const Scalar& v) {
  return static_cast<double>(v);
}

// Primal-dual path following with Nesterov-Todd scaling and Mehrotra
// predictor-corrector, for min <C,X> s.t. A(X) = b, X psd.
template <typename Scalar>
class InteriorPoint {
 public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  struct Entry {
    int row, col;
    Scalar value;
  };

  InteriorPoint(const SdpProblem& p, const SolverOptions& opt) : p_(p), opt_(opt) {
    nb_ = int(p.blocks.size());
    m_ = p.num_constraints();
    diag_.resize(nb_);
    dim_.resize(nb_);
    for (int b = 0; b < nb_; ++b) {
      diag_[b] = p.blocks[b] < 0;
      dim_[b] = p.block_dim(b);
      total_ += dim_[b];
    }
    // rows normalized so that every constraint matrix has unit Frobenius norm
    row_scale_.assign(m_, 1.0);
    cons_.assign(nb_, std::vector<std::vector<Entry>>(m_));
    for (int i = 0; i < m_; ++i) {
      double nrm = 0.0;
      for (const auto& e : p.constraints[i]) nrm += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      nrm = std::sqrt(nrm);
      row_scale_[i] = nrm > 0.0 ? nrm : 1.0;
      for (const auto& e : p.constraints[i])
        cons_[e.block][i].push_back({e.row, e.col, Scalar(e.value) / Scalar(row_scale_[i])});
    }
    b_.resize(m_);
    for (int i = 0; i < m_; ++i) b_(i) = Scalar(p.rhs[i]) / Scalar(row_scale_[i]);
    double sc = p.sense == Sense::maximize ? -1.0 : 1.0;
    C_.resize(nb_);
    for (int b = 0; b < nb_; ++b) C_[b] = Mat::Zero(dim_[b], dim_[b]);
    for (const auto& e : p.objective) {
      C_[e.block](e.row, e.col) += Scalar(sc * e.value);
      if (e.row != e.col) C_[e.block](e.col, e.row) += Scalar(sc * e.value);
    }
    diag_lists_.assign(nb_, {});
    for (int b = 0; b < nb_; ++b) {
      if (!diag_[b]) continue;
      diag_lists_[b].assign(dim_[b], {});
      for (int i = 0; i < m_; ++i)
        for (const auto& e : cons_[b][i]) diag_lists_[b][e.row].push_back({i, e.value});
    }
    find_free_pairs(p);
  }

  SdpSolution run() {
    initial_point();
    SdpSolution out;
    out.precision = std::is_same_v<Scalar, double> ? Precision::binary64 : Precision::extended;
    SolveStatus status = SolveStatus::numerical_limit;
    int small_steps = 0;
    int it = 0;
    Scalar normC = Scalar(0);
    for (int b = 0; b < nb_; ++b) normC += C_[b].squaredNorm();
    normC = sqrt_(normC);
    Scalar normb = b_.norm();
    for (; it <= opt_.max_iterations; ++it) {
      // residuals
      Vec rp = b_ - apply_A(X_);
      std::vector<Mat> Rd(nb_);
      std::vector<Mat> AtY = apply_At(y_);
      Scalar dnorm(0);
      for (int b = 0; b < nb_; ++b) {
        Rd[b] = C_[b] - AtY[b] - Z_[b];
        dnorm += Rd[b].squaredNorm();
      }
      Scalar pobj = inner_dense(C_, X_);
      Scalar dobj = b_.dot(y_);
      pinf_ = rp.norm() / (Scalar(1) + normb);
      dinf_ = sqrt_(dnorm) / (Scalar(1) + normC);
      Scalar relgap = abs_(pobj - dobj) / (Scalar(1) + abs_(pobj) + abs_(dobj));
      gap_ = relgap;
      Scalar tol(opt_.tol);
      if (pinf_ <= tol && dinf_ <= tol && relgap <= tol) {
        status = SolveStatus::optimal;
        break;
      }
      // infeasibility certificates along diverging iterates
      if (dobj > Scalar(0)) {
        Scalar ray(0);
        for (int b = 0; b < nb_; ++b) ray += (C_[b] - Rd[b]).squaredNorm();
        if (sqrt_(ray) / dobj < tol && dobj > Scalar(1e8)) {
          status = SolveStatus::primal_infeasible;
          break;
        }
      }
      if (pobj < Scalar(0)) {
        Scalar ray = (b_ - rp).norm();
        if (ray / (-pobj) < tol && -pobj > Scalar(1e8)) {
          status = SolveStatus::dual_infeasible;
          break;
        }
      }
      if (it == opt_.max_iterations) break;
      if (!step(rp, Rd)) break;
      if (alpha_p_ < 1e-9 && alpha_d_ < 1e-9) {
        if (++small_steps >= 3) break;
      } else {
        small_steps = 0;
      }
    }
    out.status = status;
    out.iterations = it;
    fill_solution(out);
    return out;
  }

 private:
  // Diagonal variables whose columns and costs are exact negatives model one
  // free variable; their common part is removed after every step.
  void find_free_pairs(const SdpProblem& p) {
    using Sig = std::vector<std::pair<int, double>>;
    for (int b = 0; b < nb_; ++b) {
      if (!diag_[b]) continue;
      std::vector<Sig> col(dim_[b]);
      std::vector<double> cost(dim_[b], 0.0);
      for (int i = 0; i < m_; ++i)
        for (const auto& e : p.constraints[i])
          if (e.block == b) col[e.row].push_back({i, e.value});
      for (const auto& e : p.objective)
        if (e.block == b) cost[e.row] = e.value;
      std::map<std::pair<Sig, double>, int> seen;
      for (int t = 0; t < dim_[b]; ++t) {
        if (col[t].empty()) continue;
        Sig neg = col[t];
        for (auto& [i, v] : neg) v = -v;
        auto it = seen.find({neg, -cost[t]});
        if (it != seen.end()) {
          pairs_.push_back({b, it->second, t});
          seen.erase(it);
        } else {
          seen[{col[t], cost[t]}] = t;
        }
      }
    }
  }

  void recenter_free_pairs() {
    for (const auto& fp : pairs_) {
      Scalar& x1 = X_[fp.block](fp.i, fp.i);
      Scalar& x2 = X_[fp.block](fp.j, fp.j);
      Scalar t = std::min(x1, x2);
      Scalar target = std::max(abs_(x1 - x2), Scalar(1));
      if (t <= target) continue;
      Scalar d = t - target;
      Scalar& z1 = Z_[fp.block](fp.i, fp.i);
      Scalar& z2 = Z_[fp.block](fp.j, fp.j);
      z1 *= x1 / (x1 - d);
      z2 *= x2 / (x2 - d);
      x1 -= d;
      x2 -= d;
    }
  }

  static Scalar sqrt_(const Scalar& v) {
    using std::sqrt;
    return sqrt(v);
  }
  static Scalar abs_(const Scalar& v) {
    using std::abs;
    return abs(v);
  }

  Scalar inner_dense(const std::vector<Mat>& A, const std::vector<Mat>& B) const {
    Scalar s(0);
    for (int b = 0; b < nb_; ++b) s += A[b].cwiseProduct(B[b]).sum();
    return s;
  }

  Vec apply_A(const std::vector<Mat>& X) const {
    Vec r = Vec::Zero(m_);
    for (int b = 0; b < nb_; ++b)
      for (int i = 0; i < m_; ++i)
        for (const auto& e : cons_[b][i])
          r(i) += (e.row == e.col ? e.value : Scalar(2) * e.value) * X[b](e.row, e.col);
    return r;
  }

  std::vector<Mat> apply_At(const Vec& y) const {
    std::vector<Mat> r(nb_);
    for (int b = 0; b < nb_; ++b) {
      r[b] = Mat::Zero(dim_[b], dim_[b]);
      for (int i = 0; i < m_; ++i)
        for (const auto& e : cons_[b][i]) {
          r[b](e.row, e.col) += y(i) * e.value;
          if (e.row != e.col) r[b](e.col, e.row) += y(i) * e.value;
        }
    }
    return r;
  }

  void initial_point() {
    X_.resize(nb_);
    Z_.resize(nb_);
    for (int b = 0; b < nb_; ++b) {
      Scalar n(dim_[b]);
      Scalar xi = std::max(Scalar(10), sqrt_(n));
      Scalar eta = std::max(Scalar(10), sqrt_(n));
      for (int i = 0; i < m_; ++i) {
        Scalar nrm(0);
        for (const auto& e : cons_[b][i]) nrm += (e.row == e.col ? Scalar(1) : Scalar(2)) * e.value * e.value;
        nrm = sqrt_(nrm);
        xi = std::max(xi, n * (Scalar(1) + abs_(b_(i))) / (Scalar(1) + nrm));
        eta = std::max(eta, nrm);
      }
      eta = std::max(eta, C_[b].norm());
      eta = (Scalar(1) + eta) / sqrt_(n);
      eta = std::max(eta, Scalar(10));
      X_[b] = xi * Mat::Identity(dim_[b], dim_[b]);
      Z_[b] = eta * Mat::Identity(dim_[b], dim_[b]);
    }
    y_ = Vec::Zero(m_);
  }

  struct Scaling {
    Mat G, Ginv, W;
    Vec lambda;
  };

  bool compute_scaling(std::vector<Scaling>& sc) {
    sc.resize(nb_);
    for (int b = 0; b < nb_; ++b) {
      int n = dim_[b];
      auto& s = sc[b];
      if (diag_[b]) {
        Vec x = X_[b].diagonal(), z = Z_[b].diagonal();
        if ((x.array() <= Scalar(0)).any() || (z.array() <= Scalar(0)).any()) return false;
        Vec w = (x.array() / z.array()).sqrt();
        Vec g = w.cwiseSqrt();
        s.G = g.asDiagonal();
        s.Ginv = g.cwiseInverse().asDiagonal();
        s.W = w.asDiagonal();
        s.lambda = (x.array() * z.array()).sqrt();
        continue;
      }
      Eigen::LLT<Mat> lx(X_[b]), lz(Z_[b]);
      if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) {
        return false;
      }
      Mat L = lx.matrixL(), R = lz.matrixL();
      Mat RtL = R.transpose() * L;
      Eigen::JacobiSVD<Mat> svd(RtL, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Vec sig = svd.singularValues();
      if ((sig.array() <= Scalar(0)).any()) return false;
      Vec isq = sig.cwiseSqrt().cwiseInverse();
      s.G = L * svd.matrixV() * isq.asDiagonal();
      // G^{-1} = Sigma^{1/2} V^T L^{-1}
      Mat Linv = L.template triangularView<Eigen::Lower>().solve(Mat::Identity(n, n));
      s.Ginv = sig.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() * Linv;
      s.W = s.G * s.G.transpose();
      s.W = (s.W + s.W.transpose()) / Scalar(2);
      s.lambda = sig;
    }
    return true;
  }

  bool schur(const std::vector<Scaling>& sc, Mat& M) const {
    M = Mat::Zero(m_, m_);
    for (int b = 0; b < nb_; ++b) {
      const Mat& W = sc[b].W;
      if (diag_[b]) {
        for (int t = 0; t < dim_[b]; ++t) {
          const auto& lst = diag_lists_[b][t];
          Scalar w = W(t, t) * W(t, t);
          for (size_t u = 0; u < lst.size(); ++u)
            for (size_t v = 0; v < lst.size(); ++v)
              M(lst[u].first, lst[v].first) += w * lst[u].second * lst[v].second;
        }
        continue;
      }
      int n = dim_[b];
      Mat G(n, n);
      for (int i = 0; i < m_; ++i) {
        const auto& ci = cons_[b][i];
        if (ci.empty()) continue;
        G.setZero();
        if (int(ci.size()) <= n) {
          for (const auto& e : ci) {
            if (e.row == e.col) {
              G.noalias() += e.value * W.col(e.row) * W.col(e.row).transpose();
            } else {
              G.noalias() += e.value * W.col(e.row) * W.col(e.col).transpose();
              G.noalias() += e.value * W.col(e.col) * W.col(e.row).transpose();
            }
          }
        } else {
          Mat B = Mat::Zero(n, n);
          for (const auto& e : ci) {
            B(e.row, e.col) += e.value;
            if (e.row != e.col) B(e.col, e.row) += e.value;
          }
          G = W * B * W;
        }
        for (int j = i; j < m_; ++j) {
          Scalar s(0);
          for (const auto& e : cons_[b][j]) s += (e.row == e.col ? e.value : Scalar(2) * e.value) * G(e.row, e.col);
          M(i, j) += s;
        }
      }
    }
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < i; ++j) M(i, j) = M(j, i);
    return true;
  }

  // Step to the boundary of the cone along dX for an iterate with Cholesky L.
  Scalar max_step(const Mat& X, const Mat& dX, bool diag) const {
    Scalar big(1e30);
    if (diag) {
      Scalar a = big;
      for (int i = 0; i < X.rows(); ++i)
        if (dX(i, i) < Scalar(0)) a = std::min(a, -X(i, i) / dX(i, i));
      return a;
    }
    Eigen::LLT<Mat> l(X);
    Mat L = l.matrixL();
    Mat T1 = L.template triangularView<Eigen::Lower>().solve(dX);
    Mat T1t = T1.transpose();
    Mat T = L.template triangularView<Eigen::Lower>().solve(T1t);
    T = (T + T.transpose()) / Scalar(2);
    Eigen::SelfAdjointEigenSolver<Mat> es(T, Eigen::EigenvaluesOnly);
    Scalar lmin = es.eigenvalues()(0);
    return lmin < Scalar(0) ? -Scalar(1) / lmin : big;
  }

  // Solves for the direction given the scaled complementarity right-hand side.
  void direction(const std::vector<Scaling>& sc, const Eigen::LLT<Mat>& llt, const Vec& rp,
                 const std::vector<Mat>& Rd, const std::vector<Mat>& Rhat, Vec& dy,
                 std::vector<Mat>& dX, std::vector<Mat>& dZ) const {
    std::vector<Mat> H(nb_), T(nb_);
    for (int b = 0; b < nb_; ++b) {
      H[b] = sc[b].G * Rhat[b] * sc[b].G.transpose();
      T[b] = H[b] - sc[b].W * Rd[b] * sc[b].W;
    }
    Vec r = rp - apply_A(T);
    dy = llt.solve(r);
    std::vector<Mat> Aty = apply_At(dy);
    dX.resize(nb_);
    dZ.resize(nb_);
    for (int b = 0; b < nb_; ++b) {
      dZ[b] = Rd[b] - Aty[b];
      if (diag_[b]) dZ[b] = Mat(dZ[b].diagonal().asDiagonal());
      dX[b] = H[b] - sc[b].W * dZ[b] * sc[b].W;
      dX[b] = (dX[b] + dX[b].transpose()) / Scalar(2);
      if (diag_[b]) dX[b] = Mat(dX[b].diagonal().asDiagonal());
    }
  }

  bool step(const Vec& rp, const std::vector<Mat>& Rd) {
    std::vector<Scaling> sc;
    if (!compute_scaling(sc)) return false;
    Mat M;
    schur(sc, M);
    Eigen::LLT<Mat> llt(M);
    if (llt.info() != Eigen::Success) {
      Scalar reg = M.diagonal().cwiseAbs().maxCoeff() * Scalar(std::numeric_limits<double>::epsilon());
      if (reg == Scalar(0)) reg = Scalar(1e-14);
      for (int k = 0; k < 6 && llt.info() != Eigen::Success; ++k) {
        M.diagonal().array() += reg;
        llt.compute(M);
        reg *= Scalar(100);
      }
      if (llt.info() != Eigen::Success) return false;
    }
    Scalar mu = inner_dense(X_, Z_) / Scalar(total_);

    // predictor
    std::vector<Mat> Rhat(nb_);
    for (int b = 0; b < nb_; ++b) Rhat[b] = -Mat(sc[b].lambda.asDiagonal());
    Vec dy;
    std::vector<Mat> dX, dZ;
    direction(sc, llt, rp, Rd, Rhat, dy, dX, dZ);
    Scalar ap(1e30), ad(1e30);
    for (int b = 0; b < nb_; ++b) {
      ap = std::min(ap, max_step(X_[b], dX[b], diag_[b]));
      ad = std::min(ad, max_step(Z_[b], dZ[b], diag_[b]));
    }
    ap = std::min(Scalar(1), ap);
    ad = std::min(Scalar(1), ad);
    Scalar mu_aff(0);
    for (int b = 0; b < nb_; ++b) mu_aff += (X_[b] + ap * dX[b]).cwiseProduct(Z_[b] + ad * dZ[b]).sum();
    mu_aff /= Scalar(total_);
    Scalar ratio = std::max(Scalar(0), mu_aff / mu);
    Scalar amin = std::min(ap, ad);
    Scalar expon = std::max(Scalar(1), Scalar(3) * amin * amin);
    using std::pow;
    Scalar sigma = std::min(Scalar(1), Scalar(pow(ratio, expon)));

    // corrector
    for (int b = 0; b < nb_; ++b) {
      const auto& s = sc[b];
      Mat dXs = s.Ginv * dX[b] * s.Ginv.transpose();
      Mat dZs = s.G.transpose() * dZ[b] * s.G;
      Mat P = dXs * dZs;
      Mat Rt = -(P + P.transpose()) / Scalar(2);
      Rt.diagonal().array() += sigma * mu;
      Rt.diagonal() -= s.lambda.cwiseProduct(s.lambda);
      int n = dim_[b];
      Rhat[b].resize(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Rhat[b](i, j) = Scalar(2) * Rt(i, j) / (s.lambda(i) + s.lambda(j));
      if (diag_[b]) Rhat[b] = Mat(Rhat[b].diagonal().asDiagonal());
    }
    direction(sc, llt, rp, Rd, Rhat, dy, dX, dZ);
    Scalar mp(1e30), md(1e30);
    for (int b = 0; b < nb_; ++b) {
      mp = std::min(mp, max_step(X_[b], dX[b], diag_[b]));
      md = std::min(md, max_step(Z_[b], dZ[b], diag_[b]));
    }
    using std::isfinite;
    if (!isfinite(dy.sum()) || !isfinite(mp) || !isfinite(md)) return false;
    for (int b = 0; b < nb_; ++b)
      if (!isfinite(dX[b].sum()) || !isfinite(dZ[b].sum())) return false;
    Scalar gamma = Scalar(0.9) + Scalar(0.09) * amin;
    ap = std::min(Scalar(1), gamma * mp);
    ad = std::min(Scalar(1), gamma * md);
    for (int b = 0; b < nb_; ++b) {
      X_[b] += ap * dX[b];
      Z_[b] += ad * dZ[b];
      X_[b] = (X_[b] + X_[b].transpose()) / Scalar(2);
      Z_[b] = (Z_[b] + Z_[b].transpose()) / Scalar(2);
    }
    y_ += ad * dy;
    recenter_free_pairs();
    alpha_p_ = to_double(ap);
    alpha_d_ = to_double(ad);
    return true;
  }

  void fill_solution(SdpSolution& out) const {
    double sc = p_.sense == Sense::maximize ? -1.0 : 1.0;
    out.X.resize(nb_);
    out.Z.resize(nb_);
    for (int b = 0; b < nb_; ++b) {
      out.X[b] = X_[b].unaryExpr([](const Scalar& v) { return to_double(v); });
      out.Z[b] = Z_[b].unaryExpr([](const Scalar& v) { return to_double(v); });
    }
    out.y.resize(m_);
    for (int i = 0; i < m_; ++i) out.y(i) = sc * to_double(y_(i) / Scalar(row_scale_[i]));
    out.primal_value = sc * to_double(inner_dense(C_, X_));
    out.dual_value = sc * to_double(b_.dot(y_));
    out.gap = to_double(gap_);
    out.primal_infeasibility = to_double(pinf_);
    out.dual_infeasibility = to_double(dinf_);
  }

  const SdpProblem& p_;
  SolverOptions opt_;
  int nb_ = 0, m_ = 0, total_ = 0;
  std::vector<bool> diag_;
  std::vector<int> dim_;
  std::vector<double> row_scale_;
  std::vector<std::vector<std::vector<Entry>>> cons_;
  std::vector<std::vector<std::vector<std::pair<int, Scalar>>>> diag_lists_;
  struct FreePair {
    int block, i, j;
  };
  std::vector<FreePair> pairs_;
  std::vector<Mat> C_;
  Vec b_;
  std::vector<Mat> X_, Z_;
  Vec y_;
  Scalar pinf_{0}, dinf_{0}, gap_{0};
  double alpha_p_ = 1.0, alpha_d_ = 1.0;
};

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  problem.validate();
  if (problem.constraints.empty()) throw std::invalid_argument("problem needs at least one constraint");
  if (options.precision == Precision::extended) return InteriorPoint<Extended>(problem, options).run();
  return InteriorPoint<double>(problem, options).run();
}

SdpSolution solve(const SdpProblem& problem, double tol, Precision precision) {
  SolverOptions o;
  o.tol = tol;
  o.precision = precision;
  return solve(problem, o);
}

}  // namespace negwit
