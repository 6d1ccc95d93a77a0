#include "hdx/spectral.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <random>

namespace hdx {

namespace {

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void deflate(std::vector<double>& x, const std::vector<double>& top) {
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] * top[i];
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= d * top[i];
}

double norm(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> dense_eigenvalues(std::vector<double> S, std::size_t n) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> M(S.data(), n, n);
  Eigen::MatrixXd A = M;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + n);
}

SpectralResult dense_lambda(std::vector<double> S, std::size_t n) {
  const double t0 = now_seconds();
  SpectralResult r;
  r.dense = true;
  r.states = n;
  if (n >= 2) {
    const auto ev = dense_eigenvalues(std::move(S), n);
    r.lambda2 = ev[n - 2];
    r.lambda_min = ev[0];
    r.lambda = std::max(std::abs(r.lambda2), std::abs(r.lambda_min));
    if (r.lambda2 > 1 - 1e-9) {
      r.disconnected = true;
      r.lambda = 1;
    }
  }
  r.seconds = now_seconds() - t0;
  return r;
}

SpectralResult iterative_lambda(const SymmetricOperator& op, const SpectralOptions& opt) {
  const double t0 = now_seconds();
  const std::size_t n = op.n;
  SpectralResult res;
  res.states = n;
  if (n < 2) return res;

  std::mt19937_64 rng(opt.seed ^ 0x5eed5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> start(n);
  for (auto& x : start) x = gauss(rng);

  const std::size_t K = std::min<std::size_t>(opt.krylov_dim, n - 1);
  std::vector<std::vector<double>> Q;
  std::vector<double> w(n);
  double prev_theta = -1;
  std::size_t total = 0;

  while (total < opt.max_iter) {
    deflate(start, op.top);
    double nb = norm(start);
    if (nb == 0) throw std::runtime_error("lanczos start vector vanished after deflation");
    for (auto& x : start) x /= nb;
    Q.assign(1, start);
    std::vector<double> alpha, beta;  // beta[j] couples q_j and q_{j+1}
    bool invariant = false;
    Eigen::VectorXd theta;
    Eigen::MatrixXd svec;
    for (std::size_t j = 0; j < K && total < opt.max_iter; ++j, ++total) {
      op.apply(Q[j].data(), w.data());
      double a = 0;
      for (std::size_t i = 0; i < n; ++i) a += w[i] * Q[j][i];
      alpha.push_back(a);
      for (std::size_t i = 0; i < n; ++i) w[i] -= a * Q[j][i] + (j ? beta[j - 1] * Q[j - 1][i] : 0.0);
      // full reorthogonalization, twice
      for (int pass = 0; pass < 2; ++pass) {
        deflate(w, op.top);
        for (const auto& qv : Q) {
          double d = 0;
          for (std::size_t i = 0; i < n; ++i) d += w[i] * qv[i];
          for (std::size_t i = 0; i < n; ++i) w[i] -= d * qv[i];
        }
      }
      const double b = norm(w);
      const std::size_t m = alpha.size();
      const bool check = (m % 4 == 0) || b < 1e-12 || m == K;
      if (check) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (std::size_t k = 0; k < m; ++k) {
          T(k, k) = alpha[k];
          if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[k];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta = es.eigenvalues();
        svec = es.eigenvectors();
        const double tmax = theta(m - 1), tmin = theta(0);
        const double rmax = std::abs(b * svec(m - 1, m - 1)), rmin = std::abs(b * svec(m - 1, 0));
        const bool max_side = std::abs(tmax) >= std::abs(tmin);
        const double lam = max_side ? std::abs(tmax) : std::abs(tmin);
        const double rlam = max_side ? rmax : rmin;
        const double other = max_side ? std::abs(tmin) + rmin : std::abs(tmax) + rmax;
        const bool settled = std::abs(lam - prev_theta) < opt.theta_tol;
        prev_theta = lam;
        if ((rlam < opt.residual_tol && settled && other <= lam + opt.residual_tol) || b < 1e-12) {
          invariant = true;
          // explicit residual of the reported Ritz pair
          const std::size_t col = max_side ? m - 1 : 0;
          std::vector<double> y(n, 0.0), Sy(n);
          for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < n; ++i) y[i] += svec(k, col) * Q[k][i];
          const double ny = norm(y);
          for (auto& x : y) x /= ny;
          op.apply(y.data(), Sy.data());
          deflate(Sy, op.top);
          const double th = theta(col);
          for (std::size_t i = 0; i < n; ++i) Sy[i] -= th * y[i];
          res.residual = norm(Sy);
          res.lambda = lam;
          res.lambda2 = tmax;
          res.lambda_min = tmin;
          res.iterations = total + 1;
          break;
        }
      }
      if (b < 1e-12) break;
      beta.push_back(b);
      std::vector<double> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / b;
      Q.push_back(std::move(next));
    }
    if (invariant) {
      if (res.lambda2 > 1 - 1e-9) {
        res.disconnected = true;
        res.lambda = 1;
      }
      res.seconds = now_seconds() - t0;
      return res;
    }
    // restart from the two extreme Ritz vectors
    const std::size_t m = theta.size();
    if (m == 0) break;
    std::fill(start.begin(), start.end(), 0.0);
    for (std::size_t k = 0; k < m && k < Q.size(); ++k)
      for (std::size_t i = 0; i < n; ++i) start[i] += (svec(k, m - 1) + svec(k, 0)) * Q[k][i];
  }
  throw NonConvergence(std::max(0.0, prev_theta - 1e-3), std::min(1.0, prev_theta + 1e-3));
}

SpectralResult operator_lambda(const SymmetricOperator& op, const SpectralOptions& opt) {
  if (op.n <= opt.dense_limit && !opt.force_iterative) {
    const double t0 = now_seconds();
    const std::size_t n = op.n;
    std::vector<double> S(n * n), e(n, 0.0), col(n);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = 1;
      op.apply(e.data(), col.data());
      e[j] = 0;
      for (std::size_t i = 0; i < n; ++i) S[i * n + j] = col[i];
    }
    auto r = dense_lambda(std::move(S), n);
    r.seconds = now_seconds() - t0;
    return r;
  }
  return iterative_lambda(op, opt);
}

}  // namespace hdx
