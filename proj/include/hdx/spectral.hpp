#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdx {

struct SpectralOptions {
  std::size_t dense_limit = 3000;
  double theta_tol = 1e-9;
  double residual_tol = 1e-7;
  std::size_t max_iter = 100000;
  std::size_t krylov_dim = 120;
  std::uint64_t seed = 0;
  bool force_iterative = false;
};

struct SpectralResult {
  double lambda = 0;      // max(|lambda_2|, |lambda_min|)
  double lambda2 = 0;     // largest eigenvalue below the top one
  double lambda_min = 0;  // smallest eigenvalue
  double residual = 0;    // residual norm of the reported extreme pair (0 for dense)
  std::size_t iterations = 0;
  std::size_t states = 0;
  bool disconnected = false;
  bool dense = false;
  double seconds = 0;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(double lo, double hi)
      : std::runtime_error("eigensolver did not converge; lambda in [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]"),
        lo_(lo),
        hi_(hi) {}
  double lower() const { return lo_; }
  double upper() const { return hi_; }

 private:
  double lo_, hi_;
};

/// Symmetric operator y = S x on R^n whose top eigenvector (eigenvalue 1) is `top`.
struct SymmetricOperator {
  std::size_t n = 0;
  std::function<void(const double*, double*)> apply;
  std::vector<double> top;  // unit norm
};

/// Row-major dense symmetric matrix; full eigendecomposition.
SpectralResult dense_lambda(std::vector<double> S, std::size_t n);
/// Lanczos with full reorthogonalization on the complement of `top`, explicit restarts.
SpectralResult iterative_lambda(const SymmetricOperator& op, const SpectralOptions& opt = {});
/// Dense when n <= dense_limit (materialized through apply), iterative otherwise.
SpectralResult operator_lambda(const SymmetricOperator& op, const SpectralOptions& opt = {});

/// All eigenvalues of a dense symmetric matrix, ascending.
std::vector<double> dense_eigenvalues(std::vector<double> S, std::size_t n);

}  // namespace hdx
