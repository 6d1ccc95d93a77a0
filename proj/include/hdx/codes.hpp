#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdx/f2.hpp"
#include "hdx/graded_complex.hpp"
#include "json.hpp"

namespace hdx {

/// G_X has the vertices of X as rows; H_X has one weight-3 row per rank-1 face.
/// Vertex j is the j-th face of X(0), triangle t the t-th face of X(1).
struct CodePair {
  std::size_t k = 0;
  std::vector<std::uint64_t> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;  // sorted vertex indices

  std::size_t n() const { return vertices.size(); }
  F2Matrix G() const;
  F2Matrix H() const;
};

CodePair build_code_pair(const GradedComplex& X);
/// Checks every triangle row of H against G.
bool hg_zero(const CodePair& c);
/// rank G_X = dim span X(0).
std::size_t rank_G(const CodePair& c);

/// ker H_X in reduced echelon form.
struct KernelH {
  std::size_t dim = 0;
  std::vector<F2Vec> basis;
  std::size_t free_variables = 0;  // before the closing constraints
};
/// Solves H c = 0 by propagation along triangles (c_a + c_b = c_{a+b}) then eliminates the closing constraints.
KernelH kernel_H(const CodePair& c);
inline std::size_t rank_H(const CodePair& c) { return c.n() - kernel_H(c).dim; }
/// dim(ker G^T / im H^T) = dim ker H - rank G.
std::size_t hom_quotient_dim(const CodePair& c);

/// Basis of the code im G_X (columns of G, independent ones kept).
std::vector<F2Vec> generator_code_basis(const CodePair& c);

class DegenerateCover : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
struct UniversalCover {
  CodePair cover;            // vertex j lifted to the j-th column of the kernel basis
  std::size_t dim = 0;       // dim ker H_X = dim span of the lifted vertices
  bool distinct = true;      // lifted vertices pairwise distinct
  bool image_is_kernel = false;
};
/// Throws DegenerateCover if some vertex is zero on all of ker H_X.
UniversalCover universal_cover(const CodePair& c);

/// max over nonzero u of |1 - 2 Pr_s[s.u = 1]|.
double bias(std::size_t k, const std::vector<std::uint64_t>& generators);

struct BalanceReport {
  bool ok = true;
  double eps = 0;
  std::uint64_t codewords = 0;
  double min_rel = 1, max_rel = 0;  // relative weights over nonzero codewords
  std::uint64_t first_violation = 0;  // message bits, 0 when none
};
/// Every nonzero codeword has weight in [(1-eps)N/2, (1+eps)N/2]; basis dimension <= 24.
BalanceReport balanced_check(const std::vector<F2Vec>& basis, double eps);

struct DistanceReport {
  bool regular = false;
  bool skipped = false;
  std::string reason;
  double lambda = 0, bound = 0, bias = 0;
  bool bias_ok = false;
  BalanceReport window;
  bool window_ok = false;  // min relative weight >= 1/2 - lambda/(2(1-lambda))
  bool ok() const { return !skipped && bias_ok && window_ok; }
};
DistanceReport expansion_to_distance_check(const CodePair& c, double lambda, double tol = 1e-9);

/// One check per line: the column indices of the triangle.
std::string parity_check_text(const CodePair& c);
nlohmann::json code_to_json(const CodePair& c);

}  // namespace hdx
