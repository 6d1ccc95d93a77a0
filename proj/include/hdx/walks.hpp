#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdx/graded_complex.hpp"
#include "hdx/matrix_poset.hpp"
#include "hdx/spectral.hpp"

namespace hdx {

/// Sparse row-stochastic operator with exact rational entries.
struct ExactWalk {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint64_t> off{0};
  std::vector<std::uint32_t> idx;
  std::vector<Rational> val;
  std::vector<Rational> pi;  // stationary distribution on rows (square walks)

  void push_row(std::vector<std::pair<std::uint32_t, Rational>> entries);
  Rational at(std::size_t r, std::size_t c) const;
};

/// (W^up)_{x,y} = 1[x < y] m(y) / (m(x) * #children(y)), from rank i to rank i+1.
ExactWalk up_walk(const GradedComplex& X, int i);
/// (W^down)_{y,x} = 1[x < y] / #children(y), from rank i to rank i-1.
ExactWalk down_walk(const GradedComplex& X, int i);
ExactWalk compose(const ExactWalk& A, const ExactWalk& B);
/// Up then down, on rank i (pi = m on rank i).
ExactWalk up_down_walk(const GradedComplex& X, int i);
/// Down then up, on rank i (pi = m on rank i).
ExactWalk down_up_walk(const GradedComplex& X, int i);

/// Largest |row sum - 1| (exact, converted).
double row_stochastic_error(const ExactWalk& W);
/// Largest |pi(u)W(u,v) - pi(v)W(v,u)|.
double reversibility_error(const ExactWalk& W);

/// Symmetrized operator D^{1/2} W D^{-1/2} of a reversible square walk.
SymmetricOperator symmetrized(const ExactWalk& W);
SpectralResult walk_lambda(const ExactWalk& W, const SpectralOptions& opt = {});
/// Same spectrum as up_down_walk / down_up_walk but applied in factored form, never materialized.
SymmetricOperator up_down_operator(const GradedComplex& X, int i, bool down_up = false);
SpectralResult up_down_lambda(const GradedComplex& X, int i, bool down_up = false, const SpectralOptions& opt = {});

/// Walk of a weighted graph, W(u,v) = m(u,v)/deg(u), pi proportional to deg. Uses exact masses when present.
ExactWalk graph_walk(const WeightedGraph& G);
/// Product chain on the product space (state a*|B| + b).
ExactWalk tensor(const ExactWalk& A, const ExactWalk& B);

struct ProjectionReport {
  bool surjective = true;
  bool mass_identity = true;
  bool exact = false;  // identity checked in rational arithmetic
  double lambda_small = 0, lambda_big = 0;
  bool lambda_ok = true;
  std::string first_violation;
  bool ok() const { return surjective && mass_identity && lambda_ok; }
};
/// m_small({a,b}) must equal the total big mass over edges {a',b'} with Pi(a')=a, Pi(b')=b.
ProjectionReport projection_check(const std::vector<std::uint32_t>& Pi, const WeightedGraph& big,
                                  const WeightedGraph& small, double tol = 1e-12);

struct CouplingReport {
  double epsilon = 0;
  double lambda = 0, lambda_big = 0;
  bool holds = true;  // lambda <= lambda_big + epsilon + 1e-9
};
/// epsilon = max_v || 1_v W - 1_{embed(v)} Wbig ||_1, rows of W pushed through embed.
CouplingReport tv_coupling_bound(const ExactWalk& W, const ExactWalk& Wbig, const std::vector<std::uint32_t>& embed);

/// Orthogonality graph on F_q^m minus 0 (q prime or a power of 2), with a loop at each isotropic vertex.
struct PerpGraph {
  std::uint32_t q = 2, m = 2;
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> vectors;
  std::vector<std::vector<std::int64_t>> A;
  WeightedGraph graph() const;
};
PerpGraph perp_graph(std::uint32_t q, std::uint32_t m);

struct PerpIdentityReport {
  std::uint32_t q = 0, m = 0;
  std::size_t vertices = 0;
  bool identity_exact = true;
  std::int64_t diag_expected = 0, off_expected = 0;
  std::string first_mismatch;
  /// Histogram of off-diagonal (A^2)_{uv} values that differ from the stated constant.
  std::vector<std::pair<std::int64_t, std::size_t>> off_values;
  double lambda = 0, bound = 0;
  bool lambda_ok = true;
  bool ok() const { return identity_exact && lambda_ok; }
};
/// Tests A^2 = (q^{m-1}-1) I + (q^{m-2}-1)(J - I) exactly and lambda <= 1/sqrt(q^{m-1}-1).
PerpIdentityReport perp_identity_check(std::uint32_t q, std::uint32_t m, double tol = 1e-9);

enum class MatrixRestriction { None, DominatedByIdentity };

/// Matrix poset levels of ranks 1..top as a graded complex (complex rank = matrix rank - 1,
/// the zero matrix is the rank -1 face). Labels are matrix keys; standard weights from uniform top.
GradedComplex matrix_poset_complex(const MatrixPosetSpec& spec, MatrixRestriction restrict, std::size_t top_rank,
                                   std::uint64_t cap = 20'000'000);

struct MatrixWalkReport {
  std::size_t states = 0;
  std::size_t upper_states = 0;
  SpectralResult spectral;
};
/// W^{up-down} on the rank-1 matrices (unrestricted: inside ranks <= m; restricted: M <= I_m).
MatrixWalkReport matrix_walk_updown(const MatrixPosetSpec& spec, MatrixRestriction restrict,
                                    const SpectralOptions& opt = {});

/// Rank-1 L < I_m; edges {L1, L2} with L1 + L2 rank 2 and below I_m. Uniform edge weights.
struct LocalizedGraph {
  std::vector<GFMatrix> vertices;
  WeightedGraph graph;
};
LocalizedGraph localized_graph(const FieldSpec& f, std::size_t m);

}  // namespace hdx
