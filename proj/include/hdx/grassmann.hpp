#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdx/f2.hpp"
#include "hdx/graded_complex.hpp"
#include "hdx/matrix_poset.hpp"

namespace hdx {

/// Row k (1-based) is the binary expansion of 2^{r+1}-k, most significant bit first.
/// With a cutoff i only the first i+1 columns are kept and rows are those of G^{(i)}.
struct HadamardGen {
  int r = 0;
  std::optional<int> i;
  F2Matrix matrix;
};
HadamardGen hadamard_generator(int r, std::optional<int> i = std::nullopt);
/// Weights of all nonzero codewords in the column span (r <= 4).
std::vector<std::size_t> hadamard_codeword_weights(const HadamardGen& g);

struct GrassConstructSpec {
  int r = 1, b = 1, n = 4;
  std::uint64_t q() const { return std::uint64_t(1) << b; }
  std::size_t ambient_bits() const { return std::size_t(b) * n * n; }
  std::size_t top_matrix_rank() const { return std::size_t(1) << r; }
  FieldSpec field() const { return FieldSpec(b); }
  MatrixPosetSpec matrices() const { return {FieldSpec(b), std::size_t(n)}; }
  void validate() const;
};

class MembershipError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimal matrices of span(basis), ordered so that basis[t] = sum_j G^{(i)}[j][t] * result[j].
/// Throws MembershipError if the span is not a face.
std::vector<GFMatrix> minimal_matrices(const GrassConstructSpec& spec, const std::vector<GFMatrix>& basis);
bool is_face(const GrassConstructSpec& spec, const std::vector<GFMatrix>& basis);
/// Every nonzero F2 combination of the basis has matrix rank 2^r (and the basis is independent).
bool all_combinations_full(const GrassConstructSpec& spec, const std::vector<GFMatrix>& basis);

/// Witness of span{x, M} in the link of x: M = sum_j parts[j], parts[j] < minimal[j] for j < K,
/// parts[K] with spans avoiding those of sum_j minimal[j].
struct LinkDecomposition {
  std::vector<GFMatrix> minimal;   // minimal matrices of x (K of them)
  std::vector<GFMatrix> parts;     // K+1 matrices of rank 2^{r-i-1}
  std::vector<GFMatrix> partners;  // minimal[j] - parts[j], j < K
};
LinkDecomposition link_decomposition(const GrassConstructSpec& spec, const std::vector<GFMatrix>& x,
                                     const GFMatrix& M);
/// Checks the decomposition conditions directly (ranks, domination, avoidance, sum).
bool verify_link_decomposition(const GrassConstructSpec& spec, const LinkDecomposition& d, const GFMatrix& M);

/// Streams every M with span{x, M} a face of rank i+1 (2^{i+1} matrices per such face).
void for_each_link_vertex(const GrassConstructSpec& spec, const std::vector<GFMatrix>& x,
                          const std::function<void(const GFMatrix&)>& fn);
/// Streams every M' with span{x, M, M'} a face of rank i+2; needs i <= r-2.
void neighbors_in_link(const GrassConstructSpec& spec, const std::vector<GFMatrix>& x, const GFMatrix& M,
                       const std::function<void(const GFMatrix&)>& fn);

/// Faces of ranks -1..max_rank (default r). Grassmannian labels are matrix keys; uniform top weights.
GradedComplex build_X(const GrassConstructSpec& spec, std::optional<int> max_rank = std::nullopt,
                      std::uint64_t cap = 10'000'000);
/// Basis of face f of rank i as matrices.
std::vector<GFMatrix> face_basis(const GrassConstructSpec& spec, const GradedComplex& X, int i, std::size_t f);
/// Each face as a list of hex-encoded flattened basis matrices.
nlohmann::json faces_to_hex(const GrassConstructSpec& spec, const GradedComplex& X, int i);

enum class LinkGraphKind { G1, G2 };
struct LinkGraphSpec {
  LinkGraphKind which = LinkGraphKind::G1;
  int r = 2, i = 0, b = 1;
  int n = 0;  // G2 only
  /// G2 avoid spaces as row bases; default is the first 2^{r+1}-2^{r-i} coordinates.
  std::optional<GFMatrix> R, C;
};
struct LinkGraph {
  std::vector<GFMatrix> vertices;
  WeightedGraph graph;
};
LinkGraph build_link_graph(const LinkGraphSpec& spec, std::uint64_t cap = 20'000'000);

struct TensorProjectionReport {
  bool exhaustive = false;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::uint64_t preimage_edges = 0;  // per small edge, constant when the identity holds
  BigInt big_edges, small_edges;
  bool totals_ok = false;
  bool mass_identity = true;
  std::string first_violation;
  double lambda_link = -1, lambda_factors = -1;  // -1 when not measured
  bool lambda_ok = true;
  bool ok() const { return failures == 0 && mass_identity && totals_ok && lambda_ok; }
};
/// Projection from the tensor of the G1 copies and G2 onto the link 1-skeleton of x.
/// Exhaustive when X is given and the factors are small; sampled otherwise.
TensorProjectionReport tensor_projection_check(const GrassConstructSpec& spec, const std::vector<GFMatrix>& x,
                                               const GradedComplex* X = nullptr, std::size_t samples = 64,
                                               std::uint64_t seed = 0);

}  // namespace hdx
