#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdx/counting.hpp"
#include "hdx/spectral.hpp"
#include "json.hpp"

namespace hdx {

enum class ComplexKind { Simplicial, Grassmannian, MatrixPoset, Generic };
std::string to_string(ComplexKind k);

/// Faces of one rank. Each face is a sorted tuple of `width` labels; faces are kept in
/// lexicographic order so lookup is a binary search.
///  simplicial:   labels are vertex names, width i+1
///  grassmannian: labels are the nonzero vectors of the subspace (F2^k as integers), width 2^{i+1}-1
///  matrix/generic: width 1, label is an opaque key (e.g. a matrix key or an index into a parent)
struct Level {
  std::size_t width = 0;
  std::size_t count = 0;
  std::vector<std::uint64_t> labels;
  std::vector<Rational> weights;
  std::vector<std::uint64_t> child_off{0};
  std::vector<std::uint32_t> child;

  std::size_t size() const { return count; }
  std::span<const std::uint64_t> face(std::size_t idx) const { return {labels.data() + idx * width, width}; }
  std::optional<std::size_t> find(std::span<const std::uint64_t> face) const;
  std::span<const std::uint32_t> children(std::size_t idx) const {
    return {child.data() + child_off[idx], child.data() + child_off[idx + 1]};
  }
};

/// Inverse of the child relation between two adjacent levels.
struct ParentIndex {
  std::vector<std::uint64_t> off;
  std::vector<std::uint32_t> idx;
  std::span<const std::uint32_t> of(std::size_t i) const { return {idx.data() + off[i], idx.data() + off[i + 1]}; }
};

struct WeightedGraph {
  std::size_t n = 0;
  std::vector<std::uint32_t> u, v;  // u <= v; u == v is a self loop
  std::vector<double> w;
  std::vector<Rational> exact;      // optional, parallel to w
  std::size_t edges() const { return u.size(); }
  void add(std::uint32_t a, std::uint32_t b, double mass) {
    if (a > b) std::swap(a, b);
    u.push_back(a);
    v.push_back(b);
    w.push_back(mass);
  }
  /// Sort edges and merge parallel ones by summing masses.
  void canonicalize();
  std::vector<std::uint32_t> isolated() const;
  bool connected() const;
};

/**
 * Pure graded poset with ranks -1..r. Level i+1 holds X(i); the rank -1 level has one empty face.
 * children(i, f) lists the rank i-1 faces below face f of rank i.
 */
class GradedComplex {
 public:
  GradedComplex() = default;
  GradedComplex(ComplexKind kind, std::size_t ambient_bits = 0);

  ComplexKind kind() const { return kind_; }
  std::size_t ambient() const { return ambient_; }
  int top_rank() const { return static_cast<int>(levels_.size()) - 2; }
  const Level& level(int i) const { return levels_.at(i + 1); }
  Level& level(int i) { return levels_.at(i + 1); }
  std::size_t count(int i) const { return level(i).size(); }
  BigInt total_faces() const;

  /// Append rank top_rank()+1 with the given faces (each sorted tuple of width labels; sorted here).
  /// For simplicial/grassmannian kinds children are derived; otherwise pass them as face-local lists.
  void push_level(std::size_t width, std::vector<std::uint64_t> labels,
                  const std::vector<std::vector<std::uint32_t>>* explicit_children = nullptr);
  /// Same, with labels already sorted/unique and children in CSR form.
  void push_level_raw(Level lvl);

  const ParentIndex& parents(int i) const;  // parents of rank-i faces (in rank i+1)
  void drop_parent_cache() const { parents_.clear(); }

  /// Build by downward closure of top faces (simplicial: vertex name lists; grassmannian: spanning vectors).
  static GradedComplex simplicial_from_top(const std::vector<std::vector<std::uint64_t>>& top);
  static GradedComplex grassmannian_from_top(std::size_t k, const std::vector<std::vector<std::uint64_t>>& top_bases);

  /// All nonzero elements of span(basis) over F2, sorted.
  static std::vector<std::uint64_t> span_f2(std::span<const std::uint64_t> basis);

 private:
  ComplexKind kind_ = ComplexKind::Generic;
  std::size_t ambient_ = 0;
  std::vector<Level> levels_;
  mutable std::vector<std::optional<ParentIndex>> parents_;
};

/// First-found basis (in input order) of the subspace whose elements are listed.
std::vector<std::uint64_t> f2_basis_of(std::span<const std::uint64_t> elems);

/// Checks that weights at each rank sum to 1 and that each rank is the pushdown of the one above.
struct StandardnessReport {
  bool sums_ok = true;
  bool pushdown_ok = true;
  bool pure = true;
  double max_error = 0;
  std::string detail;
  bool ok() const { return sums_ok && pushdown_ok && pure; }
};

/// Sets weights on every rank by pushing `top` down through uniform choice of a child.
void standard_weights_from_top(GradedComplex& X, std::vector<Rational> top);
void uniform_top_weights(GradedComplex& X);
StandardnessReport check_standardness(const GradedComplex& X, double tol = 1e-12);

/// Link of face idx of rank i; ranks shifted by i+1 and weights renormalized.
/// Simplicial links stay simplicial (vertex names minus the face); other kinds become generic
/// with labels = face indices in X.
GradedComplex link(const GradedComplex& X, int i, std::size_t idx);

WeightedGraph one_skeleton(const GradedComplex& X);
/// 1-skeleton of the link of face idx at rank i, built directly from X (vertex j = j-th parent).
WeightedGraph link_one_skeleton(const GradedComplex& X, int i, std::size_t idx);

/// Spectral expansion of the random walk W(u,v) = m(u,v) / sum_v' m(u,v').
/// Disconnected graphs (or isolated vertices) give lambda = 1 with the flag set.
SpectralResult graph_lambda(const WeightedGraph& G, const SpectralOptions& opt = {});

struct LocalExpansion {
  double lambda = 0;
  std::size_t argmax = 0;
  std::size_t faces_checked = 0;
  bool sampled = false;  // lower bound only
  std::vector<std::size_t> disconnected;
};
LocalExpansion local_expansion(const GradedComplex& X, int i, std::size_t exhaustive_limit = 5000,
                               std::size_t samples = 32, std::uint64_t seed = 0);

/// Simplicial complex of unordered bases of faces of an F2-Grassmannian complex.
GradedComplex basisify(const GradedComplex& X);
/// Number of unordered bases of F2^d.
BigInt unordered_bases_f2(std::size_t d);

struct TrickleRow {
  int i;
  double lhs, rhs;
  bool skipped;
  bool pass;
};
struct TrickleReport {
  std::vector<double> lambdas;  // lambda^{(i)} for i = -1..r-2
  std::vector<TrickleRow> rows;
  bool ok() const;
};
/// Simplicial: lambda_i <= l/(1-l); grassmannian: lambda_i <= l/(q(1-l)) with l = lambda_{i+1}.
TrickleReport trickle_check(const GradedComplex& X, double q = 2, double tol = 1e-9);

nlohmann::json complex_to_json(const GradedComplex& X);
/// Inverse of complex_to_json for simplicial and grassmannian complexes (faces are re-sorted).
GradedComplex complex_from_json(const nlohmann::json& j);
std::string graph_to_dot(const WeightedGraph& G);
std::string graph_to_csv(const WeightedGraph& G);

}  // namespace hdx
