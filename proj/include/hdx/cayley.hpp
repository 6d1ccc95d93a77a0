#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdx/graded_complex.hpp"
#include "hdx/grassmann.hpp"

namespace hdx {

/// Generator complex S (simplicial, vertex names in F2^k minus 0) with its ambient dimension.
struct CayleySpec {
  std::size_t k = 0;
  const GradedComplex* S = nullptr;
};

struct SymmetryReport {
  bool ok = true;
  std::size_t faces_checked = 0;
  std::string first_violation;
};
/// For every face s and g in s, g + (s u {0}) minus 0 must be a face of S with the same weight.
SymmetryReport check_symmetry(const GradedComplex& S, std::size_t k);

/// Link of vertex v in Cay(F2^k, S), from the translates containing v; weights renormalized per rank.
GradedComplex cayley_vertex_link(const CayleySpec& spec, std::uint64_t v);

struct LinkBijectionReport {
  bool counts_equal = true;
  bool bijective = true;
  bool weights_equal = true;
  std::string first_violation;
  bool ok() const { return counts_equal && bijective && weights_equal; }
};
/// Checks that y -> v + y maps the link of v onto S face by face, with equal weights.
LinkBijectionReport check_link_bijection(const CayleySpec& spec, std::uint64_t v, const GradedComplex& link);

/// Full Cay(F2^k, S) with merged duplicate faces (k <= 12).
GradedComplex cayley_complex(const CayleySpec& spec);

/// In-place Walsh-Hadamard transform (length a power of two).
void walsh_hadamard(std::vector<double>& a);

struct CharacterSweep {
  double lambda = 0;   // max over u != 0 of |sum_s w_s (-1)^{u.s}| / sum_s w_s
  double second = 0;   // max over u != 0 of the signed value
  double minimum = 0;  // min over u != 0
  std::uint64_t argmax = 0;
};
/// Spectrum of the Cayley graph Cay(F2^k, generators) through the character sums (k <= 24).
CharacterSweep cayley_graph_lambda(std::size_t k, const std::vector<std::uint64_t>& generators,
                                   const std::vector<double>& weights = {});
/// Same quantity by direct evaluation of every character in integer arithmetic (unit weights).
CharacterSweep character_sweep_direct(std::size_t k, const std::vector<std::uint64_t>& generators);
/// Dense eigensolve of the Cayley graph walk (k <= 10).
double cayley_dense_lambda(std::size_t k, const std::vector<std::uint64_t>& generators,
                           const std::vector<double>& weights = {});

struct CayleyCounting {
  BigInt vertices;         // 2^{b n^2}
  BigInt faces_X;          // sum over ranks of |X(i)| (empty face included)
  BigInt faces_per_vertex; // faces of Cay containing a vertex = |beta(X)|
  BigInt bound;            // 2^{2^{r+2} b n}
  bool exact = false;      // counts from a built complex rather than formulas
  bool ok() const { return faces_X <= bound && faces_per_vertex <= bound; }
};
/// Counting claims for Cay(F2^{bn^2}, beta(X^{r,b,n})); uses X when given, closed formulas otherwise.
CayleyCounting cayley_counting_check(const GrassConstructSpec& spec, const GradedComplex* X = nullptr);

}  // namespace hdx
