#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdx/codes.hpp"
#include "hdx/f2.hpp"
#include "hdx/graded_complex.hpp"
#include "json.hpp"

namespace hdx {

/// d_i : F2^{X(i)} -> F2^{X(i-1)} for 0 <= i <= r; rows indexed by X(i-1), columns by X(i).
F2Matrix boundary_matrix(const GradedComplex& Y, int i);

struct ChainComplexF2 {
  std::vector<F2Matrix> boundary;  // boundary[i] = d_i
  bool dd_zero() const;
};
ChainComplexF2 chain_complex(const GradedComplex& Y);

/// dim ker d_i - rank d_{i+1} (d_{i+1} = 0 above the top rank). H_0 is reduced (d_0 hits the empty face).
std::size_t homology_dim(const GradedComplex& Y, int i);

/// Vertices of X expressed in coordinates of a basis of span X(0).
struct SpanCoordinates {
  std::size_t dim = 0;
  std::vector<std::uint64_t> basis;   // in the original ambient
  std::vector<std::uint64_t> coords;  // per vertex, dim bits
};
SpanCoordinates span_coordinates(const std::vector<std::uint64_t>& vertices);
/// Coordinates of an arbitrary element of the span (nullopt outside it).
std::optional<std::uint64_t> coordinates_in(const SpanCoordinates& sc, std::uint64_t x);

/// Y = Cay(span X(0), beta(X)) in span coordinates, with the generator list.
struct CayleyOfCode {
  std::size_t k = 0;
  std::vector<std::uint64_t> generators;  // vertex j of X in span coordinates
  GradedComplex S;
  GradedComplex Y;
};
CayleyOfCode cayley_of_code(const CodePair& c);

struct SwapCycleSpace {
  std::size_t generators = 0;
  std::size_t skipped_degenerate = 0;
  F2Basis basis;
  bool all_cycles = true;
};
/// 4-cycles v, v+x, v+x+x', v+x' over distinct generators x, x'.
SwapCycleSpace swap_cycle_space(const CayleyOfCode& cay);

struct HomModSwapReport {
  std::size_t z1 = 0, b1 = 0, s1 = 0, s1_b1 = 0, h1 = 0;
  std::size_t ker_gt = 0, im_ht = 0;
  std::size_t lhs = 0, rhs = 0;  // dim Z1/(S1+B1), dim ker G^T / im H^T
  bool phi_into_kernel = true;   // phi(Z1) in ker G^T
  bool phi_kills_s1_b1 = true;   // phi(S1 + B1) in im H^T
  bool phi_psi_identity = true;  // phi(psi(k)) = k on a ker G^T basis
  bool psi_cycles = true;        // psi(k) in Z1
  bool psi_phi_identity = true;  // psi(phi(a)) - a in S1 + B1 on a Z1 basis
  bool ok() const {
    return lhs == rhs && phi_into_kernel && phi_kills_s1_b1 && phi_psi_identity && psi_cycles && psi_phi_identity &&
           h1 >= rhs;
  }
};
class DisconnectedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
/// Needs span dimension <= 10.
HomModSwapReport hommodswap_check(const CodePair& c);

enum class HypothesisMode { CountingBound, DirectExistence };

class QuotientHypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuotientStep {
  CodePair next;              // in coordinates of span X'(0)
  std::uint64_t v = 0;        // chosen element, in the input's ambient coordinates
  BigInt span_size, needed;   // |span X(0)| and |X(0)|^2/2 + |X(0)|/2 + 2
  bool hypothesis = false;
  std::size_t quotient_before = 0, quotient_after = 0;
  bool incidence_preserved = false;  // same triangles, images distinct and nonzero
  bool kernel_grew = false;          // dim ker G'^T = dim ker G^T + 1
};
/// Scans v in increasing integer order of the ambient. Throws QuotientHypothesisError when the
/// counting hypothesis fails (CountingBound) or no valid v exists (DirectExistence).
QuotientStep quotient_once(const CodePair& c, HypothesisMode mode = HypothesisMode::CountingBound);

struct QuotientTraceRow {
  std::size_t step = 0;
  std::uint64_t v = 0;
  std::size_t ambient = 0;  // bits of the coordinates v is written in
  BigInt span_size, needed;
  std::size_t quotient_dim = 0;
  bool plus_one = false;
  bool incidence_preserved = false;
  bool skeleton_preserved = false;
  std::optional<std::size_t> h1;  // dim H_1(Cay) when computed
  bool h1_bound = true;           // h1 >= quotient_dim
  bool hommodswap = true;
};
struct QuotientTrace {
  std::size_t initial_dim = 0;
  std::vector<QuotientTraceRow> rows;
  std::size_t requested = 0;
  std::string stop_reason;
  CodePair last;
  bool completed() const { return rows.size() == requested; }
  bool ok() const;
};
/// t successive quotients; with `homology` also computes H_1 of each Cayley complex (span dim <= 10).
QuotientTrace quotient_iterate(const CodePair& c, std::size_t t, HypothesisMode mode = HypothesisMode::CountingBound,
                               bool homology = true);

nlohmann::json trace_to_json(const QuotientTrace& t);

}  // namespace hdx
