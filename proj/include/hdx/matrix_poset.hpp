#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdx/counting.hpp"
#include "hdx/gf_matrix.hpp"

namespace hdx {

struct MatrixPosetSpec {
  FieldSpec field;
  std::size_t m = 1;
};

/// Thrown before materializing anything whose projected size exceeds a cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, BigInt projected)
      : std::runtime_error(what + " (projected " + to_string(projected) + ")"), projected_(std::move(projected)) {}
  const BigInt& projected() const { return projected_; }

 private:
  BigInt projected_;
};

/// No unique maximal common dominated element; carries two incomparable maxima.
class AmbiguityError : public std::runtime_error {
 public:
  AmbiguityError(GFMatrix a, GFMatrix b)
      : std::runtime_error("meet is not unique: two incomparable maximal common lower bounds"),
        a_(std::move(a)),
        b_(std::move(b)) {}
  const GFMatrix& first() const { return a_; }
  const GFMatrix& second() const { return b_; }

 private:
  GFMatrix a_, b_;
};

/// lower ⪯ upper iff rank(upper - lower) = rank(upper) - rank(lower).
bool dominates(const GFMatrix& lower, const GFMatrix& upper);
inline bool strictly_dominates(const GFMatrix& lower, const GFMatrix& upper) {
  return !(lower == upper) && dominates(lower, upper);
}

/// Reduced echelon bases (s x n) of all s-dim subspaces of F_q^n, by pivot set then free entries.
std::vector<GFMatrix> enumerate_subspaces(const FieldSpec& f, std::size_t n, std::size_t s);
/// Bases (t x n) of all t-dim subspaces meeting rowspace(avoid) trivially.
std::vector<GFMatrix> enumerate_subspaces_avoiding(const FieldSpec& f, std::size_t n, const GFMatrix& avoid,
                                                   std::size_t t);
std::vector<GFMatrix> enumerate_gl(const FieldSpec& f, std::size_t s);

struct RankLevel {
  MatrixPosetSpec spec;
  std::size_t s = 0;
  std::vector<GFMatrix> members;
};

namespace detail {

/// F_q^m packed b bits per coordinate into an integer in [0, q^m), with a scalar table.
struct PackedSpace {
  PackedSpace(const FieldSpec& f, std::size_t m);
  std::uint32_t pack(const GFVector& v) const;
  GFVector unpack(std::uint32_t x) const;
  std::uint32_t scale(Elem a, std::uint32_t x) const { return scal[std::size_t(a) * count + x]; }

  FieldSpec field;
  std::size_t m;
  std::uint32_t q, count;
  std::vector<std::uint32_t> scal;
};

template <class Fn>
void full_rank_rows_rec(const PackedSpace& P, std::size_t s, std::vector<std::uint32_t>& rows,
                        std::vector<std::uint32_t>& span, std::vector<std::uint8_t>& in_span, Fn& fn) {
  const std::size_t k = rows.size();
  for (std::uint32_t v = 1; v < P.count; ++v) {
    if (in_span[v]) continue;
    rows.push_back(v);
    if (k + 1 == s) {
      fn(static_cast<const std::vector<std::uint32_t>&>(rows));
    } else {
      const std::size_t old = span.size();
      for (Elem a = 1; a < P.q; ++a) {
        const std::uint32_t av = P.scale(a, v);
        for (std::size_t i = 0; i < old; ++i) {
          const std::uint32_t w = span[i] ^ av;
          span.push_back(w);
          in_span[w] = 1;
        }
      }
      full_rank_rows_rec(P, s, rows, span, in_span, fn);
      for (std::size_t i = old; i < span.size(); ++i) in_span[span[i]] = 0;
      span.resize(old);
    }
    rows.pop_back();
  }
}

/// Calls fn(rows) for every s-tuple of packed vectors that is linearly independent.
template <class Fn>
void for_each_full_rank_rows(const PackedSpace& P, std::size_t s, Fn&& fn) {
  if (s == 0) {
    const std::vector<std::uint32_t> none;
    fn(none);
    return;
  }
  std::vector<std::uint32_t> rows, span{0};
  std::vector<std::uint8_t> in_span(P.count, 0);
  in_span[0] = 1;
  full_rank_rows_rec(P, s, rows, span, in_span, fn);
}

/// key(c ⊗ v) for every packed row vector v, c a column vector of length m.
std::vector<std::uint64_t> outer_keys(const PackedSpace& P, const GFVector& c);
void check_keyable(const MatrixPosetSpec& spec);

}  // namespace detail

/// All rank-s matrices of F_q^{m x m}, ordered by column space, then by the row basis N in M = C^T N.
RankLevel enumerate_rank(const MatrixPosetSpec& spec, std::size_t s, std::uint64_t cap = 100'000'000);

/// Streams the enumerate_rank order as 64-bit keys (needs b*m*m <= 64 and q^m <= 2^20).
template <class Fn>
void for_each_rank_key(const MatrixPosetSpec& spec, std::size_t s, Fn&& fn) {
  detail::check_keyable(spec);
  if (s > spec.m) return;
  if (s == 0) {
    fn(std::uint64_t(0));
    return;
  }
  const detail::PackedSpace P(spec.field, spec.m);
  for (const GFMatrix& C : enumerate_subspaces(spec.field, spec.m, s)) {
    std::vector<std::vector<std::uint64_t>> outer;
    for (std::size_t k = 0; k < s; ++k) outer.push_back(detail::outer_keys(P, C.row(k)));
    detail::for_each_full_rank_rows(P, s, [&](const std::vector<std::uint32_t>& rows) {
      std::uint64_t key = 0;
      for (std::size_t k = 0; k < s; ++k) key ^= outer[k][rows[k]];
      fn(key);
    });
  }
}

/// Rank-t matrices whose column span meets rowspace(avoid_col) trivially and row span meets
/// rowspace(avoid_row) trivially.
std::vector<GFMatrix> enumerate_rank_avoiding(const FieldSpec& f, std::size_t n, std::size_t t,
                                              const GFMatrix& avoid_col, const GFMatrix& avoid_row);

/// Rank-s matrices M with M ⪯ I_m (these are exactly the rank-s idempotents).
std::vector<GFMatrix> enumerate_dominated_by_identity(const FieldSpec& f, std::size_t m, std::size_t s);
/// Rank-s matrices L with L ⪯ M.
std::vector<GFMatrix> enumerate_below(const GFMatrix& M, std::size_t s);

/// Unique maximal matrix dominated by both inputs; throws AmbiguityError otherwise.
GFMatrix meet_maximal(const GFMatrix& M0, const GFMatrix& M1, std::uint64_t candidate_cap = 1u << 22);

struct IdentityDomination {
  bool dominated = false;
  GFMatrix V1, V2;  // M = V1 V2^T; V2^T V1 = I_r when dominated
};
IdentityDomination dominated_by_identity(const GFMatrix& M);

struct PosetAxiomReport {
  std::size_t elements = 0;
  std::size_t relations = 0;
  std::size_t covers = 0;
  bool transitive = true;
  bool antisymmetric = true;
  bool graded = true;
  bool pure = true;
  std::string first_violation;
  bool ok() const { return transitive && antisymmetric && graded && pure; }
};
/// Exhaustive axiom check over every matrix of F_q^{m x m} (needs q^{m^2} <= 2^12).
PosetAxiomReport check_matrix_poset_axioms(const MatrixPosetSpec& spec);

}  // namespace hdx
