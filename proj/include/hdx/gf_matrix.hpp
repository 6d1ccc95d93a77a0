#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdx/f2.hpp"
#include "hdx/gf.hpp"
#include "json.hpp"

namespace hdx {

using GFVector = std::vector<Elem>;

/// Dense row-major matrix over GF(2^b).
class GFMatrix {
 public:
  GFMatrix() = default;
  GFMatrix(const FieldSpec& f, std::size_t rows, std::size_t cols);
  static GFMatrix identity(const FieldSpec& f, std::size_t n);
  static GFMatrix from_rows(const FieldSpec& f, const std::vector<GFVector>& rows);

  const FieldSpec& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem at(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Elem e) { d_[r * cols_ + c] = e; }
  std::span<const Elem> data() const { return d_; }
  GFVector row(std::size_t r) const;
  GFVector col(std::size_t c) const;

  GFMatrix& operator+=(const GFMatrix& o);
  friend GFMatrix operator+(GFMatrix a, const GFMatrix& b) { return a += b; }
  // characteristic 2: subtraction is addition
  friend GFMatrix operator-(GFMatrix a, const GFMatrix& b) { return a += b; }
  GFMatrix operator*(const GFMatrix& o) const;
  GFVector operator*(const GFVector& v) const;
  GFMatrix transpose() const;
  GFMatrix scaled(Elem s) const;
  bool is_zero() const;

  bool operator==(const GFMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && f_ == o.f_ && d_ == o.d_;
  }
  bool operator<(const GFMatrix& o) const;

  /// F2 coordinates: bit t of entry (r,c) goes to index (r*cols + c)*b + t.
  F2Vec flatten() const;
  static GFMatrix unflatten(const FieldSpec& f, std::size_t rows, std::size_t cols, const F2Vec& v);
  /// flatten() as an integer; requires b*rows*cols <= 64.
  std::uint64_t key() const;
  static GFMatrix from_key(const FieldSpec& f, std::size_t rows, std::size_t cols, std::uint64_t key);
  std::string to_hex() const { return flatten().to_hex(); }

 private:
  FieldSpec f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> d_;
};

struct GFEchelon {
  GFMatrix rref;                    // nonzero rows only
  std::vector<std::size_t> pivots;  // pivot column per row
};

GFEchelon rref(const GFMatrix& m);
std::size_t rank(const GFMatrix& m);
std::vector<GFVector> kernel_basis(const GFMatrix& m);
/// Reduced echelon basis (rows) of the row space.
GFMatrix row_space(const GFMatrix& m);
/// Reduced echelon basis (rows) of the column space.
GFMatrix col_space(const GFMatrix& m);
/// Stack vectors as rows; all must have length n.
GFMatrix basis_matrix(const FieldSpec& f, const std::vector<GFVector>& vs, std::size_t n);
std::vector<GFVector> intersect_subspaces(const FieldSpec& f, const std::vector<GFVector>& a,
                                          const std::vector<GFVector>& b, std::size_t n);
bool in_row_space(const GFMatrix& basis, const GFVector& v);
GFMatrix outer_product(const FieldSpec& f, const GFVector& u, const GFVector& v);
std::optional<GFMatrix> inverse(const GFMatrix& m);

/// M = U W^T with U (rows x t), W (cols x t), t = rank(M); U holds the echelon column basis.
struct RankFactorization {
  GFMatrix U;
  GFMatrix W;
};
RankFactorization rank_factorization(const GFMatrix& m);

nlohmann::json to_json(const GFMatrix& m);
GFMatrix gfmatrix_from_json(const nlohmann::json& j);

}  // namespace hdx
