#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdx {

/// Bit-packed vector over F2. Coordinate i lives in bit (i % 64) of word i / 64.
class F2Vec {
 public:
  F2Vec() = default;
  explicit F2Vec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static F2Vec from_u64(std::uint64_t bits, std::size_t n);
  static F2Vec unit(std::size_t i, std::size_t n);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v)
      w_[i >> 6] |= std::uint64_t(1) << (i & 63);
    else
      w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  F2Vec& operator^=(const F2Vec& o);
  friend F2Vec operator^(F2Vec a, const F2Vec& b) { return a ^= b; }

  bool dot(const F2Vec& o) const;
  std::size_t weight() const;
  bool is_zero() const;
  /// Index of the lowest set coordinate, if any.
  std::optional<std::size_t> lowest() const;
  std::uint64_t to_u64() const;

  std::span<const std::uint64_t> words() const { return w_; }
  std::span<std::uint64_t> words() { return w_; }

  /// Hex of the integer sum_i c_i 2^i, most significant digit first, ceil(n/4) digits.
  std::string to_hex() const;
  static F2Vec from_hex(std::string_view hex, std::size_t n);

  bool operator==(const F2Vec& o) const { return n_ == o.n_ && w_ == o.w_; }
  /// Canonical order: by length, then as integers.
  std::strong_ordering operator<=>(const F2Vec& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct F2VecHash {
  std::size_t operator()(const F2Vec& v) const;
};

/// Dense bit-packed matrix over F2 (row-major, rows are F2Vec-compatible).
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);
  static F2Matrix from_rows(const std::vector<F2Vec>& rows, std::size_t cols);
  static F2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const { return (row_ptr(r)[c >> 6] >> (c & 63)) & 1u; }
  void set(std::size_t r, std::size_t c, bool v = true);

  std::uint64_t* row_ptr(std::size_t r) { return data_.data() + r * wpr_; }
  const std::uint64_t* row_ptr(std::size_t r) const { return data_.data() + r * wpr_; }
  F2Vec row(std::size_t r) const;
  void set_row(std::size_t r, const F2Vec& v);
  void xor_row(std::size_t dst, std::size_t src);
  void append_row(const F2Vec& v);

  F2Matrix transpose() const;
  F2Matrix operator*(const F2Matrix& o) const;
  F2Vec mul_vec(const F2Vec& x) const;   // y = M x
  F2Vec left_mul(const F2Vec& x) const;  // y = x^T M
  bool is_zero() const;
  bool operator==(const F2Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Gaussian elimination result: reduced echelon rows and pivot columns.
struct F2Echelon {
  F2Matrix rref;                     // only the nonzero rows
  std::vector<std::size_t> pivots;   // pivot column of each row
};

F2Echelon rref(const F2Matrix& m);
std::size_t rank(const F2Matrix& m);
/// Basis (as rows) of the right kernel {x : M x = 0}.
F2Matrix kernel_basis(const F2Matrix& m);

/// Incremental echelon basis of a subspace of F2^n.
class F2Basis {
 public:
  explicit F2Basis(std::size_t n = 0) : n_(n) {}
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return vecs_.size(); }
  /// Reduce v against the basis in place; returns true if v became zero.
  bool reduce(F2Vec& v) const;
  bool contains(F2Vec v) const { return reduce(v); }
  /// Insert; returns false if v was already in the span.
  bool insert(F2Vec v);
  const std::vector<F2Vec>& vectors() const { return vecs_; }

 private:
  std::size_t n_;
  std::vector<F2Vec> vecs_;
  std::vector<std::size_t> piv_;
};

}  // namespace hdx
