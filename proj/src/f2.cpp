#include "hdx/f2.hpp"

#include <bit>
#include <stdexcept>

namespace hdx {

F2Vec F2Vec::from_u64(std::uint64_t bits, std::size_t n) {
  F2Vec v(n);
  if (n < 64) bits &= (std::uint64_t(1) << n) - 1;
  if (n > 0) v.w_[0] = bits;
  return v;
}

F2Vec F2Vec::unit(std::size_t i, std::size_t n) {
  F2Vec v(n);
  v.set(i);
  return v;
}

F2Vec& F2Vec::operator^=(const F2Vec& o) {
  if (o.n_ != n_) throw std::invalid_argument("F2Vec length mismatch");
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  return *this;
}

bool F2Vec::dot(const F2Vec& o) const {
  if (o.n_ != n_) throw std::invalid_argument("F2Vec length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
  return std::popcount(acc) & 1;
}

std::size_t F2Vec::weight() const {
  std::size_t c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

bool F2Vec::is_zero() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

std::optional<std::size_t> F2Vec::lowest() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
  return std::nullopt;
}

std::uint64_t F2Vec::to_u64() const {
  if (n_ > 64) throw std::length_error("F2Vec wider than 64 bits");
  return w_.empty() ? 0 : w_[0];
}

std::string F2Vec::to_hex() const {
  static const char* digits = "0123456789abcdef";
  const std::size_t nd = (n_ + 3) / 4;
  std::string s(nd, '0');
  for (std::size_t d = 0; d < nd; ++d) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = 4 * d + b;
      if (i < n_ && get(i)) v |= 1u << b;
    }
    s[nd - 1 - d] = digits[v];
  }
  return s;
}

F2Vec F2Vec::from_hex(std::string_view hex, std::size_t n) {
  F2Vec v(n);
  const std::size_t nd = hex.size();
  for (std::size_t d = 0; d < nd; ++d) {
    const char ch = hex[nd - 1 - d];
    unsigned val;
    if (ch >= '0' && ch <= '9')
      val = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      val = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      val = ch - 'A' + 10;
    else
      throw std::invalid_argument("bad hex digit");
    for (std::size_t b = 0; b < 4; ++b) {
      if (!((val >> b) & 1u)) continue;
      const std::size_t i = 4 * d + b;
      if (i >= n) throw std::invalid_argument("hex value exceeds vector length");
      v.set(i);
    }
  }
  return v;
}

std::strong_ordering F2Vec::operator<=>(const F2Vec& o) const {
  if (n_ != o.n_) return n_ <=> o.n_;
  for (std::size_t k = w_.size(); k-- > 0;)
    if (w_[k] != o.w_[k]) return w_[k] <=> o.w_[k];
  return std::strong_ordering::equal;
}

std::size_t F2VecHash::operator()(const F2Vec& v) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
  for (auto w : v.words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

F2Matrix F2Matrix::from_rows(const std::vector<F2Vec>& rows, std::size_t cols) {
  F2Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void F2Matrix::set(std::size_t r, std::size_t c, bool v) {
  std::uint64_t& w = row_ptr(r)[c >> 6];
  const std::uint64_t bit = std::uint64_t(1) << (c & 63);
  w = v ? (w | bit) : (w & ~bit);
}

F2Vec F2Matrix::row(std::size_t r) const {
  F2Vec v(cols_);
  auto w = v.words();
  for (std::size_t k = 0; k < wpr_; ++k) w[k] = row_ptr(r)[k];
  return v;
}

void F2Matrix::set_row(std::size_t r, const F2Vec& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  auto w = v.words();
  for (std::size_t k = 0; k < wpr_; ++k) row_ptr(r)[k] = w[k];
}

void F2Matrix::xor_row(std::size_t dst, std::size_t src) {
  std::uint64_t* d = row_ptr(dst);
  const std::uint64_t* s = row_ptr(src);
  for (std::size_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
}

void F2Matrix::append_row(const F2Vec& v) {
  if (rows_ == 0 && cols_ == 0) {
    cols_ = v.size();
    wpr_ = (cols_ + 63) / 64;
  }
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), v.words().begin(), v.words().end());
  ++rows_;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t* p = row_ptr(r);
    for (std::size_t k = 0; k < wpr_; ++k) {
      std::uint64_t w = p[k];
      while (w) {
        const std::size_t c = k * 64 + std::countr_zero(w);
        t.set(c, r);
        w &= w - 1;
      }
    }
  }
  return t;
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("F2Matrix product shape mismatch");
  F2Matrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t* p = row_ptr(r);
    std::uint64_t* d = out.row_ptr(r);
    for (std::size_t k = 0; k < wpr_; ++k) {
      std::uint64_t w = p[k];
      while (w) {
        const std::size_t c = k * 64 + std::countr_zero(w);
        const std::uint64_t* s = o.row_ptr(c);
        for (std::size_t j = 0; j < out.wpr_; ++j) d[j] ^= s[j];
        w &= w - 1;
      }
    }
  }
  return out;
}

F2Vec F2Matrix::mul_vec(const F2Vec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("mul_vec shape mismatch");
  F2Vec y(rows_);
  auto xw = x.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const std::uint64_t* p = row_ptr(r);
    for (std::size_t k = 0; k < wpr_; ++k) acc ^= p[k] & xw[k];
    if (std::popcount(acc) & 1) y.set(r);
  }
  return y;
}

F2Vec F2Matrix::left_mul(const F2Vec& x) const {
  if (x.size() != rows_) throw std::invalid_argument("left_mul shape mismatch");
  F2Vec y(cols_);
  auto yw = y.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!x.get(r)) continue;
    const std::uint64_t* p = row_ptr(r);
    for (std::size_t k = 0; k < wpr_; ++k) yw[k] ^= p[k];
  }
  return y;
}

bool F2Matrix::is_zero() const {
  for (auto w : data_)
    if (w) return false;
  return true;
}

F2Echelon rref(const F2Matrix& m0) {
  F2Matrix m = m0;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    if (p != rank) {
      std::uint64_t* a = m.row_ptr(p);
      std::uint64_t* b = m.row_ptr(rank);
      for (std::size_t k = 0; k < m.words_per_row(); ++k) std::swap(a[k], b[k]);
    }
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != rank && m.get(r, c)) m.xor_row(r, rank);
    pivots.push_back(c);
    ++rank;
  }
  F2Matrix out(rank, m.cols());
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t k = 0; k < m.words_per_row(); ++k) out.row_ptr(r)[k] = m.row_ptr(r)[k];
  return {out, pivots};
}

std::size_t rank(const F2Matrix& m) {
  F2Basis b(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) b.insert(m.row(r));
  return b.dim();
}

F2Matrix kernel_basis(const F2Matrix& m) {
  const auto e = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  F2Matrix k(0, n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    F2Vec v(n);
    v.set(f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      if (e.rref.get(r, f)) v.set(e.pivots[r]);
    k.append_row(v);
  }
  return k;
}

bool F2Basis::reduce(F2Vec& v) const {
  if (v.size() != n_) throw std::invalid_argument("F2Basis length mismatch");
  for (std::size_t j = 0; j < vecs_.size(); ++j)
    if (v.get(piv_[j])) v ^= vecs_[j];
  return v.is_zero();
}

bool F2Basis::insert(F2Vec v) {
  if (reduce(v)) return false;
  const std::size_t p = *v.lowest();
  piv_.push_back(p);
  vecs_.push_back(std::move(v));
  return true;
}

}  // namespace hdx
