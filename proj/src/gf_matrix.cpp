#include "hdx/gf_matrix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace hdx {

GFMatrix::GFMatrix(const FieldSpec& f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), d_(rows * cols, 0) {}

GFMatrix GFMatrix::identity(const FieldSpec& f, std::size_t n) {
  GFMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

GFMatrix GFMatrix::from_rows(const FieldSpec& f, const std::vector<GFVector>& rows) {
  if (rows.empty()) return GFMatrix(f, 0, 0);
  GFMatrix m(f, rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) {
      if (rows[r][c] >= f.order()) throw std::invalid_argument("entry outside field");
      m.set(r, c, rows[r][c]);
    }
  }
  return m;
}

GFVector GFMatrix::row(std::size_t r) const { return GFVector(d_.begin() + r * cols_, d_.begin() + (r + 1) * cols_); }

GFVector GFMatrix::col(std::size_t c) const {
  GFVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

GFMatrix& GFMatrix::operator+=(const GFMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("GFMatrix shape mismatch");
  for (std::size_t i = 0; i < d_.size(); ++i) d_[i] ^= o.d_[i];
  return *this;
}

GFMatrix GFMatrix::operator*(const GFMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("GFMatrix product shape mismatch");
  GFMatrix out(f_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem a = at(r, k);
      if (!a) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out.d_[r * o.cols_ + c] ^= f_.mul(a, o.at(k, c));
    }
  return out;
}

GFVector GFMatrix::operator*(const GFVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("GFMatrix-vector shape mismatch");
  GFVector y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] ^= f_.mul(at(r, c), v[c]);
  return y;
}

GFMatrix GFMatrix::transpose() const {
  GFMatrix t(f_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

GFMatrix GFMatrix::scaled(Elem s) const {
  GFMatrix m = *this;
  for (auto& e : m.d_) e = f_.mul(e, s);
  return m;
}

bool GFMatrix::is_zero() const {
  return std::all_of(d_.begin(), d_.end(), [](Elem e) { return e == 0; });
}

bool GFMatrix::operator<(const GFMatrix& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  return d_ < o.d_;
}

F2Vec GFMatrix::flatten() const {
  const std::size_t b = f_.degree();
  F2Vec v(b * d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i)
    for (std::size_t t = 0; t < b; ++t)
      if ((d_[i] >> t) & 1u) v.set(i * b + t);
  return v;
}

GFMatrix GFMatrix::unflatten(const FieldSpec& f, std::size_t rows, std::size_t cols, const F2Vec& v) {
  const std::size_t b = f.degree();
  if (v.size() != b * rows * cols) throw std::invalid_argument("flattened length mismatch");
  GFMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i) {
    Elem e = 0;
    for (std::size_t t = 0; t < b; ++t)
      if (v.get(i * b + t)) e |= Elem(1) << t;
    m.d_[i] = e;
  }
  return m;
}

std::uint64_t GFMatrix::key() const {
  const std::size_t b = f_.degree();
  if (b * d_.size() > 64) throw std::length_error("matrix does not fit a 64-bit key");
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < d_.size(); ++i) k |= std::uint64_t(d_[i]) << (i * b);
  return k;
}

GFMatrix GFMatrix::from_key(const FieldSpec& f, std::size_t rows, std::size_t cols, std::uint64_t key) {
  const std::size_t b = f.degree();
  GFMatrix m(f, rows, cols);
  const std::uint64_t mask = (std::uint64_t(1) << b) - 1;
  for (std::size_t i = 0; i < rows * cols; ++i) m.d_[i] = static_cast<Elem>((key >> (i * b)) & mask);
  return m;
}

GFEchelon rref(const GFMatrix& m0) {
  GFMatrix m = m0;
  const FieldSpec& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < m.cols() && rk < m.rows(); ++c) {
    std::size_t p = rk;
    while (p < m.rows() && m.at(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != rk)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Elem t = m.at(p, j);
        m.set(p, j, m.at(rk, j));
        m.set(rk, j, t);
      }
    const Elem inv = f.inv(m.at(rk, c));
    for (std::size_t j = c; j < m.cols(); ++j) m.set(rk, j, f.mul(m.at(rk, j), inv));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rk) continue;
      const Elem s = m.at(r, c);
      if (!s) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m.set(r, j, m.at(r, j) ^ f.mul(s, m.at(rk, j)));
    }
    pivots.push_back(c);
    ++rk;
  }
  GFMatrix out(f, rk, m.cols());
  for (std::size_t r = 0; r < rk; ++r)
    for (std::size_t j = 0; j < m.cols(); ++j) out.set(r, j, m.at(r, j));
  return {out, pivots};
}

std::size_t rank(const GFMatrix& m) {
  // elimination on a scratch copy without the final extraction
  GFMatrix a = m;
  const FieldSpec& f = a.field();
  std::size_t rk = 0;
  for (std::size_t c = 0; c < a.cols() && rk < a.rows(); ++c) {
    std::size_t p = rk;
    while (p < a.rows() && a.at(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != rk)
      for (std::size_t j = c; j < a.cols(); ++j) {
        const Elem t = a.at(p, j);
        a.set(p, j, a.at(rk, j));
        a.set(rk, j, t);
      }
    const Elem inv = f.inv(a.at(rk, c));
    for (std::size_t r = rk + 1; r < a.rows(); ++r) {
      const Elem s = a.at(r, c);
      if (!s) continue;
      const Elem factor = f.mul(s, inv);
      for (std::size_t j = c; j < a.cols(); ++j) a.set(r, j, a.at(r, j) ^ f.mul(factor, a.at(rk, j)));
    }
    ++rk;
  }
  return rk;
}

std::vector<GFVector> kernel_basis(const GFMatrix& m) {
  const auto e = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<GFVector> out;
  for (std::size_t fcol = 0; fcol < n; ++fcol) {
    if (is_pivot[fcol]) continue;
    GFVector v(n, 0);
    v[fcol] = 1;
    // char 2: x_pivot = -sum a x_free = sum a x_free
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = e.rref.at(r, fcol);
    out.push_back(std::move(v));
  }
  return out;
}

GFMatrix row_space(const GFMatrix& m) { return rref(m).rref; }

GFMatrix col_space(const GFMatrix& m) { return rref(m.transpose()).rref; }

GFMatrix basis_matrix(const FieldSpec& f, const std::vector<GFVector>& vs, std::size_t n) {
  GFMatrix m(f, vs.size(), n);
  for (std::size_t r = 0; r < vs.size(); ++r) {
    if (vs[r].size() != n) throw std::invalid_argument("vector length mismatch");
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, vs[r][c]);
  }
  return m;
}

std::vector<GFVector> intersect_subspaces(const FieldSpec& f, const std::vector<GFVector>& a,
                                          const std::vector<GFVector>& b, std::size_t n) {
  if (a.empty() || b.empty()) return {};
  // x^T A = y^T B  <=>  (x, y) in the left kernel of [A; B]
  GFMatrix stacked(f, a.size() + b.size(), n);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) stacked.set(r, c, a[r][c]);
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) stacked.set(a.size() + r, c, b[r][c]);
  const auto ker = kernel_basis(stacked.transpose());
  std::vector<GFVector> gens;
  for (const auto& z : ker) {
    GFVector v(n, 0);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (!z[r]) continue;
      for (std::size_t c = 0; c < n; ++c) v[c] ^= f.mul(z[r], a[r][c]);
    }
    gens.push_back(std::move(v));
  }
  if (gens.empty()) return {};
  const GFMatrix basis = row_space(basis_matrix(f, gens, n));
  std::vector<GFVector> out;
  for (std::size_t r = 0; r < basis.rows(); ++r) out.push_back(basis.row(r));
  return out;
}

bool in_row_space(const GFMatrix& basis, const GFVector& v) {
  GFMatrix ext(basis.field(), basis.rows() + 1, v.size());
  for (std::size_t r = 0; r < basis.rows(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) ext.set(r, c, basis.at(r, c));
  for (std::size_t c = 0; c < v.size(); ++c) ext.set(basis.rows(), c, v[c]);
  return rank(ext) == rank(basis);
}

GFMatrix outer_product(const FieldSpec& f, const GFVector& u, const GFVector& v) {
  GFMatrix m(f, u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m.set(i, j, f.mul(u[i], v[j]));
  return m;
}

std::optional<GFMatrix> inverse(const GFMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  GFMatrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m.at(r, c));
    aug.set(r, n + r, 1);
  }
  const auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  GFMatrix inv(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, e.rref.at(r, n + c));
  return inv;
}

RankFactorization rank_factorization(const GFMatrix& m) {
  const auto e = rref(m.transpose());  // rows: echelon basis of the column space
  const std::size_t t = e.pivots.size();
  GFMatrix U = e.rref.transpose();     // rows x t
  GFMatrix W(m.field(), m.cols(), t);  // column k of W^T ... W row j = coefficients
  for (std::size_t k = 0; k < t; ++k)
    for (std::size_t j = 0; j < m.cols(); ++j) W.set(j, k, m.at(e.pivots[k], j));
  return {U, W};
}

nlohmann::json to_json(const GFMatrix& m) {
  nlohmann::json j;
  j["b"] = m.field().degree();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = std::vector<Elem>(m.data().begin(), m.data().end());
  return j;
}

GFMatrix gfmatrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("b") || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw std::invalid_argument("GFMatrix JSON needs b, rows, cols, entries");
  const FieldSpec f(j.at("b").get<int>());
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto entries = j.at("entries").get<std::vector<Elem>>();
  if (entries.size() != rows * cols) throw std::invalid_argument("GFMatrix JSON entry count mismatch");
  GFMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] >= f.order()) throw std::invalid_argument("GFMatrix JSON entry outside field");
    m.set(i / cols, i % cols, entries[i]);
  }
  return m;
}

}  // namespace hdx
