#include "hdx/matrix_poset.hpp"

#include <algorithm>
#include <numeric>

namespace hdx {

namespace detail {

PackedSpace::PackedSpace(const FieldSpec& f, std::size_t m_) : field(f), m(m_), q(f.order()) {
  const std::size_t bits = std::size_t(f.degree()) * m;
  if (bits > 22) throw std::length_error("packed vector space too large");
  count = 1u << bits;
  scal.assign(std::size_t(q) * count, 0);
  for (Elem a = 0; a < q; ++a)
    for (std::uint32_t x = 0; x < count; ++x) {
      std::uint32_t y = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const Elem e = (x >> (j * f.degree())) & (q - 1);
        y |= f.mul(a, e) << (j * f.degree());
      }
      scal[std::size_t(a) * count + x] = y;
    }
}

std::uint32_t PackedSpace::pack(const GFVector& v) const {
  std::uint32_t x = 0;
  for (std::size_t j = 0; j < m; ++j) x |= v[j] << (j * field.degree());
  return x;
}

GFVector PackedSpace::unpack(std::uint32_t x) const {
  GFVector v(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = (x >> (j * field.degree())) & (q - 1);
  return v;
}

std::vector<std::uint64_t> outer_keys(const PackedSpace& P, const GFVector& c) {
  const int b = P.field.degree();
  std::vector<std::uint64_t> out(P.count);
  for (std::uint32_t x = 0; x < P.count; ++x) {
    const GFVector v = P.unpack(x);
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < P.m; ++i) {
      if (!c[i]) continue;
      for (std::size_t j = 0; j < P.m; ++j)
        key |= std::uint64_t(P.field.mul(c[i], v[j])) << ((i * P.m + j) * b);
    }
    out[x] = key;
  }
  return out;
}

void check_keyable(const MatrixPosetSpec& spec) {
  if (std::size_t(spec.field.degree()) * spec.m * spec.m > 64)
    throw std::length_error("matrices do not fit a 64-bit key");
  if (std::size_t(spec.field.degree()) * spec.m > 20) throw std::length_error("row space too large to pack");
}

}  // namespace detail

bool dominates(const GFMatrix& lower, const GFMatrix& upper) {
  if (lower.rows() != upper.rows() || lower.cols() != upper.cols())
    throw std::invalid_argument("dominates: dimension mismatch");
  const std::size_t ru = rank(upper), rl = rank(lower);
  if (rl > ru) return false;
  return rank(upper - lower) == ru - rl;
}

std::vector<GFMatrix> enumerate_subspaces(const FieldSpec& f, std::size_t n, std::size_t s) {
  std::vector<GFMatrix> out;
  if (s > n) return out;
  if (s == 0) {
    out.emplace_back(f, 0, n);
    return out;
  }
  const Elem q = f.order();
  std::vector<std::size_t> piv(s);
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    // free slots: (row k, column j) with j > piv[k], j not a pivot
    std::vector<bool> is_piv(n, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t j = piv[k] + 1; j < n; ++j)
        if (!is_piv[j]) slots.emplace_back(k, j);
    std::vector<Elem> val(slots.size(), 0);
    while (true) {
      GFMatrix B(f, s, n);
      for (std::size_t k = 0; k < s; ++k) B.set(k, piv[k], 1);
      for (std::size_t t = 0; t < slots.size(); ++t) B.set(slots[t].first, slots[t].second, val[t]);
      out.push_back(std::move(B));
      std::size_t t = slots.size();
      while (t > 0 && val[t - 1] == q - 1) val[--t] = 0;
      if (t == 0) break;
      ++val[t - 1];
    }
    // next pivot combination in lexicographic order
    std::size_t k = s;
    while (k > 0 && piv[k - 1] == n - s + k - 1) --k;
    if (k == 0) break;
    ++piv[k - 1];
    for (std::size_t j = k; j < s; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

namespace {

std::vector<GFVector> span_elements(const GFMatrix& basis) {
  const FieldSpec& f = basis.field();
  std::vector<GFVector> out{GFVector(basis.cols(), 0)};
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    const std::size_t old = out.size();
    for (Elem a = 1; a < f.order(); ++a)
      for (std::size_t i = 0; i < old; ++i) {
        GFVector w = out[i];
        for (std::size_t c = 0; c < w.size(); ++c) w[c] ^= f.mul(a, basis.at(r, c));
        out.push_back(std::move(w));
      }
  }
  return out;
}

}  // namespace

std::vector<GFMatrix> enumerate_subspaces_avoiding(const FieldSpec& f, std::size_t n, const GFMatrix& avoid,
                                                   std::size_t t) {
  const GFEchelon e = avoid.rows() ? rref(avoid) : GFEchelon{GFMatrix(f, 0, n), {}};
  const std::size_t a = e.pivots.size();
  if (t + a > n) return {};
  std::vector<bool> is_piv(n, false);
  for (auto p : e.pivots) is_piv[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  const auto lifts = span_elements(e.rref);
  std::vector<GFMatrix> out;
  for (const GFMatrix& S : enumerate_subspaces(f, n - a, t)) {
    std::vector<std::size_t> choice(t, 0);
    while (true) {
      GFMatrix B(f, t, n);
      for (std::size_t k = 0; k < t; ++k) {
        for (std::size_t j = 0; j < n - a; ++j) B.set(k, free_cols[j], S.at(k, j));
        const GFVector& l = lifts[choice[k]];
        for (std::size_t j = 0; j < n; ++j) B.set(k, j, B.at(k, j) ^ l[j]);
      }
      out.push_back(std::move(B));
      std::size_t k = t;
      while (k > 0 && choice[k - 1] + 1 == lifts.size()) choice[--k] = 0;
      if (k == 0) break;
      ++choice[k - 1];
    }
  }
  return out;
}

std::vector<GFMatrix> enumerate_gl(const FieldSpec& f, std::size_t s) {
  std::vector<GFMatrix> out;
  if (s == 0) {
    out.emplace_back(f, 0, 0);
    return out;
  }
  const detail::PackedSpace P(f, s);
  detail::for_each_full_rank_rows(P, s, [&](const std::vector<std::uint32_t>& rows) {
    GFMatrix K(f, s, s);
    for (std::size_t k = 0; k < s; ++k) {
      const GFVector v = P.unpack(rows[k]);
      for (std::size_t j = 0; j < s; ++j) K.set(k, j, v[j]);
    }
    out.push_back(std::move(K));
  });
  return out;
}

RankLevel enumerate_rank(const MatrixPosetSpec& spec, std::size_t s, std::uint64_t cap) {
  if (spec.m == 0) throw std::invalid_argument("matrix poset needs m >= 1");
  if (s > spec.m) throw std::invalid_argument("rank exceeds matrix size");
  const BigInt projected = count_rank(spec.field.order(), spec.m, s);
  if (projected > BigInt(std::to_string(cap))) throw CapExceeded("rank level exceeds cap", projected);
  RankLevel lvl{spec, s, {}};
  lvl.members.reserve(projected.get_ui());
  const FieldSpec& f = spec.field;
  const std::size_t m = spec.m;
  if (s == 0) {
    lvl.members.emplace_back(f, m, m);
    return lvl;
  }
  const detail::PackedSpace P(f, m);
  for (const GFMatrix& C : enumerate_subspaces(f, m, s)) {
    detail::for_each_full_rank_rows(P, s, [&](const std::vector<std::uint32_t>& rows) {
      GFMatrix M(f, m, m);
      for (std::size_t k = 0; k < s; ++k) {
        const GFVector v = P.unpack(rows[k]);
        for (std::size_t i = 0; i < m; ++i) {
          const Elem c = C.at(k, i);
          if (!c) continue;
          for (std::size_t j = 0; j < m; ++j) M.set(i, j, M.at(i, j) ^ f.mul(c, v[j]));
        }
      }
      lvl.members.push_back(std::move(M));
    });
  }
  return lvl;
}

std::vector<GFMatrix> enumerate_rank_avoiding(const FieldSpec& f, std::size_t n, std::size_t t,
                                              const GFMatrix& avoid_col, const GFMatrix& avoid_row) {
  const auto cols = enumerate_subspaces_avoiding(f, n, avoid_col, t);
  const auto rows = enumerate_subspaces_avoiding(f, n, avoid_row, t);
  const auto cores = enumerate_gl(f, t);
  std::vector<GFMatrix> out;
  out.reserve(cols.size() * rows.size() * cores.size());
  for (const auto& C : cols) {
    const GFMatrix Ct = C.transpose();
    for (const auto& K : cores) {
      const GFMatrix CK = Ct * K;
      for (const auto& R : rows) out.push_back(CK * R);
    }
  }
  return out;
}

std::vector<GFMatrix> enumerate_dominated_by_identity(const FieldSpec& f, std::size_t m, std::size_t s) {
  std::vector<GFMatrix> out;
  if (s > m) return out;
  if (s == 0) {
    out.emplace_back(f, m, m);
    return out;
  }
  const Elem q = f.order();
  for (const GFMatrix& B : enumerate_subspaces(f, m, s)) {
    // V1 = B^T (m x s) has I_s on its pivot rows; V2^T = [X_P | X_F] with X_P = I + X_F V1[F,:]
    std::vector<std::size_t> piv, fr;
    std::vector<bool> is_piv(m, false);
    for (std::size_t k = 0; k < s; ++k) {
      std::size_t j = 0;
      while (B.at(k, j) == 0) ++j;
      piv.push_back(j);
      is_piv[j] = true;
    }
    for (std::size_t j = 0; j < m; ++j)
      if (!is_piv[j]) fr.push_back(j);
    const GFMatrix V1 = B.transpose();
    std::vector<Elem> val(s * fr.size(), 0);
    while (true) {
      GFMatrix V2t(f, s, m);
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t c = 0; c < fr.size(); ++c) V2t.set(k, fr[c], val[k * fr.size() + c]);
      for (std::size_t k = 0; k < s; ++k)
        for (std::size_t l = 0; l < s; ++l) {
          Elem acc = (k == l) ? 1 : 0;
          for (std::size_t c = 0; c < fr.size(); ++c) acc ^= f.mul(V2t.at(k, fr[c]), V1.at(fr[c], l));
          V2t.set(k, piv[l], acc);
        }
      out.push_back(V1 * V2t);
      std::size_t t = val.size();
      while (t > 0 && val[t - 1] == q - 1) val[--t] = 0;
      if (t == 0) break;
      ++val[t - 1];
    }
  }
  return out;
}

std::vector<GFMatrix> enumerate_below(const GFMatrix& M, std::size_t s) {
  const auto rf = rank_factorization(M);
  const std::size_t t = rf.U.cols();
  std::vector<GFMatrix> out;
  if (s > t) return out;
  const GFMatrix Wt = rf.W.transpose();
  for (const auto& C : enumerate_dominated_by_identity(M.field(), t, s)) out.push_back(rf.U * C * Wt);
  return out;
}

GFMatrix meet_maximal(const GFMatrix& M0, const GFMatrix& M1, std::uint64_t candidate_cap) {
  if (M0.rows() != M1.rows() || M0.cols() != M1.cols()) throw std::invalid_argument("meet: dimension mismatch");
  const FieldSpec& f = M0.field();
  const std::size_t n = M0.cols();
  auto rows_of = [](const GFMatrix& b) {
    std::vector<GFVector> v;
    for (std::size_t r = 0; r < b.rows(); ++r) v.push_back(b.row(r));
    return v;
  };
  const auto R = intersect_subspaces(f, rows_of(row_space(M0)), rows_of(row_space(M1)), n);
  const auto C = intersect_subspaces(f, rows_of(col_space(M0)), rows_of(col_space(M1)), M0.rows());
  const std::size_t a = C.size(), c = R.size();
  const BigInt projected = big_pow(f.order(), a * c);
  if (projected > BigInt(std::to_string(candidate_cap))) throw CapExceeded("meet candidate space exceeds cap", projected);
  // candidates X = Cb^T A Rb, A arbitrary a x c
  const GFMatrix Cbt = a ? basis_matrix(f, C, M0.rows()).transpose() : GFMatrix(f, M0.rows(), 0);
  const GFMatrix Rb = c ? basis_matrix(f, R, n) : GFMatrix(f, 0, n);
  std::vector<GFMatrix> common;
  std::vector<std::size_t> ranks;
  std::vector<Elem> val(a * c, 0);
  const Elem q = f.order();
  while (true) {
    GFMatrix A(f, a, c);
    for (std::size_t i = 0; i < a * c; ++i) A.set(i / c, i % c, val[i]);
    GFMatrix X = (a && c) ? Cbt * A * Rb : GFMatrix(f, M0.rows(), n);
    if (dominates(X, M0) && dominates(X, M1)) {
      ranks.push_back(rank(X));
      common.push_back(std::move(X));
    }
    std::size_t t = val.size();
    while (t > 0 && val[t - 1] == q - 1) val[--t] = 0;
    if (t == 0) break;
    ++val[t - 1];
  }
  std::size_t top = 0;
  for (std::size_t i = 1; i < common.size(); ++i)
    if (ranks[i] > ranks[top]) top = i;
  std::size_t other = common.size();
  for (std::size_t i = 0; i < common.size(); ++i) {
    if (i == top || dominates(common[i], common[top])) continue;
    if (other == common.size() || ranks[i] > ranks[other]) other = i;
  }
  if (other != common.size()) throw AmbiguityError(common[top], common[other]);
  return common[top];
}

IdentityDomination dominated_by_identity(const GFMatrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("dominated_by_identity needs a square matrix");
  auto rf = rank_factorization(M);
  IdentityDomination out;
  out.dominated = (rf.W.transpose() * rf.U) == GFMatrix::identity(M.field(), rf.U.cols());
  out.V1 = std::move(rf.U);
  out.V2 = std::move(rf.W);
  return out;
}

PosetAxiomReport check_matrix_poset_axioms(const MatrixPosetSpec& spec) {
  const std::size_t bits = std::size_t(spec.field.degree()) * spec.m * spec.m;
  if (bits > 12) throw std::length_error("exhaustive axiom check limited to 2^12 matrices");
  const std::size_t N = std::size_t(1) << bits, W = (N + 63) / 64;
  std::vector<GFMatrix> all;
  std::vector<std::size_t> rk(N);
  for (std::size_t i = 0; i < N; ++i) {
    all.push_back(GFMatrix::from_key(spec.field, spec.m, spec.m, i));
    rk[i] = rank(all[i]);
  }
  // up[a] bit c: a ⪯ c; down[c] bit a likewise
  std::vector<std::uint64_t> up(N * W, 0), down(N * W, 0);
  PosetAxiomReport rep;
  rep.elements = N;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t c = 0; c < N; ++c) {
      if (rk[a] > rk[c]) continue;
      if (rank(all[c] - all[a]) != rk[c] - rk[a]) continue;
      up[a * W + c / 64] |= std::uint64_t(1) << (c % 64);
      down[c * W + a / 64] |= std::uint64_t(1) << (a % 64);
      ++rep.relations;
    }
  auto has = [&](const std::vector<std::uint64_t>& v, std::size_t a, std::size_t c) {
    return (v[a * W + c / 64] >> (c % 64)) & 1u;
  };
  auto fail = [&](bool& flag, const std::string& msg) {
    if (flag && rep.first_violation.empty()) rep.first_violation = msg;
    flag = false;
  };
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      if (a == b || !has(up, a, b)) continue;
      if (has(up, b, a)) fail(rep.antisymmetric, "antisymmetry fails at keys " + std::to_string(a) + "," + std::to_string(b));
      // transitivity: up[b] ⊆ up[a]
      for (std::size_t w = 0; w < W; ++w)
        if (up[b * W + w] & ~up[a * W + w])
          fail(rep.transitive, "transitivity fails below key " + std::to_string(a) + " via " + std::to_string(b));
      // cover iff nothing strictly between
      bool between = false;
      for (std::size_t w = 0; w < W && !between; ++w) {
        std::uint64_t x = up[a * W + w] & down[b * W + w];
        if (w == a / 64) x &= ~(std::uint64_t(1) << (a % 64));
        if (w == b / 64) x &= ~(std::uint64_t(1) << (b % 64));
        between = x != 0;
      }
      if (!between) {
        ++rep.covers;
        if (rk[b] != rk[a] + 1)
          fail(rep.graded, "cover with rank jump " + std::to_string(rk[b] - rk[a]) + " at keys " + std::to_string(a) +
                               "," + std::to_string(b));
      }
    }
  for (std::size_t a = 0; a < N; ++a) {
    bool ok = false;
    for (std::size_t c = 0; c < N && !ok; ++c) ok = rk[c] == spec.m && has(up, a, c);
    if (!ok) fail(rep.pure, "key " + std::to_string(a) + " has no full-rank upper bound");
  }
  return rep;
}

}  // namespace hdx
