#include "hdx/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <array>
#include <random>

#include "hdx/parallel.hpp"
#include "hdx/walks.hpp"

namespace hdx {

HadamardGen hadamard_generator(int r, std::optional<int> i) {
  if (r < 0 || r > 20) throw std::invalid_argument("hadamard_generator: r out of range");
  if (i && (*i < 0 || *i > r)) throw std::invalid_argument("hadamard_generator: cutoff out of range");
  const std::size_t rows = (std::size_t(1) << (r + 1)) - 1, width = std::size_t(r) + 1;
  const std::size_t cols = i ? std::size_t(*i) + 1 : width;
  HadamardGen g{r, i, F2Matrix(rows, cols)};
  for (std::size_t k = 1; k <= rows; ++k) {
    const std::size_t v = (std::size_t(1) << (r + 1)) - k;
    for (std::size_t c = 0; c < cols; ++c) g.matrix.set(k - 1, c, (v >> (width - 1 - c)) & 1u);
  }
  return g;
}

std::vector<std::size_t> hadamard_codeword_weights(const HadamardGen& g) {
  const std::size_t d = g.matrix.cols();
  if (d > 5) throw std::invalid_argument("codeword sweep limited to r <= 4");
  std::vector<std::size_t> out;
  for (std::uint64_t c = 1; c < (std::uint64_t(1) << d); ++c) {
    std::size_t w = 0;
    for (std::size_t k = 0; k < g.matrix.rows(); ++k) {
      bool bit = false;
      for (std::size_t t = 0; t < d; ++t) bit ^= ((c >> t) & 1u) && g.matrix.get(k, t);
      w += bit;
    }
    out.push_back(w);
  }
  return out;
}

void GrassConstructSpec::validate() const {
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (b < 1 || b > 16) throw std::invalid_argument("b must be in [1, 16]");
  if (n < (1 << (r + 1))) throw std::invalid_argument("n must be at least 2^{r+1}");
}

namespace {

GFMatrix combination(const std::vector<GFMatrix>& basis, std::uint64_t c) {
  GFMatrix s(basis[0].field(), basis[0].rows(), basis[0].cols());
  for (std::size_t t = 0; t < basis.size(); ++t)
    if ((c >> t) & 1u) s += basis[t];
  return s;
}

bool f2_independent(const std::vector<GFMatrix>& basis) {
  if (basis.empty()) return true;
  F2Basis B(basis[0].flatten().size());
  for (const auto& M : basis)
    if (!B.insert(M.flatten())) return false;
  return true;
}

/// Row spaces stacked have full rank (the spaces form a direct sum).
bool direct_sum(const std::vector<GFMatrix>& spaces, std::size_t n) {
  std::vector<GFVector> all;
  for (const auto& S : spaces)
    for (std::size_t k = 0; k < S.rows(); ++k) all.push_back(S.row(k));
  if (all.empty()) return true;
  return rank(basis_matrix(spaces[0].field(), all, n)) == all.size();
}

GFMatrix stack(const GFMatrix& a, const GFMatrix& b) {
  GFMatrix s(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s.set(r, c, a.at(r, c));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) s.set(a.rows() + r, c, b.at(r, c));
  return s;
}

/// rank(A + B) = rank A + rank B, i.e. row spans and column spans are independent.
bool spans_disjoint(const GFMatrix& A, const GFMatrix& B) { return rank(A + B) == rank(A) + rank(B); }

/// Dimension i+1 of a face with 2^{i+1}-1 minimal matrices.
std::size_t face_dim_of(std::size_t minimal_count) {
  return static_cast<std::size_t>(std::bit_width(minimal_count + 1)) - 1;
}

}  // namespace

std::vector<GFMatrix> minimal_matrices(const GrassConstructSpec& spec, const std::vector<GFMatrix>& basis) {
  spec.validate();
  const std::size_t d = basis.size();
  if (d == 0) return {};
  if (d > std::size_t(spec.r) + 1) throw MembershipError("face dimension exceeds r+1");
  for (const auto& M : basis)
    if (M.rows() != std::size_t(spec.n) || M.cols() != std::size_t(spec.n) || M.field().degree() != spec.b)
      throw std::invalid_argument("basis matrix has the wrong shape or field");
  if (!f2_independent(basis)) throw MembershipError("basis is not F2-independent");
  const int i = static_cast<int>(d) - 1;
  const auto G = hadamard_generator(i).matrix;
  const std::size_t K = G.rows();
  const std::size_t top = spec.top_matrix_rank(), s = top >> i;
  std::vector<GFMatrix> out;
  out.reserve(K);
  for (std::size_t j = 0; j < K; ++j) {
    std::uint64_t g = 0;
    for (std::size_t t = 0; t < d; ++t) g |= std::uint64_t(G.get(j, t)) << t;
    std::optional<GFMatrix> cur;
    for (std::uint64_t c = 1; c < (std::uint64_t(1) << d); ++c) {
      if (!(std::popcount(c & g) & 1)) continue;
      GFMatrix comb = combination(basis, c);
      if (rank(comb) != top) throw MembershipError("a combination of the basis does not have rank 2^r");
      if (!cur) {
        cur = std::move(comb);
        continue;
      }
      try {
        cur = meet_maximal(*cur, comb);
      } catch (const AmbiguityError&) {
        throw MembershipError("meet of basis combinations is not unique");
      } catch (const CapExceeded&) {
        throw MembershipError("meet of basis combinations is not unique");
      }
    }
    if (rank(*cur) != s) throw MembershipError("minimal matrix has the wrong rank");
    out.push_back(std::move(*cur));
  }
  std::vector<GFMatrix> rows, cols;
  for (const auto& M : out) {
    rows.push_back(row_space(M));
    cols.push_back(col_space(M));
  }
  if (!direct_sum(rows, spec.n) || !direct_sum(cols, spec.n))
    throw MembershipError("minimal matrices do not have independent spans");
  for (std::size_t t = 0; t < d; ++t) {
    GFMatrix rec(spec.field(), spec.n, spec.n);
    for (std::size_t j = 0; j < K; ++j)
      if (G.get(j, t)) rec += out[j];
    if (!(rec == basis[t])) throw MembershipError("minimal matrices do not reconstruct the basis");
  }
  return out;
}

bool is_face(const GrassConstructSpec& spec, const std::vector<GFMatrix>& basis) {
  try {
    minimal_matrices(spec, basis);
    return true;
  } catch (const MembershipError&) {
    return false;
  }
}

bool all_combinations_full(const GrassConstructSpec& spec, const std::vector<GFMatrix>& basis) {
  if (basis.empty()) return true;
  if (!f2_independent(basis)) return false;
  for (std::uint64_t c = 1; c < (std::uint64_t(1) << basis.size()); ++c)
    if (rank(combination(basis, c)) != spec.top_matrix_rank()) return false;
  return true;
}

LinkDecomposition link_decomposition(const GrassConstructSpec& spec, const std::vector<GFMatrix>& x,
                                     const GFMatrix& M) {
  LinkDecomposition d;
  d.minimal = minimal_matrices(spec, x);
  auto y = x;
  y.push_back(M);
  const auto Kall = minimal_matrices(spec, y);
  const std::size_t K = d.minimal.size();
  // rows 2l, 2l+1 of the next generator agree with row l of this one except in the last bit
  for (std::size_t l = 0; l < K; ++l) {
    d.parts.push_back(Kall[2 * l]);
    d.partners.push_back(Kall[2 * l + 1]);
    if (!(Kall[2 * l] + Kall[2 * l + 1] == d.minimal[l]))
      throw MembershipError("minimal matrices of the face and its extension are inconsistent");
  }
  d.parts.push_back(Kall[2 * K]);
  return d;
}

bool verify_link_decomposition(const GrassConstructSpec& spec, const LinkDecomposition& d, const GFMatrix& M) {
  const std::size_t K = d.minimal.size();
  if (d.parts.size() != K + 1) return false;
  const std::size_t half = spec.top_matrix_rank() >> face_dim_of(K);
  GFMatrix S(spec.field(), spec.n, spec.n), sum(spec.field(), spec.n, spec.n);
  for (std::size_t l = 0; l < K; ++l) {
    if (rank(d.parts[l]) != half || !strictly_dominates(d.parts[l], d.minimal[l])) return false;
    S += d.minimal[l];
  }
  for (const auto& P : d.parts) sum += P;
  if (rank(d.parts[K]) != half || !spans_disjoint(S, d.parts[K])) return false;
  return sum == M;
}

namespace {

/// Sums one choice from each list; calls fn on every sum.
void for_each_sum(const std::vector<std::vector<GFMatrix>>& lists, const GFMatrix& zero,
                  const std::function<void(const GFMatrix&)>& fn) {
  for (const auto& l : lists)
    if (l.empty()) return;
  std::vector<std::size_t> idx(lists.size(), 0);
  while (true) {
    GFMatrix s = zero;
    for (std::size_t l = 0; l < lists.size(); ++l) s += lists[l][idx[l]];
    fn(s);
    std::size_t l = lists.size();
    while (l > 0 && idx[l - 1] + 1 == lists[l - 1].size()) idx[--l] = 0;
    if (l == 0) return;
    ++idx[l - 1];
  }
}

GFMatrix empty_rows(const GrassConstructSpec& spec) { return GFMatrix(spec.field(), 0, spec.n); }

GFMatrix col_basis(const GrassConstructSpec& spec, const GFMatrix& M) {
  return M.is_zero() ? empty_rows(spec) : col_space(M);
}
GFMatrix row_basis(const GrassConstructSpec& spec, const GFMatrix& M) {
  return M.is_zero() ? empty_rows(spec) : row_space(M);
}

}  // namespace

void for_each_link_vertex(const GrassConstructSpec& spec, const std::vector<GFMatrix>& x,
                          const std::function<void(const GFMatrix&)>& fn) {
  if (x.size() > std::size_t(spec.r)) throw std::invalid_argument("link vertices need a face of rank < r");
  const auto minimal = minimal_matrices(spec, x);
  const std::size_t half = spec.top_matrix_rank() >> x.size();
  const GFMatrix zero(spec.field(), spec.n, spec.n);
  GFMatrix S = zero;
  std::vector<std::vector<GFMatrix>> lists;
  for (const auto& Mj : minimal) {
    lists.push_back(enumerate_below(Mj, half));
    S += Mj;
  }
  lists.push_back(enumerate_rank_avoiding(spec.field(), spec.n, half, col_basis(spec, S), row_basis(spec, S)));
  for_each_sum(lists, zero, fn);
}

void neighbors_in_link(const GrassConstructSpec& spec, const std::vector<GFMatrix>& x, const GFMatrix& M,
                       const std::function<void(const GFMatrix&)>& fn) {
  if (x.size() + 1 > std::size_t(spec.r)) throw std::invalid_argument("link neighbours need a face of rank <= r-2");
  const auto d = link_decomposition(spec, x, M);
  const std::size_t K = d.minimal.size();
  const std::size_t t = spec.top_matrix_rank() >> (x.size() + 1);
  const GFMatrix zero(spec.field(), spec.n, spec.n);
  GFMatrix S = zero;
  for (const auto& Mj : d.minimal) S += Mj;
  std::vector<std::vector<GFMatrix>> lists(K + 1);
  for (std::size_t l = 0; l <= K; ++l) {
    const auto L1s = enumerate_below(d.parts[l], t);
    std::vector<GFMatrix> L3s;
    if (l < K) {
      L3s = enumerate_below(d.partners[l], t);
    } else {
      const GFMatrix A = S + d.parts[K];
      L3s = enumerate_rank_avoiding(spec.field(), spec.n, t, col_basis(spec, A), row_basis(spec, A));
    }
    for (const auto& L1 : L1s)
      for (const auto& L3 : L3s) lists[l].push_back(L1 + L3);
  }
  for_each_sum(lists, zero, fn);
}

GradedComplex build_X(const GrassConstructSpec& spec, std::optional<int> max_rank, std::uint64_t cap) {
  spec.validate();
  const int top = max_rank.value_or(spec.r);
  if (top < 0 || top > spec.r) throw std::invalid_argument("max rank out of range");
  if (spec.ambient_bits() > 64) throw std::invalid_argument("ambient space does not fit 64-bit labels");
  std::string counts;
  BigInt worst = 0;
  for (int i = 0; i <= top; ++i) {
    const BigInt c = grass_face_count(spec.r, spec.b, spec.n, i);
    counts += (i ? ", " : "") + std::string("X(") + std::to_string(i) + ")=" + to_string(c);
    if (c > worst) worst = c;
  }
  if (worst > BigInt(std::to_string(cap))) throw CapExceeded("construction exceeds cap: " + counts, worst);

  const FieldSpec f = spec.field();
  const std::size_t n = spec.n;
  GradedComplex X(ComplexKind::Grassmannian, spec.ambient_bits());
  {
    std::vector<std::uint64_t> keys;
    for_each_rank_key(spec.matrices(), spec.top_matrix_rank(), [&](std::uint64_t k) { keys.push_back(k); });
    std::sort(keys.begin(), keys.end());
    X.push_level(1, std::move(keys));
  }
  for (int i = 0; i < top; ++i) {
    const Level& L = X.level(i);
    const std::size_t w = L.width, wn = 2 * w + 1;
    const std::size_t blocks = std::min<std::size_t>(L.count, worker_count() * 8);
    std::vector<std::vector<std::uint64_t>> out(blocks);
    parallel_for(blocks, [&](std::size_t blk) {
      auto& buf = out[blk];
      std::vector<std::uint64_t> elems(wn);
      for (std::size_t fi = blk; fi < L.count; fi += blocks) {
        const auto face = L.face(fi);
        const auto xb = f2_basis_of(face);
        std::vector<GFMatrix> x;
        for (auto k : xb) x.push_back(GFMatrix::from_key(f, n, n, k));
        for_each_link_vertex(spec, x, [&](const GFMatrix& M) {
          const std::uint64_t m = M.key();
          // one representative per coset M + x
          for (auto e : face)
            if ((m ^ e) < m) return;
          std::size_t p = 0;
          for (auto e : face) elems[p++] = e;
          elems[p++] = m;
          for (auto e : face) elems[p++] = m ^ e;
          std::sort(elems.begin(), elems.end());
          buf.insert(buf.end(), elems.begin(), elems.end());
        });
      }
    });
    std::vector<std::uint64_t> labels;
    std::size_t total = 0;
    for (const auto& b : out) total += b.size();
    labels.reserve(total);
    for (auto& b : out) {
      labels.insert(labels.end(), b.begin(), b.end());
      std::vector<std::uint64_t>().swap(b);
    }
    X.push_level(wn, std::move(labels));
  }
  uniform_top_weights(X);
  return X;
}

std::vector<GFMatrix> face_basis(const GrassConstructSpec& spec, const GradedComplex& X, int i, std::size_t f) {
  std::vector<GFMatrix> out;
  for (auto k : f2_basis_of(X.level(i).face(f))) out.push_back(GFMatrix::from_key(spec.field(), spec.n, spec.n, k));
  return out;
}

nlohmann::json faces_to_hex(const GrassConstructSpec& spec, const GradedComplex& X, int i) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t f = 0; f < X.count(i); ++f) {
    nlohmann::json face = nlohmann::json::array();
    for (const auto& M : face_basis(spec, X, i, f)) face.push_back(M.to_hex());
    arr.push_back(std::move(face));
  }
  return arr;
}

// ---------------------------------------------------------------- link graphs

namespace {

/// Ordered triples (P1, P2, P3) of rank-t matrices with P1 + P2 + P3 = I_{3t}.
std::vector<std::array<GFMatrix, 3>> identity_splits(const FieldSpec& f, std::size_t t) {
  std::vector<std::array<GFMatrix, 3>> out;
  const GFMatrix I = GFMatrix::identity(f, 3 * t);
  for (const auto& P1 : enumerate_dominated_by_identity(f, 3 * t, t))
    for (const auto& P2 : enumerate_below(I - P1, t)) out.push_back({P1, P2, I - P1 - P2});
  return out;
}

/// Graph on `vertices` with an edge {L1+L2, L1+L3} for every split of every T in `tops`.
WeightedGraph split_graph(std::vector<GFMatrix>& vertices, const std::vector<GFMatrix>& tops, std::size_t t) {
  std::sort(vertices.begin(), vertices.end(), [](const GFMatrix& a, const GFMatrix& b) { return a.key() < b.key(); });
  std::vector<std::uint64_t> keys;
  for (const auto& v : vertices) keys.push_back(v.key());
  WeightedGraph G;
  G.n = vertices.size();
  if (tops.empty()) return G;
  const auto splits = identity_splits(tops[0].field(), t);
  const std::size_t blocks = std::min<std::size_t>(tops.size(), worker_count() * 8);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out(blocks);
  parallel_for(blocks, [&](std::size_t blk) {
    for (std::size_t k = blk; k < tops.size(); k += blocks) {
      const auto rf = rank_factorization(tops[k]);
      const GFMatrix Wt = rf.W.transpose();
      for (const auto& s : splits) {
        const GFMatrix L1 = rf.U * s[0] * Wt, L2 = rf.U * s[1] * Wt, L3 = rf.U * s[2] * Wt;
        const std::uint64_t a = (L1 + L2).key(), b = (L1 + L3).key();
        if (a >= b) continue;
        const auto ia = std::lower_bound(keys.begin(), keys.end(), a), ib = std::lower_bound(keys.begin(), keys.end(), b);
        if (ia == keys.end() || *ia != a || ib == keys.end() || *ib != b)
          throw std::logic_error("split endpoint is not a vertex");
        out[blk].emplace_back(static_cast<std::uint32_t>(ia - keys.begin()), static_cast<std::uint32_t>(ib - keys.begin()));
      }
    }
  });
  for (const auto& o : out)
    for (const auto& [a, b] : o) G.add(a, b, 1.0);
  G.canonicalize();
  return G;
}

BigInt split_edges(std::uint64_t q, std::size_t t, const BigInt& tops) {
  return tops * count_dominated_by_identity(q, 3 * t, t) * count_dominated_by_identity(q, 2 * t, t) / 2;
}

void check_cap(const BigInt& projected, std::uint64_t cap, const std::string& what) {
  if (projected > BigInt(std::to_string(cap))) throw CapExceeded(what + " exceeds cap", projected);
}

}  // namespace

LinkGraph build_link_graph(const LinkGraphSpec& spec, std::uint64_t cap) {
  if (spec.i < -1 || spec.i > spec.r - 2) throw std::invalid_argument("link graphs need -1 <= i <= r-2");
  const FieldSpec f(spec.b);
  const std::uint64_t q = f.order();
  const std::size_t m = std::size_t(1) << (spec.r - spec.i), t = m / 4;
  LinkGraph out;
  std::vector<GFMatrix> tops;
  if (spec.which == LinkGraphKind::G1) {
    check_cap(count_dominated_by_identity(q, m, 2 * t), cap, "G1 vertex set");
    check_cap(split_edges(q, t, count_dominated_by_identity(q, m, 3 * t)), cap, "G1 edge set");
    out.vertices = enumerate_dominated_by_identity(f, m, 2 * t);
    tops = enumerate_dominated_by_identity(f, m, 3 * t);
  } else {
    const std::size_t n = spec.n;
    const std::size_t dim = (std::size_t(1) << (spec.r + 1)) - m;
    if (n < dim + 3 * t) throw std::invalid_argument("G2 needs n >= 2^{r+1}");
    GFMatrix coord(f, dim, n);
    for (std::size_t k = 0; k < dim; ++k) coord.set(k, k, 1);
    const GFMatrix R = spec.R.value_or(coord), C = spec.C.value_or(coord);
    const BigInt side_v = count_subspaces_avoiding(q, n, R.rows(), 2 * t);
    check_cap(side_v * side_v * count_gl(q, 2 * t), cap, "G2 vertex set");
    const BigInt side_t = count_subspaces_avoiding(q, n, R.rows(), 3 * t);
    check_cap(split_edges(q, t, side_t * side_t * count_gl(q, 3 * t)), cap, "G2 edge set");
    out.vertices = enumerate_rank_avoiding(f, n, 2 * t, C, R);
    tops = enumerate_rank_avoiding(f, n, 3 * t, C, R);
  }
  out.graph = split_graph(out.vertices, tops, t);
  return out;
}

// ---------------------------------------------------------------- tensor projection

namespace {

GFMatrix random_matrix(const FieldSpec& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  GFMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<Elem>(rng() % f.order()));
  return m;
}

/// Uniform rank-t matrix whose column span avoids rowspace(avoid_col) and row span avoids rowspace(avoid_row).
GFMatrix random_avoiding(const GrassConstructSpec& spec, std::size_t t, const GFMatrix& avoid_col,
                         const GFMatrix& avoid_row, std::mt19937_64& rng) {
  auto side = [&](const GFMatrix& avoid) {
    while (true) {
      GFMatrix U = random_matrix(spec.field(), t, spec.n, rng);
      if (rank(stack(avoid, U)) == avoid.rows() + t) return U;
    }
  };
  const GFMatrix U = side(avoid_col), W = side(avoid_row);
  return U.transpose() * W;
}

struct Factor {
  bool last = false;
  GFMatrix upper;  // minimal matrix (inner factors) or sum of minimal matrices (last factor)
};

bool factor_adjacent(const Factor& F, const GFMatrix& a, const GFMatrix& b, std::size_t t) {
  if (a == b) return false;
  GFMatrix L1;
  try {
    L1 = meet_maximal(a, b);
  } catch (const AmbiguityError&) {
    return false;
  }
  const GFMatrix L2 = a - L1, L3 = b - L1, T = L1 + L2 + L3;
  if (rank(L1) != t || rank(L2) != t || rank(L3) != t || rank(T) != 3 * t) return false;
  return F.last ? spans_disjoint(F.upper, T) : dominates(T, F.upper);
}

}  // namespace

TensorProjectionReport tensor_projection_check(const GrassConstructSpec& spec, const std::vector<GFMatrix>& x,
                                               const GradedComplex* X, std::size_t samples, std::uint64_t seed) {
  spec.validate();
  const int i = static_cast<int>(x.size()) - 1;
  if (i > spec.r - 2) throw std::invalid_argument("tensor projection needs a face of rank <= r-2");
  const auto minimal = minimal_matrices(spec, x);
  const std::size_t K = minimal.size();
  const std::size_t half = spec.top_matrix_rank() >> (i + 1), t = half / 2;
  const FieldSpec f = spec.field();
  const std::uint64_t q = f.order();
  const GFMatrix zero(f, spec.n, spec.n);
  GFMatrix S = zero;
  for (const auto& M : minimal) S += M;
  std::vector<Factor> factors;
  for (const auto& M : minimal) factors.push_back({false, M});
  factors.push_back({true, S});

  TensorProjectionReport rep;
  // totals: tensor edges = 2^K prod |E_l|; link edges = 3 per rank-(i+2) face above x
  const std::size_t inner = 2 * half;
  BigInt big = big_pow(2, K);
  for (std::size_t l = 0; l < K; ++l) big *= split_edges(q, t, count_dominated_by_identity(q, inner, 3 * t));
  const BigInt side = count_subspaces_avoiding(q, spec.n, K * inner, 3 * t);
  big *= split_edges(q, t, side * side * count_gl(q, 3 * t));
  const BigInt above = grass_face_count(spec.r, spec.b, spec.n, i + 2) * gaussian_binomial(2, i + 3, i + 1);
  const BigInt below = i >= 0 ? grass_face_count(spec.r, spec.b, spec.n, i) : BigInt(1);
  rep.big_edges = big;
  rep.small_edges = 3 * (above / below);
  bool divisible = above % below == 0;

  auto tuple_of = [&](const GFMatrix& M) { return link_decomposition(spec, x, M).parts; };
  std::vector<GFMatrix> span_x;  // all elements of span(x), 0 included
  for (std::uint64_t c = 0; c < (std::uint64_t(1) << x.size()); ++c)
    span_x.push_back(x.empty() ? zero : combination(x, c));

  if (X && K == 0 && X->kind() == ComplexKind::Grassmannian && X->top_rank() >= i + 2 && spec.ambient_bits() <= 64) {
    // exhaustive: the tensor graph is G2 itself and the projection is M -> span{x, M}
    rep.exhaustive = true;
    LinkGraphSpec ls{LinkGraphKind::G2, spec.r, i, spec.b, spec.n, std::nullopt, std::nullopt};
    auto G2 = build_link_graph(ls);
    const std::size_t xi = 0;  // the empty face
    const auto& parents = X->parents(i).of(xi);
    std::vector<std::uint32_t> Pi(G2.vertices.size());
    for (std::size_t v = 0; v < G2.vertices.size(); ++v) {
      const auto at = X->level(i + 1).find(std::vector<std::uint64_t>{G2.vertices[v].key()});
      if (!at) throw MembershipError("projected vertex is not a face");
      const auto pos = std::lower_bound(parents.begin(), parents.end(), static_cast<std::uint32_t>(*at));
      Pi[v] = static_cast<std::uint32_t>(pos - parents.begin());
    }
    WeightedGraph small = link_one_skeleton(*X, i, xi);
    small.exact.clear();
    double tot = 0;
    for (double w : small.w) tot += w;
    const double scale = static_cast<double>(G2.graph.edges()) / tot;
    for (double& w : small.w) w *= scale;
    auto pr = projection_check(Pi, G2.graph, small, 1e-6);
    rep.mass_identity = pr.mass_identity && pr.surjective;
    rep.first_violation = pr.first_violation;
    rep.lambda_link = pr.lambda_small;
    rep.lambda_factors = pr.lambda_big;
    rep.lambda_ok = pr.lambda_ok;
    rep.preimage_edges = 1;
    rep.samples = G2.graph.edges();
    rep.totals_ok = divisible && BigInt(static_cast<unsigned long>(G2.graph.edges())) == big &&
                    BigInt(static_cast<unsigned long>(small.edges())) == rep.small_edges;
    return rep;
  }

  std::mt19937_64 rng(derive_seed(seed, 0x7e45));
  std::vector<std::vector<GFMatrix>> inner_vertices;
  for (std::size_t l = 0; l < K; ++l) inner_vertices.push_back(enumerate_below(minimal[l], half));
  std::optional<std::uint64_t> c_seen;
  for (std::size_t smp = 0; smp < samples; ++smp) {
    std::vector<GFMatrix> a(K + 1), b(K + 1);
    for (std::size_t l = 0; l <= K; ++l) {
      if (l < K) {
        a[l] = inner_vertices[l][rng() % inner_vertices[l].size()];
        const auto L1s = enumerate_below(a[l], t), L3s = enumerate_below(minimal[l] - a[l], t);
        b[l] = L1s[rng() % L1s.size()] + L3s[rng() % L3s.size()];
      } else {
        a[l] = random_avoiding(spec, half, col_basis(spec, S), row_basis(spec, S), rng);
        const auto L1s = enumerate_below(a[l], t);
        const GFMatrix A = S + a[l];
        b[l] = L1s[rng() % L1s.size()] + random_avoiding(spec, t, col_basis(spec, A), row_basis(spec, A), rng);
      }
    }
    GFMatrix Ma = zero, Mb = zero;
    for (std::size_t l = 0; l <= K; ++l) Ma += a[l], Mb += b[l];
    ++rep.samples;
    auto fail = [&](const std::string& why) {
      ++rep.failures;
      rep.mass_identity = false;
      if (rep.first_violation.empty()) rep.first_violation = "sample " + std::to_string(smp) + ": " + why;
    };
    auto z = x;
    z.push_back(Ma);
    z.push_back(Mb);
    if (!is_face(spec, z)) {
      fail("image of a tensor edge is not a face of rank i+2");
      continue;
    }
    std::uint64_t count = 0;
    try {
      for (const auto& u : span_x) {
        const auto ta = tuple_of(Ma + u);
        for (const auto& w : span_x) {
          const auto tb = tuple_of(Mb + w);
          bool adj = true;
          for (std::size_t l = 0; l <= K && adj; ++l) adj = factor_adjacent(factors[l], ta[l], tb[l], t);
          count += adj;
        }
      }
    } catch (const MembershipError& e) {
      fail(e.what());
      continue;
    }
    if (c_seen && *c_seen != count) fail("preimage edge count varies between link edges");
    c_seen = count;
  }
  rep.preimage_edges = c_seen.value_or(0);
  rep.totals_ok = divisible && c_seen && BigInt(static_cast<unsigned long>(*c_seen)) * rep.small_edges == big;
  return rep;
}

}  // namespace hdx
