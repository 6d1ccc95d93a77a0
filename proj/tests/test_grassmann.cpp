#include <random>
#include <set>

#include "doctest.h"
#include "hdx/grassmann.hpp"
#include "hdx/walks.hpp"

using namespace hdx;

namespace {

const GrassConstructSpec k114{1, 1, 4};

const GradedComplex& x114() {
  static const GradedComplex X = build_X(k114);
  return X;
}

GFMatrix random_matrix(const FieldSpec& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  GFMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<Elem>(rng() % f.order()));
  return m;
}

/// A random face of rank i: minimal matrices from independent random column/row blocks.
std::vector<GFMatrix> random_face(const GrassConstructSpec& spec, int i, std::mt19937_64& rng) {
  const FieldSpec f = spec.field();
  const std::size_t K = (std::size_t(1) << (i + 1)) - 1, s = spec.top_matrix_rank() >> i;
  GFMatrix U, W;
  do U = random_matrix(f, spec.n, K * s, rng);
  while (rank(U) != K * s);
  do W = random_matrix(f, spec.n, K * s, rng);
  while (rank(W) != K * s);
  std::vector<GFMatrix> minimal;
  for (std::size_t j = 0; j < K; ++j) {
    GFMatrix Uj(f, spec.n, s), Wj(f, spec.n, s);
    for (std::size_t r = 0; r < std::size_t(spec.n); ++r)
      for (std::size_t c = 0; c < s; ++c) Uj.set(r, c, U.at(r, j * s + c)), Wj.set(r, c, W.at(r, j * s + c));
    minimal.push_back(Uj * Wj.transpose());
  }
  const auto G = hadamard_generator(i).matrix;
  std::vector<GFMatrix> basis;
  for (int t = 0; t <= i; ++t) {
    GFMatrix M(f, spec.n, spec.n);
    for (std::size_t j = 0; j < K; ++j)
      if (G.get(j, t)) M += minimal[j];
    basis.push_back(M);
  }
  return basis;
}

std::vector<GFMatrix> random_basis_change(const std::vector<GFMatrix>& b, std::mt19937_64& rng) {
  while (true) {
    std::vector<GFMatrix> out;
    F2Basis check(b[0].flatten().size());
    for (std::size_t k = 0; k < b.size(); ++k) {
      std::uint64_t c = 1 + rng() % ((std::uint64_t(1) << b.size()) - 1);
      GFMatrix s(b[0].field(), b[0].rows(), b[0].cols());
      for (std::size_t t = 0; t < b.size(); ++t)
        if ((c >> t) & 1u) s += b[t];
      out.push_back(s);
    }
    bool ok = true;
    for (const auto& M : out) ok = ok && check.insert(M.flatten());
    if (ok) return out;
  }
}

std::set<std::uint64_t> key_set(const std::vector<GFMatrix>& ms) {
  std::set<std::uint64_t> s;
  for (const auto& M : ms) s.insert(M.key());
  return s;
}

/// Brute-force oracle for r = 1: every combination has rank 2 and some rank-1 L1 splits both.
bool brute_force_edge(const GFMatrix& A, const GFMatrix& B, const std::vector<std::uint64_t>& rank1) {
  const FieldSpec f = A.field();
  if ((A.key() ^ B.key()) == 0 || rank(A) != 2 || rank(B) != 2 || rank(A + B) != 2) return false;
  const std::set<std::uint64_t> r1(rank1.begin(), rank1.end());
  for (auto l : rank1) {
    const std::uint64_t l2 = A.key() ^ l, l3 = B.key() ^ l;
    if (!r1.count(l2) || !r1.count(l3)) continue;
    if (rank(GFMatrix::from_key(f, 4, 4, l ^ l2 ^ l3)) == 3) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("hadamard generators") {
  auto g1 = hadamard_generator(1).matrix;
  REQUIRE(g1.rows() == 3);
  CHECK(g1.get(0, 0));
  CHECK(g1.get(0, 1));
  CHECK(g1.get(1, 0));
  CHECK_FALSE(g1.get(1, 1));
  CHECK_FALSE(g1.get(2, 0));
  CHECK(g1.get(2, 1));
  auto g0 = hadamard_generator(0).matrix;
  CHECK(g0.rows() == 1);
  CHECK(g0.get(0, 0));
  auto g2 = hadamard_generator(2);
  for (std::size_t k = 0; k < 7; ++k) {
    const std::size_t v = 7 - k;
    for (std::size_t c = 0; c < 3; ++c) CHECK(g2.matrix.get(k, c) == bool((v >> (2 - c)) & 1u));
  }
  for (int r = 0; r <= 4; ++r) {
    auto w = hadamard_codeword_weights(hadamard_generator(r));
    CHECK(w.size() == (std::size_t(1) << (r + 1)) - 1);
    for (auto x : w) CHECK(x == (std::size_t(1) << r));
    CHECK(rank(hadamard_generator(r).matrix) == std::size_t(r) + 1);
  }
  auto cut = hadamard_generator(3, 1);
  CHECK(cut.matrix.rows() == 15);
  CHECK(cut.matrix.cols() == 2);
  CHECK_THROWS(hadamard_generator(2, 3));
}

TEST_CASE("construction X^{1,1,4} sizes and span of vertices") {
  const auto& X = x114();
  CHECK(X.count(0) == 7350);
  CHECK(X.count(1) == 1058400);
  CHECK(check_standardness(X).ok());
  F2Basis B(16);
  for (std::size_t v = 0; v < X.count(0); ++v) B.insert(F2Vec::from_u64(X.level(0).face(v)[0], 16));
  CHECK(B.dim() == 16);
  CHECK_THROWS_AS(build_X({1, 2, 4}), CapExceeded);
  CHECK_THROWS(build_X({1, 1, 3}));
}

TEST_CASE("rank-1 faces have the L1+L2, L1+L3 shape") {
  const auto& X = x114();
  const FieldSpec f;
  std::mt19937_64 rng(2);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t idx = rng() % X.count(1);
    auto face = X.level(1).face(idx);
    for (auto e : face) CHECK(rank(GFMatrix::from_key(f, 4, 4, e)) == 2);
    const auto b = face_basis(k114, X, 1, idx);
    const GFMatrix L1 = meet_maximal(b[0], b[1]), L2 = b[0] - L1, L3 = b[1] - L1;
    CHECK(rank(L1) == 1);
    CHECK(rank(L2) == 1);
    CHECK(rank(L3) == 1);
    CHECK(rank(L1 + L2 + L3) == 3);
  }
}

TEST_CASE("minimal matrices") {
  const auto& X = x114();
  const FieldSpec f;
  const GFMatrix x0 = GFMatrix::from_key(f, 4, 4, X.level(0).face(17)[0]);
  auto m0 = minimal_matrices(k114, {x0});
  REQUIRE(m0.size() == 1);
  CHECK(m0[0] == x0);

  std::vector<std::uint64_t> rank1;
  for_each_rank_key(k114.matrices(), 1, [&](std::uint64_t k) { rank1.push_back(k); });
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::size_t idx = rng() % X.count(1);
    const auto b = face_basis(k114, X, 1, idx);
    const auto m = minimal_matrices(k114, b);
    REQUIRE(m.size() == 3);
    CHECK(m[0] == meet_maximal(b[0], b[1]));
    CHECK(b[0] == m[0] + m[1]);
    CHECK(b[1] == m[0] + m[2]);
    // brute force: all rank-1 triples producing this face
    std::set<std::set<std::uint64_t>> triples;
    const std::set<std::uint64_t> r1(rank1.begin(), rank1.end());
    for (auto l : rank1) {
      const std::uint64_t l2 = b[0].key() ^ l, l3 = b[1].key() ^ l;
      if (r1.count(l2) && r1.count(l3) && rank(GFMatrix::from_key(f, 4, 4, l ^ l2 ^ l3)) == 3)
        triples.insert({l, l2, l3});
    }
    REQUIRE(triples.size() == 1);
    CHECK(*triples.begin() == key_set(m));
    for (int c = 0; c < 10; ++c) CHECK(key_set(minimal_matrices(k114, random_basis_change(b, rng))) == key_set(m));
  }

  // rank 2 construction with n = 8 and a rank-2 face
  const GrassConstructSpec s28{2, 1, 8};
  for (int t = 0; t < 5; ++t) {
    const auto b = random_face(s28, 2, rng);
    const auto m = minimal_matrices(s28, b);
    CHECK(m.size() == 7);
    for (const auto& M : m) CHECK(rank(M) == 1);
    CHECK(all_combinations_full(s28, b));
    for (int c = 0; c < 10; ++c) CHECK(key_set(minimal_matrices(s28, random_basis_change(b, rng))) == key_set(m));
  }
}

TEST_CASE("face membership") {
  const FieldSpec f;
  GFMatrix M(f, 4, 4), N(f, 4, 4);
  M.set(0, 0, 1), M.set(1, 1, 1);
  CHECK(is_face(k114, {M}));
  N.set(2, 2, 1), N.set(3, 3, 1);
  CHECK(rank(M + N) == 4);
  CHECK_FALSE(is_face(k114, {M, N}));
  CHECK_FALSE(is_face(k114, {M, M}));

  const auto& X = x114();
  std::vector<std::uint64_t> rank1;
  for_each_rank_key(k114.matrices(), 1, [&](std::uint64_t k) { rank1.push_back(k); });
  std::mt19937_64 rng(12);
  std::size_t yes = 0;
  for (int t = 0; t < 100; ++t) {
    std::vector<GFMatrix> b;
    if (t % 2) {
      b = face_basis(k114, X, 1, rng() % X.count(1));
    } else {
      for (int k = 0; k < 2; ++k) b.push_back(GFMatrix::from_key(f, 4, 4, X.level(0).face(rng() % X.count(0))[0]));
    }
    const bool got = is_face(k114, b);
    CHECK(got == brute_force_edge(b[0], b[1], rank1));
    CHECK(got == (X.level(1).find(GradedComplex::span_f2(std::vector<std::uint64_t>{b[0].key(), b[1].key()})).has_value()));
    yes += got;
  }
  CHECK(yes >= 50);
  CHECK(yes < 100);
}

TEST_CASE("link vertices decompose into parts below the minimal matrices") {
  const auto& X = x114();
  const FieldSpec f;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 3; ++t) {
    const GFMatrix x0 = GFMatrix::from_key(f, 4, 4, X.level(0).face(rng() % X.count(0))[0]);
    std::size_t count = 0;
    for_each_link_vertex(k114, {x0}, [&](const GFMatrix& M) {
      ++count;
      auto d = link_decomposition(k114, {x0}, M);
      CHECK(verify_link_decomposition(k114, d, M));
      CHECK(strictly_dominates(d.parts[0], x0));
      CHECK(rank(d.parts[1]) == 1);
    });
    // 6 rank-1 matrices below x0, 12 x 12 rank-1 matrices avoiding its spans
    CHECK(count == 864);
  }
}

TEST_CASE("neighbours in the link of the empty face are the 1-skeleton neighbours") {
  const auto& X = x114();
  const auto G = one_skeleton(X);
  const FieldSpec f;
  std::vector<std::set<std::uint64_t>> nb(X.count(0));
  const std::vector<std::size_t> probe{0, 101, 4000, 7349};
  for (std::size_t e = 0; e < G.edges(); ++e)
    for (auto p : probe) {
      if (G.u[e] == p) nb[p].insert(X.level(0).face(G.v[e])[0]);
      if (G.v[e] == p) nb[p].insert(X.level(0).face(G.u[e])[0]);
    }
  for (auto p : probe) {
    const GFMatrix M = GFMatrix::from_key(f, 4, 4, X.level(0).face(p)[0]);
    std::set<std::uint64_t> got;
    std::size_t streamed = 0;
    neighbors_in_link(k114, {}, M, [&](const GFMatrix& N) {
      ++streamed;
      CHECK_FALSE(N == M);
      got.insert(N.key());
    });
    CHECK(streamed == got.size());
    CHECK(got == nb[p]);
  }
  CHECK_THROWS(neighbors_in_link(k114, {GFMatrix::from_key(f, 4, 4, X.level(0).face(0)[0])},
                                 GFMatrix::from_key(f, 4, 4, X.level(0).face(1)[0]), [](const GFMatrix&) {}));
}

TEST_CASE("neighbours in a vertex link at r = 2") {
  const GrassConstructSpec s28{2, 1, 8};
  std::mt19937_64 rng(9);
  const auto y = random_face(s28, 1, rng);
  const std::vector<GFMatrix> x{y[0]};
  // the full stream has 36 * 6 * 192^2 members; check a prefix
  struct Enough {};
  std::size_t n = 0;
  try {
    neighbors_in_link(s28, x, y[1], [&](const GFMatrix& N) {
      CHECK(is_face(s28, {y[0], y[1], N}));
      if (++n == 300) throw Enough{};
    });
  } catch (const Enough&) {
  }
  CHECK(n == 300);
}

TEST_CASE("link graphs") {
  const auto G1 = build_link_graph({LinkGraphKind::G1, 2, 0, 1});
  CHECK(G1.vertices.size() == 560);
  CHECK(BigInt(560) == count_dominated_by_identity(2, 4, 2));
  const auto I = GFMatrix::identity(FieldSpec(), 4);
  for (const auto& v : G1.vertices) CHECK(strictly_dominates(v, I));
  for (std::size_t e = 0; e < G1.graph.edges(); e += 37) {
    const auto& a = G1.vertices[G1.graph.u[e]];
    const auto& b = G1.vertices[G1.graph.v[e]];
    const GFMatrix L1 = meet_maximal(a, b);
    CHECK(rank(L1) == 1);
    CHECK(rank(a + b + L1) == 3);
    CHECK(dominates(a + b + L1, I));
  }
  CHECK(G1.graph.connected());
  MESSAGE("lambda(G1) at (r=2, i=0, q=2) = " << graph_lambda(G1.graph).lambda);

  const auto& X = x114();
  const auto G2 = build_link_graph({LinkGraphKind::G2, 1, -1, 1, 4});
  CHECK(G2.vertices.size() == X.count(0));
  const auto S = one_skeleton(X);
  REQUIRE(G2.graph.edges() == S.edges());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> a, b;
  for (std::size_t e = 0; e < S.edges(); ++e) {
    a.emplace_back(X.level(0).face(S.u[e])[0], X.level(0).face(S.v[e])[0]);
    b.emplace_back(G2.vertices[G2.graph.u[e]].key(), G2.vertices[G2.graph.v[e]].key());
  }
  for (auto& p : a)
    if (p.first > p.second) std::swap(p.first, p.second);
  for (auto& p : b)
    if (p.first > p.second) std::swap(p.first, p.second);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  CHECK_THROWS(build_link_graph({LinkGraphKind::G1, 2, 1, 1}));
  CHECK_THROWS_AS(build_link_graph({LinkGraphKind::G1, 2, 0, 3}, 1000), CapExceeded);
}

TEST_CASE("tensor projection onto link graphs") {
  auto full = tensor_projection_check(k114, {}, &x114());
  CHECK(full.exhaustive);
  CHECK(full.ok());
  CHECK(full.big_edges == BigInt(3175200));
  CHECK(full.lambda_link <= full.lambda_factors + 1e-9);

  const GrassConstructSpec s28{2, 1, 8};
  GFMatrix x(s28.field(), 8, 8);
  for (int k = 0; k < 4; ++k) x.set(k, k, 1);
  auto rep = tensor_projection_check(s28, {x}, nullptr, 48, 3);
  CHECK_FALSE(rep.exhaustive);
  CHECK(rep.samples == 48);
  CHECK(rep.failures == 0);
  CHECK(rep.preimage_edges == 4);
  CHECK(rep.totals_ok);
}

TEST_CASE("compact face export") {
  const auto& X = x114();
  auto j = faces_to_hex(k114, X, 0);
  REQUIRE(j.size() == 7350);
  CHECK(j[0].size() == 1);
  CHECK(j[0][0].get<std::string>().size() == 4);
  const auto v = F2Vec::from_hex(j[0][0].get<std::string>(), 16);
  CHECK(v.to_u64() == X.level(0).face(0)[0]);
}
