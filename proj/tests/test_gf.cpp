#include <random>

#include "doctest.h"
#include "hdx/counting.hpp"
#include "hdx/f2.hpp"
#include "hdx/gf.hpp"
#include "hdx/gf_matrix.hpp"

using namespace hdx;

namespace {

GFMatrix random_matrix(const FieldSpec& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  GFMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<Elem>(rng() % f.order()));
  return m;
}

GFVector unit(std::size_t i, std::size_t n) {
  GFVector v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("field multiplication examples") {
  FieldSpec f2(2), f3(3);
  CHECK(f2.modulus() == 0b111);
  CHECK(f3.modulus() == 0b1011);
  CHECK(gf_mul(f2, 2, 2) == 3);
  CHECK(gf_mul(f3, 2, 4) == 3);
  for (int b = 1; b <= 8; ++b) {
    FieldSpec f(b);
    for (Elem a = 0; a < f.order(); ++a) CHECK(f.mul(a, 1) == a);
  }
}

TEST_CASE("reduction polynomials are the smallest irreducible ones") {
  CHECK(smallest_irreducible(1) == 0b11);
  CHECK(smallest_irreducible(4) == 0b10011);
  CHECK(smallest_irreducible(5) == 0b100101);
  CHECK(smallest_irreducible(8) == 0x11b);
  for (int b = 1; b <= 16; ++b) CHECK(is_irreducible(smallest_irreducible(b)));
  CHECK_FALSE(is_irreducible(0b101));
}

TEST_CASE("field axioms hold exhaustively for b <= 4") {
  for (int b = 1; b <= 4; ++b) {
    FieldSpec f(b);
    const Elem q = f.order();
    for (Elem a = 0; a < q; ++a) {
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Elem c = 0; c < q; ++c) {
        CHECK(f.mul(a, c) == clmul_mod(a, c, f.modulus(), b));
        CHECK(f.mul(a, c) == f.mul(c, a));
        for (Elem d = 0; d < q; ++d) {
          CHECK(f.mul(f.mul(a, c), d) == f.mul(a, f.mul(c, d)));
          CHECK(f.mul(a, c ^ d) == (f.mul(a, c) ^ f.mul(a, d)));
        }
      }
    }
  }
  CHECK_THROWS(FieldSpec(4).inv(0));
}

TEST_CASE("rank examples") {
  FieldSpec f;
  CHECK(rank(GFMatrix::identity(f, 3)) == 3);
  CHECK(rank(GFMatrix(f, 4, 4)) == 0);
  GFVector e1 = unit(0, 4), e2 = unit(1, 4), e3 = unit(2, 4), e4 = unit(3, 4);
  CHECK(rank(outer_product(f, e1, e2) + outer_product(f, e3, e4)) == 2);
}

TEST_CASE("rank subadditivity and product bound on random matrices") {
  std::mt19937_64 rng(7);
  for (int b : {1, 2, 4}) {
    FieldSpec f(b);
    for (int t = 0; t < 500; ++t) {
      auto A = random_matrix(f, 4, 4, rng), B = random_matrix(f, 4, 4, rng);
      if (t % 3 == 0) A = outer_product(f, A.row(0), A.row(1)) + outer_product(f, A.row(2), A.row(3));
      const auto ra = rank(A), rb = rank(B);
      CHECK(rank(A + B) <= ra + rb);
      CHECK(rank(A * B) <= std::min(ra, rb));
    }
  }
}

TEST_CASE("kernel basis") {
  FieldSpec f;
  CHECK(kernel_basis(GFMatrix::identity(f, 3)).empty());
  CHECK(kernel_basis(GFMatrix(f, 2, 3)).size() == 3);
  GFMatrix G = GFMatrix::from_rows(f, {{0, 1}, {1, 0}, {1, 1}});
  auto ker = kernel_basis(G.transpose());
  REQUIRE(ker.size() == 1);
  CHECK(ker[0] == GFVector{1, 1, 1});

  std::mt19937_64 rng(3);
  for (int b : {1, 3}) {
    FieldSpec g(b);
    for (int t = 0; t < 100; ++t) {
      auto M = random_matrix(g, 3 + t % 3, 6, rng);
      if (t % 2) M.set(0, 0, 0), M = M * random_matrix(g, 6, 6, rng);
      auto K = kernel_basis(M);
      CHECK(K.size() + rank(M) == M.cols());
      for (const auto& v : K) {
        const GFVector y = M * v;
        CHECK(std::all_of(y.begin(), y.end(), [](Elem e) { return e == 0; }));
      }
      if (!K.empty()) CHECK(rank(basis_matrix(g, K, 6)) == K.size());
    }
  }
}

TEST_CASE("subspace intersection") {
  FieldSpec f;
  const std::size_t n = 4;
  auto e = [&](std::size_t i) { return unit(i, n); };
  auto I = intersect_subspaces(f, {e(0), e(1)}, {e(1), e(2)}, n);
  REQUIRE(I.size() == 1);
  CHECK(I[0] == e(1));
  CHECK(intersect_subspaces(f, {e(0), e(1)}, {e(2), e(3)}, n).empty());
  auto same = intersect_subspaces(f, {e(0), e(1)}, {e(0), e(1)}, n);
  CHECK(same.size() == 2);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    std::vector<GFVector> A, B;
    const std::size_t da = 1 + rng() % 6, db = 1 + rng() % 6;
    for (std::size_t i = 0; i < da; ++i) A.push_back(random_matrix(f, 1, 8, rng).row(0));
    for (std::size_t i = 0; i < db; ++i) B.push_back(random_matrix(f, 1, 8, rng).row(0));
    const auto ra = row_space(basis_matrix(f, A, 8)), rb = row_space(basis_matrix(f, B, 8));
    auto both = A;
    both.insert(both.end(), B.begin(), B.end());
    const auto cap = intersect_subspaces(f, A, B, 8);
    for (const auto& v : cap) {
      CHECK(in_row_space(ra, v));
      CHECK(in_row_space(rb, v));
    }
    CHECK(ra.rows() + rb.rows() == rank(basis_matrix(f, both, 8)) + cap.size());
  }
}

TEST_CASE("outer products") {
  FieldSpec f;
  CHECK(rank(outer_product(f, GFVector(3, 0), GFVector{1, 1, 1})) == 0);
  auto m = outer_product(f, unit(0, 4), unit(1, 4));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) CHECK(m.at(r, c) == (r == 0 && c == 1 ? 1u : 0u));
  auto p = outer_product(f, {1, 1}, {1, 0, 1});
  CHECK(p.row(0) == GFVector{1, 0, 1});
  CHECK(p.row(1) == GFVector{1, 0, 1});
  CHECK(rank(p) == 1);
}

TEST_CASE("matrix keys and json round trip") {
  FieldSpec f(2);
  std::mt19937_64 rng(5);
  auto M = random_matrix(f, 3, 3, rng);
  CHECK(GFMatrix::from_key(f, 3, 3, M.key()) == M);
  CHECK(gfmatrix_from_json(to_json(M)) == M);
  CHECK(GFMatrix::unflatten(f, 3, 3, M.flatten()) == M);
  auto j = to_json(GFMatrix::identity(FieldSpec(), 2));
  CHECK(j["b"] == 1);
  CHECK(j["entries"] == nlohmann::json::array({1, 0, 0, 1}));
}

TEST_CASE("F2 vectors, hex and kernels") {
  F2Vec v = F2Vec::from_u64(0b1011, 8);
  CHECK(v.weight() == 3);
  CHECK(v.to_hex() == "0b");
  CHECK(F2Vec::from_hex("0b", 8) == v);
  F2Matrix M(2, 4);
  M.set(0, 0), M.set(0, 1), M.set(1, 1), M.set(1, 2);
  CHECK(rank(M) == 2);
  auto K = kernel_basis(M);
  CHECK(K.rows() == 2);
  for (std::size_t r = 0; r < K.rows(); ++r) CHECK(M.mul_vec(K.row(r)).is_zero());
  F2Basis B(4);
  CHECK(B.insert(F2Vec::from_u64(3, 4)));
  CHECK(B.insert(F2Vec::from_u64(6, 4)));
  CHECK_FALSE(B.insert(F2Vec::from_u64(5, 4)));
  CHECK(B.contains(F2Vec::from_u64(5, 4)));
}

TEST_CASE("counting formulas") {
  CHECK(gaussian_binomial(2, 4, 2) == 35);
  CHECK(count_gl(2, 3) == 168);
  CHECK(count_rank(2, 2, 1) == 9);
  CHECK(count_rank(2, 4, 2) == 7350);
  CHECK(count_dominated_by_identity(2, 4, 2) == 560);
  CHECK(grass_face_count(1, 1, 4, 0) == 7350);
  CHECK(grass_face_count(1, 1, 4, 1) == 1058400);
}
