#include <doctest.h>

#include <random>

#include "hdx/cayley.hpp"
#include "hdx/codes.hpp"

using namespace hdx;

namespace {

// Random rank-1 F2 grassmannian complex: random 2-dim tops inside F2^k.
GradedComplex random_toy(std::mt19937_64& rng, std::size_t k, std::size_t tops) {
  std::vector<std::vector<std::uint64_t>> t;
  while (t.size() < tops) {
    const std::uint64_t a = 1 + rng() % ((1u << k) - 1), b = 1 + rng() % ((1u << k) - 1);
    if (a != b) t.push_back({a, b});
  }
  auto X = GradedComplex::grassmannian_from_top(k, t);
  uniform_top_weights(X);
  return X;
}

std::size_t dense_kernel_dim(const CodePair& c) { return c.n() - rank(c.H()); }

}  // namespace

TEST_CASE("code pair of a single triangle") {
  const auto X = GradedComplex::grassmannian_from_top(2, {{1, 2}});
  const auto c = build_code_pair(X);
  CHECK(c.n() == 3);
  CHECK(c.triangles.size() == 1);
  CHECK(c.H().row(0).weight() == 3);
  CHECK(hg_zero(c));
  CHECK((c.H() * c.G()).is_zero());
  CHECK(rank_G(c) == 2);
  CHECK(kernel_H(c).dim == 2);
  CHECK(hom_quotient_dim(c) == 0);
  CHECK(parity_check_text(c) == "0 1 2\n");
  CHECK(code_to_json(c)["vertices"].size() == 3);
}

TEST_CASE("kernel of H against dense elimination on random toys") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 3 + trial % 5;
    const auto X = random_toy(rng, k, 1 + rng() % 8);
    const auto c = build_code_pair(X);
    CHECK(hg_zero(c));
    CHECK((c.H() * c.G()).is_zero());
    const auto K = kernel_H(c);
    CHECK(K.dim == dense_kernel_dim(c));
    for (const auto& v : K.basis) CHECK(c.H().mul_vec(v).is_zero());
    CHECK(K.dim >= rank_G(c));
    CHECK(rank_H(c) == rank(c.H()));
  }
}

TEST_CASE("universal cover") {
  SUBCASE("single triangle is its own cover") {
    const auto c = build_code_pair(GradedComplex::grassmannian_from_top(2, {{1, 2}}));
    const auto u = universal_cover(c);
    CHECK(u.dim == 2);
    CHECK(u.distinct);
    CHECK(u.image_is_kernel);
    CHECK(u.cover.triangles == c.triangles);
  }
  SUBCASE("random toys") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const auto c = build_code_pair(random_toy(rng, 4 + trial % 3, 2 + rng() % 6));
      const auto u = universal_cover(c);
      CHECK(u.image_is_kernel);
      CHECK(u.distinct);
      CHECK(u.cover.triangles == c.triangles);
      CHECK(u.dim == kernel_H(c).dim);
      CHECK(hom_quotient_dim(u.cover) == 0);
      // idempotent up to the code
      const auto uu = universal_cover(u.cover);
      CHECK(uu.dim == u.dim);
      CHECK(kernel_H(uu.cover).basis == kernel_H(u.cover).basis);
    }
  }
  SUBCASE("vertex forced to zero") {
    // not reachable from a complex (coordinate functionals lie in ker H); a hand-made check c_0 = 0 forces it
    CodePair c;
    c.k = 3;
    c.vertices = {1, 2, 3};
    c.triangles = {{0, 1, 2}, {0, 0, 0}};
    CHECK_THROWS_AS(universal_cover(c), DegenerateCover);
  }
}

TEST_CASE("bias and balance") {
  CHECK(bias(2, {1, 2}) == doctest::Approx(1.0));
  CHECK(bias(3, {1, 2, 3, 4, 5, 6, 7}) == doctest::Approx(1.0 / 7));
  F2Vec ones(6);
  for (int j = 0; j < 6; ++j) ones.set(j);
  CHECK_FALSE(balanced_check({ones}, 0.99).ok);
  CHECK(balanced_check({ones}, 1.0).ok);
  CHECK_THROWS(balanced_check(std::vector<F2Vec>(25, ones), 0.5));

  // simplex code: every nonzero codeword has weight 2^{d-1} of 2^d - 1
  std::vector<std::uint64_t> all;
  for (std::uint64_t x = 1; x < 16; ++x) all.push_back(x);
  CodePair c;
  c.k = 4;
  c.vertices = all;
  const auto B = generator_code_basis(c);
  CHECK(B.size() == 4);
  const auto r = balanced_check(B, 1.0 / 15);
  CHECK(r.ok);
  CHECK(r.codewords == 15);
  CHECK(r.min_rel == doctest::Approx(8.0 / 15));
  CHECK(bias(4, all) == doctest::Approx(1.0 / 15));
}

TEST_CASE("expansion to distance on a regular toy") {
  // X = all 2-dim subspaces of F2^3: regular, every vertex in 3 triangles
  std::vector<std::vector<std::uint64_t>> tops;
  for (std::uint64_t a = 1; a < 8; ++a)
    for (std::uint64_t b = a + 1; b < 8; ++b) tops.push_back({a, b});
  auto X = GradedComplex::grassmannian_from_top(3, tops);
  uniform_top_weights(X);
  const auto c = build_code_pair(X);
  CHECK(c.triangles.size() == 7);
  const double lam = graph_lambda(one_skeleton(X)).lambda;
  const auto rep = expansion_to_distance_check(c, lam);
  CHECK(rep.regular);
  CHECK(rep.ok());
  CHECK(rep.bias == doctest::Approx(bias(3, c.vertices)));

  const auto zero = expansion_to_distance_check(c, 0.0);
  CHECK(zero.bound == 0.0);

  const auto irregular = expansion_to_distance_check(build_code_pair(GradedComplex::grassmannian_from_top(3, {{1, 2}, {1, 4}})), 0.5);
  CHECK(irregular.skipped);
  CHECK_FALSE(irregular.ok());
}
