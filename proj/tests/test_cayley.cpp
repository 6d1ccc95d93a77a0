#include <doctest.h>

#include <random>

#include "hdx/cayley.hpp"

using namespace hdx;

namespace {

GradedComplex beta_of(std::size_t k, const std::vector<std::vector<std::uint64_t>>& tops) {
  auto X = GradedComplex::grassmannian_from_top(k, tops);
  uniform_top_weights(X);
  return basisify(X);
}

bool same_faces(const GradedComplex& A, const GradedComplex& B) {
  if (A.top_rank() != B.top_rank()) return false;
  for (int i = -1; i <= A.top_rank(); ++i) {
    if (A.level(i).labels != B.level(i).labels) return false;
    if (A.level(i).weights != B.level(i).weights) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("symmetry condition") {
  const auto S = beta_of(3, {{1, 2}, {1, 4}});
  CHECK(check_symmetry(S, 3).ok);

  auto E = GradedComplex::simplicial_from_top({{1, 2}});
  uniform_top_weights(E);
  const auto bad = check_symmetry(E, 3);
  CHECK_FALSE(bad.ok);
  CHECK(bad.first_violation.find("missing") != std::string::npos);

  auto P = GradedComplex::simplicial_from_top({{3}, {5}, {6}});
  uniform_top_weights(P);
  CHECK(check_symmetry(P, 3).ok);

  auto Z = GradedComplex::simplicial_from_top({{0}, {1}});
  CHECK_THROWS(check_symmetry(Z, 3));
}

TEST_CASE("full cayley complex on toys") {
  for (const auto& tops : std::vector<std::vector<std::vector<std::uint64_t>>>{
           {{1, 2}}, {{1, 2}, {1, 4}}, {{1, 2}, {4, 8}, {3, 4}}, {{1, 2, 4}, {1, 2, 8}}}) {
    const std::size_t k = 4;
    const auto S = beta_of(k, tops);
    REQUIRE(check_symmetry(S, k).ok);
    const CayleySpec spec{k, &S};
    const auto C = cayley_complex(spec);
    CHECK(C.top_rank() == S.top_rank() + 1);
    CHECK(C.count(0) == 16);
    CHECK(check_standardness(C).ok());

    // merged mass of each face is (|s|+1)/2^k m_S(s) for any of its realizations
    for (int j = 1; j <= C.top_rank(); ++j) {
      const Level& L = C.level(j);
      for (std::size_t f = 0; f < L.count; ++f) {
        const auto F = L.face(f);
        for (const auto g : F) {
          std::vector<std::uint64_t> s;
          for (const auto a : F)
            if (a != g) s.push_back(a ^ g);
          std::sort(s.begin(), s.end());
          const auto idx = S.level(j - 1).find(s);
          REQUIRE(idx);
          CHECK(L.weights[f] == Rational(Rational(j + 1) / 16 * S.level(j - 1).weights[*idx]));
        }
      }
    }

    // lazy links match links of the materialized complex
    for (std::uint64_t v : {0u, 5u, 11u, 15u}) {
      const auto lazy = cayley_vertex_link(spec, v);
      CHECK(same_faces(lazy, link(C, 0, v)));
      CHECK(check_link_bijection(spec, v, lazy).ok());
    }
    CHECK(same_faces(cayley_vertex_link(spec, 0), S));

    for (int i = 0; i + 1 <= S.top_rank(); ++i)
      CHECK(local_expansion(C, i).lambda == doctest::Approx(local_expansion(S, i - 1).lambda).epsilon(1e-9));
  }
}

TEST_CASE("link bijection detects a wrong link") {
  const auto S = beta_of(4, {{1, 2}, {1, 4}});
  const CayleySpec spec{4, &S};
  auto L = cayley_vertex_link(spec, 6);
  CHECK(check_link_bijection(spec, 6, L).ok());
  CHECK_FALSE(check_link_bijection(spec, 7, L).ok());
}

TEST_CASE("character sweep") {
  SUBCASE("all nonzero vectors") {
    for (std::size_t k = 1; k <= 10; ++k) {
      std::vector<std::uint64_t> g;
      for (std::uint64_t x = 1; x < (1u << k); ++x) g.push_back(x);
      CHECK(cayley_graph_lambda(k, g).lambda == doctest::Approx(1.0 / double((1u << k) - 1)).epsilon(1e-12));
    }
  }
  SUBCASE("bipartite pair") {
    const auto s = cayley_graph_lambda(2, {1, 2});
    CHECK(s.lambda == doctest::Approx(1.0));
    CHECK(s.argmax == 3);
    CHECK(s.minimum == doctest::Approx(-1.0));
  }
  SUBCASE("random sets against dense and direct sums") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 12; ++trial) {
      const std::size_t k = 3 + trial % 8;
      std::vector<std::uint64_t> g;
      std::vector<double> w;
      const int m = 2 + int(rng() % 20);
      for (int t = 0; t < m; ++t) {
        g.push_back(1 + rng() % ((1u << k) - 1));
        w.push_back(1 + double(rng() % 4));
      }
      const auto fast = cayley_graph_lambda(k, g);
      CHECK(fast.lambda == doctest::Approx(cayley_dense_lambda(k, g)).epsilon(1e-9));
      CHECK(fast.lambda == doctest::Approx(character_sweep_direct(k, g).lambda).epsilon(1e-12));
      CHECK(cayley_graph_lambda(k, g, w).lambda == doctest::Approx(cayley_dense_lambda(k, g, w)).epsilon(1e-9));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS(cayley_graph_lambda(25, {1}));
    CHECK_THROWS(cayley_graph_lambda(4, {0}));
    CHECK_THROWS(cayley_graph_lambda(4, {16}));
    CHECK_THROWS(cayley_dense_lambda(11, {1}));
    std::vector<double> a(6);
    CHECK_THROWS(walsh_hadamard(a));
  }
}

TEST_CASE("counting claims from formulas") {
  const auto c = cayley_counting_check({1, 1, 4});
  CHECK(c.vertices == big_pow(2, 16));
  CHECK(c.bound == big_pow(2, 32));
  CHECK(c.faces_X == BigInt(1 + 7350 + 1058400));
  CHECK(c.faces_per_vertex == BigInt(1 + 7350 + 3 * 1058400));
  CHECK(c.ok());
  CHECK_FALSE(c.exact);
  const auto d = cayley_counting_check({1, 1, 5});
  CHECK(d.vertices == big_pow(2, 25));
  CHECK(d.bound == big_pow(2, 40));
  CHECK(d.faces_X == BigInt(1) + grass_face_count(1, 1, 5, 0) + grass_face_count(1, 1, 5, 1));
  CHECK(d.ok());
}
