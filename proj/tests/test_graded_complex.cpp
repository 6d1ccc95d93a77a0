#include <cmath>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "hdx/graded_complex.hpp"
#include "hdx/walks.hpp"

using namespace hdx;

namespace {

using Faces = std::vector<std::vector<std::uint64_t>>;

Faces all_subsets(std::size_t n, std::size_t k) {
  Faces out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<std::uint64_t> f;
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) f.push_back(j);
    out.push_back(f);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

/// Random toy Grassmannian complex of rank 1 or 2 in F2^k.
GradedComplex random_grassmannian(std::mt19937_64& rng, std::size_t k, std::size_t dim, std::size_t tops) {
  Faces top;
  while (top.size() < tops) {
    std::vector<std::uint64_t> b;
    for (std::size_t j = 0; j < dim; ++j) b.push_back(1 + rng() % ((1u << k) - 1));
    auto s = GradedComplex::span_f2(b);
    if (s.front() == 0 || std::adjacent_find(s.begin(), s.end()) != s.end()) continue;
    top.push_back(b);
  }
  auto X = GradedComplex::grassmannian_from_top(k, top);
  uniform_top_weights(X);
  return X;
}

}  // namespace

TEST_CASE("standard weights") {
  auto X = GradedComplex::simplicial_from_top({{1, 2, 3}});
  uniform_top_weights(X);
  for (int i = -1; i <= 2; ++i)
    for (const auto& w : X.level(i).weights) CHECK(w == Rational(1, static_cast<unsigned long>(X.count(i))));
  auto T = GradedComplex::simplicial_from_top({{0, 1}, {1, 2}, {0, 2}});
  uniform_top_weights(T);
  for (const auto& w : T.level(0).weights) CHECK(w == Rational(1, 3));
  CHECK(check_standardness(T).ok());

  auto M = matrix_poset_complex({FieldSpec(), 2}, MatrixRestriction::None, 2);
  CHECK(M.count(0) == 9);
  for (const auto& w : M.level(0).weights) CHECK(w == Rational(1, 9));
  CHECK(check_standardness(M).ok());
}

TEST_CASE("non-pure complexes are rejected") {
  GradedComplex X(ComplexKind::Simplicial);
  X.push_level(1, {1, 2, 3});
  X.push_level(2, {1, 2});
  auto rep = check_standardness(X);
  CHECK_FALSE(rep.ok());
  CHECK_THROWS_WITH_AS(uniform_top_weights(X), doctest::Contains("not pure"), std::invalid_argument);
}

TEST_CASE("links") {
  auto tet = GradedComplex::simplicial_from_top(all_subsets(4, 3));
  uniform_top_weights(tet);
  auto L = link(tet, -1, 0);
  CHECK(L.top_rank() == tet.top_rank());
  for (int i = -1; i <= tet.top_rank(); ++i) CHECK(L.count(i) == tet.count(i));
  auto Lv = link(tet, 0, 0);
  CHECK(Lv.top_rank() == 1);
  CHECK(Lv.count(0) == 3);
  CHECK(Lv.count(1) == 3);
  CHECK(check_standardness(Lv).ok());
  CHECK_THROWS(link(tet, 0, 99));
}

TEST_CASE("one-skeleton") {
  auto T = GradedComplex::simplicial_from_top({{0, 1}, {1, 2}, {0, 2}});
  uniform_top_weights(T);
  auto G = one_skeleton(T);
  CHECK(G.n == 3);
  CHECK(G.edges() == 3);
  for (std::size_t e = 0; e < 3; ++e) CHECK(G.exact[e] == Rational(1, 3));

  auto Y = GradedComplex::grassmannian_from_top(2, {{1, 2}});
  auto H = one_skeleton(Y);
  CHECK(H.edges() == 3);
  for (double w : H.w) CHECK(w == 1.0);
}

TEST_CASE("local expansion") {
  auto K4 = GradedComplex::simplicial_from_top(all_subsets(4, 3));
  uniform_top_weights(K4);
  auto le = local_expansion(K4, -1);
  CHECK(le.lambda == doctest::Approx(1.0 / 3).epsilon(1e-12));

  // two triangles glued at a vertex: the link of the shared vertex is two disjoint edges
  auto X = GradedComplex::simplicial_from_top({{0, 1, 2}, {0, 3, 4}});
  uniform_top_weights(X);
  auto lv = local_expansion(X, 0);
  CHECK(lv.lambda == 1.0);
  REQUIRE(lv.disconnected.size() == 1);
  CHECK(X.level(0).face(lv.disconnected[0])[0] == 0);
}

TEST_CASE("basisification") {
  auto Y = GradedComplex::grassmannian_from_top(2, {{1, 2}});
  uniform_top_weights(Y);
  auto B = basisify(Y);
  CHECK(B.count(0) == 3);
  CHECK(B.count(1) == 3);
  for (const auto& w : B.level(1).weights) CHECK(w == Rational(1, 3));
  CHECK(unordered_bases_f2(2) == 3);
  CHECK(unordered_bases_f2(3) == 28);
  CHECK(check_standardness(B).ok());

  auto V = GradedComplex::grassmannian_from_top(3, {{1}, {2}, {5}});
  uniform_top_weights(V);
  auto BV = basisify(V);
  CHECK(BV.count(0) == 3);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    auto X = random_grassmannian(rng, 5, 3, 4);
    auto BX = basisify(X);
    CHECK(check_standardness(BX).ok());
    for (int i = -1; i <= X.top_rank() - 2; ++i)
      CHECK(std::abs(local_expansion(BX, i).lambda - local_expansion(X, i).lambda) < 1e-9);
  }
}

TEST_CASE("grassmannian links are quotient complexes") {
  std::mt19937_64 rng(4);
  auto X = random_grassmannian(rng, 5, 3, 3);
  for (std::size_t v = 0; v < X.count(0); ++v) {
    auto L = link(X, 0, v);
    const std::uint64_t x = X.level(0).face(v)[0];
    // quotient by x: reduce every vector by clearing the top bit of x
    const int hb = 63 - std::countl_zero(x);
    auto red = [&](std::uint64_t y) { return ((y >> hb) & 1u) ? y ^ x : y; };
    std::set<std::vector<std::uint64_t>> expect, got;
    for (std::size_t f = 0; f < X.count(1); ++f) {
      auto face = X.level(1).face(f);
      if (!std::binary_search(face.begin(), face.end(), x)) continue;
      std::set<std::uint64_t> q;
      for (auto y : face)
        if (y != x) q.insert(red(y));
      expect.insert({q.begin(), q.end()});
    }
    for (std::size_t f = 0; f < L.count(0); ++f) {
      auto face = X.level(1).face(L.level(0).face(f)[0]);
      std::set<std::uint64_t> q;
      for (auto y : face)
        if (y != x) q.insert(red(y));
      got.insert({q.begin(), q.end()});
      CHECK(q.size() == 1);
    }
    CHECK(got == expect);
    CHECK(L.count(0) == expect.size());
  }
}

TEST_CASE("trickle-down on complete complexes") {
  for (std::size_t n : {4, 5, 6}) {
    auto X = GradedComplex::simplicial_from_top(all_subsets(n, 3));
    uniform_top_weights(X);
    auto rep = trickle_check(X);
    CHECK(rep.ok());
    REQUIRE(rep.lambdas.size() == 2);
    CHECK(rep.lambdas[0] == doctest::Approx(1.0 / (n - 1)));
    CHECK(rep.lambdas[1] == doctest::Approx(1.0 / (n - 2)));
  }
  auto C = GradedComplex::simplicial_from_top({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}});
  uniform_top_weights(C);
  CHECK(trickle_check(C).ok());
}

TEST_CASE("export formats") {
  auto T = GradedComplex::simplicial_from_top({{0, 1}});
  uniform_top_weights(T);
  auto j = complex_to_json(T);
  CHECK(j["kind"] == "simplicial");
  CHECK(j["ranks"]["0"].size() == 2);
  CHECK(j["weights"]["1"][0] == "1");
  auto G = one_skeleton(T);
  CHECK(graph_to_csv(G) == "u,v,weight\n0,1,1\n");
  CHECK(graph_to_dot(G).find("0 -- 1") != std::string::npos);
  GradedComplex empty(ComplexKind::Generic);
  CHECK(complex_to_json(empty)["ranks"].size() == 1);
  CHECK_THROWS(complex_from_json(complex_to_json(empty)));
}

TEST_CASE("json round trip") {
  auto T = GradedComplex::simplicial_from_top({{0, 1, 2}, {1, 2, 3}});
  standard_weights_from_top(T, {Rational(1, 3), Rational(2, 3)});
  const auto j = complex_to_json(T);
  const auto back = complex_from_json(j);
  CHECK(complex_to_json(back) == j);
  CHECK(back.count(0) == 4);
  CHECK(check_standardness(back).ok());

  std::mt19937_64 rng(3);
  auto G = random_grassmannian(rng, 5, 3, 3);
  const auto jg = complex_to_json(G);
  const auto bg = complex_from_json(jg);
  CHECK(bg.kind() == ComplexKind::Grassmannian);
  CHECK(bg.ambient() == 5);
  CHECK(complex_to_json(bg) == jg);

  auto broken = jg;
  broken["ranks"]["1"][0].erase(0);
  CHECK_THROWS(complex_from_json(broken));
}
