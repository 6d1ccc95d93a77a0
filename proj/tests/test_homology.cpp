#include <doctest.h>

#include <random>

#include "hdx/homology.hpp"
#include "hdx/toys.hpp"

using namespace hdx;

namespace {

CodePair code_of(std::size_t k, std::vector<std::uint64_t> vertices, const std::vector<std::vector<std::uint64_t>>& tops) {
  return code_from_tops(k, std::move(vertices), tops);
}

}  // namespace

TEST_CASE("boundary matrices and small homology") {
  auto tri = GradedComplex::simplicial_from_top({{0, 1}, {1, 2}, {0, 2}});
  CHECK(rank(boundary_matrix(tri, 1)) == 2);
  const auto d0 = boundary_matrix(tri, 0);
  CHECK(d0.rows() == 1);
  CHECK(d0.row(0).weight() == 3);
  CHECK(homology_dim(tri, 1) == 1);
  CHECK(homology_dim(tri, 0) == 0);

  auto tet = GradedComplex::simplicial_from_top({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  CHECK(chain_complex(tet).dd_zero());
  CHECK(homology_dim(tet, 1) == 0);
  CHECK(homology_dim(tet, 2) == 1);

  auto two = GradedComplex::simplicial_from_top({{0, 1}, {1, 2}, {0, 2}, {5, 6}, {6, 7}, {5, 7}});
  CHECK(homology_dim(two, 1) == 2);
  CHECK(homology_dim(two, 0) == 1);  // reduced
}

TEST_CASE("span coordinates") {
  const auto sc = span_coordinates({6, 5, 3, 12});
  CHECK(sc.dim == 3);
  CHECK(sc.coords[2] == (sc.coords[0] ^ sc.coords[1]));
  CHECK(coordinates_in(sc, 6 ^ 12) == (sc.coords[0] ^ sc.coords[3]));
  CHECK_FALSE(coordinates_in(sc, 1));
}

TEST_CASE("cayley complex of one triangle is K4 with its triangles") {
  const auto c = code_of(2, {}, {{1, 2}});
  const auto cay = cayley_of_code(c);
  CHECK(cay.Y.count(0) == 4);
  CHECK(cay.Y.count(1) == 6);
  CHECK(cay.Y.count(2) == 4);
  CHECK(homology_dim(cay.Y, 1) == 0);
  const auto sw = swap_cycle_space(cay);
  CHECK(sw.all_cycles);
  CHECK(sw.generators == 3);
  const auto r = hommodswap_check(c);
  CHECK(r.z1 == 3);
  CHECK(r.b1 == 3);
  CHECK(r.lhs == 0);
  CHECK(r.rhs == 0);
  CHECK(r.ok());
}

TEST_CASE("triangle-free three vertices") {
  const auto c = code_of(2, {1, 2, 3}, {});
  const auto r = hommodswap_check(c);
  CHECK(r.ker_gt == 1);
  CHECK(r.im_ht == 0);
  CHECK(r.rhs == 1);
  CHECK(r.lhs == 1);
  CHECK(r.ok());
}

TEST_CASE("hommodswap on seeded random toys") {
  std::mt19937_64 rng(2024);
  int done = 0, with_triangles = 0, nontrivial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 3 + trial % 4;
    const auto c = random_code(rng, k, rng() % 6, rng() % 5);
    REQUIRE(c.n() <= 14);
    const auto r = hommodswap_check(c);
    CHECK(r.lhs == r.rhs);
    CHECK(r.ok());
    CHECK(r.rhs == hom_quotient_dim(c));
    ++done;
    with_triangles += !c.triangles.empty();
    nontrivial += r.rhs > 0;
  }
  CHECK(done == 100);
  CHECK(with_triangles > 50);
  CHECK(nontrivial > 10);
  MESSAGE("toys with triangles: " << with_triangles << ", with nonzero quotient: " << nontrivial);
}

TEST_CASE("quotient once") {
  SUBCASE("three unit vectors") {
    const auto c = code_of(3, {1, 2, 4}, {});
    const auto st = quotient_once(c);
    CHECK(st.hypothesis);
    CHECK(st.span_size == 8);
    CHECK(st.needed == 8);
    CHECK(st.v == 7);
    CHECK(st.next.k == 2);
    CHECK((st.next.vertices[0] ^ st.next.vertices[1] ^ st.next.vertices[2]) == 0);
    CHECK(st.quotient_after == st.quotient_before + 1);
    CHECK(st.incidence_preserved);
    CHECK(st.kernel_grew);
  }
  SUBCASE("hypothesis too small") {
    const auto c = code_of(3, {1, 2, 4, 7}, {});
    CHECK_THROWS_AS(quotient_once(c), QuotientHypothesisError);
    CHECK_THROWS_AS(quotient_once(c, HypothesisMode::DirectExistence), QuotientHypothesisError);
  }
}

TEST_CASE("quotient iterate") {
  SUBCASE("t = 0") {
    const auto c = code_of(4, {1, 2, 4, 8}, {});
    const auto tr = quotient_iterate(c, 0);
    CHECK(tr.rows.empty());
    CHECK(tr.ok());
    CHECK(tr.last.vertices == c.vertices);
  }
  SUBCASE("one triangle among six vertices stops after one step") {
    const auto c = code_of(10, {4, 8, 16}, {{1, 2}});
    REQUIRE(c.n() == 6);
    const auto tr = quotient_iterate(c, 3);
    CHECK(tr.rows.size() == 1);
    CHECK_FALSE(tr.completed());
    CHECK(tr.stop_reason.find("hypothesis") != std::string::npos);
    CHECK(tr.rows[0].plus_one);
    CHECK(tr.rows[0].hommodswap);
  }
  SUBCASE("independent vertices with room") {
    const auto c = code_of(10, {1, 2, 4, 8, 16, 32, 64, 128}, {});
    const auto tr = quotient_iterate(c, 2);
    REQUIRE(tr.completed());
    CHECK(tr.ok());
    CHECK(tr.initial_dim == 0);
    CHECK(tr.rows.back().quotient_dim == 2);
    CHECK(trace_to_json(tr)["steps"].size() == 2);
  }
}
