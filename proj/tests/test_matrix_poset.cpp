#include <random>
#include <set>

#include "doctest.h"
#include "hdx/matrix_poset.hpp"

using namespace hdx;

namespace {

GFMatrix diag(const FieldSpec& f, std::vector<Elem> d) {
  GFMatrix m(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

GFMatrix E(const FieldSpec& f, std::size_t n, std::size_t r, std::size_t c) {
  GFMatrix m(f, n, n);
  m.set(r, c, 1);
  return m;
}

}  // namespace

TEST_CASE("domination examples") {
  FieldSpec f;
  CHECK(dominates(E(f, 3, 0, 0), diag(f, {1, 1, 0})));
  auto M = diag(f, {1, 0, 1});
  CHECK(dominates(M, M));
  CHECK_FALSE(strictly_dominates(M, M));
  CHECK_FALSE(dominates(E(f, 3, 0, 0), E(f, 3, 0, 0) + E(f, 3, 0, 1)));
  CHECK_THROWS(dominates(GFMatrix(f, 2, 2), GFMatrix(f, 3, 3)));
}

TEST_CASE("rank level enumeration") {
  FieldSpec f;
  CHECK(enumerate_rank({f, 2}, 1).members.size() == 9);
  auto zero = enumerate_rank({f, 3}, 0).members;
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].is_zero());
  auto full = enumerate_rank({f, 3}, 3).members;
  CHECK(full.size() == 168);
  std::set<std::uint64_t> keys;
  for (const auto& M : full) {
    CHECK(rank(M) == 3);
    keys.insert(M.key());
  }
  CHECK(keys.size() == 168);
  CHECK_THROWS_AS(enumerate_rank({FieldSpec(4), 4}, 4, 1000), CapExceeded);
}

TEST_CASE("rank level counts match the closed formula") {
  for (std::size_t m : {2, 3}) {
    for (int b : {1, 2}) {
      MatrixPosetSpec spec{FieldSpec(b), m};
      for (std::size_t s = 0; s <= m; ++s) {
        std::uint64_t n = 0;
        std::set<std::uint64_t> keys;
        for_each_rank_key(spec, s, [&](std::uint64_t k) {
          ++n;
          keys.insert(k);
        });
        CHECK(BigInt(static_cast<unsigned long>(n)) == count_rank(1u << b, m, s));
        CHECK(keys.size() == n);
      }
    }
  }
}

TEST_CASE("meet examples") {
  FieldSpec f;
  CHECK(meet_maximal(diag(f, {1, 1, 0}), diag(f, {1, 0, 1})) == E(f, 3, 0, 0));
  auto M = diag(f, {1, 1, 0});
  CHECK(meet_maximal(M, M) == M);

  // face {L1+L2, L1+L3} of the rank-1 construction at n = 4
  GFMatrix L1 = E(f, 4, 0, 1), L2 = E(f, 4, 1, 2), L3 = E(f, 4, 2, 3);
  GFMatrix A = L1 + L2, B = L1 + L3;
  auto meet = meet_maximal(A, B);
  CHECK(meet == L1);
  for (const auto& L : enumerate_rank({f, 4}, 1).members)
    if (dominates(L, A) && dominates(L, B)) CHECK(dominates(L, meet));
}

TEST_CASE("meet ambiguity is reported") {
  // two rank-2 matrices over F2 sharing a 2-dim row and column span: several incomparable maxima
  FieldSpec f;
  auto I = diag(f, {1, 1});
  GFMatrix J(f, 2, 2);
  J.set(0, 1, 1), J.set(1, 0, 1);
  CHECK_THROWS_AS(meet_maximal(I, J), AmbiguityError);
}

TEST_CASE("rank-2 matrices over F2 dominate six rank-1 matrices") {
  FieldSpec f;
  for (const auto& M : enumerate_rank({f, 2}, 2).members) {
    auto below = enumerate_below(M, 1);
    CHECK(below.size() == 6);
    for (const auto& L : below) CHECK(strictly_dominates(L, M));
  }
}

TEST_CASE("dominated by identity") {
  FieldSpec f;
  CHECK(dominated_by_identity(GFMatrix::identity(f, 3)).dominated);
  CHECK_FALSE(dominated_by_identity(E(f, 3, 0, 1)).dominated);
  const auto I = GFMatrix::identity(f, 3);
  std::size_t count = 0;
  for (std::uint64_t k = 0; k < 512; ++k) {
    auto M = GFMatrix::from_key(f, 3, 3, k);
    auto d = dominated_by_identity(M);
    CHECK(d.dominated == dominates(M, I));
    if (d.dominated) {
      ++count;
      CHECK(d.V1 * d.V2.transpose() == M);
    }
  }
  std::size_t expect = 0;
  for (std::size_t s = 0; s <= 3; ++s) {
    auto list = enumerate_dominated_by_identity(f, 3, s);
    CHECK(BigInt(static_cast<unsigned long>(list.size())) == count_dominated_by_identity(2, 3, s));
    for (const auto& M : list) CHECK(dominates(M, I));
    expect += list.size();
  }
  CHECK(count == expect);
}

TEST_CASE("subspaces avoiding a fixed subspace") {
  FieldSpec f(2);
  GFMatrix avoid(f, 1, 3);
  avoid.set(0, 0, 1);
  auto list = enumerate_subspaces_avoiding(f, 3, avoid, 2);
  CHECK(BigInt(static_cast<unsigned long>(list.size())) == count_subspaces_avoiding(4, 3, 1, 2));
  auto all = enumerate_subspaces(f, 3, 2);
  CHECK(BigInt(static_cast<unsigned long>(all.size())) == gaussian_binomial(4, 3, 2));
}

TEST_CASE("poset axioms on 2x2 over F2") {
  auto rep = check_matrix_poset_axioms({FieldSpec(), 2});
  CHECK(rep.elements == 16);
  CHECK(rep.ok());
}
