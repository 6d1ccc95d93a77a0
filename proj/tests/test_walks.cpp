#include <cmath>

#include "doctest.h"
#include "hdx/walks.hpp"

using namespace hdx;

namespace {

WeightedGraph cycle(std::size_t n) {
  WeightedGraph G;
  G.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    G.add(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>((i + 1) % n), 1.0);
    G.exact.emplace_back(1);
  }
  G.canonicalize();
  return G;
}

WeightedGraph complete(std::size_t n, bool loops) {
  WeightedGraph G;
  G.n = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = loops ? i : i + 1; j < n; ++j) {
      G.add(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 1.0);
      G.exact.emplace_back(1);
    }
  return G;
}

}  // namespace

TEST_CASE("spectral expansion of small graphs") {
  CHECK(graph_lambda(complete(5, true)).lambda == doctest::Approx(0).epsilon(1e-12));
  CHECK(graph_lambda(cycle(4)).lambda == doctest::Approx(1.0));
  CHECK(graph_lambda(complete(4, false)).lambda == doctest::Approx(1.0 / 3));
  WeightedGraph two;
  two.n = 4;
  two.add(0, 1, 1);
  two.add(2, 3, 1);
  auto r = graph_lambda(two);
  CHECK(r.disconnected);
  CHECK(r.lambda == 1.0);
}

TEST_CASE("iterative solver agrees with dense") {
  for (std::size_t n : {30, 101}) {
    auto G = cycle(n);
    G.add(0, static_cast<std::uint32_t>(n / 2), 1.0);
    G.add(3, 3, 2.0);
    G.exact.clear();
    G.canonicalize();
    SpectralOptions it;
    it.force_iterative = true;
    const auto d = graph_lambda(G), i = graph_lambda(G, it);
    CHECK(std::abs(d.lambda - i.lambda) < 1e-7);
    CHECK(i.residual < 1e-7);
  }
}

TEST_CASE("walks on a single top face") {
  auto X = GradedComplex::simplicial_from_top({{1, 2}});
  uniform_top_weights(X);
  auto W = up_down_walk(X, 1 - 1);
  CHECK(row_stochastic_error(W) == 0);
  auto D = down_up_walk(X, 1);
  REQUIRE(D.rows == 1);
  CHECK(D.at(0, 0) == 1);
}

TEST_CASE("down walk from rank-2 matrices") {
  auto X = matrix_poset_complex({FieldSpec(), 2}, MatrixRestriction::None, 2);
  auto D = down_walk(X, 1);
  for (std::size_t y = 0; y < D.rows; ++y) {
    CHECK(D.off[y + 1] - D.off[y] == 6);
    for (auto k = D.off[y]; k < D.off[y + 1]; ++k) CHECK(D.val[k] == Rational(1, 6));
  }
}

TEST_CASE("up-down and down-up share their nonzero spectrum") {
  for (int b : {1, 2}) {
    auto X = matrix_poset_complex({FieldSpec(b), 2}, MatrixRestriction::None, 2);
    auto UD = up_down_walk(X, 0), DU = down_up_walk(X, 1);
    CHECK(row_stochastic_error(UD) < 1e-12);
    CHECK(reversibility_error(UD) < 1e-12);
    CHECK(reversibility_error(DU) < 1e-12);
    const double a = walk_lambda(UD).lambda, c = walk_lambda(DU).lambda;
    CHECK(std::abs(a - c) < 1e-9);
    CHECK(std::abs(up_down_lambda(X, 0).lambda - a) < 1e-9);
    CHECK(std::abs(up_down_lambda(X, 0, true).lambda - c) < 1e-9);
  }
}

TEST_CASE("tensor products") {
  auto K3 = graph_walk(complete(3, false));
  CHECK(walk_lambda(K3).lambda == doctest::Approx(0.5));
  CHECK(walk_lambda(tensor(K3, K3)).lambda == doctest::Approx(0.5));
  ExactWalk one;
  one.cols = 1;
  one.push_row({{0, Rational(1)}});
  one.pi = {Rational(1)};
  auto T = tensor(K3, one);
  CHECK(T.rows == 3);
  CHECK(walk_lambda(T).lambda == doctest::Approx(0.5));
  auto P = graph_walk(perp_graph(2, 3).graph());
  CHECK(std::abs(walk_lambda(tensor(P, K3)).lambda - std::max(walk_lambda(P).lambda, 0.5)) < 1e-9);
}

TEST_CASE("graph projections") {
  auto C6 = cycle(6), C3 = cycle(3);
  std::vector<std::uint32_t> id{0, 1, 2, 3, 4, 5};
  CHECK(projection_check(id, C6, C6).ok());
  // antipodal identification doubles each C3 edge's preimages
  for (auto& m : C3.exact) m = 2;
  for (auto& w : C3.w) w = 2;
  std::vector<std::uint32_t> pi{0, 1, 2, 0, 1, 2};
  auto rep = projection_check(pi, C6, C3);
  CHECK(rep.exact);
  CHECK(rep.ok());
  CHECK(rep.lambda_small == doctest::Approx(0.5));
  CHECK(rep.lambda_big == doctest::Approx(1.0));
  auto bad = cycle(3);
  CHECK_FALSE(projection_check(pi, C6, bad).mass_identity);
}

TEST_CASE("coupling bound") {
  auto W = graph_walk(complete(4, true));
  std::vector<std::uint32_t> id{0, 1, 2, 3};
  auto same = tv_coupling_bound(W, W, id);
  CHECK(same.epsilon == 0);
  CHECK(same.holds);
  // shift delta of mass from column (v+1) to column (v+2) in each row
  const Rational delta(1, 16);
  ExactWalk V;
  V.cols = 4;
  for (std::uint32_t v = 0; v < 4; ++v) {
    std::vector<std::pair<std::uint32_t, Rational>> row;
    for (std::uint32_t c = 0; c < 4; ++c) {
      Rational x(1, 4);
      if (c == (v + 1) % 4) x -= delta;
      if (c == (v + 2) % 4) x += delta;
      row.emplace_back(c, x);
    }
    V.push_row(row);
  }
  V.pi.assign(4, Rational(1, 4));
  auto r = tv_coupling_bound(V, W, id);
  CHECK(r.epsilon == doctest::Approx(2 * delta.get_d()));
  CHECK(r.holds);
}

TEST_CASE("perp graph") {
  auto s = perp_identity_check(2, 2);
  CHECK(s.vertices == 3);
  CHECK(s.identity_exact);
  auto t = perp_identity_check(2, 3);
  CHECK(t.vertices == 7);
  CHECK(t.ok());
  auto u = perp_identity_check(2, 4);
  CHECK(u.ok());
  // without loops at isotropic vertices the identity fails already at (2,2)
  auto P = perp_graph(2, 2);
  bool loop = false;
  for (std::size_t a = 0; a < P.n; ++a) loop |= P.A[a][a] != 0;
  CHECK(loop);
  CHECK(perp_graph(3, 3).n == 26);
}

TEST_CASE("matrix up-down walks") {
  auto tiny = matrix_walk_updown({FieldSpec(), 2}, MatrixRestriction::DominatedByIdentity);
  CHECK(tiny.upper_states == 1);
  CHECK(tiny.states == 6);
  CHECK(tiny.spectral.lambda == doctest::Approx(0).epsilon(1e-12));
  auto q4 = matrix_walk_updown({FieldSpec(2), 2}, MatrixRestriction::None);
  CHECK(q4.states == 75);
  CHECK(q4.spectral.lambda <= 10.0 / 4 + 1e-9);
}

TEST_CASE("localized graph") {
  auto L = localized_graph(FieldSpec(), 3);
  CHECK(L.vertices.size() == 28);
  const auto I = GFMatrix::identity(FieldSpec(), 3);
  for (std::size_t e = 0; e < L.graph.edges(); ++e) {
    const auto S = L.vertices[L.graph.u[e]] + L.vertices[L.graph.v[e]];
    CHECK(rank(S) == 2);
    CHECK(dominates(S, I));
  }
}
