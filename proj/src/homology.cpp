#include "hdx/homology.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "hdx/cayley.hpp"

namespace hdx {

F2Matrix boundary_matrix(const GradedComplex& Y, int i) {
  if (i < 0 || i > Y.top_rank()) throw std::out_of_range("boundary_matrix: rank out of range");
  const Level& L = Y.level(i);
  F2Matrix D(Y.count(i - 1), L.count);
  for (std::size_t f = 0; f < L.count; ++f) {
    if (i == 0) {
      D.set(0, f);
      continue;
    }
    for (auto c : L.children(f)) D.set(c, f, !D.get(c, f));
  }
  return D;
}

bool ChainComplexF2::dd_zero() const {
  for (std::size_t i = 1; i < boundary.size(); ++i)
    if (!(boundary[i - 1] * boundary[i]).is_zero()) return false;
  return true;
}

ChainComplexF2 chain_complex(const GradedComplex& Y) {
  ChainComplexF2 c;
  for (int i = 0; i <= Y.top_rank(); ++i) c.boundary.push_back(boundary_matrix(Y, i));
  return c;
}

std::size_t homology_dim(const GradedComplex& Y, int i) {
  const std::size_t ker = Y.count(i) - rank(boundary_matrix(Y, i));
  const std::size_t im = i + 1 <= Y.top_rank() ? rank(boundary_matrix(Y, i + 1)) : 0;
  return ker - im;
}

namespace {

struct Reducer {
  std::vector<std::uint64_t> rows, masks;
  std::vector<int> pivots;

  // Returns the combination mask if x is in the span.
  std::optional<std::uint64_t> reduce(std::uint64_t x) const {
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < rows.size(); ++j)
      if ((x >> pivots[j]) & 1u) {
        x ^= rows[j];
        m ^= masks[j];
      }
    if (x) return std::nullopt;
    return m;
  }
};

Reducer reducer_of(const SpanCoordinates& sc) {
  Reducer R;
  for (std::size_t d = 0; d < sc.basis.size(); ++d) {
    std::uint64_t y = sc.basis[d], m = std::uint64_t(1) << d;
    for (std::size_t j = 0; j < R.rows.size(); ++j)
      if ((y >> R.pivots[j]) & 1u) {
        y ^= R.rows[j];
        m ^= R.masks[j];
      }
    R.rows.push_back(y);
    R.masks.push_back(m);
    R.pivots.push_back(63 - std::countl_zero(y));
  }
  return R;
}

}  // namespace

SpanCoordinates span_coordinates(const std::vector<std::uint64_t>& vertices) {
  SpanCoordinates sc;
  Reducer R;
  for (auto x : vertices) {
    std::uint64_t y = x, m = 0;
    for (std::size_t j = 0; j < R.rows.size(); ++j)
      if ((y >> R.pivots[j]) & 1u) {
        y ^= R.rows[j];
        m ^= R.masks[j];
      }
    if (y) {
      if (sc.basis.size() >= 63) throw std::invalid_argument("span_coordinates: span dimension above 63");
      const std::size_t d = sc.basis.size();
      sc.basis.push_back(x);
      R.rows.push_back(y);
      R.masks.push_back(m ^ (std::uint64_t(1) << d));
      R.pivots.push_back(63 - std::countl_zero(y));
    }
  }
  sc.dim = sc.basis.size();
  for (auto x : vertices) sc.coords.push_back(*R.reduce(x));
  return sc;
}

std::optional<std::uint64_t> coordinates_in(const SpanCoordinates& sc, std::uint64_t x) {
  return reducer_of(sc).reduce(x);
}

CayleyOfCode cayley_of_code(const CodePair& c) {
  const auto sc = span_coordinates(c.vertices);
  if (sc.dim > 12) throw std::invalid_argument("cayley_of_code: span dimension above 12");
  CayleyOfCode out;
  out.k = sc.dim;
  out.generators = sc.coords;
  out.S = GradedComplex(ComplexKind::Simplicial, sc.dim);
  out.S.push_level(1, sc.coords);
  if (!c.triangles.empty()) {
    std::vector<std::uint64_t> edges;
    for (const auto& t : c.triangles)
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const auto x = sc.coords[t[a]], y = sc.coords[t[b]];
          edges.push_back(std::min(x, y));
          edges.push_back(std::max(x, y));
        }
    out.S.push_level(2, std::move(edges));
  }
  // weights play no role in homology, and S need not be pure here
  out.Y = cayley_complex({sc.dim, &out.S});
  return out;
}

SwapCycleSpace swap_cycle_space(const CayleyOfCode& cay) {
  const Level& E = cay.Y.level(1);
  SwapCycleSpace sp{0, 0, F2Basis(E.count), true};
  const F2Matrix D1 = boundary_matrix(cay.Y, 1);
  auto edge = [&](std::uint64_t a, std::uint64_t b) {
    const std::uint64_t f[2] = {std::min(a, b), std::max(a, b)};
    const auto idx = E.find(f);
    if (!idx) throw std::logic_error("swap_cycle_space: edge missing");
    return *idx;
  };
  const auto& g = cay.generators;
  const std::uint64_t N = std::uint64_t(1) << cay.k;
  for (std::uint64_t v = 0; v < N; ++v)
    for (std::size_t i = 0; i < g.size(); ++i) {
      ++sp.skipped_degenerate;  // x0 = x0'
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        const std::uint64_t a = v ^ g[i], b = v ^ g[i] ^ g[j], c = v ^ g[j];
        if (v > a || v > b || v > c) continue;  // each 4-cycle once, from its smallest vertex
        F2Vec z(E.count);
        for (auto e : {edge(v, a), edge(a, b), edge(b, c), edge(c, v)}) z.flip(e);
        ++sp.generators;
        if (z.weight() != 4 || !D1.mul_vec(z).is_zero()) sp.all_cycles = false;
        sp.basis.insert(std::move(z));
      }
    }
  return sp;
}

HomModSwapReport hommodswap_check(const CodePair& c) {
  const auto cay = cayley_of_code(c);
  if (cay.k > 10) throw std::invalid_argument("hommodswap_check: span dimension above 10");
  const GradedComplex& Y = cay.Y;
  const Level& E = Y.level(1);
  const std::size_t n = c.n();

  {
    WeightedGraph G;
    G.n = Y.count(0);
    for (std::size_t e = 0; e < E.count; ++e)
      G.add(static_cast<std::uint32_t>(E.face(e)[0]), static_cast<std::uint32_t>(E.face(e)[1]), 1.0);
    if (!G.connected()) throw DisconnectedError("hommodswap_check: Cayley 1-skeleton is disconnected");
  }

  HomModSwapReport rep;
  const F2Matrix D1 = boundary_matrix(Y, 1);
  const F2Matrix Z = kernel_basis(D1);
  rep.z1 = Z.rows();

  F2Basis B1(E.count), SB(E.count);
  if (Y.top_rank() >= 2) {
    const F2Matrix D2t = boundary_matrix(Y, 2).transpose();
    for (std::size_t t = 0; t < D2t.rows(); ++t) {
      B1.insert(D2t.row(t));
      SB.insert(D2t.row(t));
    }
  }
  rep.b1 = B1.dim();
  rep.h1 = rep.z1 - rep.b1;
  const auto swaps = swap_cycle_space(cay);
  rep.s1 = swaps.basis.dim();
  for (const auto& s : swaps.basis.vectors()) SB.insert(s);
  rep.s1_b1 = SB.dim();
  rep.lhs = rep.z1 - rep.s1_b1;

  // code side in span coordinates
  CodePair cc;
  cc.k = cay.k;
  cc.vertices = cay.generators;
  cc.triangles = c.triangles;
  const F2Matrix Kg = kernel_basis(cc.G().transpose());
  rep.ker_gt = Kg.rows();
  F2Basis ImH(n);
  const F2Matrix H = cc.H();
  for (std::size_t t = 0; t < H.rows(); ++t) ImH.insert(H.row(t));
  rep.im_ht = ImH.dim();
  rep.rhs = rep.ker_gt - rep.im_ht;

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cay.generators[a] < cay.generators[b]; });
  auto gen_index = [&](std::uint64_t label) {
    auto it = std::lower_bound(order.begin(), order.end(), label,
                               [&](std::uint32_t a, std::uint64_t x) { return cay.generators[a] < x; });
    if (it == order.end() || cay.generators[*it] != label) throw std::logic_error("hommodswap_check: edge label not a generator");
    return *it;
  };
  auto phi = [&](const F2Vec& alpha) {
    F2Vec out(n);
    for (std::size_t e = 0; e < E.count; ++e)
      if (alpha.get(e)) out.flip(gen_index(E.face(e)[0] ^ E.face(e)[1]));
    return out;
  };
  auto psi = [&](const F2Vec& kappa) {
    F2Vec out(E.count);
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (kappa.get(j)) {
        const std::uint64_t w = v ^ cay.generators[j];
        const std::uint64_t f[2] = {std::min(v, w), std::max(v, w)};
        out.flip(*E.find(f));
        v = w;
      }
    return out;
  };
  auto in_ker_gt = [&](const F2Vec& x) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (x.get(j)) s ^= cay.generators[j];
    return s == 0;
  };

  for (std::size_t r = 0; r < Z.rows(); ++r) {
    const F2Vec a = Z.row(r);
    const F2Vec p = phi(a);
    if (!in_ker_gt(p)) rep.phi_into_kernel = false;
    const F2Vec back = psi(p) ^ a;
    if (!SB.contains(back)) rep.psi_phi_identity = false;
  }
  for (const auto& s : swaps.basis.vectors())
    if (!ImH.contains(phi(s))) rep.phi_kills_s1_b1 = false;
  for (const auto& b : B1.vectors())
    if (!ImH.contains(phi(b))) rep.phi_kills_s1_b1 = false;
  for (std::size_t r = 0; r < Kg.rows(); ++r) {
    const F2Vec k = Kg.row(r);
    const F2Vec p = psi(k);
    if (!D1.mul_vec(p).is_zero()) rep.psi_cycles = false;
    if (!ImH.contains(phi(p) ^ k)) rep.phi_psi_identity = false;
  }
  return rep;
}

QuotientStep quotient_once(const CodePair& c, HypothesisMode mode) {
  const std::size_t n = c.n();
  const auto sc = span_coordinates(c.vertices);
  QuotientStep st;
  st.span_size = big_pow(2, sc.dim);
  st.needed = BigInt(static_cast<unsigned long>(n)) * BigInt(static_cast<unsigned long>(n + 1)) / 2 + 2;
  st.hypothesis = st.span_size >= st.needed;
  if (mode == HypothesisMode::CountingBound && !st.hypothesis) {
    std::ostringstream os;
    os << "quotient hypothesis fails: |span X(0)| = " << to_string(st.span_size)
       << " < |X(0)|^2/2 + |X(0)|/2 + 2 = " << to_string(st.needed);
    throw QuotientHypothesisError(os.str());
  }
  if (c.k > 24) throw std::invalid_argument("quotient_once: ambient above 24 bits");

  std::vector<std::uint64_t> forbidden{0};
  for (std::size_t a = 0; a < n; ++a) {
    forbidden.push_back(c.vertices[a]);
    for (std::size_t b = a + 1; b < n; ++b) forbidden.push_back(c.vertices[a] ^ c.vertices[b]);
  }
  std::sort(forbidden.begin(), forbidden.end());
  const Reducer R = reducer_of(sc);
  std::optional<std::uint64_t> cv;
  for (std::uint64_t u = 1; u < (std::uint64_t(1) << c.k); ++u) {
    if (std::binary_search(forbidden.begin(), forbidden.end(), u)) continue;
    if (auto m = R.reduce(u)) {
      st.v = u;
      cv = m;
      break;
    }
  }
  if (!cv) {
    if (mode == HypothesisMode::CountingBound) throw std::logic_error("quotient_once: hypothesis holds but no valid v");
    throw QuotientHypothesisError("no v outside {0} u X(0) u (X(0)+X(0)) in a span of size " + to_string(st.span_size));
  }

  // complement basis: all span coordinates except the top bit of v
  const int h = 63 - std::countl_zero(*cv);
  st.next.k = sc.dim - 1;
  st.next.triangles = c.triangles;
  for (auto x : sc.coords) {
    if ((x >> h) & 1u) x ^= *cv;
    const std::uint64_t low = x & ((std::uint64_t(1) << h) - 1);
    st.next.vertices.push_back(low | ((x >> (h + 1)) << h));
  }
  auto sorted = st.next.vertices;
  std::sort(sorted.begin(), sorted.end());
  st.incidence_preserved = sorted.front() != 0 && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
                           hg_zero(st.next) && st.next.triangles == c.triangles;
  st.quotient_before = hom_quotient_dim(c);
  st.quotient_after = hom_quotient_dim(st.next);
  st.kernel_grew = n - rank_G(st.next) == n - sc.dim + 1;
  return st;
}

bool QuotientTrace::ok() const {
  if (!completed()) return false;
  for (const auto& r : rows)
    if (!r.plus_one || !r.incidence_preserved || !r.skeleton_preserved || !r.h1_bound || !r.hommodswap) return false;
  return true;
}

QuotientTrace quotient_iterate(const CodePair& c, std::size_t t, HypothesisMode mode, bool homology) {
  QuotientTrace tr;
  tr.requested = t;
  tr.initial_dim = hom_quotient_dim(c);
  CodePair cur = c;
  for (std::size_t s = 1; s <= t; ++s) {
    QuotientStep st;
    try {
      st = quotient_once(cur, mode);
    } catch (const QuotientHypothesisError& e) {
      tr.stop_reason = "step " + std::to_string(s) + ": " + e.what();
      break;
    }
    QuotientTraceRow row;
    row.step = s;
    row.v = st.v;
    row.ambient = cur.k;
    row.span_size = st.span_size;
    row.needed = st.needed;
    row.quotient_dim = st.quotient_after;
    row.plus_one = st.quotient_after == st.quotient_before + 1 && st.kernel_grew;
    row.incidence_preserved = st.incidence_preserved;
    row.skeleton_preserved = st.next.n() == cur.n() && st.next.triangles == cur.triangles;
    if (homology && st.next.k <= 10) {
      const auto hs = hommodswap_check(st.next);
      row.h1 = hs.h1;
      row.h1_bound = hs.h1 >= row.quotient_dim;
      row.hommodswap = hs.ok() && hs.rhs == row.quotient_dim;
    }
    tr.rows.push_back(row);
    cur = std::move(st.next);
  }
  tr.last = cur;
  return tr;
}

nlohmann::json trace_to_json(const QuotientTrace& t) {
  nlohmann::json j;
  j["initial_quotient_dim"] = t.initial_dim;
  j["requested"] = t.requested;
  j["completed"] = t.completed();
  j["stop_reason"] = t.stop_reason;
  auto& rows = j["steps"] = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json x{{"step", r.step},
                     {"v", F2Vec::from_u64(r.v, r.ambient).to_hex()},
                     {"span_size", to_string(r.span_size)},
                     {"needed", to_string(r.needed)},
                     {"quotient_dim", r.quotient_dim},
                     {"plus_one", r.plus_one},
                     {"incidence_preserved", r.incidence_preserved},
                     {"skeleton_preserved", r.skeleton_preserved},
                     {"h1_bound", r.h1_bound},
                     {"hommodswap", r.hommodswap}};
    x["h1"] = r.h1 ? nlohmann::json(*r.h1) : nlohmann::json(nullptr);
    rows.push_back(x);
  }
  return j;
}

}  // namespace hdx
