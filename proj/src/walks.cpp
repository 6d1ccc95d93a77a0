#include "hdx/walks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace hdx {

void ExactWalk::push_row(std::vector<std::pair<std::uint32_t, Rational>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!idx.empty() && off.back() < idx.size() && idx.back() == entries[k].first) {
      val.back() += entries[k].second;
      continue;
    }
    idx.push_back(entries[k].first);
    val.push_back(entries[k].second);
  }
  off.push_back(idx.size());
  ++rows;
}

Rational ExactWalk::at(std::size_t r, std::size_t c) const {
  auto b = idx.begin() + off[r], e = idx.begin() + off[r + 1];
  auto it = std::lower_bound(b, e, static_cast<std::uint32_t>(c));
  if (it != e && *it == c) return val[it - idx.begin()];
  return 0;
}

ExactWalk up_walk(const GradedComplex& X, int i) {
  if (i < -1 || i >= X.top_rank()) throw std::out_of_range("up_walk: rank out of range");
  const Level& lo = X.level(i);
  const Level& hi = X.level(i + 1);
  const auto& P = X.parents(i);
  ExactWalk W;
  W.cols = hi.count;
  for (std::size_t x = 0; x < lo.count; ++x) {
    if (lo.weights[x] == 0) throw std::invalid_argument("up_walk: zero-weight face " + std::to_string(x));
    std::vector<std::pair<std::uint32_t, Rational>> row;
    for (auto y : P.of(x)) {
      const Rational denom = lo.weights[x] * Rational(static_cast<unsigned long>(hi.children(y).size()));
      row.emplace_back(y, Rational(hi.weights[y] / denom));
    }
    W.push_row(std::move(row));
  }
  W.pi = lo.weights;
  return W;
}

ExactWalk down_walk(const GradedComplex& X, int i) {
  if (i < 0 || i > X.top_rank()) throw std::out_of_range("down_walk: rank out of range");
  const Level& hi = X.level(i);
  ExactWalk W;
  W.cols = X.count(i - 1);
  for (std::size_t y = 0; y < hi.count; ++y) {
    if (hi.weights[y] == 0) throw std::invalid_argument("down_walk: zero-weight face " + std::to_string(y));
    const auto ch = hi.children(y);
    std::vector<std::pair<std::uint32_t, Rational>> row;
    for (auto x : ch) row.emplace_back(x, Rational(1, static_cast<unsigned long>(ch.size())));
    W.push_row(std::move(row));
  }
  W.pi = hi.weights;
  return W;
}

ExactWalk compose(const ExactWalk& A, const ExactWalk& B) {
  if (A.cols != B.rows) throw std::invalid_argument("compose: shape mismatch");
  ExactWalk C;
  C.cols = B.cols;
  for (std::size_t r = 0; r < A.rows; ++r) {
    std::map<std::uint32_t, Rational> acc;
    for (auto k = A.off[r]; k < A.off[r + 1]; ++k) {
      const auto mid = A.idx[k];
      for (auto t = B.off[mid]; t < B.off[mid + 1]; ++t) acc[B.idx[t]] += A.val[k] * B.val[t];
    }
    std::vector<std::pair<std::uint32_t, Rational>> row(acc.begin(), acc.end());
    C.push_row(std::move(row));
  }
  C.pi = A.pi;
  return C;
}

ExactWalk up_down_walk(const GradedComplex& X, int i) { return compose(up_walk(X, i), down_walk(X, i + 1)); }
ExactWalk down_up_walk(const GradedComplex& X, int i) { return compose(down_walk(X, i), up_walk(X, i - 1)); }

double row_stochastic_error(const ExactWalk& W) {
  double worst = 0;
  for (std::size_t r = 0; r < W.rows; ++r) {
    Rational s = 0;
    for (auto k = W.off[r]; k < W.off[r + 1]; ++k) s += W.val[k];
    worst = std::max(worst, std::abs(Rational(s - 1).get_d()));
  }
  return worst;
}

double reversibility_error(const ExactWalk& W) {
  if (W.rows != W.cols || W.pi.size() != W.rows) throw std::invalid_argument("reversibility needs a square walk with pi");
  double worst = 0;
  for (std::size_t r = 0; r < W.rows; ++r)
    for (auto k = W.off[r]; k < W.off[r + 1]; ++k) {
      const auto c = W.idx[k];
      const Rational d = W.pi[r] * W.val[k] - W.pi[c] * W.at(c, r);
      worst = std::max(worst, std::abs(d.get_d()));
    }
  return worst;
}

SymmetricOperator symmetrized(const ExactWalk& W) {
  if (W.rows != W.cols || W.pi.size() != W.rows) throw std::invalid_argument("symmetrized needs a square walk with pi");
  struct Data {
    std::vector<std::uint64_t> off;
    std::vector<std::uint32_t> idx;
    std::vector<double> val;
  };
  auto d = std::make_shared<Data>();
  d->off = W.off;
  d->idx = W.idx;
  d->val.resize(W.val.size());
  std::vector<double> sq(W.rows);
  double tot = 0;
  for (std::size_t r = 0; r < W.rows; ++r) {
    sq[r] = std::sqrt(W.pi[r].get_d());
    tot += W.pi[r].get_d();
  }
  for (std::size_t r = 0; r < W.rows; ++r)
    for (auto k = W.off[r]; k < W.off[r + 1]; ++k) d->val[k] = W.val[k].get_d() * sq[r] / sq[W.idx[k]];
  SymmetricOperator op;
  op.n = W.rows;
  op.top.resize(W.rows);
  for (std::size_t r = 0; r < W.rows; ++r) op.top[r] = sq[r] / std::sqrt(tot);
  op.apply = [d, n = W.rows](const double* x, double* y) {
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0;
      for (auto k = d->off[r]; k < d->off[r + 1]; ++k) s += d->val[k] * x[d->idx[k]];
      y[r] = s;
    }
  };
  return op;
}

SpectralResult walk_lambda(const ExactWalk& W, const SpectralOptions& opt) { return operator_lambda(symmetrized(W), opt); }

SymmetricOperator up_down_operator(const GradedComplex& X, int i, bool down_up) {
  if (i < -1 || i >= X.top_rank()) throw std::out_of_range("up_down_operator: rank out of range");
  const Level& lo = X.level(i);
  const Level& hi = X.level(i + 1);
  struct Data {
    std::vector<double> a, ism;
    const Level* hi;
    std::size_t nlo;
  };
  auto d = std::make_shared<Data>();
  d->hi = &hi;
  d->nlo = lo.count;
  d->a.resize(hi.count);
  d->ism.resize(lo.count);
  for (std::size_t y = 0; y < hi.count; ++y)
    d->a[y] = std::sqrt(hi.weights[y].get_d()) / static_cast<double>(hi.children(y).size());
  for (std::size_t x = 0; x < lo.count; ++x) d->ism[x] = 1 / std::sqrt(lo.weights[x].get_d());
  SymmetricOperator op;
  if (!down_up) {
    op.n = lo.count;
    op.top.resize(lo.count);
    for (std::size_t x = 0; x < lo.count; ++x) op.top[x] = std::sqrt(lo.weights[x].get_d());
    op.apply = [d](const double* v, double* out) {
      const Level& H = *d->hi;
      std::fill(out, out + d->nlo, 0.0);
      for (std::size_t y = 0; y < H.count; ++y) {
        const auto ch = H.children(y);
        double t = 0;
        for (auto x : ch) t += v[x] * d->ism[x];
        t *= d->a[y] * d->a[y];
        for (auto x : ch) out[x] += t;
      }
      for (std::size_t x = 0; x < d->nlo; ++x) out[x] *= d->ism[x];
    };
  } else {
    op.n = hi.count;
    op.top.resize(hi.count);
    for (std::size_t y = 0; y < hi.count; ++y) op.top[y] = std::sqrt(hi.weights[y].get_d());
    op.apply = [d](const double* v, double* out) {
      const Level& H = *d->hi;
      std::vector<double> bx(d->nlo, 0.0);
      for (std::size_t y = 0; y < H.count; ++y) {
        const double t = d->a[y] * v[y];
        for (auto x : H.children(y)) bx[x] += t;
      }
      for (std::size_t x = 0; x < d->nlo; ++x) bx[x] *= d->ism[x] * d->ism[x];
      for (std::size_t y = 0; y < H.count; ++y) {
        double s = 0;
        for (auto x : H.children(y)) s += bx[x];
        out[y] = s * d->a[y];
      }
    };
  }
  // renormalize top to unit length (weights sum to 1, but guard against truncated levels)
  double nt = 0;
  for (double t : op.top) nt += t * t;
  nt = std::sqrt(nt);
  for (double& t : op.top) t /= nt;
  return op;
}

SpectralResult up_down_lambda(const GradedComplex& X, int i, bool down_up, const SpectralOptions& opt) {
  return operator_lambda(up_down_operator(X, i, down_up), opt);
}

ExactWalk graph_walk(const WeightedGraph& G) {
  const bool ex = G.exact.size() == G.w.size() && !G.w.empty();
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows(G.n);
  for (std::size_t e = 0; e < G.edges(); ++e) {
    const Rational m = ex ? G.exact[e] : Rational(G.w[e]);
    rows[G.u[e]].emplace_back(G.v[e], m);
    if (G.u[e] != G.v[e]) rows[G.v[e]].emplace_back(G.u[e], m);
  }
  ExactWalk W;
  W.cols = G.n;
  std::vector<Rational> deg(G.n, Rational(0));
  Rational tot = 0;
  for (std::size_t u = 0; u < G.n; ++u) {
    for (const auto& [v, m] : rows[u]) deg[u] += m;
    if (deg[u] == 0) throw std::invalid_argument("graph_walk: isolated vertex " + std::to_string(u));
    tot += deg[u];
    for (auto& [v, m] : rows[u]) m /= deg[u];
    W.push_row(std::move(rows[u]));
  }
  for (auto& d : deg) W.pi.push_back(d / tot);
  return W;
}

ExactWalk tensor(const ExactWalk& A, const ExactWalk& B) {
  ExactWalk W;
  W.cols = A.cols * B.cols;
  for (std::size_t a = 0; a < A.rows; ++a)
    for (std::size_t b = 0; b < B.rows; ++b) {
      std::vector<std::pair<std::uint32_t, Rational>> row;
      for (auto k = A.off[a]; k < A.off[a + 1]; ++k)
        for (auto t = B.off[b]; t < B.off[b + 1]; ++t)
          row.emplace_back(static_cast<std::uint32_t>(A.idx[k] * B.cols + B.idx[t]), A.val[k] * B.val[t]);
      W.push_row(std::move(row));
      if (!A.pi.empty() && !B.pi.empty()) W.pi.push_back(A.pi[a] * B.pi[b]);
    }
  return W;
}

ProjectionReport projection_check(const std::vector<std::uint32_t>& Pi, const WeightedGraph& big,
                                  const WeightedGraph& small, double tol) {
  ProjectionReport rep;
  if (Pi.size() != big.n) throw std::invalid_argument("projection map must be total on the big graph");
  std::vector<bool> hit(small.n, false);
  for (auto p : Pi) {
    if (p >= small.n) throw std::invalid_argument("projection map leaves the small graph");
    hit[p] = true;
  }
  for (std::size_t v = 0; v < small.n; ++v)
    if (!hit[v]) {
      rep.surjective = false;
      rep.first_violation = "small vertex " + std::to_string(v) + " has no preimage";
      break;
    }
  rep.exact = big.exact.size() == big.w.size() && small.exact.size() == small.w.size() && !big.w.empty();
  auto key = [](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t(a) << 32) | b;
  };
  if (rep.exact) {
    std::map<std::uint64_t, Rational> push, want;
    for (std::size_t e = 0; e < big.edges(); ++e) push[key(Pi[big.u[e]], Pi[big.v[e]])] += big.exact[e];
    for (std::size_t e = 0; e < small.edges(); ++e) want[key(small.u[e], small.v[e])] += small.exact[e];
    for (const auto& [k, m] : push)
      if (want[k] != m) {
        rep.mass_identity = false;
        rep.first_violation = "edge (" + std::to_string(k >> 32) + "," + std::to_string(k & 0xffffffffu) +
                              "): pushed mass " + to_string(m) + " vs " + to_string(want[k]);
        break;
      }
    for (const auto& [k, m] : want)
      if (rep.mass_identity && push[k] != m) {
        rep.mass_identity = false;
        rep.first_violation = "edge (" + std::to_string(k >> 32) + "," + std::to_string(k & 0xffffffffu) +
                              ") has no matching preimage mass";
      }
  } else {
    std::map<std::uint64_t, double> push, want;
    for (std::size_t e = 0; e < big.edges(); ++e) push[key(Pi[big.u[e]], Pi[big.v[e]])] += big.w[e];
    for (std::size_t e = 0; e < small.edges(); ++e) want[key(small.u[e], small.v[e])] += small.w[e];
    for (const auto& [k, m] : push)
      if (std::abs(want[k] - m) > tol) {
        rep.mass_identity = false;
        rep.first_violation = "edge (" + std::to_string(k >> 32) + "," + std::to_string(k & 0xffffffffu) + ")";
        break;
      }
    for (const auto& [k, m] : want)
      if (rep.mass_identity && std::abs(push[k] - m) > tol) {
        rep.mass_identity = false;
        rep.first_violation = "edge (" + std::to_string(k >> 32) + "," + std::to_string(k & 0xffffffffu) + ")";
      }
  }
  rep.lambda_big = graph_lambda(big).lambda;
  rep.lambda_small = graph_lambda(small).lambda;
  rep.lambda_ok = rep.lambda_small <= rep.lambda_big + 1e-9;
  return rep;
}

CouplingReport tv_coupling_bound(const ExactWalk& W, const ExactWalk& Wbig, const std::vector<std::uint32_t>& embed) {
  if (embed.size() != W.rows) throw std::invalid_argument("embed must map every state");
  {
    auto s = embed;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("embed must be injective");
  }
  CouplingReport rep;
  for (std::size_t v = 0; v < W.rows; ++v) {
    std::map<std::uint32_t, Rational> diff;
    for (auto k = W.off[v]; k < W.off[v + 1]; ++k) diff[embed[W.idx[k]]] += W.val[k];
    const auto bv = embed[v];
    for (auto k = Wbig.off[bv]; k < Wbig.off[bv + 1]; ++k) diff[Wbig.idx[k]] -= Wbig.val[k];
    Rational l1 = 0;
    for (const auto& [c, x] : diff) l1 += abs(x);
    rep.epsilon = std::max(rep.epsilon, l1.get_d());
  }
  rep.lambda = walk_lambda(W).lambda;
  rep.lambda_big = walk_lambda(Wbig).lambda;
  rep.holds = rep.lambda <= rep.lambda_big + rep.epsilon + 1e-9;
  return rep;
}

// ---------------------------------------------------------------- perp graph

namespace {

/// F_q for q prime or q = 2^b, elements 0..q-1.
struct SmallField {
  std::uint32_t q;
  bool binary;
  FieldSpec gf;
  explicit SmallField(std::uint32_t q_) : q(q_), binary((q_ & (q_ - 1)) == 0) {
    if (q < 2) throw std::invalid_argument("field order must be at least 2");
    if (binary) {
      gf = FieldSpec(std::countr_zero(q));
    } else {
      for (std::uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) throw std::invalid_argument("perp_graph supports prime q or powers of 2");
    }
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return binary ? a ^ b : (a + b) % q; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return binary ? gf.mul(a, b) : (a * b) % q; }
};

std::int64_t ipow(std::int64_t b, std::uint32_t e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

PerpGraph perp_graph(std::uint32_t q, std::uint32_t m) {
  if (m < 2) throw std::invalid_argument("perp_graph needs m >= 2");
  const SmallField F(q);
  PerpGraph P;
  P.q = q;
  P.m = m;
  const std::uint64_t total = static_cast<std::uint64_t>(ipow(q, m));
  for (std::uint64_t c = 1; c < total; ++c) {
    std::vector<std::uint32_t> v(m);
    std::uint64_t x = c;
    for (std::uint32_t j = 0; j < m; ++j) {
      v[j] = static_cast<std::uint32_t>(x % q);
      x /= q;
    }
    P.vectors.push_back(std::move(v));
  }
  P.n = P.vectors.size();
  P.A.assign(P.n, std::vector<std::int64_t>(P.n, 0));
  for (std::size_t a = 0; a < P.n; ++a)
    for (std::size_t b = 0; b < P.n; ++b) {
      std::uint32_t d = 0;
      for (std::uint32_t j = 0; j < m; ++j) d = F.add(d, F.mul(P.vectors[a][j], P.vectors[b][j]));
      P.A[a][b] = d == 0 ? 1 : 0;
    }
  return P;
}

WeightedGraph PerpGraph::graph() const {
  WeightedGraph G;
  G.n = n;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      if (A[a][b]) {
        G.add(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), 1.0);
        G.exact.emplace_back(1);
      }
  return G;
}

PerpIdentityReport perp_identity_check(std::uint32_t q, std::uint32_t m, double tol) {
  const PerpGraph P = perp_graph(q, m);
  PerpIdentityReport rep;
  rep.q = q;
  rep.m = m;
  rep.vertices = P.n;
  rep.diag_expected = ipow(q, m - 1) - 1;
  rep.off_expected = ipow(q, m - 2) - 1;
  std::map<std::int64_t, std::size_t> hist;
  for (std::size_t a = 0; a < P.n; ++a)
    for (std::size_t b = 0; b < P.n; ++b) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < P.n; ++c) s += P.A[a][c] * P.A[c][b];
      const std::int64_t want = a == b ? rep.diag_expected : rep.off_expected;
      if (s != want) {
        if (rep.identity_exact)
          rep.first_mismatch = "(A^2)[" + std::to_string(a) + "][" + std::to_string(b) + "] = " + std::to_string(s) +
                               ", expected " + std::to_string(want);
        rep.identity_exact = false;
        if (a != b) ++hist[s];
      }
    }
  rep.off_values.assign(hist.begin(), hist.end());
  rep.lambda = graph_lambda(P.graph()).lambda;
  rep.bound = 1 / std::sqrt(static_cast<double>(rep.diag_expected));
  rep.lambda_ok = rep.lambda <= rep.bound + tol;
  return rep;
}

// ---------------------------------------------------------------- matrix poset walks

GradedComplex matrix_poset_complex(const MatrixPosetSpec& spec, MatrixRestriction restrict, std::size_t top_rank,
                                   std::uint64_t cap) {
  const FieldSpec& f = spec.field;
  const std::size_t m = spec.m;
  if (top_rank > m || top_rank == 0) throw std::invalid_argument("matrix_poset_complex: bad top rank");
  GradedComplex X(ComplexKind::MatrixPoset, std::size_t(f.degree()) * m * m);
  std::vector<std::uint64_t> prev_keys;
  for (std::size_t s = 1; s <= top_rank; ++s) {
    const BigInt projected =
        restrict == MatrixRestriction::None ? count_rank(f.order(), m, s) : count_dominated_by_identity(f.order(), m, s);
    if (projected > BigInt(std::to_string(cap))) throw CapExceeded("matrix poset level exceeds cap", projected);
    std::vector<GFMatrix> members = restrict == MatrixRestriction::None ? enumerate_rank(spec, s, cap).members
                                                                        : enumerate_dominated_by_identity(f, m, s);
    std::vector<std::uint64_t> keys;
    keys.reserve(members.size());
    for (const auto& M : members) keys.push_back(M.key());
    std::vector<std::vector<std::uint32_t>> children(members.size());
    if (s == 1) {
      for (auto& c : children) c = {0};
    } else {
      std::map<std::size_t, std::vector<GFMatrix>> cores;  // idempotent cores by factor width
      for (std::size_t k = 0; k < members.size(); ++k) {
        const auto rf = rank_factorization(members[k]);
        const std::size_t t = rf.U.cols();
        auto it = cores.find(t);
        if (it == cores.end()) it = cores.emplace(t, enumerate_dominated_by_identity(f, t, s - 1)).first;
        const GFMatrix Wt = rf.W.transpose();
        for (const auto& C : it->second) {
          const std::uint64_t key = (rf.U * C * Wt).key();
          auto pos = std::lower_bound(prev_keys.begin(), prev_keys.end(), key);
          if (pos == prev_keys.end() || *pos != key) throw std::logic_error("dominated matrix missing from lower level");
          children[k].push_back(static_cast<std::uint32_t>(pos - prev_keys.begin()));
        }
        std::sort(children[k].begin(), children[k].end());
      }
    }
    X.push_level(1, keys, &children);
    prev_keys = keys;
    std::sort(prev_keys.begin(), prev_keys.end());
  }
  uniform_top_weights(X);
  return X;
}

MatrixWalkReport matrix_walk_updown(const MatrixPosetSpec& spec, MatrixRestriction restrict, const SpectralOptions& opt) {
  // Unrestricted levels are GL x GL orbits, so the standard weights are uniform on every rank and
  // truncating at rank 2 gives the same walk on rank 1.
  const std::size_t top = restrict == MatrixRestriction::None ? std::min<std::size_t>(2, spec.m) : spec.m;
  if (top < 2) throw std::invalid_argument("up-down walk needs m >= 2");
  const GradedComplex X = matrix_poset_complex(spec, restrict, top);
  MatrixWalkReport rep;
  rep.states = X.count(0);
  rep.upper_states = X.count(1);
  rep.spectral = up_down_lambda(X, 0, false, opt);
  return rep;
}

LocalizedGraph localized_graph(const FieldSpec& f, std::size_t m) {
  if (m < 3) throw std::invalid_argument("localized_graph needs m >= 3");
  LocalizedGraph out;
  out.vertices = enumerate_dominated_by_identity(f, m, 1);
  std::sort(out.vertices.begin(), out.vertices.end(), [](const GFMatrix& a, const GFMatrix& b) { return a.key() < b.key(); });
  std::vector<std::uint64_t> keys;
  for (const auto& v : out.vertices) keys.push_back(v.key());
  auto index = [&](const GFMatrix& M) {
    const auto key = M.key();
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) throw std::logic_error("localized_graph: endpoint is not a vertex");
    return static_cast<std::uint32_t>(it - keys.begin());
  };
  out.graph.n = keys.size();
  const auto cores = enumerate_dominated_by_identity(f, 2, 1);
  for (const auto& P : enumerate_dominated_by_identity(f, m, 2)) {
    const auto rf = rank_factorization(P);
    const GFMatrix Wt = rf.W.transpose();
    for (const auto& C : cores) {
      const GFMatrix L1 = rf.U * C * Wt;
      const GFMatrix L2 = P - L1;
      const auto a = index(L1), b = index(L2);
      if (a < b) {
        out.graph.add(a, b, 1.0);
        out.graph.exact.emplace_back(1);
      }
    }
  }
  out.graph.canonicalize();
  return out;
}

}  // namespace hdx
