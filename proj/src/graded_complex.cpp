#include "hdx/graded_complex.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hdx/parallel.hpp"

namespace hdx {

std::string to_string(ComplexKind k) {
  switch (k) {
    case ComplexKind::Simplicial: return "simplicial";
    case ComplexKind::Grassmannian: return "grassmannian";
    case ComplexKind::MatrixPoset: return "matrix-poset";
    case ComplexKind::Generic: return "generic";
  }
  return "generic";
}

std::optional<std::size_t> Level::find(std::span<const std::uint64_t> f) const {
  if (f.size() != width) return std::nullopt;
  if (width == 0) return count ? std::optional<std::size_t>(0) : std::nullopt;
  std::size_t lo = 0, hi = count;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto g = face(mid);
    if (std::lexicographical_compare(g.begin(), g.end(), f.begin(), f.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count && std::equal(f.begin(), f.end(), face(lo).begin())) return lo;
  return std::nullopt;
}

// ---------------------------------------------------------------- WeightedGraph

void WeightedGraph::canonicalize() {
  const std::size_t m = u.size();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return u[a] != u[b] ? u[a] < u[b] : v[a] < v[b];
  });
  const bool has_exact = exact.size() == m && m > 0;
  std::vector<std::uint32_t> nu, nv;
  std::vector<double> nw;
  std::vector<Rational> ne;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t e = perm[k];
    if (!nu.empty() && nu.back() == u[e] && nv.back() == v[e]) {
      nw.back() += w[e];
      if (has_exact) ne.back() += exact[e];
      continue;
    }
    nu.push_back(u[e]);
    nv.push_back(v[e]);
    nw.push_back(w[e]);
    if (has_exact) ne.push_back(exact[e]);
  }
  u = std::move(nu);
  v = std::move(nv);
  w = std::move(nw);
  exact = std::move(ne);
}

std::vector<std::uint32_t> WeightedGraph::isolated() const {
  std::vector<bool> touched(n, false);
  for (std::size_t e = 0; e < u.size(); ++e)
    if (w[e] > 0) touched[u[e]] = touched[v[e]] = true;
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!touched[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

namespace {

struct Csr {
  std::vector<std::uint64_t> off;
  std::vector<std::uint32_t> col;
  std::vector<double> val;
};

Csr symmetric_csr(const WeightedGraph& G) {
  Csr c;
  c.off.assign(G.n + 1, 0);
  for (std::size_t e = 0; e < G.u.size(); ++e) {
    ++c.off[G.u[e] + 1];
    if (G.u[e] != G.v[e]) ++c.off[G.v[e] + 1];
  }
  for (std::size_t i = 0; i < G.n; ++i) c.off[i + 1] += c.off[i];
  c.col.resize(c.off[G.n]);
  c.val.resize(c.off[G.n]);
  std::vector<std::uint64_t> pos(c.off.begin(), c.off.end() - 1);
  for (std::size_t e = 0; e < G.u.size(); ++e) {
    c.col[pos[G.u[e]]] = G.v[e];
    c.val[pos[G.u[e]]++] = G.w[e];
    if (G.u[e] != G.v[e]) {
      c.col[pos[G.v[e]]] = G.u[e];
      c.val[pos[G.v[e]]++] = G.w[e];
    }
  }
  return c;
}

bool csr_connected(const Csr& c, std::size_t n) {
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    for (auto k = c.off[x]; k < c.off[x + 1]; ++k) {
      if (c.val[k] <= 0 || seen[c.col[k]]) continue;
      seen[c.col[k]] = true;
      ++reached;
      stack.push_back(c.col[k]);
    }
  }
  return reached == n;
}

}  // namespace

bool WeightedGraph::connected() const { return csr_connected(symmetric_csr(*this), n); }

SpectralResult graph_lambda(const WeightedGraph& G, const SpectralOptions& opt) {
  SpectralResult r;
  r.states = G.n;
  if (G.n <= 1) return r;
  Csr c = symmetric_csr(G);
  std::vector<double> deg(G.n, 0.0);
  for (std::size_t i = 0; i < G.n; ++i)
    for (auto k = c.off[i]; k < c.off[i + 1]; ++k) deg[i] += c.val[k];
  for (double d : deg)
    if (d <= 0) {
      r.disconnected = true;
      r.lambda = 1;
      return r;
    }
  if (!csr_connected(c, G.n)) {
    r.disconnected = true;
    r.lambda = r.lambda2 = 1;
    return r;
  }
  std::vector<double> isd(G.n);
  double tot = 0;
  for (std::size_t i = 0; i < G.n; ++i) {
    isd[i] = 1 / std::sqrt(deg[i]);
    tot += deg[i];
  }
  for (std::size_t i = 0; i < G.n; ++i)
    for (auto k = c.off[i]; k < c.off[i + 1]; ++k) c.val[k] *= isd[i] * isd[c.col[k]];
  SymmetricOperator op;
  op.n = G.n;
  op.top.resize(G.n);
  for (std::size_t i = 0; i < G.n; ++i) op.top[i] = std::sqrt(deg[i] / tot);
  op.apply = [&c, n = G.n](const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (auto k = c.off[i]; k < c.off[i + 1]; ++k) s += c.val[k] * x[c.col[k]];
      y[i] = s;
    }
  };
  return operator_lambda(op, opt);
}

// ---------------------------------------------------------------- GradedComplex

GradedComplex::GradedComplex(ComplexKind kind, std::size_t ambient_bits) : kind_(kind), ambient_(ambient_bits) {
  Level bottom;
  bottom.width = 0;
  bottom.count = 1;
  bottom.weights = {Rational(1)};
  bottom.child_off = {0, 0};
  levels_.push_back(std::move(bottom));
}

BigInt GradedComplex::total_faces() const {
  BigInt t = 0;
  for (const auto& l : levels_) t += BigInt(static_cast<unsigned long>(l.count));
  return t;
}

std::vector<std::uint64_t> GradedComplex::span_f2(std::span<const std::uint64_t> basis) {
  std::vector<std::uint64_t> out;
  const std::size_t d = basis.size();
  out.reserve((std::size_t(1) << d) - 1);
  for (std::uint64_t c = 1; c < (std::uint64_t(1) << d); ++c) {
    std::uint64_t x = 0;
    for (std::size_t j = 0; j < d; ++j)
      if ((c >> j) & 1u) x ^= basis[j];
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> f2_basis_of(std::span<const std::uint64_t> elems) {
  std::vector<std::uint64_t> basis, reduced;
  for (auto e : elems) {
    std::uint64_t x = e;
    for (auto r : reduced) x = std::min(x, x ^ r);
    if (!x) continue;
    basis.push_back(e);
    reduced.push_back(x);
    std::sort(reduced.rbegin(), reduced.rend());
  }
  return basis;
}

void GradedComplex::push_level(std::size_t width, std::vector<std::uint64_t> labels,
                               const std::vector<std::vector<std::uint32_t>>* explicit_children) {
  const std::size_t n = width ? labels.size() / width : 0;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto lt = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(labels.begin() + a * width, labels.begin() + (a + 1) * width,
                                        labels.begin() + b * width, labels.begin() + (b + 1) * width);
  };
  std::sort(perm.begin(), perm.end(), lt);
  Level lvl;
  lvl.width = width;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t a = perm[k];
    if (k && !lt(perm[k - 1], a)) {
      if (explicit_children) throw std::invalid_argument("duplicate face with explicit children");
      continue;
    }
    lvl.labels.insert(lvl.labels.end(), labels.begin() + a * width, labels.begin() + (a + 1) * width);
    if (explicit_children) {
      const auto& ch = (*explicit_children)[a];
      lvl.child.insert(lvl.child.end(), ch.begin(), ch.end());
      lvl.child_off.push_back(lvl.child.size());
    }
  }
  lvl.count = width ? lvl.labels.size() / width : 0;
  if (!explicit_children) {
    const int rank = top_rank() + 1;
    const Level& below = levels_.back();
    if (rank == 0) {
      lvl.child.assign(lvl.count, 0);
      for (std::size_t f = 0; f < lvl.count; ++f) lvl.child_off.push_back(f + 1);
    } else if (kind_ == ComplexKind::Simplicial) {
      std::vector<std::uint64_t> sub(width - 1);
      for (std::size_t f = 0; f < lvl.count; ++f) {
        const auto face = lvl.face(f);
        for (std::size_t drop = 0; drop < width; ++drop) {
          std::size_t t = 0;
          for (std::size_t j = 0; j < width; ++j)
            if (j != drop) sub[t++] = face[j];
          const auto c = below.find(sub);
          if (!c) throw std::invalid_argument("simplicial level is not downward closed");
          lvl.child.push_back(static_cast<std::uint32_t>(*c));
        }
        lvl.child_off.push_back(lvl.child.size());
      }
    } else if (kind_ == ComplexKind::Grassmannian) {
      const std::size_t d = static_cast<std::size_t>(rank) + 1;
      std::vector<std::uint64_t> hyper;
      for (std::size_t f = 0; f < lvl.count; ++f) {
        const auto basis = f2_basis_of(lvl.face(f));
        if (basis.size() != d) throw std::invalid_argument("grassmannian face has wrong dimension");
        for (std::uint64_t fun = 1; fun < (std::uint64_t(1) << d); ++fun) {
          hyper.clear();
          for (std::uint64_t c = 1; c < (std::uint64_t(1) << d); ++c) {
            if (std::popcount(c & fun) & 1) continue;
            std::uint64_t x = 0;
            for (std::size_t j = 0; j < d; ++j)
              if ((c >> j) & 1u) x ^= basis[j];
            hyper.push_back(x);
          }
          std::sort(hyper.begin(), hyper.end());
          const auto c = below.find(hyper);
          if (!c) throw std::invalid_argument("grassmannian level is not downward closed");
          lvl.child.push_back(static_cast<std::uint32_t>(*c));
        }
        std::sort(lvl.child.begin() + lvl.child_off.back(), lvl.child.end());
        lvl.child_off.push_back(lvl.child.size());
      }
    } else {
      throw std::invalid_argument("children must be given explicitly for this complex kind");
    }
  }
  levels_.push_back(std::move(lvl));
  parents_.clear();
}

void GradedComplex::push_level_raw(Level lvl) {
  if (lvl.child_off.size() != lvl.count + 1) throw std::invalid_argument("child CSR offsets mismatch");
  levels_.push_back(std::move(lvl));
  parents_.clear();
}

const ParentIndex& GradedComplex::parents(int i) const {
  if (i < -1 || i >= top_rank()) throw std::out_of_range("parents: rank out of range");
  if (parents_.size() != levels_.size()) parents_.assign(levels_.size(), std::nullopt);
  auto& slot = parents_[i + 1];
  if (!slot) {
    const Level& up = level(i + 1);
    ParentIndex p;
    p.off.assign(count(i) + 1, 0);
    for (auto c : up.child) ++p.off[c + 1];
    for (std::size_t k = 0; k < count(i); ++k) p.off[k + 1] += p.off[k];
    p.idx.resize(up.child.size());
    std::vector<std::uint64_t> pos(p.off.begin(), p.off.end() - 1);
    for (std::size_t f = 0; f < up.count; ++f)
      for (auto c : up.children(f)) p.idx[pos[c]++] = static_cast<std::uint32_t>(f);
    slot = std::move(p);
  }
  return *slot;
}

GradedComplex GradedComplex::simplicial_from_top(const std::vector<std::vector<std::uint64_t>>& top) {
  GradedComplex X(ComplexKind::Simplicial);
  if (top.empty()) return X;
  const std::size_t d = top[0].size();
  for (const auto& t : top)
    if (t.size() != d) throw std::invalid_argument("simplicial_from_top: faces of mixed size (not pure)");
  for (std::size_t w = 1; w <= d; ++w) {
    std::vector<std::uint64_t> labels;
    for (auto t : top) {
      std::sort(t.begin(), t.end());
      if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw std::invalid_argument("repeated vertex in face");
      std::vector<bool> pick(d, false);
      std::fill(pick.begin(), pick.begin() + w, true);
      do {
        for (std::size_t j = 0; j < d; ++j)
          if (pick[j]) labels.push_back(t[j]);
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    X.push_level(w, std::move(labels));
  }
  return X;
}

GradedComplex GradedComplex::grassmannian_from_top(std::size_t k, const std::vector<std::vector<std::uint64_t>>& tops) {
  GradedComplex X(ComplexKind::Grassmannian, k);
  if (tops.empty()) return X;
  const std::size_t d = tops[0].size();
  std::vector<std::vector<std::uint64_t>> elems;
  for (const auto& t : tops) {
    if (t.size() != d) throw std::invalid_argument("grassmannian_from_top: faces of mixed dimension (not pure)");
    auto e = span_f2(t);
    if (std::adjacent_find(e.begin(), e.end()) != e.end() || e.front() == 0)
      throw std::invalid_argument("grassmannian_from_top: dependent spanning set");
    elems.push_back(std::move(e));
  }
  for (std::size_t dim = 1; dim <= d; ++dim) {
    std::vector<std::uint64_t> labels;
    for (const auto& e : elems) {
      // every dim-subspace is spanned by some dim-subset of the elements
      std::vector<bool> pick(e.size(), false);
      std::fill(pick.begin(), pick.begin() + dim, true);
      std::vector<std::uint64_t> sub;
      do {
        sub.clear();
        for (std::size_t j = 0; j < e.size(); ++j)
          if (pick[j]) sub.push_back(e[j]);
        auto s = span_f2(sub);
        if (std::adjacent_find(s.begin(), s.end()) != s.end() || s.front() == 0) continue;
        labels.insert(labels.end(), s.begin(), s.end());
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    X.push_level((std::size_t(1) << dim) - 1, std::move(labels));
  }
  return X;
}

// ---------------------------------------------------------------- weights

void standard_weights_from_top(GradedComplex& X, std::vector<Rational> top) {
  const int r = X.top_rank();
  if (r < -1) return;
  if (top.size() != X.count(r)) throw std::invalid_argument("top distribution has the wrong size");
  Rational sum = 0;
  for (const auto& w : top) {
    if (w < 0) throw std::invalid_argument("negative top weight");
    sum += w;
  }
  if (sum != 1) throw std::invalid_argument("top weights do not sum to 1");
  for (int i = r - 1; i >= -1; --i) {
    const auto& P = X.parents(i);
    for (std::size_t f = 0; f < X.count(i); ++f)
      if (P.of(f).empty())
        throw std::invalid_argument("complex is not pure: face " + std::to_string(f) + " of rank " +
                                    std::to_string(i) + " has no upper cover");
  }
  X.level(r).weights = std::move(top);
  for (int i = r; i >= 0; --i) {
    const Level& L = X.level(i);
    std::vector<Rational> below(X.count(i - 1), Rational(0));
    for (std::size_t f = 0; f < L.count; ++f) {
      const auto ch = L.children(f);
      if (ch.empty()) throw std::invalid_argument("face without children");
      const Rational share = L.weights[f] / Rational(static_cast<unsigned long>(ch.size()));
      for (auto c : ch) below[c] += share;
    }
    for (auto& w : below) w.canonicalize();
    X.level(i - 1).weights = std::move(below);
  }
}

void uniform_top_weights(GradedComplex& X) {
  const int r = X.top_rank();
  const std::size_t n = X.count(r);
  std::vector<Rational> top(n, Rational(1, static_cast<unsigned long>(n)));
  standard_weights_from_top(X, std::move(top));
}

StandardnessReport check_standardness(const GradedComplex& X, double tol) {
  StandardnessReport rep;
  const int r = X.top_rank();
  for (int i = -1; i <= r; ++i) {
    const Level& L = X.level(i);
    if (L.weights.size() != L.count) {
      rep.sums_ok = false;
      rep.detail = "rank " + std::to_string(i) + " has no weights";
      return rep;
    }
    Rational total = 0;
    for (const auto& w : L.weights) total += w;
    const double s = total.get_d();
    rep.max_error = std::max(rep.max_error, std::abs(s - 1));
    if (std::abs(s - 1) > tol) {
      rep.sums_ok = false;
      if (rep.detail.empty()) rep.detail = "weights at rank " + std::to_string(i) + " sum to " + std::to_string(s);
    }
  }
  for (int i = r; i >= 0; --i) {
    const Level& L = X.level(i);
    std::vector<Rational> below(X.count(i - 1), Rational(0));
    for (std::size_t f = 0; f < L.count; ++f) {
      const auto ch = L.children(f);
      for (auto c : ch) below[c] += L.weights[f] / Rational(static_cast<unsigned long>(ch.size()));
    }
    const Level& B = X.level(i - 1);
    for (std::size_t f = 0; f < B.count; ++f) {
      below[f].canonicalize();
      const double err = std::abs(Rational(below[f] - B.weights[f]).get_d());
      rep.max_error = std::max(rep.max_error, err);
      if (err > tol) {
        rep.pushdown_ok = false;
        if (rep.detail.empty())
          rep.detail = "pushdown mismatch at rank " + std::to_string(i - 1) + " face " + std::to_string(f);
      }
    }
    if (i - 1 >= -1 && i - 1 < r) {
      const auto& P = X.parents(i - 1);
      for (std::size_t f = 0; f < B.count; ++f)
        if (P.of(f).empty()) {
          rep.pure = false;
          if (rep.detail.empty()) rep.detail = "face " + std::to_string(f) + " of rank " + std::to_string(i - 1) + " is maximal";
        }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- links and skeletons

GradedComplex link(const GradedComplex& X, int i, std::size_t idx) {
  if (i < -1 || i > X.top_rank() || idx >= X.count(i)) throw std::out_of_range("link: not a face");
  const int r = X.top_rank();
  std::vector<std::vector<std::uint32_t>> up{{static_cast<std::uint32_t>(idx)}};
  for (int j = i; j < r; ++j) {
    const auto& P = X.parents(j);
    std::vector<std::uint32_t> next;
    for (auto f : up.back())
      for (auto p : P.of(f)) next.push_back(p);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) break;
    up.push_back(std::move(next));
  }
  auto renorm = [&](int rank, const std::vector<std::uint32_t>& faces) {
    std::vector<Rational> w;
    Rational tot = 0;
    for (auto f : faces) tot += X.level(rank).weights.at(f);
    for (auto f : faces) w.push_back(tot == 0 ? Rational(0) : Rational(X.level(rank).weights.at(f) / tot));
    return w;
  };
  if (X.kind() == ComplexKind::Simplicial) {
    GradedComplex L(ComplexKind::Simplicial, X.ambient());
    const auto base = X.level(i).face(idx);
    for (std::size_t j = 1; j < up.size(); ++j) {
      const int rank = i + static_cast<int>(j);
      std::vector<std::uint64_t> labels;
      for (auto f : up[j]) {
        const auto face = X.level(rank).face(f);
        for (auto v : face)
          if (!std::binary_search(base.begin(), base.end(), v)) labels.push_back(v);
      }
      L.push_level(j, std::move(labels));
    }
    // push_level sorted the faces; map weights back through lookups
    for (std::size_t j = 1; j < up.size(); ++j) {
      const int rank = i + static_cast<int>(j);
      const auto w = renorm(rank, up[j]);
      auto& lvl = L.level(static_cast<int>(j) - 1);
      lvl.weights.assign(lvl.count, Rational(0));
      std::vector<std::uint64_t> rest;
      for (std::size_t t = 0; t < up[j].size(); ++t) {
        rest.clear();
        for (auto v : X.level(rank).face(up[j][t]))
          if (!std::binary_search(base.begin(), base.end(), v)) rest.push_back(v);
        lvl.weights[*lvl.find(rest)] = w[t];
      }
    }
    return L;
  }
  GradedComplex L(ComplexKind::Generic, X.ambient());
  for (std::size_t j = 1; j < up.size(); ++j) {
    const int rank = i + static_cast<int>(j);
    Level lvl;
    lvl.width = 1;
    lvl.count = up[j].size();
    lvl.labels.assign(up[j].begin(), up[j].end());
    for (auto f : up[j]) {
      for (auto c : X.level(rank).children(f)) {
        const auto& prev = up[j - 1];
        auto it = std::lower_bound(prev.begin(), prev.end(), c);
        if (it != prev.end() && *it == c) lvl.child.push_back(static_cast<std::uint32_t>(it - prev.begin()));
      }
      lvl.child_off.push_back(lvl.child.size());
    }
    lvl.weights = renorm(rank, up[j]);
    L.push_level_raw(std::move(lvl));
  }
  L.level(-1).weights = {Rational(1)};
  return L;
}

WeightedGraph one_skeleton(const GradedComplex& X) {
  WeightedGraph G;
  if (X.top_rank() < 0) return G;
  G.n = X.count(0);
  if (X.top_rank() < 1) return G;
  const Level& E = X.level(1);
  const bool keep_exact = E.count <= 200000 && E.weights.size() == E.count;
  for (std::size_t f = 0; f < E.count; ++f) {
    const auto ch = E.children(f);
    const double m = E.weights.empty() ? 1.0 : E.weights[f].get_d();
    for (std::size_t a = 0; a < ch.size(); ++a)
      for (std::size_t b = a + 1; b < ch.size(); ++b) {
        G.add(ch[a], ch[b], m);
        if (keep_exact) G.exact.push_back(E.weights[f]);
      }
  }
  G.canonicalize();
  return G;
}

WeightedGraph link_one_skeleton(const GradedComplex& X, int i, std::size_t idx) {
  if (i == -1) return one_skeleton(X);
  WeightedGraph G;
  if (i + 1 > X.top_rank()) return G;
  const auto verts = X.parents(i).of(idx);
  std::vector<std::uint32_t> V(verts.begin(), verts.end());
  std::sort(V.begin(), V.end());
  G.n = V.size();
  if (i + 2 > X.top_rank()) return G;
  std::vector<std::uint32_t> Z;
  const auto& P = X.parents(i + 1);
  for (auto v : V)
    for (auto z : P.of(v)) Z.push_back(z);
  std::sort(Z.begin(), Z.end());
  Z.erase(std::unique(Z.begin(), Z.end()), Z.end());
  const Level& top = X.level(i + 2);
  std::vector<std::uint32_t> local;
  for (auto z : Z) {
    local.clear();
    for (auto c : top.children(z)) {
      auto it = std::lower_bound(V.begin(), V.end(), c);
      if (it != V.end() && *it == c) local.push_back(static_cast<std::uint32_t>(it - V.begin()));
    }
    const double m = top.weights.empty() ? 1.0 : top.weights[z].get_d();
    for (std::size_t a = 0; a < local.size(); ++a)
      for (std::size_t b = a + 1; b < local.size(); ++b) G.add(local[a], local[b], m);
  }
  G.canonicalize();
  return G;
}

LocalExpansion local_expansion(const GradedComplex& X, int i, std::size_t exhaustive_limit, std::size_t samples,
                               std::uint64_t seed) {
  if (i < -1 || i > X.top_rank() - 2) throw std::out_of_range("local_expansion: rank out of range");
  const std::size_t n = X.count(i);
  if (n == 0) throw std::invalid_argument("local_expansion: empty level");
  LocalExpansion out;
  std::vector<std::size_t> faces(n);
  std::iota(faces.begin(), faces.end(), 0);
  if (n > exhaustive_limit) {
    out.sampled = true;
    std::mt19937_64 rng(seed);
    std::shuffle(faces.begin(), faces.end(), rng);
    faces.resize(std::min(samples, n));
    std::sort(faces.begin(), faces.end());
  }
  if (i >= 0) {
    X.parents(i);
    X.parents(i + 1);
  } else if (X.top_rank() >= 1) {
    X.parents(0);
  }
  std::vector<SpectralResult> res(faces.size());
  parallel_for(faces.size(), [&](std::size_t t) { res[t] = graph_lambda(link_one_skeleton(X, i, faces[t])); });
  for (std::size_t t = 0; t < faces.size(); ++t) {
    if (res[t].disconnected) out.disconnected.push_back(faces[t]);
    if (res[t].lambda > out.lambda || t == 0) {
      out.lambda = res[t].lambda;
      out.argmax = faces[t];
    }
  }
  out.faces_checked = faces.size();
  return out;
}

// ---------------------------------------------------------------- basisification

BigInt unordered_bases_f2(std::size_t d) {
  BigInt ordered = 1, fact = 1;
  for (std::size_t j = 0; j < d; ++j) {
    ordered *= big_pow(2, d) - big_pow(2, j);
    fact *= BigInt(static_cast<unsigned long>(j + 1));
  }
  return ordered / fact;
}

GradedComplex basisify(const GradedComplex& X) {
  if (X.kind() != ComplexKind::Grassmannian) throw std::invalid_argument("basisify needs a grassmannian complex");
  GradedComplex B(ComplexKind::Simplicial, X.ambient());
  const int r = X.top_rank();
  for (int i = 0; i <= r; ++i) {
    const std::size_t d = static_cast<std::size_t>(i) + 1;
    const Level& L = X.level(i);
    std::vector<std::uint64_t> labels;
    std::vector<std::uint64_t> sub;
    for (std::size_t f = 0; f < L.count; ++f) {
      const auto e = L.face(f);
      std::vector<bool> pick(e.size(), false);
      std::fill(pick.begin(), pick.begin() + d, true);
      do {
        sub.clear();
        for (std::size_t j = 0; j < e.size(); ++j)
          if (pick[j]) sub.push_back(e[j]);
        if (f2_basis_of(sub).size() == d) labels.insert(labels.end(), sub.begin(), sub.end());
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    B.push_level(d, std::move(labels));
  }
  for (int i = 0; i <= r; ++i) {
    const Level& L = X.level(i);
    Level& BL = B.level(i);
    if (L.weights.size() != L.count) continue;
    const Rational N(unordered_bases_f2(static_cast<std::size_t>(i) + 1));
    BL.weights.resize(BL.count);
    for (std::size_t f = 0; f < BL.count; ++f) {
      const auto span = GradedComplex::span_f2(BL.face(f));
      BL.weights[f] = L.weights[*L.find(span)] / N;
    }
  }
  return B;
}

// ---------------------------------------------------------------- trickle-down

bool TrickleReport::ok() const {
  for (const auto& r : rows)
    if (!r.skipped && !r.pass) return false;
  return true;
}

TrickleReport trickle_check(const GradedComplex& X, double q, double tol) {
  TrickleReport rep;
  const int r = X.top_rank();
  for (int i = -1; i <= r - 2; ++i)
    rep.lambdas.push_back(local_expansion(X, i, std::numeric_limits<std::size_t>::max()).lambda);
  const bool grass = X.kind() == ComplexKind::Grassmannian;
  for (int i = -1; i <= r - 3; ++i) {
    TrickleRow row{};
    row.i = i;
    row.lhs = rep.lambdas[i + 1];
    const double l = rep.lambdas[i + 2];
    row.skipped = l >= 1;
    row.rhs = row.skipped ? 0 : (grass ? l / (q * (1 - l)) : l / (1 - l));
    row.pass = row.skipped || row.lhs <= row.rhs + tol;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------- export

nlohmann::json complex_to_json(const GradedComplex& X) {
  nlohmann::json j;
  j["kind"] = to_string(X.kind());
  j["ambient"] = X.ambient();
  nlohmann::json ranks = nlohmann::json::object(), weights = nlohmann::json::object();
  for (int i = -1; i <= X.top_rank(); ++i) {
    const Level& L = X.level(i);
    nlohmann::json faces = nlohmann::json::array();
    for (std::size_t f = 0; f < L.count; ++f) {
      const auto face = L.face(f);
      faces.push_back(std::vector<std::uint64_t>(face.begin(), face.end()));
    }
    ranks[std::to_string(i)] = std::move(faces);
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : L.weights) w.push_back(to_string(x));
    weights[std::to_string(i)] = std::move(w);
  }
  j["ranks"] = std::move(ranks);
  j["weights"] = std::move(weights);
  return j;
}

GradedComplex complex_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  ComplexKind k;
  if (kind == "simplicial")
    k = ComplexKind::Simplicial;
  else if (kind == "grassmannian")
    k = ComplexKind::Grassmannian;
  else
    throw std::invalid_argument("complex_from_json: only simplicial and grassmannian complexes can be read back");
  GradedComplex X(k, j.at("ambient").get<std::size_t>());
  const auto& ranks = j.at("ranks");
  for (int i = 0; ranks.contains(std::to_string(i)); ++i) {
    const auto& faces = ranks.at(std::to_string(i));
    std::vector<std::uint64_t> labels;
    std::size_t width = k == ComplexKind::Simplicial ? std::size_t(i) + 1 : (std::size_t(2) << i) - 1;
    for (const auto& f : faces) {
      if (f.size() != width) throw std::invalid_argument("complex_from_json: face of wrong width at rank " + std::to_string(i));
      for (const auto& x : f) labels.push_back(x.get<std::uint64_t>());
    }
    X.push_level(width, std::move(labels));
  }
  if (j.contains("weights"))
    for (int i = -1; i <= X.top_rank(); ++i) {
      const auto key = std::to_string(i);
      if (!j["weights"].contains(key)) continue;
      const auto& w = j["weights"][key];
      if (w.empty()) continue;
      if (w.size() != X.count(i)) throw std::invalid_argument("complex_from_json: weight count mismatch");
      auto& L = X.level(i);
      L.weights.clear();
      for (const auto& x : w) L.weights.emplace_back(x.get<std::string>());
      for (auto& x : L.weights) x.canonicalize();
    }
  return X;
}

std::string graph_to_dot(const WeightedGraph& G) {
  std::ostringstream os;
  os.precision(17);
  os << "graph G {\n";
  for (std::size_t i = 0; i < G.n; ++i) os << "  " << i << ";\n";
  for (std::size_t e = 0; e < G.edges(); ++e) os << "  " << G.u[e] << " -- " << G.v[e] << " [weight=" << G.w[e] << "];\n";
  os << "}\n";
  return os.str();
}

std::string graph_to_csv(const WeightedGraph& G) {
  std::ostringstream os;
  os.precision(17);
  os << "u,v,weight\n";
  for (std::size_t e = 0; e < G.edges(); ++e) os << G.u[e] << "," << G.v[e] << "," << G.w[e] << "\n";
  return os.str();
}

}  // namespace hdx
