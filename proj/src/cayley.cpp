#include "hdx/cayley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hdx/parallel.hpp"

namespace hdx {

namespace {

std::string hex_face(std::span<const std::uint64_t> f) {
  std::ostringstream os;
  os << "{";
  for (std::size_t j = 0; j < f.size(); ++j) os << (j ? "," : "") << std::hex << f[j];
  os << "}";
  return os.str();
}

Rational weight_or_zero(const Level& L, std::size_t f) {
  return L.weights.size() == L.count ? L.weights[f] : Rational(0);
}

// Realized faces of one width, each tagged with the generator face it came from.
struct Collected {
  std::size_t width = 0;
  std::vector<std::uint64_t> labels;
  std::vector<std::uint32_t> src;

  void add(const std::vector<std::uint64_t>& face, std::size_t s) {
    labels.insert(labels.end(), face.begin(), face.end());
    src.push_back(static_cast<std::uint32_t>(s));
  }

  // Sorted unique faces; weight = factor * sum of m(src) over the realizations.
  std::pair<std::vector<std::uint64_t>, std::vector<Rational>> merge(const Level& from, const Rational& factor) const {
    const std::size_t n = src.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    auto key = [&](std::uint32_t a) { return std::span<const std::uint64_t>(labels.data() + std::size_t(a) * width, width); };
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      auto x = key(a), y = key(b);
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    });
    std::vector<std::uint64_t> out;
    std::vector<Rational> w;
    for (std::size_t t = 0; t < n; ++t) {
      auto f = key(order[t]);
      const Rational m = weight_or_zero(from, src[order[t]]);
      if (t > 0 && std::equal(f.begin(), f.end(), key(order[t - 1]).begin())) {
        w.back() += m;
        continue;
      }
      out.insert(out.end(), f.begin(), f.end());
      w.push_back(m);
    }
    for (auto& x : w) x *= factor;
    return {std::move(out), std::move(w)};
  }
};

void push_with_weights(GradedComplex& C, std::size_t width, std::vector<std::uint64_t> labels,
                       const std::vector<Rational>& w, bool renormalize) {
  const std::vector<std::uint64_t> keep = labels;
  C.push_level(width, std::move(labels));
  Level& L = C.level(C.top_rank());
  if (L.count != w.size()) throw std::logic_error("cayley: merged faces not unique");
  Rational tot = 0;
  for (const auto& x : w) tot += x;
  L.weights.assign(L.count, Rational(0));
  for (std::size_t t = 0; t < w.size(); ++t) {
    auto f = std::span<const std::uint64_t>(keep.data() + t * width, width);
    L.weights[*L.find(f)] = renormalize && tot != 0 ? Rational(w[t] / tot) : w[t];
  }
}

void require_simplicial(const GradedComplex& S, std::size_t k) {
  if (S.kind() != ComplexKind::Simplicial) throw std::invalid_argument("cayley: S must be simplicial");
  if (k > 63) throw std::invalid_argument("cayley: k must be at most 63");
  if (S.top_rank() < 0) return;
  const Level& V = S.level(0);
  for (std::size_t f = 0; f < V.count; ++f) {
    const auto x = V.face(f)[0];
    if (x == 0 || (k < 64 && (x >> k) != 0)) throw std::invalid_argument("cayley: vertex outside F2^k minus 0");
  }
}

}  // namespace

SymmetryReport check_symmetry(const GradedComplex& S, std::size_t k) {
  require_simplicial(S, k);
  SymmetryReport rep;
  std::vector<std::uint64_t> t;
  for (int i = 0; i <= S.top_rank(); ++i) {
    const Level& L = S.level(i);
    for (std::size_t f = 0; f < L.count; ++f) {
      const auto s = L.face(f);
      for (const auto g : s) {
        ++rep.faces_checked;
        t.clear();
        t.push_back(g);
        for (const auto a : s)
          if (a != g) t.push_back(g ^ a);
        std::sort(t.begin(), t.end());
        const auto hit = L.find(t);
        if (!hit || weight_or_zero(L, *hit) != weight_or_zero(L, f)) {
          rep.ok = false;
          std::ostringstream os;
          os << "s=" << hex_face(s) << " g=" << std::hex << g << (hit ? ": weight differs" : ": translate missing");
          rep.first_violation = os.str();
          return rep;
        }
      }
    }
  }
  return rep;
}

GradedComplex cayley_vertex_link(const CayleySpec& spec, std::uint64_t v) {
  const GradedComplex& S = *spec.S;
  require_simplicial(S, spec.k);
  GradedComplex L(ComplexKind::Simplicial, spec.k);
  std::vector<std::uint64_t> face;
  for (int j = 0; j <= S.top_rank(); ++j) {
    const Level& Sj = S.level(j);
    Collected c;
    c.width = static_cast<std::size_t>(j) + 1;
    c.labels.reserve(Sj.count * (c.width + 1) * c.width);
    for (std::size_t f = 0; f < Sj.count; ++f) {
      const auto s = Sj.face(f);
      // bases g with v in g + (s u {0}): g = v + t for t in s u {0}
      for (std::size_t ti = 0; ti <= s.size(); ++ti) {
        const std::uint64_t g = ti == s.size() ? v : v ^ s[ti];
        face.clear();
        if (g != v) face.push_back(g);
        for (const auto a : s)
          if ((g ^ a) != v) face.push_back(g ^ a);
        std::sort(face.begin(), face.end());
        c.add(face, f);
      }
    }
    auto [labels, w] = c.merge(Sj, Rational(1));
    push_with_weights(L, c.width, std::move(labels), w, true);
  }
  L.level(-1).weights.assign(1, Rational(1));
  return L;
}

LinkBijectionReport check_link_bijection(const CayleySpec& spec, std::uint64_t v, const GradedComplex& link) {
  const GradedComplex& S = *spec.S;
  LinkBijectionReport rep;
  if (link.top_rank() != S.top_rank()) {
    rep.counts_equal = false;
    rep.first_violation = "rank mismatch";
    return rep;
  }
  std::vector<std::uint64_t> img;
  for (int j = 0; j <= S.top_rank(); ++j) {
    const Level& A = link.level(j);
    const Level& B = S.level(j);
    if (A.count != B.count) {
      rep.counts_equal = false;
      if (rep.first_violation.empty()) rep.first_violation = "rank " + std::to_string(j) + ": count differs";
    }
    std::vector<char> hit(B.count, 0);
    for (std::size_t f = 0; f < A.count; ++f) {
      img.clear();
      for (const auto y : A.face(f)) img.push_back(v ^ y);
      std::sort(img.begin(), img.end());
      const auto idx = B.find(img);
      if (!idx || hit[*idx]) {
        rep.bijective = false;
        if (rep.first_violation.empty()) rep.first_violation = "face " + hex_face(A.face(f)) + " has no distinct image";
        continue;
      }
      hit[*idx] = 1;
      if (weight_or_zero(A, f) != weight_or_zero(B, *idx)) {
        rep.weights_equal = false;
        if (rep.first_violation.empty()) rep.first_violation = "face " + hex_face(A.face(f)) + ": weight differs";
      }
    }
  }
  return rep;
}

GradedComplex cayley_complex(const CayleySpec& spec) {
  const GradedComplex& S = *spec.S;
  require_simplicial(S, spec.k);
  if (spec.k > 12) throw std::invalid_argument("cayley_complex: k > 12, use the lazy link instead");
  const std::uint64_t N = std::uint64_t(1) << spec.k;
  const Rational inv(1, N);
  GradedComplex C(ComplexKind::Simplicial, spec.k);
  {
    std::vector<std::uint64_t> verts(N);
    std::iota(verts.begin(), verts.end(), std::uint64_t(0));
    push_with_weights(C, 1, std::move(verts), std::vector<Rational>(N, inv), false);
  }
  std::vector<std::uint64_t> face;
  for (int j = 0; j <= S.top_rank(); ++j) {
    const Level& Sj = S.level(j);
    Collected c;
    c.width = static_cast<std::size_t>(j) + 2;
    for (std::uint64_t g = 0; g < N; ++g)
      for (std::size_t f = 0; f < Sj.count; ++f) {
        face.assign(1, g);
        for (const auto a : Sj.face(f)) face.push_back(g ^ a);
        std::sort(face.begin(), face.end());
        c.add(face, f);
      }
    auto [labels, w] = c.merge(Sj, inv);
    push_with_weights(C, c.width, std::move(labels), w, false);
  }
  C.level(-1).weights.assign(1, Rational(1));
  return C;
}

void walsh_hadamard(std::vector<double>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1))) throw std::invalid_argument("walsh_hadamard: length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
}

CharacterSweep cayley_graph_lambda(std::size_t k, const std::vector<std::uint64_t>& generators,
                                   const std::vector<double>& weights) {
  if (k > 24) throw std::invalid_argument("cayley_graph_lambda: k > 24 needs a sampled estimate");
  if (!weights.empty() && weights.size() != generators.size())
    throw std::invalid_argument("cayley_graph_lambda: weight count mismatch");
  if (generators.empty()) throw std::invalid_argument("cayley_graph_lambda: no generators");
  const std::size_t N = std::size_t(1) << k;
  std::vector<double> f(N, 0.0);
  for (std::size_t t = 0; t < generators.size(); ++t) {
    const auto g = generators[t];
    if (g == 0 || (g >> k) != 0) throw std::invalid_argument("cayley_graph_lambda: generator outside F2^k minus 0");
    f[g] += weights.empty() ? 1.0 : weights[t];
  }
  walsh_hadamard(f);
  CharacterSweep out;
  out.second = -1;
  out.minimum = 1;
  const double tot = f[0];
  for (std::size_t u = 1; u < N; ++u) {
    const double x = f[u] / tot;
    out.second = std::max(out.second, x);
    out.minimum = std::min(out.minimum, x);
    if (std::abs(x) > out.lambda) {
      out.lambda = std::abs(x);
      out.argmax = u;
    }
  }
  if (N == 1) out.second = out.minimum = 0;
  return out;
}

CharacterSweep character_sweep_direct(std::size_t k, const std::vector<std::uint64_t>& generators) {
  if (k > 24) throw std::invalid_argument("character_sweep_direct: k > 24");
  const std::size_t N = std::size_t(1) << k;
  const auto M = static_cast<std::int64_t>(generators.size());
  std::vector<std::int64_t> sums(N, 0);
  parallel_for(N, [&](std::size_t u) {
    std::int64_t odd = 0;
    for (const auto g : generators) odd += std::popcount(u & g) & 1;
    sums[u] = M - 2 * odd;
  }, 256);
  CharacterSweep out;
  out.second = -1;
  out.minimum = 1;
  for (std::size_t u = 1; u < N; ++u) {
    const double x = static_cast<double>(sums[u]) / static_cast<double>(M);
    out.second = std::max(out.second, x);
    out.minimum = std::min(out.minimum, x);
    if (std::abs(x) > out.lambda) {
      out.lambda = std::abs(x);
      out.argmax = u;
    }
  }
  if (N == 1) out.second = out.minimum = 0;
  return out;
}

double cayley_dense_lambda(std::size_t k, const std::vector<std::uint64_t>& generators,
                           const std::vector<double>& weights) {
  if (k > 10) throw std::invalid_argument("cayley_dense_lambda: k > 10");
  const std::size_t N = std::size_t(1) << k;
  WeightedGraph G;
  G.n = N;
  for (std::size_t t = 0; t < generators.size(); ++t)
    for (std::uint64_t x = 0; x < N; ++x) G.add(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(x ^ generators[t]),
                                                weights.empty() ? 1.0 : weights[t]);
  G.canonicalize();
  SpectralOptions opt;
  opt.dense_limit = N + 1;
  return graph_lambda(G, opt).lambda;
}

CayleyCounting cayley_counting_check(const GrassConstructSpec& spec, const GradedComplex* X) {
  spec.validate();
  CayleyCounting c;
  c.vertices = big_pow(2, spec.ambient_bits());
  c.bound = big_pow(2, (std::uint64_t(1) << (spec.r + 2)) * std::uint64_t(spec.b) * std::uint64_t(spec.n));
  c.faces_X = 0;
  c.faces_per_vertex = 0;
  c.exact = X != nullptr;
  for (int i = -1; i <= spec.r; ++i) {
    const BigInt n = X ? BigInt(static_cast<unsigned long>(X->count(i))) : grass_face_count(spec.r, spec.b, spec.n, i);
    c.faces_X += n;
    c.faces_per_vertex += i < 0 ? n : BigInt(n * unordered_bases_f2(static_cast<std::size_t>(i) + 1));
  }
  return c;
}

}  // namespace hdx
