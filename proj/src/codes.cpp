#include "hdx/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <sstream>

#include "hdx/cayley.hpp"

namespace hdx {

F2Matrix CodePair::G() const {
  F2Matrix m(n(), k);
  for (std::size_t j = 0; j < n(); ++j)
    for (std::size_t b = 0; b < k; ++b)
      if ((vertices[j] >> b) & 1u) m.set(j, b);
  return m;
}

F2Matrix CodePair::H() const {
  F2Matrix m(triangles.size(), n());
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (auto j : triangles[t]) m.set(t, j);
  return m;
}

CodePair build_code_pair(const GradedComplex& X) {
  if (X.kind() != ComplexKind::Grassmannian) throw std::invalid_argument("build_code_pair: grassmannian complex expected");
  if (X.top_rank() < 0) throw std::invalid_argument("build_code_pair: no vertices");
  CodePair c;
  c.k = X.ambient();
  const Level& V = X.level(0);
  c.vertices.assign(V.labels.begin(), V.labels.end());
  if (X.top_rank() >= 1) {
    const Level& E = X.level(1);
    c.triangles.reserve(E.count);
    for (std::size_t f = 0; f < E.count; ++f) {
      std::array<std::uint32_t, 3> t{};
      const auto e = E.face(f);
      for (int j = 0; j < 3; ++j) {
        const std::uint64_t x = e[j];
        t[j] = static_cast<std::uint32_t>(*V.find({&x, 1}));
      }
      std::sort(t.begin(), t.end());
      c.triangles.push_back(t);
    }
  }
  return c;
}

bool hg_zero(const CodePair& c) {
  for (const auto& t : c.triangles)
    if ((c.vertices[t[0]] ^ c.vertices[t[1]] ^ c.vertices[t[2]]) != 0) return false;
  return true;
}

std::size_t rank_G(const CodePair& c) {
  std::vector<std::uint64_t> piv;
  for (auto x : c.vertices) {
    for (auto p : piv) x = std::min(x, x ^ p);
    if (x) {
      piv.push_back(x);
      std::sort(piv.rbegin(), piv.rend());
    }
  }
  return piv.size();
}

KernelH kernel_H(const CodePair& c) {
  const std::size_t n = c.n();
  if (n > 60000) throw std::invalid_argument("kernel_H: too many vertices");
  const std::size_t W = (n + 63) / 64;
  std::vector<std::uint64_t> val(n * W, 0);
  auto row = [&](std::size_t x) { return val.data() + x * W; };

  std::vector<std::uint64_t> off(n + 1, 0);
  for (const auto& t : c.triangles)
    for (auto j : t) ++off[j + 1];
  for (std::size_t j = 0; j < n; ++j) off[j + 1] += off[j];
  std::vector<std::uint32_t> inc(off[n]);
  {
    auto pos = off;
    for (std::size_t t = 0; t < c.triangles.size(); ++t)
      for (auto j : c.triangles[t]) inc[pos[j]++] = static_cast<std::uint32_t>(t);
  }

  std::vector<char> det(n, 0), used(c.triangles.size(), 0);
  std::vector<std::uint8_t> cnt(c.triangles.size(), 0);
  std::vector<std::vector<std::uint64_t>> constraints;
  std::size_t F = 0;
  std::deque<std::uint32_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (det[s]) continue;
    row(s)[F >> 6] |= std::uint64_t(1) << (F & 63);
    ++F;
    det[s] = 1;
    queue.push_back(static_cast<std::uint32_t>(s));
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto e = off[v]; e < off[v + 1]; ++e) {
        const auto f = inc[e];
        const auto& t = c.triangles[f];
        ++cnt[f];
        if (used[f]) continue;
        if (cnt[f] == 2) {
          for (int j = 0; j < 3; ++j)
            if (!det[t[j]]) {
              const auto a = row(t[(j + 1) % 3]), b = row(t[(j + 2) % 3]), w = row(t[j]);
              for (std::size_t q = 0; q < W; ++q) w[q] = a[q] ^ b[q];
              det[t[j]] = 1;
              used[f] = 1;
              queue.push_back(t[j]);
            }
        } else if (cnt[f] == 3) {
          std::vector<std::uint64_t> z(W);
          bool nz = false;
          for (std::size_t q = 0; q < W; ++q) {
            z[q] = row(t[0])[q] ^ row(t[1])[q] ^ row(t[2])[q];
            nz |= z[q] != 0;
          }
          used[f] = 1;
          if (nz) constraints.push_back(std::move(z));
        }
      }
    }
  }

  auto truncated = [&](const std::uint64_t* w) {
    F2Vec v(F);
    for (std::size_t q = 0; q < v.words().size(); ++q) v.words()[q] = w[q];
    if (F % 64) v.words().back() &= (std::uint64_t(1) << (F % 64)) - 1;
    return v;
  };
  F2Basis cons(F);
  for (const auto& z : constraints) cons.insert(truncated(z.data()));
  const F2Matrix Z = kernel_basis(F2Matrix::from_rows(cons.vectors(), F));

  KernelH out;
  out.free_variables = F;
  F2Matrix K(Z.rows(), n);
  for (std::size_t j = 0; j < Z.rows(); ++j) {
    const F2Vec z = Z.row(j);
    for (std::size_t x = 0; x < n; ++x)
      if (truncated(row(x)).dot(z)) K.set(j, x);
  }
  const auto E = rref(K);
  out.dim = E.rref.rows();
  for (std::size_t j = 0; j < out.dim; ++j) out.basis.push_back(E.rref.row(j));
  return out;
}

std::size_t hom_quotient_dim(const CodePair& c) { return kernel_H(c).dim - rank_G(c); }

std::vector<F2Vec> generator_code_basis(const CodePair& c) {
  F2Basis B(c.n());
  std::vector<F2Vec> out;
  for (std::size_t b = 0; b < c.k; ++b) {
    F2Vec col(c.n());
    for (std::size_t j = 0; j < c.n(); ++j)
      if ((c.vertices[j] >> b) & 1u) col.set(j);
    if (B.insert(col)) out.push_back(col);
  }
  return out;
}

UniversalCover universal_cover(const CodePair& c) {
  const auto K = kernel_H(c);
  if (K.dim > 63) throw std::invalid_argument("universal_cover: kernel dimension above 63");
  UniversalCover u;
  u.dim = K.dim;
  u.cover.k = K.dim;
  u.cover.triangles = c.triangles;
  u.cover.vertices.assign(c.n(), 0);
  for (std::size_t j = 0; j < K.dim; ++j)
    for (std::size_t x = 0; x < c.n(); ++x)
      if (K.basis[j].get(x)) u.cover.vertices[x] |= std::uint64_t(1) << j;
  for (std::size_t x = 0; x < c.n(); ++x)
    if (u.cover.vertices[x] == 0)
      throw DegenerateCover("universal_cover: vertex " + std::to_string(x) + " is zero on ker H");
  auto sorted = u.cover.vertices;
  std::sort(sorted.begin(), sorted.end());
  u.distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  // im G of the cover is spanned by its columns, which are the kernel basis rows
  bool in_kernel = hg_zero(u.cover);
  const auto cols = generator_code_basis(u.cover);
  u.image_is_kernel = in_kernel && cols.size() == K.dim && rank_G(u.cover) == K.dim;
  return u;
}

double bias(std::size_t k, const std::vector<std::uint64_t>& generators) {
  return cayley_graph_lambda(k, generators).lambda;
}

BalanceReport balanced_check(const std::vector<F2Vec>& basis, double eps) {
  const std::size_t d = basis.size();
  if (d > 24) throw std::invalid_argument("balanced_check: code dimension above 24");
  BalanceReport rep;
  rep.eps = eps;
  if (d == 0) return rep;
  const std::size_t N = basis[0].size();
  const double lo = (1 - eps) * N / 2, hi = (1 + eps) * N / 2;
  F2Vec cur(N);
  for (std::uint64_t m = 1; m < (std::uint64_t(1) << d); ++m) {
    cur ^= basis[std::countr_zero(m)];
    const double w = static_cast<double>(cur.weight());
    ++rep.codewords;
    rep.min_rel = std::min(rep.min_rel, w / N);
    rep.max_rel = std::max(rep.max_rel, w / N);
    if ((w < lo - 1e-9 || w > hi + 1e-9) && rep.ok) {
      rep.ok = false;
      rep.first_violation = m ^ (m >> 1);
    }
  }
  return rep;
}

DistanceReport expansion_to_distance_check(const CodePair& c, double lambda, double tol) {
  DistanceReport rep;
  rep.lambda = lambda;
  std::vector<std::size_t> deg(c.n(), 0);
  for (const auto& t : c.triangles)
    for (auto j : t) ++deg[j];
  rep.regular = c.n() > 0 && std::all_of(deg.begin(), deg.end(), [&](std::size_t x) { return x == deg[0]; });
  if (!rep.regular) {
    rep.skipped = true;
    rep.reason = "irregular: vertices lie in different numbers of triangles";
    return rep;
  }
  if (!(lambda < 1)) {
    rep.skipped = true;
    rep.reason = "lambda >= 1";
    return rep;
  }
  rep.bound = lambda / (1 - lambda);
  rep.bias = bias(c.k, c.vertices);
  rep.bias_ok = rep.bias <= rep.bound + tol;
  const auto B = generator_code_basis(c);
  if (B.size() > 24) {
    rep.window_ok = rep.bias_ok;
    rep.reason = "code dimension above 24; window implied by the bias only";
    return rep;
  }
  rep.window = balanced_check(B, rep.bound + tol);
  rep.window_ok = rep.window.min_rel >= 0.5 - rep.bound / 2 - tol;
  return rep;
}

std::string parity_check_text(const CodePair& c) {
  std::ostringstream os;
  for (const auto& t : c.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return os.str();
}

nlohmann::json code_to_json(const CodePair& c) {
  nlohmann::json j;
  j["k"] = c.k;
  auto& v = j["vertices"] = nlohmann::json::array();
  for (auto x : c.vertices) v.push_back(F2Vec::from_u64(x, c.k).to_hex());
  auto& h = j["checks"] = nlohmann::json::array();
  for (const auto& t : c.triangles) h.push_back({t[0], t[1], t[2]});
  return j;
}

}  // namespace hdx
