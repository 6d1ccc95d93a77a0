#include "hdx/toys.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdx {

GradedComplex random_grassmannian(std::mt19937_64& rng, std::size_t k, std::size_t dim, std::size_t tops) {
  if (k == 0 || k > 20 || dim > k) throw std::invalid_argument("random_grassmannian: bad dimensions");
  std::vector<std::vector<std::uint64_t>> top;
  const std::uint64_t mask = (std::uint64_t(1) << k) - 1;
  while (top.size() < tops) {
    std::vector<std::uint64_t> b;
    for (std::size_t j = 0; j < dim; ++j) b.push_back(1 + rng() % mask);
    auto s = GradedComplex::span_f2(b);
    if (s.front() == 0 || std::adjacent_find(s.begin(), s.end()) != s.end()) continue;
    top.push_back(b);
  }
  auto X = GradedComplex::grassmannian_from_top(k, top);
  uniform_top_weights(X);
  return X;
}

CodePair code_from_tops(std::size_t k, std::vector<std::uint64_t> vertices,
                        const std::vector<std::vector<std::uint64_t>>& tops) {
  CodePair c;
  c.k = k;
  for (const auto& t : tops) {
    vertices.push_back(t[0]);
    vertices.push_back(t[1]);
    vertices.push_back(t[0] ^ t[1]);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  c.vertices = vertices;
  auto idx = [&](std::uint64_t x) {
    return static_cast<std::uint32_t>(std::lower_bound(vertices.begin(), vertices.end(), x) - vertices.begin());
  };
  for (const auto& t : tops) {
    std::array<std::uint32_t, 3> tri{idx(t[0]), idx(t[1]), idx(t[0] ^ t[1])};
    std::sort(tri.begin(), tri.end());
    c.triangles.push_back(tri);
  }
  std::sort(c.triangles.begin(), c.triangles.end());
  c.triangles.erase(std::unique(c.triangles.begin(), c.triangles.end()), c.triangles.end());
  return c;
}

CodePair random_code(std::mt19937_64& rng, std::size_t k, std::size_t nt, std::size_t extra, std::size_t max_vertices) {
  if (k == 0 || k > 63) throw std::invalid_argument("random_code: bad ambient dimension");
  const std::uint64_t top = (std::uint64_t(1) << k) - 1;
  std::vector<std::uint64_t> v;
  std::vector<std::vector<std::uint64_t>> tops;
  auto count_with = [&](std::vector<std::uint64_t> add) {
    for (auto x : v) add.push_back(x);
    std::sort(add.begin(), add.end());
    return std::size_t(std::unique(add.begin(), add.end()) - add.begin());
  };
  for (std::size_t t = 0; t < nt; ++t) {
    const std::uint64_t a = 1 + rng() % top, b = 1 + rng() % top;
    if (a == b || count_with({a, b, a ^ b}) > max_vertices) continue;
    tops.push_back({a, b});
    for (auto x : {a, b, a ^ b})
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  for (std::size_t e = 0; e < extra && v.size() < max_vertices; ++e) {
    const std::uint64_t x = 1 + rng() % top;
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  if (v.empty()) v.push_back(1);
  return code_from_tops(k, v, tops);
}

GFMatrix random_gf_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  GFMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, static_cast<Elem>(rng() % f.order()));
  return m;
}

}  // namespace hdx
