#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hdx/codes.hpp"
#include "hdx/gf_matrix.hpp"
#include "hdx/graded_complex.hpp"

namespace hdx {

/// Seeded random instances shared by the verification suite and the tests.

/// `tops` random dim-dimensional subspaces of F2^k (k <= 20), uniform top weights.
GradedComplex random_grassmannian(std::mt19937_64& rng, std::size_t k, std::size_t dim, std::size_t tops);

/// Code pair whose triangles are {a, b, a+b} for each top pair, plus the listed extra vertices.
CodePair code_from_tops(std::size_t k, std::vector<std::uint64_t> vertices,
                        const std::vector<std::vector<std::uint64_t>>& tops);

/// About nt random triangles and `extra` isolated vertices in F2^k, at most max_vertices vertices.
CodePair random_code(std::mt19937_64& rng, std::size_t k, std::size_t nt, std::size_t extra,
                     std::size_t max_vertices = 14);

GFMatrix random_gf_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

}  // namespace hdx
