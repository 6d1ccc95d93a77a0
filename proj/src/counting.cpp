#include "hdx/counting.hpp"

#include <stdexcept>

namespace hdx {

std::string to_string(const BigInt& z) { return z.get_str(); }
std::string to_string(const Rational& r) { return r.get_str(); }

BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

BigInt gaussian_binomial(std::uint64_t q, std::uint64_t m, std::uint64_t s) {
  if (s > m) return 0;
  BigInt num = 1, den = 1;
  for (std::uint64_t i = 0; i < s; ++i) {
    num *= big_pow(q, m - i) - 1;
    den *= big_pow(q, i + 1) - 1;
  }
  return num / den;
}

BigInt count_gl(std::uint64_t q, std::uint64_t s) {
  BigInt out = 1;
  for (std::uint64_t i = 0; i < s; ++i) out *= big_pow(q, s) - big_pow(q, i);
  return out;
}

BigInt count_rank(std::uint64_t q, std::uint64_t m, std::uint64_t s) {
  BigInt out = gaussian_binomial(q, m, s);
  for (std::uint64_t i = 0; i < s; ++i) out *= big_pow(q, m) - big_pow(q, i);
  return out;
}

BigInt count_dominated_by_identity(std::uint64_t q, std::uint64_t m, std::uint64_t s) {
  if (s > m) return 0;
  return gaussian_binomial(q, m, s) * big_pow(q, s * (m - s));
}

BigInt count_subspaces_avoiding(std::uint64_t q, std::uint64_t n, std::uint64_t a, std::uint64_t t) {
  if (a + t > n) return 0;
  return big_pow(q, a * t) * gaussian_binomial(q, n - a, t);
}

BigInt grass_face_count(int r, int b, int n, int i) {
  if (i < -1 || i > r) throw std::invalid_argument("rank outside [-1, r]");
  if (i == -1) return 1;
  const std::uint64_t q = std::uint64_t(1) << b;
  const std::uint64_t K = (std::uint64_t(1) << (i + 1)) - 1;
  const std::uint64_t s = std::uint64_t(1) << (r - i);
  if (K * s > static_cast<std::uint64_t>(n)) return 0;
  // ordered K-tuples with independent row spans and column spans, modulo GL_{i+1}(F2)
  BigInt spans = 1;
  for (std::uint64_t j = 0; j < K; ++j) spans *= count_subspaces_avoiding(q, n, j * s, s);
  BigInt ordered = spans * spans;
  const BigInt gl = count_gl(q, s);
  for (std::uint64_t j = 0; j < K; ++j) ordered *= gl;
  const BigInt relabel = count_gl(2, i + 1);
  if (ordered % relabel != 0) throw std::logic_error("face count not integral");
  return ordered / relabel;
}

BigInt grass_total_faces(int r, int b, int n) {
  BigInt t = 0;
  for (int i = -1; i <= r; ++i) t += grass_face_count(r, b, n, i);
  return t;
}

}  // namespace hdx
