#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hdx {

using BigInt = mpz_class;
using Rational = mpq_class;

inline double to_double(const Rational& r) { return r.get_d(); }
std::string to_string(const BigInt& z);
std::string to_string(const Rational& r);

BigInt big_pow(std::uint64_t base, std::uint64_t exp);
/// Gaussian binomial [m choose s]_q.
BigInt gaussian_binomial(std::uint64_t q, std::uint64_t m, std::uint64_t s);
/// |GL_s(F_q)|.
BigInt count_gl(std::uint64_t q, std::uint64_t s);
/// Number of rank-s matrices in F_q^{m x m}.
BigInt count_rank(std::uint64_t q, std::uint64_t m, std::uint64_t s);
/// Number of rank-s matrices M with M below I_m (rank-s idempotents).
BigInt count_dominated_by_identity(std::uint64_t q, std::uint64_t m, std::uint64_t s);
/// Number of t-dim subspaces of F_q^n meeting a fixed a-dim subspace trivially.
BigInt count_subspaces_avoiding(std::uint64_t q, std::uint64_t n, std::uint64_t a, std::uint64_t t);
/// |X^{r,b,n}(i)| for -1 <= i <= r.
BigInt grass_face_count(int r, int b, int n, int i);
/// Sum of |X^{r,b,n}(i)| over -1 <= i <= r.
BigInt grass_total_faces(int r, int b, int n);

}  // namespace hdx
