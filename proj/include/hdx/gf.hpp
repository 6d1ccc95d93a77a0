#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace hdx {

using Elem = std::uint32_t;

/// Carry-less product of a and b reduced modulo poly (degree b). Slow reference.
Elem clmul_mod(Elem a, Elem b, std::uint32_t poly, int degree);

/// True iff poly (bitmask, bit i = coefficient of x^i) is irreducible over F2.
bool is_irreducible(std::uint32_t poly);

/// Lexicographically smallest irreducible polynomial of degree b (b = 1 gives x+1).
std::uint32_t smallest_irreducible(int b);

/**
 * GF(2^b) for 1 <= b <= 16, elements are integers in [0, 2^b).
 * Tables are built once per (b, poly) and shared between copies.
 */
class FieldSpec {
 public:
  FieldSpec();
  explicit FieldSpec(int b);
  FieldSpec(int b, std::uint32_t poly);

  int degree() const { return b_; }
  std::uint32_t order() const { return 1u << b_; }
  std::uint32_t modulus() const { return poly_; }

  Elem add(Elem a, Elem c) const { return a ^ c; }
  Elem mul(Elem a, Elem c) const {
    if (a == 0 || c == 0) return 0;
    return exp_[log_[a] + log_[c]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem c) const { return mul(a, inv(c)); }
  Elem pow(Elem a, std::uint64_t e) const;

  bool operator==(const FieldSpec& o) const { return b_ == o.b_ && poly_ == o.poly_; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

 private:
  struct Tables {
    std::vector<std::uint32_t> log;
    std::vector<std::uint32_t> exp;
  };
  static std::shared_ptr<const Tables> tables_for(int b, std::uint32_t poly);

  int b_ = 1;
  std::uint32_t poly_ = 3;
  std::shared_ptr<const Tables> tables_;
  const std::uint32_t* log_ = nullptr;
  const std::uint32_t* exp_ = nullptr;
};

inline Elem gf_mul(const FieldSpec& f, Elem a, Elem b) { return f.mul(a, b); }
inline Elem gf_inv(const FieldSpec& f, Elem a) { return f.inv(a); }

}  // namespace hdx
