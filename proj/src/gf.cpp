#include "hdx/gf.hpp"

#include <map>
#include <mutex>
#include <string>

namespace hdx {

namespace {

int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) a ^= m << (da - dm);
  return a;
}

}  // namespace

Elem clmul_mod(Elem a, Elem b, std::uint32_t poly, int degree) {
  std::uint64_t acc = 0;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1u) acc ^= std::uint64_t(a) << i;
  (void)degree;
  return static_cast<Elem>(poly_mod(acc, poly));
}

bool is_irreducible(std::uint32_t poly) {
  const int d = poly_degree(poly);
  if (d < 1) return false;
  // trial division by every polynomial of degree 1..d/2
  for (std::uint64_t g = 2; poly_degree(g) <= d / 2; ++g)
    if (poly_mod(poly, g) == 0) return false;
  return true;
}

std::uint32_t smallest_irreducible(int b) {
  if (b < 1 || b > 16) throw std::invalid_argument("field degree must lie in [1,16], got " + std::to_string(b));
  if (b == 1) return 3;
  for (std::uint32_t p = (1u << b) | 1u; p < (2u << b); p += 2)
    if (is_irreducible(p)) return p;
  throw std::logic_error("no irreducible polynomial found");
}

std::shared_ptr<const FieldSpec::Tables> FieldSpec::tables_for(int b, std::uint32_t poly) {
  static std::mutex mu;
  static std::map<std::pair<int, std::uint32_t>, std::shared_ptr<const Tables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({b, poly});
  if (it != cache.end()) return it->second;

  const std::uint32_t q = 1u << b;
  auto t = std::make_shared<Tables>();
  t->log.assign(q, 0);
  t->exp.assign(2 * q, 0);
  // smallest primitive element
  Elem g = 0;
  for (Elem cand = (q == 2 ? 1 : 2); cand < q; ++cand) {
    Elem x = 1;
    std::uint32_t ord = 0;
    do {
      x = clmul_mod(x, cand, poly, b);
      ++ord;
    } while (x != 1 && ord < q);
    if (ord == q - 1) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw std::logic_error("no primitive element");
  Elem x = 1;
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    t->exp[i] = x;
    t->exp[i + q - 1] = x;
    t->log[x] = i;
    x = clmul_mod(x, g, poly, b);
  }
  cache.emplace(std::make_pair(b, poly), t);
  return t;
}

FieldSpec::FieldSpec() : FieldSpec(1, 3) {}

FieldSpec::FieldSpec(int b) : FieldSpec(b, smallest_irreducible(b)) {}

FieldSpec::FieldSpec(int b, std::uint32_t poly) : b_(b), poly_(poly) {
  if (b < 1 || b > 16) throw std::invalid_argument("field degree must lie in [1,16], got " + std::to_string(b));
  if (poly_degree(poly) != b) throw std::invalid_argument("reduction polynomial has wrong degree");
  if (!is_irreducible(poly)) throw std::invalid_argument("reduction polynomial is reducible");
  tables_ = tables_for(b, poly);
  log_ = tables_->log.data();
  exp_ = tables_->exp.data();
}

Elem FieldSpec::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  const std::uint32_t qm1 = order() - 1;
  return exp_[(qm1 - log_[a]) % qm1];
}

Elem FieldSpec::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t qm1 = order() - 1;
  return exp_[(std::uint64_t(log_[a]) * (e % qm1)) % qm1];
}

}  // namespace hdx
