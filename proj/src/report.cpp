#include "hdx/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "hdx/cayley.hpp"
#include "hdx/counting.hpp"
#include "hdx/homology.hpp"
#include "hdx/matrix_poset.hpp"
#include "hdx/parallel.hpp"
#include "hdx/toys.hpp"
#include "hdx/walks.hpp"

namespace hdx {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

/// Collects the records of one criterion; each check runs guarded and timed.
class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : res_(r) {}

  void check(const std::string& id, const std::string& anchor, nlohmann::json params,
             const std::function<bool(CheckRecord&)>& body) {
    CheckRecord rec;
    rec.id = id;
    rec.anchor = anchor;
    rec.params = std::move(params);
    const auto t0 = Clock::now();
    try {
      rec.status = body(rec) ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const CapExceeded& e) {
      rec.status = CheckStatus::Skipped;
      rec.note = std::string("skipped (cap): ") + e.what();
    } catch (const std::exception& e) {
      rec.status = CheckStatus::Fail;
      rec.note = std::string("error: ") + e.what();
    }
    rec.seconds = since(t0);
    res_.checks.push_back(std::move(rec));
  }

  void skip(const std::string& id, const std::string& anchor, const std::string& reason) {
    CheckRecord rec;
    rec.id = id;
    rec.anchor = anchor;
    rec.status = CheckStatus::Skipped;
    rec.note = reason;
    res_.checks.push_back(std::move(rec));
  }

 private:
  CriterionResult& res_;
};

const GrassConstructSpec kX114{1, 1, 4};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

BigInt rank_count_formula(std::uint64_t q, std::uint64_t m, std::uint64_t s) {
  BigInt p = gaussian_binomial(q, m, s);
  const BigInt qm = big_pow(q, m);
  for (std::uint64_t i = 0; i < s; ++i) p *= BigInt(qm - big_pow(q, i));
  return p;
}

// ---------------------------------------------------------------------------

void c1_poset_axioms(Recorder& R, VerifyContext&) {
  const MatrixPosetSpec spec{FieldSpec(1), 3};
  PosetAxiomReport rep;
  R.check("axioms/enumerate", "matrix poset on 3x3 over F2", {{"q", 2}, {"m", 3}}, [&](CheckRecord& c) {
    rep = check_matrix_poset_axioms(spec);
    c.measured = std::to_string(rep.elements) + " elements, " + std::to_string(rep.relations) + " relations, " +
                 std::to_string(rep.covers) + " covers";
    c.bound = "512 elements";
    return rep.elements == 512;
  });
  const std::string viol = rep.first_violation.empty() ? "" : "first violation: " + rep.first_violation;
  R.check("axioms/transitive", "domination order is transitive", {}, [&](CheckRecord& c) {
    c.measured = yes(rep.transitive) + (rep.antisymmetric ? ", antisymmetric" : ", not antisymmetric");
    c.note = viol;
    return rep.transitive && rep.antisymmetric && rep.elements == 512;
  });
  R.check("axioms/graded", "covers differ in rank by exactly one", {}, [&](CheckRecord& c) {
    c.measured = yes(rep.graded);
    c.note = viol;
    return rep.graded && rep.elements == 512;
  });
  R.check("axioms/pure", "every maximal chain ends at a full-rank matrix", {}, [&](CheckRecord& c) {
    c.measured = yes(rep.pure);
    c.note = viol;
    return rep.pure && rep.elements == 512;
  });
}

void c2_rank_counts(Recorder& R, VerifyContext&) {
  for (std::uint64_t m : {2, 3, 4})
    for (int b : {1, 2}) {
      const std::uint64_t q = std::uint64_t(1) << b;
      for (std::uint64_t s = 1; s <= m; ++s) {
        const nlohmann::json params{{"m", m}, {"q", q}, {"s", s}};
        R.check("ranks/m" + std::to_string(m) + "q" + std::to_string(q) + "s" + std::to_string(s),
                "rank-level size is binom_q(m,s) prod (q^m - q^i)", params, [&](CheckRecord& c) {
                  const MatrixPosetSpec spec{FieldSpec(b), m};
                  const BigInt expect = rank_count_formula(q, m, s);
                  bool extra = true;
                  std::uint64_t n = 0;
                  if (expect <= 2'000'000) {
                    // small levels: also distinct keys of the right rank
                    std::vector<std::uint64_t> keys;
                    for_each_rank_key(spec, s, [&](std::uint64_t k) { keys.push_back(k); });
                    n = keys.size();
                    for (auto k : keys) extra = extra && rank(GFMatrix::from_key(spec.field, m, m, k)) == s;
                    std::sort(keys.begin(), keys.end());
                    extra = extra && std::adjacent_find(keys.begin(), keys.end()) == keys.end();
                    c.note = extra ? "keys distinct, ranks verified" : "duplicate key or wrong rank";
                  } else {
                    for_each_rank_key(spec, s, [&](std::uint64_t) { ++n; });
                    c.note = "streamed count";
                  }
                  c.measured = std::to_string(n);
                  c.bound = to_string(expect);
                  return extra && BigInt(std::to_string(n)) == expect && expect == count_rank(q, m, s);
                });
      }
    }
}

void c3_dominated_by_identity(Recorder& R, VerifyContext& ctx) {
  auto agree = [](const GFMatrix& M, std::size_t& dominated) {
    const auto I = GFMatrix::identity(M.field(), M.rows());
    const auto d = dominated_by_identity(M);
    if (d.dominated != dominates(M, I)) return false;
    if (!d.dominated) return true;
    ++dominated;
    const std::size_t r = rank(M);
    return d.V1 * d.V2.transpose() == M && d.V2.transpose() * d.V1 == GFMatrix::identity(M.field(), r);
  };
  R.check("domI/exhaustive-F2", "factorization criterion equals the rank criterion", {{"q", 2}, {"m", 3}},
          [&](CheckRecord& c) {
            std::size_t bad = 0, dom = 0;
            for (std::uint64_t k = 0; k < 512; ++k) bad += !agree(GFMatrix::from_key(FieldSpec(1), 3, 3, k), dom);
            c.measured = std::to_string(512 - bad) + "/512 agree, " + std::to_string(dom) + " dominated";
            c.bound = "512/512";
            return bad == 0;
          });
  R.check("domI/random-F4", "factorization criterion equals the rank criterion", {{"q", 4}, {"m", 3}, {"samples", 10000}},
          [&](CheckRecord& c) {
            std::mt19937_64 rng(ctx.seed_for(3));
            std::size_t bad = 0, dom = 0;
            for (int t = 0; t < 10000; ++t) bad += !agree(random_gf_matrix(FieldSpec(2), 3, 3, rng), dom);
            c.measured = std::to_string(10000 - bad) + "/10000 agree, " + std::to_string(dom) + " dominated";
            c.bound = "10000/10000";
            return bad == 0;
          });
  R.check("domI/positives-F4", "every rank-s idempotent is dominated by I with a factorization", {{"q", 4}, {"m", 3}},
          [&](CheckRecord& c) {
            std::size_t bad = 0, total = 0, dom = 0;
            for (std::size_t s = 0; s <= 3; ++s)
              for (const auto& M : enumerate_dominated_by_identity(FieldSpec(2), 3, s)) {
                ++total;
                bad += !agree(M, dom);
              }
            c.measured = std::to_string(dom) + "/" + std::to_string(total) + " confirmed";
            BigInt expect = 0;
            for (std::uint64_t s = 0; s <= 3; ++s) expect += count_dominated_by_identity(4, 3, s);
            c.bound = to_string(expect);
            return bad == 0 && dom == total && c.bound == std::to_string(total);
          });
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kPerpPairs{{2, 2}, {2, 3}, {2, 4}, {3, 3}, {4, 3}};

void c4_perp(Recorder& R, VerifyContext& ctx) {
  for (auto [q, m] : kPerpPairs) {
    PerpIdentityReport rep;
    const std::string tag = "q" + std::to_string(q) + "m" + std::to_string(m);
    const nlohmann::json params{{"q", q}, {"m", m}};
    R.check("perp/identity-" + tag, "A^2 = (q^{m-1}-1) I + (q^{m-2}-1)(J-I)", params, [&](CheckRecord& c) {
      rep = perp_identity_check(q, m, ctx.config().tol);
      c.bound = "diag " + std::to_string(rep.diag_expected) + ", off " + std::to_string(rep.off_expected);
      if (rep.identity_exact) {
        c.measured = "exact on " + std::to_string(rep.vertices) + " vertices";
      } else {
        std::ostringstream os;
        os << "mismatch;";
        for (auto [v, n] : rep.off_values) os << " " << n << " entries equal " << v;
        c.measured = os.str();
        c.note = rep.first_mismatch;
      }
      return rep.identity_exact;
    });
    R.check("perp/lambda-" + tag, "lambda <= 1/sqrt(q^{m-1}-1)", params, [&](CheckRecord& c) {
      c.measured = num(rep.lambda);
      c.bound = num(rep.bound);
      return rep.lambda_ok;
    });
  }
}

/// The identity fails for q > 2 because u and c u (c != 0, 1) share all of u^perp:
/// every mismatch must be such a pair, i.e. n(q-2) entries equal to q^{m-1}-1.
bool perp_failure_is_scalar_multiples(std::uint32_t q, std::uint32_t m) {
  const auto rep = perp_identity_check(q, m);
  if (q <= 2 || rep.identity_exact || rep.off_values.size() != 1) return false;
  const auto [v, n] = rep.off_values[0];
  return v == rep.diag_expected && n == rep.vertices * (q - 2);
}

void c5_mat1ud(Recorder& R, VerifyContext& ctx) {
  R.check("walks/updown-rank1-q16-m2", "lambda(W up-down on rank-1 2x2 over F16) <= 10/16",
          {{"q", 16}, {"m", 2}, {"restriction", "none"}}, [&](CheckRecord& c) {
            SpectralOptions opt;
            opt.residual_tol = 1e-7;
            opt.seed = ctx.seed_for(5);
            const auto w = matrix_walk_updown({FieldSpec(4), 2}, MatrixRestriction::None, opt);
            c.measured = num(w.spectral.lambda) + " (" + std::to_string(w.states) + " states" +
                         (w.spectral.dense ? ", dense" : ", residual " + num(w.spectral.residual)) + ")";
            c.bound = "0.625, 4335 states";
            return w.states == 4335 && w.spectral.lambda <= 0.625 + 1e-7 && w.spectral.residual < 1e-7;
          });
}

void c6_mat1uddomI(Recorder& R, VerifyContext& ctx) {
  R.check("walks/updown-rank1-below-I-q16-m3", "lambda(W up-down on rank-1 M below I_3 over F16) <= 8/16",
          {{"q", 16}, {"m", 3}, {"restriction", "dominated-by-identity"}}, [&](CheckRecord& c) {
            SpectralOptions opt;
            opt.residual_tol = 1e-7;
            opt.force_iterative = true;
            opt.seed = ctx.seed_for(6);
            const auto w = matrix_walk_updown({FieldSpec(4), 3}, MatrixRestriction::DominatedByIdentity, opt);
            c.measured = num(w.spectral.lambda) + " (" + std::to_string(w.states) + " states, residual " +
                         num(w.spectral.residual) + ", " + std::to_string(w.spectral.iterations) + " iterations)";
            c.bound = "0.5, 69888 states, residual < 1e-7";
            return w.states == 69888 && w.spectral.lambda <= 0.5 + 1e-7 && w.spectral.residual < 1e-7 &&
                   !w.spectral.dense;
          });
}

void c7_localized(Recorder& R, VerifyContext& ctx) {
  R.check("walks/localized-q8-m3", "lambda(localized graph) <= 3/8", {{"q", 8}, {"m", 3}}, [&](CheckRecord& c) {
    const auto L = localized_graph(FieldSpec(3), 3);
    SpectralOptions opt;
    opt.residual_tol = 1e-7;
    opt.seed = ctx.seed_for(7);
    const auto s = graph_lambda(L.graph, opt);
    c.measured = num(s.lambda) + " (" + std::to_string(L.vertices.size()) + " states)";
    c.bound = "0.375, 4672 states";
    return L.vertices.size() == 4672 && !s.disconnected && s.lambda <= 0.375 + 1e-7;
  });
}

void c8_construction(Recorder& R, VerifyContext& ctx) {
  const auto& spec = ctx.spec();
  const nlohmann::json params{{"r", 1}, {"b", 1}, {"n", 4}};
  const GradedComplex* X = nullptr;
  R.check("construction/vertices", "|X(0)| of X^{1,1,4}", params, [&](CheckRecord& c) {
    X = &ctx.X();
    c.measured = std::to_string(X->count(0));
    c.bound = "7350";
    c.note = "|X(1)| = " + std::to_string(X->count(1)) + " (formula " + to_string(grass_face_count(1, 1, 4, 1)) + ")";
    return X->count(0) == 7350 && BigInt(std::to_string(X->count(1))) == grass_face_count(1, 1, 4, 1);
  });
  if (!X) return;
  R.check("construction/span", "span of X(0) is all of F2^16", params, [&](CheckRecord& c) {
    F2Basis B(16);
    for (std::size_t v = 0; v < X->count(0); ++v) B.insert(F2Vec::from_u64(X->level(0).face(v)[0], 16));
    c.measured = "dim " + std::to_string(B.dim());
    c.bound = "dim 16";
    return B.dim() == 16;
  });
  R.check("construction/rank1-shape", "every rank-1 face is span{L1+L2, L1+L3} with L1+L2+L3 of rank 3", params,
          [&](CheckRecord& c) {
            std::atomic<std::size_t> bad{0};
            std::atomic<std::size_t> first{SIZE_MAX};
            parallel_for(
                X->count(1),
                [&](std::size_t f) {
                  const auto b = face_basis(spec, *X, 1, f);
                  bool ok = b.size() == 2;
                  std::vector<GFMatrix> mm;
                  if (ok) {
                    try {
                      mm = minimal_matrices(spec, b);
                    } catch (const MembershipError&) {
                      ok = false;
                    }
                  }
                  ok = ok && mm.size() == 3 && rank(mm[0]) == 1 && rank(mm[1]) == 1 && rank(mm[2]) == 1 &&
                       rank(mm[0] + mm[1] + mm[2]) == 3 && b[0] == mm[0] + mm[1] && b[1] == mm[0] + mm[2];
                  if (!ok) {
                    ++bad;
                    std::size_t cur = first.load();
                    while (f < cur && !first.compare_exchange_weak(cur, f)) {
                    }
                  }
                },
                4096);
            c.measured = std::to_string(X->count(1) - bad) + "/" + std::to_string(X->count(1)) + " faces";
            c.bound = "all faces";
            if (bad) c.note = "first bad face index " + std::to_string(first.load());
            return bad == 0;
          });
  R.check("construction/minimal-uniqueness", "minimal matrices are unique (brute force on sampled faces)",
          {{"samples", 50}}, [&](CheckRecord& c) {
            std::vector<std::uint64_t> rank1;
            for_each_rank_key(spec.matrices(), 1, [&](std::uint64_t k) { rank1.push_back(k); });
            const std::set<std::uint64_t> r1(rank1.begin(), rank1.end());
            std::mt19937_64 rng(ctx.seed_for(8));
            const FieldSpec f = spec.field();
            std::size_t good = 0;
            for (int t = 0; t < 50; ++t) {
              const std::size_t idx = rng() % X->count(1);
              const auto b = face_basis(spec, *X, 1, idx);
              const auto m = minimal_matrices(spec, b);
              std::set<std::set<std::uint64_t>> triples;
              for (auto l : rank1) {
                const std::uint64_t l2 = b[0].key() ^ l, l3 = b[1].key() ^ l;
                if (r1.count(l2) && r1.count(l3) && rank(GFMatrix::from_key(f, 4, 4, l ^ l2 ^ l3)) == 3)
                  triples.insert({l, l2, l3});
              }
              std::set<std::uint64_t> got;
              for (const auto& M : m) got.insert(M.key());
              good += triples.size() == 1 && *triples.begin() == got;
            }
            c.measured = std::to_string(good) + "/50 unique and equal";
            c.bound = "50/50";
            return good == 50;
          });
  R.check("construction/connected", "1-skeleton connectivity (reported)", params, [&](CheckRecord& c) {
    const auto G = one_skeleton(*X);
    c.measured = G.connected() ? "connected" : "disconnected";
    c.note = std::to_string(G.n) + " vertices, " + std::to_string(G.edges()) + " edges";
    return true;
  });
}

void c9_counting(Recorder& R, VerifyContext& ctx) {
  const nlohmann::json params{{"r", 1}, {"b", 1}, {"n", 4}};
  auto run = [&](const std::string& id, const GradedComplex* X) {
    R.check(id, "|X| and faces per Cayley vertex at most 2^{2^{r+2} b n}", params, [&](CheckRecord& c) {
      const auto cc = cayley_counting_check(ctx.spec(), X);
      c.measured = "|X| = " + to_string(cc.faces_X) + ", per vertex " + to_string(cc.faces_per_vertex);
      c.bound = to_string(cc.bound);
      return cc.ok() && cc.bound == big_pow(2, 32);
    });
  };
  run("counting/formulas", nullptr);
  if (ctx.config().quick)
    R.skip("counting/built", "|X| and faces per Cayley vertex at most 2^{2^{r+2} b n}", "skipped (quick): needs X built");
  else
    run("counting/built", &ctx.X());
  R.check("counting/cayley-vertices", "|Y(0)| = 2^{b n^2}", params, [&](CheckRecord& c) {
    const auto cc = cayley_counting_check(ctx.spec(), nullptr);
    c.measured = to_string(cc.vertices);
    c.bound = "2^16 = 65536";
    return cc.vertices == big_pow(2, 16);
  });
}

std::vector<double> vertex_weights(const GradedComplex& S) {
  std::vector<double> w;
  for (const auto& x : S.level(0).weights) w.push_back(to_double(x));
  return w;
}

std::vector<std::uint64_t> vertex_names(const GradedComplex& S) {
  return {S.level(0).labels.begin(), S.level(0).labels.end()};
}

void c10_cayley(Recorder& R, VerifyContext& ctx) {
  const GradedComplex* S = nullptr;
  R.check("cayley/symmetry", "beta(X) satisfies the symmetry condition in F2^16", {{"k", 16}}, [&](CheckRecord& c) {
    S = &ctx.beta();
    const auto rep = check_symmetry(*S, 16);
    c.measured = std::to_string(rep.faces_checked) + " faces checked";
    c.note = rep.first_violation;
    return rep.ok;
  });
  if (S) {
    std::mt19937_64 rng(ctx.seed_for(10));
    for (int t = 0; t < 5; ++t) {
      const std::uint64_t v = rng() & 0xffff;
      R.check("cayley/link-" + std::to_string(t), "link of a vertex is a translate of S", {{"v", F2Vec::from_u64(v, 16).to_hex()}},
              [&](CheckRecord& c) {
                const CayleySpec cs{16, S};
                const auto L = cayley_vertex_link(cs, v);
                const auto rep = check_link_bijection(cs, v, L);
                c.measured = "counts " + yes(rep.counts_equal) + ", bijective " + yes(rep.bijective) + ", weights " +
                             yes(rep.weights_equal);
                c.note = rep.first_violation;
                return rep.ok();
              });
    }
  }
  R.check("cayley/sweep-vs-dense", "character sweep equals dense eigensolve on k <= 10 toys", {{"toys", 12}},
          [&](CheckRecord& c) {
            std::mt19937_64 rng(ctx.seed_for(10) + 1);
            double worst = 0;
            for (int t = 0; t < 12; ++t) {
              const std::size_t k = 4 + t % 7;
              const auto X = random_grassmannian(rng, k, 2, 2 + rng() % 6);
              const auto B = basisify(X);
              const auto gens = vertex_names(B);
              const auto w = vertex_weights(B);
              worst = std::max(worst, std::abs(cayley_graph_lambda(k, gens, w).lambda - cayley_dense_lambda(k, gens, w)));
            }
            c.measured = "max difference " + num(worst);
            c.bound = "1e-9";
            return worst <= 1e-9;
          });
  if (S)
    R.check("cayley/sweep-k16", "fast and direct character sums agree at k = 16", {{"k", 16}}, [&](CheckRecord& c) {
      const auto gens = vertex_names(*S);
      const auto a = cayley_graph_lambda(16, gens), b = character_sweep_direct(16, gens);
      const double d = std::max({std::abs(a.lambda - b.lambda), std::abs(a.second - b.second),
                                 std::abs(a.minimum - b.minimum)});
      c.measured = "lambda " + num(a.lambda) + ", direct " + num(b.lambda) + ", max difference " + num(d);
      c.bound = "1e-9";
      return d <= 1e-9;
    });
}

void c11_basisify(Recorder& R, VerifyContext& ctx) {
  std::mt19937_64 rng(ctx.seed_for(11));
  for (int t = 0; t < 20; ++t) {
    const std::size_t k = 4 + t % 3, dim = 2 + t % 2, tops = 2 + rng() % 4;
    R.check("basis/toy-" + std::to_string(t), "lambda^(i) of beta(X) equals lambda^(i) of X",
            {{"k", k}, {"dim", dim}, {"tops", tops}}, [&](CheckRecord& c) {
              const auto X = random_grassmannian(rng, k, dim, tops);
              const auto B = basisify(X);
              double worst = 0;
              std::ostringstream os;
              for (int i = -1; i <= X.top_rank() - 2; ++i) {
                const double a = local_expansion(X, i).lambda, b = local_expansion(B, i).lambda;
                worst = std::max(worst, std::abs(a - b));
                os << (i == -1 ? "" : ", ") << "lambda^(" << i << ") " << num(a);
              }
              c.measured = os.str() + "; max difference " + num(worst);
              c.bound = "1e-9";
              return worst <= 1e-9 && check_standardness(B).ok();
            });
  }
}

void c12_trickle(Recorder& R, VerifyContext& ctx) {
  R.check("trickle/cayley", "lambda^(-1)(Y) <= l/(1-l) with l = lambda^(0)(Y)", {{"k", 16}}, [&](CheckRecord& c) {
    const auto& S = ctx.beta();
    // every vertex link of Y is a translate of S, so lambda^(0)(Y) is the 1-skeleton expansion of S
    SpectralOptions opt;
    opt.seed = ctx.seed_for(12);
    const auto l0 = graph_lambda(one_skeleton(S), opt);
    const auto l1 = cayley_graph_lambda(16, vertex_names(S), vertex_weights(S));
    const double rhs = l0.lambda / (1 - l0.lambda);
    c.measured = "lambda^(-1) " + num(l1.lambda) + ", lambda^(0) " + num(l0.lambda) +
                 (l0.disconnected ? " (link disconnected)" : "");
    c.bound = num(rhs);
    return !l0.disconnected && l0.lambda < 1 && l1.lambda <= rhs + ctx.config().tol;
  });
}

void c13_codes(Recorder& R, VerifyContext& ctx) {
  const CodePair* c = nullptr;
  R.check("codes/hg-zero-x114", "H_X G_X = 0", {{"r", 1}, {"b", 1}, {"n", 4}}, [&](CheckRecord& r) {
    c = &ctx.code();
    r.measured = std::to_string(c->triangles.size()) + " checks on " + std::to_string(c->n()) + " columns";
    return hg_zero(*c);
  });
  R.check("codes/hg-zero-toys", "H_X G_X = 0 on random toys (dense product)", {{"toys", 100}}, [&](CheckRecord& r) {
    std::mt19937_64 rng(ctx.seed_for(13));
    std::size_t good = 0;
    for (int t = 0; t < 100; ++t) {
      const auto cp = build_code_pair(random_grassmannian(rng, 3 + t % 5, 2, 1 + rng() % 8));
      good += hg_zero(cp) && (cp.H() * cp.G()).is_zero();
    }
    r.measured = std::to_string(good) + "/100";
    r.bound = "100/100";
    return good == 100;
  });
  if (!c) return;
  R.check("codes/universal-cover", "im G of the universal cover equals ker H_X", {}, [&](CheckRecord& r) {
    const auto u = universal_cover(*c);
    const auto K = kernel_H(*c);
    r.measured = "dim ker H " + std::to_string(K.dim) + ", rank G " + std::to_string(rank_G(*c)) + ", lifted " +
                 (u.distinct ? "distinct" : "not distinct");
    return u.image_is_kernel && u.dim == K.dim && u.cover.triangles == c->triangles;
  });
  SpectralOptions opt;
  opt.seed = ctx.seed_for(13) + 1;
  double lam = 1;
  R.check("codes/lambda", "measured lambda of the 1-skeleton of X", {}, [&](CheckRecord& r) {
    const auto s = graph_lambda(one_skeleton(ctx.X()), opt);
    lam = s.lambda;
    r.measured = num(lam);
    r.note = "used for the bias and weight window";
    return !s.disconnected && lam < 1;
  });
  DistanceReport d;
  R.check("codes/bias", "bias(X(0)) <= lambda/(1-lambda)", {}, [&](CheckRecord& r) {
    d = expansion_to_distance_check(*c, lam, ctx.config().tol);
    r.measured = num(d.bias);
    r.bound = num(d.bound);
    r.note = d.reason;
    return !d.skipped && d.bias_ok;
  });
  R.check("codes/weight-window", "all nonzero codeword weights of im G_X in the window", {}, [&](CheckRecord& r) {
    r.measured = std::to_string(d.window.codewords) + " codewords, relative weights in [" + num(d.window.min_rel) +
                 ", " + num(d.window.max_rel) + "]";
    r.bound = "[" + num(0.5 - d.bound / 2) + ", " + num(0.5 + d.bound / 2) + "], 65535 codewords";
    return d.ok() && d.window.ok && d.window.codewords == 65535;
  });
}

void c14_hommodswap(Recorder& R, VerifyContext& ctx) {
  std::size_t done = 0, drawn = 0, bad = 0, nontrivial = 0, disconnected = 0;
  std::string first_bad;
  R.check("homology/hommodswap", "dim Z1/(S1+B1) = dim ker G^T / im H^T with inverse maps",
          {{"toys", 100}, {"k", "3..6"}, {"max_vertices", 14}}, [&](CheckRecord& r) {
            std::mt19937_64 rng(ctx.seed_for(14));
            while (done < 100) {
              ++drawn;
              const std::size_t k = 3 + drawn % 4;
              const auto c = random_code(rng, k, rng() % 6, rng() % 5);
              HomModSwapReport h;
              try {
                h = hommodswap_check(c);
              } catch (const DisconnectedError&) {
                ++disconnected;
                continue;
              }
              ++done;
              nontrivial += h.rhs > 0;
              if (!h.ok() || h.rhs != hom_quotient_dim(c)) {
                if (!bad) first_bad = "draw " + std::to_string(drawn);
                ++bad;
              }
            }
            r.measured = std::to_string(done - bad) + "/" + std::to_string(done) + " toys (" + std::to_string(nontrivial) +
                         " with nonzero quotient, " + std::to_string(disconnected) + " disconnected draws discarded)";
            r.bound = "100/100";
            r.note = first_bad;
            return bad == 0 && done == 100;
          });
  R.check("homology/nonvacuous", "some toys have a nonzero quotient", {}, [&](CheckRecord& r) {
    r.measured = std::to_string(nontrivial);
    r.bound = "> 0";
    return nontrivial > 0;
  });
}

/// Six unit vectors of F2^10 and no triangles.
CodePair quotient_toy() {
  std::vector<std::uint64_t> v;
  for (int j = 0; j < 6; ++j) v.push_back(std::uint64_t(1) << j);
  return code_from_tops(10, v, {});
}

void c15_quotient(Recorder& R, VerifyContext& ctx) {
  const auto c = quotient_toy();
  QuotientTrace tr;
  R.check("quotient/toy", "toy with |X(0)| = 6 in F2^10", {{"k", 10}, {"vertices", 6}}, [&](CheckRecord& r) {
    tr = quotient_iterate(c, 3, HypothesisMode::CountingBound);
    r.measured = "initial quotient dim " + std::to_string(tr.initial_dim) + ", span dim " + std::to_string(rank_G(c));
    return c.n() == 6;
  });
  for (std::size_t s = 1; s <= 3; ++s)
    R.check("quotient/step-" + std::to_string(s),
            "quotient raises dim ker G^T / im H^T by one, keeps H and the 1-skeleton, H_1 meets the bound",
            {{"step", s}, {"hypothesis", "|span X(0)| >= |X(0)|^2/2 + |X(0)|/2 + 2"}}, [&](CheckRecord& r) {
              if (tr.rows.size() < s) {
                r.measured = "not reached";
                r.note = tr.stop_reason;
                return false;
              }
              const auto& row = tr.rows[s - 1];
              r.measured = "v = " + F2Vec::from_u64(row.v, row.ambient).to_hex() + ", quotient dim " +
                           std::to_string(row.quotient_dim) +
                           (row.h1 ? ", dim H_1 " + std::to_string(*row.h1) : std::string(", H_1 not computed"));
              r.bound = "|span| " + to_string(row.span_size) + " >= " + to_string(row.needed) + ", dim H_1 >= " +
                        std::to_string(row.quotient_dim);
              return row.plus_one && row.incidence_preserved && row.skeleton_preserved && row.h1 && row.h1_bound &&
                     row.hommodswap;
            });
  R.check("quotient/direct-existence", "same mechanism choosing v by direct search (supplementary)",
          {{"mode", "direct-existence"}}, [&](CheckRecord& r) {
            const auto d = quotient_iterate(c, 3, HypothesisMode::DirectExistence);
            std::ostringstream os;
            for (const auto& row : d.rows)
              os << (row.step > 1 ? ", " : "") << "step " << row.step << ": dim " << row.quotient_dim << " H_1 "
                 << (row.h1 ? std::to_string(*row.h1) : "-");
            r.measured = os.str();
            r.note = d.stop_reason;
            return d.ok();
          });
  (void)ctx;
}

bool c4_known(const CriterionResult& res) {
  std::set<std::string> fails, expect;
  for (const auto& c : res.checks)
    if (c.status == CheckStatus::Fail) fails.insert(c.id);
  for (const char* tag : {"q3m3", "q4m3"}) {
    expect.insert(std::string("perp/identity-") + tag);
    expect.insert(std::string("perp/lambda-") + tag);
  }
  return fails == expect && perp_failure_is_scalar_multiples(3, 3) && perp_failure_is_scalar_multiples(4, 3);
}

bool c15_known(const CriterionResult& res) {
  std::set<std::string> fails;
  bool direct_ok = false, stopped = false;
  for (const auto& c : res.checks) {
    if (c.status == CheckStatus::Fail) fails.insert(c.id);
    if (c.id == "quotient/direct-existence") direct_ok = c.status == CheckStatus::Pass;
    if (c.id == "quotient/step-3") stopped = c.note.rfind("step 3:", 0) == 0 && c.measured == "not reached";
  }
  return fails == std::set<std::string>{"quotient/step-3"} && direct_ok && stopped;
}

using Runner = void (*)(Recorder&, VerifyContext&);
const std::map<int, Runner>& runners() {
  static const std::map<int, Runner> m{{1, c1_poset_axioms}, {2, c2_rank_counts},    {3, c3_dominated_by_identity},
                                       {4, c4_perp},         {5, c5_mat1ud},         {6, c6_mat1uddomI},
                                       {7, c7_localized},    {8, c8_construction},   {9, c9_counting},
                                       {10, c10_cayley},     {11, c11_basisify},     {12, c12_trickle},
                                       {13, c13_codes},      {14, c14_hommodswap},   {15, c15_quotient}};
  return m;
}

const std::vector<std::pair<std::string, std::vector<int>>>& suites() {
  static const std::vector<std::pair<std::string, std::vector<int>>> s{
      {"poset-axioms", {1, 2, 3}}, {"perp", {4}},           {"walks", {5, 6, 7, 11}},
      {"construction", {8}},       {"cayley", {9, 10, 12}}, {"codes", {13}},
      {"homology", {14, 15}},      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}}};
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
  if (cap == 0) throw UsageError("--cap must be positive");
  if (!(tol > 0) || tol > 1e-3) throw UsageError("--tol must lie in (0, 1e-3]");
  if (r < 1 || b < 1 || n < 1) throw UsageError("--r, --b and --n must be positive");
  if (q < 2 || m < 1) throw UsageError("--q must be at least 2 and --m positive");
  if (verbosity < 0) throw UsageError("verbosity must be non-negative");
}

nlohmann::json RunConfig::to_json() const {
  return {{"subcommand", subcommand}, {"suite", suite}, {"r", r},         {"b", b},
          {"n", n},                   {"q", q},         {"m", m},         {"cap", cap},
          {"seed", seed},             {"tol", tol},     {"samples", samples}, {"quick", quick}};
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json().dump())));
  return buf;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "?";
}

bool CriterionResult::failed() const { return failures() > 0; }

std::size_t CriterionResult::failures() const {
  return std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == CheckStatus::Fail; });
}

bool CriterionResult::skipped() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.status == CheckStatus::Skipped; });
}

std::size_t VerificationReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : criteria) n += c.failures();
  return n;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["config"] = config.to_json();
  j["config_hash"] = config.hash();
  j["seconds"] = seconds;
  j["failures"] = failures();
  auto& cs = j["criteria"] = nlohmann::json::array();
  for (const auto& c : criteria) {
    nlohmann::json x{{"id", c.id},
                     {"title", c.title},
                     {"status", c.skipped() ? "skipped" : c.failed() ? "fail" : "pass"},
                     {"known_failure", c.known_failure},
                     {"seconds", c.seconds},
                     {"budget_seconds", c.budget_seconds}};
    if (c.known_failure) x["known_reason"] = c.known_reason;
    auto& ch = x["checks"] = nlohmann::json::array();
    for (const auto& r : c.checks)
      ch.push_back({{"id", r.id},
                    {"anchor", r.anchor},
                    {"params", r.params},
                    {"measured", r.measured},
                    {"bound", r.bound},
                    {"status", to_string(r.status)},
                    {"note", r.note},
                    {"seconds", r.seconds}});
    cs.push_back(std::move(x));
  }
  return j;
}

std::string VerificationReport::text_table() const {
  std::ostringstream os;
  os << "config " << config.hash() << "  suite " << config.suite << (config.quick ? " (quick)" : "") << "  seed "
     << config.seed << "\n";
  char line[512];
  std::snprintf(line, sizeof line, "%-3s %-36s %-8s %9s  %s\n", "#", "check", "status", "seconds", "measured | bound");
  os << line;
  for (const auto& c : criteria) {
    os << "[" << c.id << "] " << c.title << (c.known_failure ? "  (known failure)" : "") << "\n";
    for (const auto& r : c.checks) {
      std::string mb = r.measured;
      if (!r.bound.empty()) mb += " | " + r.bound;
      if (!r.note.empty()) mb += " | " + r.note;
      std::snprintf(line, sizeof line, "%-3d %-36s %-8s %9.2f  %s\n", c.id, r.id.c_str(), to_string(r.status).c_str(),
                    r.seconds, mb.c_str());
      os << line;
    }
  }
  os << failures() << " failing checks, " << std::fixed;
  os.precision(1);
  os << seconds << " s\n";
  return os.str();
}

VerifyContext::VerifyContext(RunConfig cfg) : cfg_(std::move(cfg)), spec_(kX114) {}
VerifyContext::~VerifyContext() = default;

const GradedComplex& VerifyContext::X() {
  if (!X_) X_ = std::make_unique<GradedComplex>(build_X(spec_, std::nullopt, cfg_.cap));
  return *X_;
}

const GradedComplex& VerifyContext::beta() {
  if (!beta_) beta_ = std::make_unique<GradedComplex>(basisify(X()));
  return *beta_;
}

const CodePair& VerifyContext::code() {
  if (!code_) code_ = std::make_unique<CodePair>(build_code_pair(X()));
  return *code_;
}

std::uint64_t VerifyContext::seed_for(int criterion) const { return derive_seed(cfg_.seed, criterion); }

const std::vector<CriterionInfo>& criteria_table() {
  static const std::vector<CriterionInfo> t{
      {1, "Matrix-poset axioms on 3x3 over F2", 60, 1},
      {2, "Rank-level counts", 60, 32},
      {3, "Dominated-by-identity criteria agree", 60, 2},
      {4, "Perp-graph identity and lambda bound", 60, 1},
      {5, "Up-down walk on rank-1 2x2 over F16", 300, 15},
      {6, "Up-down walk on rank-1 below I_3 over F16", 900, 16},
      {7, "Localized graph at q = 8, m = 3", 300, 5},
      {8, "Construction X^{1,1,4}", 1800, 35},
      {9, "Counting claims at (1,1,4)", 60, 1},
      {10, "Cayley structure of beta(X^{1,1,4})", 600, 70},
      {11, "Basisification preserves local expansion", 300, 2},
      {12, "Trickle-down for the Cayley complex", 3600, 15},
      {13, "Codes from X^{1,1,4}", 600, 12},
      {14, "Homology modulo swap cycles", 600, 5},
      {15, "Quotient mechanism", 300, 2}};
  return t;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [n, _] : suites()) out.push_back(n);
  return out;
}

std::vector<int> suite_criteria(const std::string& suite) {
  for (const auto& [n, ids] : suites())
    if (n == suite) return ids;
  std::string names;
  for (const auto& n : suite_names()) names += (names.empty() ? "" : ", ") + n;
  throw UsageError("unknown suite '" + suite + "' (expected one of: " + names + ")");
}

CriterionResult run_criterion(int id, VerifyContext& ctx) {
  const auto& table = criteria_table();
  const auto info = std::find_if(table.begin(), table.end(), [&](const CriterionInfo& c) { return c.id == id; });
  if (info == table.end()) throw UsageError("no criterion " + std::to_string(id));
  CriterionResult res;
  res.id = id;
  res.title = info->title;
  res.budget_seconds = info->budget_seconds;
  Recorder R(res);
  if (ctx.config().quick && info->estimate_seconds >= 60) {
    R.skip("criterion-" + std::to_string(id), "plumbing",
           "skipped (quick): typical runtime " + num(info->estimate_seconds) + " s");
    return res;
  }
  const auto t0 = Clock::now();
  runners().at(id)(R, ctx);
  res.seconds = since(t0);
  R.check("runtime", "plumbing", {{"budget_seconds", info->budget_seconds}}, [&](CheckRecord& c) {
    c.measured = num(res.seconds) + " s";
    c.bound = num(info->budget_seconds) + " s";
    return res.seconds <= info->budget_seconds;
  });
  if (res.failed()) {
    if (id == 4 && c4_known(res)) {
      res.known_failure = true;
      res.known_reason =
          "for q > 2 the vectors u and c u share all of u^perp, so (A^2)_{u,cu} = q^{m-1}-1 and the identity and "
          "bound fail; q = 2 passes";
    } else if (id == 15 && c15_known(res)) {
      res.known_failure = true;
      res.known_reason =
          "the counting hypothesis needs |span X(0)| >= 23 for 6 vertices, so it holds for at most two steps from "
          "span dimension 6; direct search completes all three";
    }
  }
  return res;
}

VerificationReport run_verify(const RunConfig& cfg, std::ostream* log) {
  cfg.validate();
  VerificationReport rep;
  rep.config = cfg;
  const auto ids = suite_criteria(cfg.suite);
  VerifyContext ctx(cfg);
  const auto t0 = Clock::now();
  for (int id : ids) {
    rep.criteria.push_back(run_criterion(id, ctx));
    if (log) {
      const auto& c = rep.criteria.back();
      *log << "[" << c.id << "] " << c.title << ": "
           << (c.skipped() ? "skipped" : !c.failed() ? "pass" : c.known_failure ? "FAIL (known)" : "FAIL") << " ("
           << num(c.seconds) << " s)" << std::endl;
    }
  }
  rep.seconds = since(t0);
  return rep;
}

}  // namespace hdx
