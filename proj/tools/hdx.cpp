// hdx: build, inspect and verify the Grassmannian complexes, their Cayley complexes and codes.
// Exit codes: 0 pass, 1 check failure, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hdx/cayley.hpp"
#include "hdx/codes.hpp"
#include "hdx/homology.hpp"
#include "hdx/parallel.hpp"
#include "hdx/report.hpp"
#include "hdx/toys.hpp"
#include "hdx/walks.hpp"

using namespace hdx;
using nlohmann::json;

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
  if (!f) throw UsageError("write failed: " + out);
}

void emit_json(const std::string& out, const json& j) { emit(out, j.dump(2) + "\n"); }

GradedComplex load(const std::string& path) {
  if (path.empty()) throw UsageError("--from is required");
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  json j;
  try {
    f >> j;
    return complex_from_json(j.contains("complex") ? j["complex"] : j);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<std::uint64_t> vertex_names(const GradedComplex& S) {
  return {S.level(0).labels.begin(), S.level(0).labels.end()};
}

std::vector<double> vertex_weights(const GradedComplex& S) {
  std::vector<double> w;
  for (const auto& x : S.level(0).weights) w.push_back(to_double(x));
  return w;
}

json spectral_json(const SpectralResult& s) {
  return {{"lambda", s.lambda},       {"lambda2", s.lambda2}, {"lambda_min", s.lambda_min},
          {"residual", s.residual},   {"states", s.states},   {"iterations", s.iterations},
          {"disconnected", s.disconnected}, {"dense", s.dense}};
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string x; std::getline(ss, x, ',');)
    if (!x.empty()) out.push_back(x);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-dimensional expander toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string from, format = "json", what = "complex", checks = "symmetry,links,counting", mode = "counting",
                    restriction = "none";
  int max_rank = -2, rank_i = -2;
  std::size_t links = 5, quotients = 3;
  bool lambda = false, do_bias = false, window = false, toy = false, hex = false;
  std::string parity_out;

  auto add_params = [&](CLI::App* s) {
    s->add_option("--r", cfg.r, "Hadamard depth r");
    s->add_option("--b", cfg.b, "field degree, q = 2^b");
    s->add_option("--n", cfg.n, "matrix size n");
    s->add_option("--cap", cfg.cap, "face cap per rank");
  };
  auto add_common = [&](CLI::App* s) {
    s->add_option("--seed", cfg.seed, "run seed");
    s->add_option("--tol", cfg.tol, "numeric tolerance");
    s->add_option("--out", cfg.out, "output path (default stdout)");
    s->add_flag("-v,--verbose", cfg.verbosity, "more output");
  };

  auto* build = app.add_subcommand("build", "build X^{r,b,n} and export it as JSON");
  add_params(build);
  add_common(build);
  build->add_option("--max-rank", max_rank, "highest rank to build");
  build->add_flag("--hex", hex, "add faces as hex-encoded flattened matrices");

  auto* walks = app.add_subcommand("walks", "spectral expansion of matrix-poset walks");
  walks->add_option("--q", cfg.q, "field size (power of 2)");
  walks->add_option("--m", cfg.m, "matrix size");
  walks->add_option("--restriction", restriction, "none | below-identity | localized | perp")
      ->check(CLI::IsMember({"none", "below-identity", "localized", "perp"}));
  add_common(walks);

  auto* expansion = app.add_subcommand("expansion", "local spectral expansion of a stored complex");
  expansion->add_option("--from", from, "complex JSON");
  expansion->add_option("--rank", rank_i, "only this rank (-1 for the 1-skeleton)");
  expansion->add_option("--samples", cfg.samples, "sample this many links when there are many");
  add_common(expansion);

  auto* cayley = app.add_subcommand("cayley", "Cayley complex of the basisification");
  cayley->add_option("--from", from, "complex JSON");
  cayley->add_option("--check", checks, "comma list of symmetry, links, counting");
  cayley->add_option("--links", links, "random vertices for the link check");
  cayley->add_flag("--lambda", lambda, "1-skeleton expansion via the character sweep");
  add_params(cayley);
  add_common(cayley);

  auto* codes = app.add_subcommand("codes", "codes G_X and H_X of a rank-1 F2 complex");
  codes->add_option("--from", from, "complex JSON");
  codes->add_flag("--bias", do_bias, "bias of the generator code");
  codes->add_flag("--distance-window", window, "codeword weights against the expansion window");
  codes->add_option("--parity-out", parity_out, "write the parity checks here, one per line");
  add_common(codes);

  auto* homology = app.add_subcommand("homology", "swap-cycle homology and the quotient mechanism");
  homology->add_option("--from", from, "complex JSON (rank 1, span dimension <= 10)");
  homology->add_flag("--toy", toy, "six unit vectors of F2^10");
  homology->add_option("--quotients", quotients, "number of successive quotients");
  homology->add_option("--mode", mode, "counting | direct")->check(CLI::IsMember({"counting", "direct"}));
  add_common(homology);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suites;
  for (const auto& s : suite_names()) suites += (suites.empty() ? "" : " | ") + s;
  verify->add_option("--suite", cfg.suite, suites);
  verify->add_flag("--quick", cfg.quick, "only sub-minute checks");
  verify->add_option("--samples", cfg.samples, "sample sizes");
  add_common(verify);

  auto* exp = app.add_subcommand("export", "export a stored complex");
  exp->add_option("--from", from, "complex JSON");
  exp->add_option("--format", format, "json | dot | csv")->check(CLI::IsMember({"json", "dot", "csv"}));
  exp->add_option("--what", what, "complex | skeleton")->check(CLI::IsMember({"complex", "skeleton"}));
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.validate();

    if (*build) {
      const GrassConstructSpec spec{cfg.r, cfg.b, cfg.n};
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto X = build_X(spec, max_rank >= -1 ? std::optional<int>(max_rank) : std::nullopt, cfg.cap);
      json j{{"params", {{"r", cfg.r}, {"b", cfg.b}, {"n", cfg.n}}}, {"complex", complex_to_json(X)}};
      if (hex) {
        auto& h = j["hex_faces"] = json::object();
        for (int i = 0; i <= X.top_rank(); ++i) h[std::to_string(i)] = faces_to_hex(spec, X, i);
      }
      emit_json(cfg.out, j);
      for (int i = -1; i <= X.top_rank(); ++i) std::cerr << "|X(" << i << ")| = " << X.count(i) << "\n";
      return 0;
    }

    if (*walks) {
      int b = 0;
      while ((1u << b) < cfg.q) ++b;
      if (restriction == "perp") {
        const auto p = perp_identity_check(cfg.q, cfg.m, cfg.tol);
        emit_json(cfg.out, {{"q", cfg.q}, {"m", cfg.m}, {"vertices", p.vertices}, {"identity_exact", p.identity_exact},
                            {"first_mismatch", p.first_mismatch}, {"lambda", p.lambda}, {"bound", p.bound}});
        return p.ok() ? 0 : 1;
      }
      if ((1u << b) != cfg.q || b > 16) throw UsageError("--q must be a power of 2 up to 2^16");
      SpectralOptions opt;
      opt.seed = cfg.seed;
      json j{{"q", cfg.q}, {"m", cfg.m}, {"restriction", restriction}};
      if (restriction == "localized") {
        const auto L = localized_graph(FieldSpec(b), cfg.m);
        j["states"] = L.vertices.size();
        j["spectral"] = spectral_json(graph_lambda(L.graph, opt));
      } else {
        const auto w = matrix_walk_updown(
            {FieldSpec(b), cfg.m},
            restriction == "none" ? MatrixRestriction::None : MatrixRestriction::DominatedByIdentity, opt);
        j["states"] = w.states;
        j["upper_states"] = w.upper_states;
        j["spectral"] = spectral_json(w.spectral);
      }
      emit_json(cfg.out, j);
      return 0;
    }

    if (*expansion) {
      const auto X = load(from);
      json j{{"ranks", json::array()}};
      for (int i = -1; i <= X.top_rank() - 2; ++i) {
        if (rank_i >= -1 && i != rank_i) continue;
        const auto le = local_expansion(X, i, 5000, cfg.samples ? cfg.samples : 32, cfg.seed);
        j["ranks"].push_back({{"i", i},
                              {"lambda", le.lambda},
                              {"argmax", le.argmax},
                              {"faces_checked", le.faces_checked},
                              {"sampled", le.sampled},
                              {"disconnected", le.disconnected.size()}});
      }
      emit_json(cfg.out, j);
      return 0;
    }

    if (*cayley) {
      const auto X = load(from);
      if (X.ambient() == 0 || X.ambient() > 24) throw UsageError("cayley: ambient dimension must be in 1..24");
      const auto S = X.kind() == ComplexKind::Grassmannian ? basisify(X) : X;
      const std::size_t k = X.ambient();
      const CayleySpec cs{k, &S};
      json j{{"k", k}, {"generators", json::array()}};
      for (auto g : vertex_names(S)) j["generators"].push_back(F2Vec::from_u64(g, k).to_hex());
      bool ok = true;
      for (const auto& c : split(checks)) {
        if (c == "symmetry") {
          const auto r = check_symmetry(S, k);
          j["symmetry"] = {{"ok", r.ok}, {"faces_checked", r.faces_checked}, {"first_violation", r.first_violation}};
          ok = ok && r.ok;
        } else if (c == "links") {
          std::mt19937_64 rng(derive_seed(cfg.seed, 10));
          auto& arr = j["links"] = json::array();
          for (std::size_t t = 0; t < links; ++t) {
            const std::uint64_t v = rng() & ((std::uint64_t(1) << k) - 1);
            const auto r = check_link_bijection(cs, v, cayley_vertex_link(cs, v));
            arr.push_back({{"v", F2Vec::from_u64(v, k).to_hex()}, {"ok", r.ok()}, {"first_violation", r.first_violation}});
            ok = ok && r.ok();
          }
        } else if (c == "counting") {
          if (X.kind() != ComplexKind::Grassmannian) throw UsageError("counting needs a grassmannian complex");
          const auto r = cayley_counting_check({cfg.r, cfg.b, cfg.n}, &X);
          j["counting"] = {{"vertices", to_string(r.vertices)},
                           {"faces_X", to_string(r.faces_X)},
                           {"faces_per_vertex", to_string(r.faces_per_vertex)},
                           {"bound", to_string(r.bound)},
                           {"ok", r.ok()}};
          ok = ok && r.ok();
        } else {
          throw UsageError("unknown check '" + c + "'");
        }
      }
      if (lambda) {
        const auto s = cayley_graph_lambda(k, vertex_names(S), vertex_weights(S));
        j["lambda"] = {{"lambda", s.lambda}, {"second", s.second}, {"minimum", s.minimum},
                       {"argmax", F2Vec::from_u64(s.argmax, k).to_hex()}};
      }
      emit_json(cfg.out, j);
      return ok ? 0 : 1;
    }

    if (*codes) {
      const auto X = load(from);
      const auto c = build_code_pair(X);
      const auto K = kernel_H(c);
      json j = code_to_json(c);
      j["hg_zero"] = hg_zero(c);
      j["rank_G"] = rank_G(c);
      j["dim_ker_H"] = K.dim;
      j["quotient_dim"] = K.dim - rank_G(c);
      bool ok = hg_zero(c);
      if (do_bias || window) {
        SpectralOptions opt;
        opt.seed = cfg.seed;
        const auto s = graph_lambda(one_skeleton(X), opt);
        const auto d = expansion_to_distance_check(c, s.lambda, cfg.tol);
        j["lambda"] = s.lambda;
        j["bias"] = d.bias;
        j["bias_bound"] = d.bound;
        j["bias_ok"] = d.bias_ok;
        if (window)
          j["distance_window"] = {{"ok", d.ok()},
                                  {"skipped", d.skipped},
                                  {"reason", d.reason},
                                  {"codewords", d.window.codewords},
                                  {"min_relative_weight", d.window.min_rel},
                                  {"max_relative_weight", d.window.max_rel}};
        ok = ok && !d.skipped && d.bias_ok && (!window || d.ok());
      }
      if (!parity_out.empty()) emit(parity_out, parity_check_text(c));
      emit_json(cfg.out, j);
      return ok ? 0 : 1;
    }

    if (*homology) {
      CodePair c;
      if (toy) {
        std::vector<std::uint64_t> v;
        for (int i = 0; i < 6; ++i) v.push_back(std::uint64_t(1) << i);
        c = code_from_tops(10, v, {});
      } else {
        c = build_code_pair(load(from));
      }
      json j;
      bool ok = true;
      if (rank_G(c) <= 10) {
        const auto h = hommodswap_check(c);
        j["hommodswap"] = {{"z1", h.z1},   {"b1", h.b1},   {"s1", h.s1},   {"h1", h.h1},
                           {"lhs", h.lhs}, {"rhs", h.rhs}, {"ok", h.ok()}};
        ok = h.ok();
      }
      if (quotients > 0) {
        const auto t = quotient_iterate(
            c, quotients, mode == "direct" ? HypothesisMode::DirectExistence : HypothesisMode::CountingBound);
        j["quotients"] = trace_to_json(t);
        ok = ok && t.ok();
      }
      emit_json(cfg.out, j);
      return ok ? 0 : 1;
    }

    if (*verify) {
      const auto rep = run_verify(cfg, cfg.verbosity > 0 ? &std::clog : nullptr);
      std::cout << rep.text_table();
      if (!cfg.out.empty()) emit_json(cfg.out, rep.to_json());
      return rep.ok() ? 0 : 1;
    }

    if (*exp) {
      const auto X = load(from);
      if (what == "complex") {
        if (format != "json") throw UsageError("complexes export as json only");
        emit_json(cfg.out, complex_to_json(X));
      } else {
        const auto G = one_skeleton(X);
        if (format == "dot")
          emit(cfg.out, graph_to_dot(G));
        else if (format == "csv")
          emit(cfg.out, graph_to_csv(G));
        else
          throw UsageError("skeletons export as dot or csv");
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "skipped (cap): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
