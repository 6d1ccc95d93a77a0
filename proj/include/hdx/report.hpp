#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdx/codes.hpp"
#include "hdx/graded_complex.hpp"
#include "hdx/grassmann.hpp"
#include "json.hpp"

namespace hdx {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand = "verify";
  std::string suite = "all";
  int r = 1, b = 1, n = 4;
  std::uint32_t q = 2, m = 3;
  std::uint64_t cap = 10'000'000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t samples = 0;  // 0 keeps the per-check defaults
  bool quick = false;
  std::string out;
  int verbosity = 0;

  /// Throws UsageError on non-positive caps or a tolerance outside (0, 1e-3].
  void validate() const;
  nlohmann::json to_json() const;
  /// Hex FNV-1a of the canonical JSON dump.
  std::string hash() const;
};

enum class CheckStatus { Pass, Fail, Skipped };
std::string to_string(CheckStatus s);

struct CheckRecord {
  std::string id;
  std::string anchor;  // claim being checked, or "plumbing"
  nlohmann::json params = nlohmann::json::object();
  std::string measured, bound;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
  double seconds = 0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckRecord> checks;
  double seconds = 0;
  double budget_seconds = 0;
  /// Set when the failing checks are exactly the ones analysed as unattainable.
  bool known_failure = false;
  std::string known_reason;
  bool failed() const;
  bool skipped() const;  // every check skipped
  std::size_t failures() const;
};

struct VerificationReport {
  RunConfig config;
  std::vector<CriterionResult> criteria;
  double seconds = 0;
  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  nlohmann::json to_json() const;
  std::string text_table() const;
};

/// Caches the construction X^{r,b,n}, its basisification and its code pair between criteria.
class VerifyContext {
 public:
  explicit VerifyContext(RunConfig cfg);
  ~VerifyContext();
  const RunConfig& config() const { return cfg_; }
  const GrassConstructSpec& spec() const { return spec_; }
  const GradedComplex& X();
  const GradedComplex& beta();
  const CodePair& code();
  /// Independent stream per criterion.
  std::uint64_t seed_for(int criterion) const;

 private:
  RunConfig cfg_;
  GrassConstructSpec spec_;
  std::unique_ptr<GradedComplex> X_, beta_;
  std::unique_ptr<CodePair> code_;
};

struct CriterionInfo {
  int id;
  const char* title;
  double budget_seconds;  // stated runtime limit
  double estimate_seconds;  // typical time on one core, used by --quick
};
const std::vector<CriterionInfo>& criteria_table();

std::vector<std::string> suite_names();
/// Throws UsageError for an unknown suite.
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id, VerifyContext& ctx);
/// Runs the configured suite; progress lines go to `log` when given.
VerificationReport run_verify(const RunConfig& cfg, std::ostream* log = nullptr);

}  // namespace hdx
