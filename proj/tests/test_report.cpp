#include <doctest.h>

#include <set>

#include "hdx/report.hpp"

using namespace hdx;

TEST_CASE("config validation and hashing") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  RunConfig bad = c;
  bad.tol = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad.tol = 1e-2;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad = c;
  bad.cap = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);

  RunConfig d = c;
  CHECK(d.hash() == c.hash());
  d.seed = 1;
  CHECK(d.hash() != c.hash());
  CHECK(c.hash().size() == 16);
}

TEST_CASE("suites") {
  const auto names = suite_names();
  CHECK(names.size() == 8);
  CHECK_THROWS_AS(suite_criteria("nosuch"), UsageError);
  const auto all = suite_criteria("all");
  CHECK(all.size() == 15);
  std::set<int> covered;
  for (const auto& n : names)
    if (n != "all")
      for (int id : suite_criteria(n)) CHECK(covered.insert(id).second);
  CHECK(covered.size() == 15);
  CHECK(suite_criteria("perp") == std::vector<int>{4});
  CHECK(criteria_table().size() == 15);
}

TEST_CASE("perp suite records identity and bound per pair") {
  RunConfig c;
  c.suite = "perp";
  const auto rep = run_verify(c);
  REQUIRE(rep.criteria.size() == 1);
  const auto& r = rep.criteria[0];
  std::size_t identity = 0, lambda = 0;
  for (const auto& ch : r.checks) {
    identity += ch.id.rfind("perp/identity-", 0) == 0;
    lambda += ch.id.rfind("perp/lambda-", 0) == 0;
    CHECK_FALSE(ch.anchor.empty());
  }
  CHECK(identity == 5);
  CHECK(lambda == 5);
  // q = 2 holds; q = 3, 4 fail only through scalar multiples, which is recognised
  CHECK(r.failures() == 4);
  CHECK(r.known_failure);
  CHECK_FALSE(rep.ok());
  const auto j = rep.to_json();
  CHECK(j["config_hash"] == c.hash());
  CHECK(j["criteria"][0]["checks"].size() == 11);
  CHECK(rep.text_table().find("perp/identity-q2m2") != std::string::npos);
}

TEST_CASE("quotient criterion and deterministic records") {
  RunConfig c;
  c.suite = "homology";
  VerifyContext ctx(c);
  auto a = run_criterion(15, ctx);
  auto b = run_criterion(15, ctx);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].id == b.checks[i].id);
    if (a.checks[i].id == "runtime") continue;
    CHECK(a.checks[i].measured == b.checks[i].measured);
    CHECK(a.checks[i].status == b.checks[i].status);
  }
  CHECK(a.known_failure);
  CHECK_THROWS_AS(run_criterion(16, ctx), UsageError);
}

TEST_CASE("quick mode records skips explicitly") {
  RunConfig c;
  c.quick = true;
  VerifyContext ctx(c);
  const auto r = run_criterion(10, ctx);
  CHECK(r.skipped());
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].note.find("skipped (quick)") == 0);
  CHECK_FALSE(r.failed());
}
