#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "nambu/catalog.hpp"
#include "nambu/error.hpp"

namespace nambu {
namespace {

const IdentityCheck* find(const std::string& id) {
  for (const auto& c : catalog()) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

TEST(Catalog, IdsAreUniqueAndComplete) {
  std::set<std::string> ids;
  for (const auto& c : catalog()) {
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_FALSE(c.locator.empty()) << c.id;
    EXPECT_FALSE(c.description.empty()) << c.id;
    const auto& suites = suite_names();
    EXPECT_NE(std::find(suites.begin(), suites.end(), c.suite), suites.end()) << c.id;
  }
  const std::pair<const char*, int> families[] = {{"S2", 7}, {"SN", 8}, {"CH", 6}, {"NB", 7},
                                                  {"QN", 13}, {"OS", 4}, {"ST", 2}};
  for (const auto& [prefix, count] : families) {
    for (int k = 1; k <= count; ++k) {
      char id[8];
      std::snprintf(id, sizeof id, "%s-%02d", prefix, k);
      EXPECT_NE(find(id), nullptr) << id;
    }
  }
  EXPECT_EQ(ids.size(), 47u);
}

TEST(Catalog, AtLeastThreeNegativeControls) {
  int controls = 0;
  for (const auto& c : catalog()) controls += c.has_negative_control ? 1 : 0;
  EXPECT_GE(controls, 3);
}

TEST(Glob, Patterns) {
  EXPECT_TRUE(glob_match("S2-*", "S2-03"));
  EXPECT_TRUE(glob_match("QN-0?", "QN-07"));
  EXPECT_FALSE(glob_match("QN-0?", "QN-10"));
  EXPECT_TRUE(glob_match("[SC]?-01", "CH-01"));
  EXPECT_FALSE(glob_match("[!SC]?-01", "CH-01"));
  EXPECT_TRUE(glob_match("*", ""));
  EXPECT_FALSE(glob_match("S2-0", "S2-01"));
}

TEST(RunSuite, SphereEntriesPass) {
  RunOptions opts;
  opts.id_glob = "S2-*";
  Report r = run_suite(opts);
  EXPECT_EQ(r.results.size(), 7u);
  EXPECT_TRUE(r.all_pass()) << r.to_text();
}

TEST(RunSuite, EmptyMatchIsUsageError) {
  RunOptions opts;
  opts.id_glob = "ZZ-*";
  EXPECT_THROW(run_suite(opts), UsageError);
  RunOptions bad_suite;
  bad_suite.suite = "nonsense";
  EXPECT_THROW(run_suite(bad_suite), UsageError);
}

TEST(RunSuite, NegativeControlsFailWithWitness) {
  for (const char* id : {"S2-01", "S2-03", "QN-07"}) {
    const IdentityCheck* c = find(id);
    ASSERT_NE(c, nullptr);
    ASSERT_TRUE(c->has_negative_control) << id;
    CheckContext ctx;
    ctx.perturb = true;
    ResultRow row = run_check(*c, ctx);
    EXPECT_EQ(row.status, Status::Fail) << id;
    EXPECT_NE(row.detail.find(" = "), std::string::npos) << row.detail;
  }
}

TEST(RunCheck, ExceptionsBecomeErrors) {
  IdentityCheck c{"XX-01", "star", "throws", "nowhere", false,
                  [](const CheckContext&) -> CheckOutcome { throw std::runtime_error("boom"); }};
  ResultRow row = run_check(c, CheckContext{});
  EXPECT_EQ(row.status, Status::Error);
  EXPECT_NE(row.detail.find("boom"), std::string::npos);
}

TEST(Report, JsonIsStableAndFollowsTheSchema) {
  RunOptions opts;
  opts.suite = "star";
  const std::string first = run_suite(opts).to_json(false);
  EXPECT_EQ(run_suite(opts).to_json(false), first);
  opts.jobs = 2;
  EXPECT_EQ(run_suite(opts).to_json(false), first);

  auto j = nlohmann::json::parse(first);
  EXPECT_EQ(j["suite"], "star");
  EXPECT_EQ(j["seed"], 1);
  ASSERT_EQ(j["results"].size(), 2u);
  for (const auto& row : j["results"]) {
    for (const char* key : {"id", "paper_ref", "status", "detail", "elapsed_ms"}) EXPECT_TRUE(row.contains(key)) << key;
    EXPECT_EQ(row["status"], "pass");
    EXPECT_EQ(row["elapsed_ms"], 0);
  }
  EXPECT_EQ(j["summary"]["pass"], 2);
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_EQ(j["summary"]["error"], 0);
}

TEST(Report, SeedChangesRandomInstancesButNotVerdicts) {
  RunOptions opts;
  opts.id_glob = "ST-02";
  opts.seed = 99;
  Report r = run_suite(opts);
  EXPECT_EQ(r.seed, 99u);
  EXPECT_TRUE(r.all_pass());
}

}  // namespace
}  // namespace nambu
