#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace nambu {

enum class Status { Pass, Fail, Error };

std::string status_name(Status s);

struct CheckOutcome {
  Status status = Status::Pass;
  std::string detail;
};

struct CheckContext {
  std::uint64_t seed = 1;
  int n = 0;          // sphere dimension override; 0 keeps each entry's range
  int draws = 3;      // random instances per "random f" entry
  bool perturb = false;  // negative control: entries that support it tamper with one input

  std::mt19937_64 rng(const std::string& tag) const;
};

struct IdentityCheck {
  std::string id;
  std::string suite;
  std::string description;
  std::string locator;  // where the statement lives, in neutral words
  bool has_negative_control = false;
  std::function<CheckOutcome(const CheckContext&)> run;
};

/// Every entry, sorted by id within suite order s2, sn, chiral, nb, qnb,
/// oscillator, star.
const std::vector<IdentityCheck>& catalog();
const std::vector<std::string>& suite_names();

struct ResultRow {
  std::string id;
  std::string locator;
  Status status = Status::Pass;
  std::string detail;
  std::int64_t elapsed_ms = 0;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<ResultRow> results;
  int pass = 0;
  int fail = 0;
  int error = 0;

  bool all_pass() const { return fail == 0 && error == 0; }
  std::string to_json(bool timing = true) const;
  std::string to_text(bool timing = true) const;
};

struct RunOptions {
  std::string suite = "all";  // suite name or "all"
  std::string id_glob;        // when set, overrides `suite`
  std::uint64_t seed = 1;
  int jobs = 1;
  int n = 0;
  bool perturb = false;
};

/// Shell-style match with '*', '?' and '[a-z]' / '[!a-z]' classes.
bool glob_match(const std::string& pattern, const std::string& text);

/// Runs the matching entries. Throws UsageError when nothing matches.
Report run_suite(const RunOptions& opts);

/// Runs one entry, mapping exceptions to Status::Error.
ResultRow run_check(const IdentityCheck& check, const CheckContext& ctx);

}  // namespace nambu
