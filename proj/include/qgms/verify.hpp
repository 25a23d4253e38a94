#pragma once

// Exhaustive and property checks behind `qgms verify` and the acceptance
// binary. Each check returns a pass flag, a capped list of failures and a
// JSON blob of the numbers it looked at.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgms/report.hpp"

namespace qgms::verify {

struct CheckResult {
  std::string id;    // "C1".."C10" for acceptance criteria, otherwise "<suite>.<name>"
  std::string title;
  bool pass = true;
  std::vector<std::string> failures;
  report::Json details = report::Json::object();
  double seconds = 0;

  // Records a failure; only the first 20 messages are kept.
  void fail(std::string message);
};

struct SuiteOptions {
  // Restricts the deferred suite to one (n, l) pair.
  std::optional<unsigned> n;
  std::optional<unsigned> l;
  std::uint64_t seed = 7;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(std::string_view name);
// Throws Error for an unknown suite.
SuiteResult run_suite(std::string_view suite, const SuiteOptions& opts = {});

report::Json to_json(const SuiteResult& r);
// One "PASS|FAIL id title (seconds)" line per check, failures indented below.
std::string to_text(const SuiteResult& r);

// GF(2) routines against brute force.
CheckResult gf2_solve_exhaustive();
CheckResult gf2_rref_properties(std::uint64_t seed);

// Acceptance criteria.
CheckResult criterion_1_qge_qgje();
CheckResult criterion_2_rref();
CheckResult criterion_3_stage_counts();
CheckResult criterion_4_rank_count();
CheckResult criterion_5_character_sums();
// Default pairs (2,2), (2,3), (3,2).
CheckResult criterion_6_deferred(const std::vector<std::pair<unsigned, unsigned>>& pairs = {{2, 2}, {2, 3}, {3, 2}},
                                 std::uint64_t seed = 7);
CheckResult criterion_7_grover();
CheckResult criterion_8_gms(std::uint64_t seed = 7);
CheckResult criterion_9_query_ratio();
// Norm preservation on every circuit family plus in-process report
// determinism. When `cli` is set, the tool at that path is also run twice
// and its output files compared byte for byte.
CheckResult criterion_10_unitarity(const std::string& cli = {});

}  // namespace qgms::verify
