#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quatmob/error.hpp"
#include "quatmob/qmatrix.hpp"

namespace quatmob::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kPropertyFailure = 1, kUsage = 2, kSingular = 3, kInternal = 4 };

int exit_code_for(ErrorCode code);

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  double cond = 20.0;
  bool pretty = false;
  unsigned threads = 0;  // 0: hardware concurrency
  bool timing = false;
};

/// Full report for one matrix. Normalizes to det_H = 1 (with a notice) when needed.
json classify_report(const QMatrix2& input, const Options& opt);

/// Reverser and PSL factorization only.
json reverse_report(const QMatrix2& input, const Options& opt);

json generate(const std::string& family, std::size_t count, const Options& opt);

struct CheckResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double max_residual = 0.0;
  std::vector<json> counterexamples;  // first few, in sample order
  std::string statistic_name;         // check-specific minimum, when the check records one
  std::optional<double> statistic;
};

struct VerifySuiteResult {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<CheckResult> checks;
  double wall_seconds = 0.0;

  bool ok() const;
};

/// Every check runs `samples` independent samples. Sample k of check c draws
/// from sample_rng(seed, c + 1, k), so results do not depend on thread count.
VerifySuiteResult run_verify(const Options& opt);

json to_json(const VerifySuiteResult& r, bool timing);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace quatmob::cli
