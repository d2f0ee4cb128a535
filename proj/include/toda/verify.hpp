#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toda/serialize.hpp"

namespace toda {

enum class VerifyMode { rational, floating, both };

struct VerifySuiteConfig {
  std::size_t n_max = 4;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  VerifyMode mode = VerifyMode::both;
};

enum class CheckStatus { pass, fail, info };

struct CheckResult {
  std::string id;
  std::string name;
  std::string anchor;  // formula the check exercises
  CheckStatus status = CheckStatus::pass;
  std::size_t points = 0;
  std::size_t resamples = 0;
  std::string detail;
  Json counterexample;  // null when the check passed
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  // Informational lines never affect the verdict.
  bool passed() const;
  // One JSON object per line, then a summary line.
  std::string to_json_lines() const;
};

// Throws Error when n_max or trials is zero.
VerifyReport run_verify(const VerifySuiteConfig& config);

const char* to_string(CheckStatus s);

}  // namespace toda
