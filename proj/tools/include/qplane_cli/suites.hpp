#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qplane_cli/config.hpp"

namespace qplane::cli {

/// One expected-vs-computed comparison. value/expected are integers for
/// pairing entries and reals for residual-style checks.
struct SuiteRow {
  std::string name;
  nlohmann::json value;
  nlohmann::json expected;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteRow> rows;

  bool passed() const;
  std::size_t failures() const;
  nlohmann::json to_json() const;
};

/// tip | teo | corollaries | algebra; "all" expands to the ones the
/// spectrum supports (teo and corollaries need a generic spectrum).
std::vector<std::string> expand_suite(const std::string& name, const SpectrumConfig& config);

/// Throws ModelError for an unknown suite or one the spectrum does not
/// support, NonConvergence from the pairing engine.
SuiteResult run_suite(const std::string& name, const SpectrumConfig& config);

}  // namespace qplane::cli
