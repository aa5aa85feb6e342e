#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qplane {

/// One verification run. `payload` carries an "entries" array of
/// {"name", "value", "expected", "pass"} objects; other keys are kept as is.
struct RunRecord {
  std::string timestamp;    // ISO-8601 UTC
  std::string config_hash;  // sha256 of the canonical config dump
  std::string suite;
  nlohmann::json payload;
  bool passed = false;
  std::string version;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

/// Hex SHA-256 of config.dump(); object keys are sorted, so equal configs
/// hash equally regardless of input key order or whitespace.
std::string config_hash(const nlohmann::json& config);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

struct DiffEntry {
  enum class Change { Changed, Regression, Fixed, OnlyInA, OnlyInB };

  std::string name;
  nlohmann::json value_a;
  nlohmann::json value_b;
  bool pass_a = false;
  bool pass_b = false;
  Change change = Change::Changed;
};

struct RunDiff {
  bool config_mismatch = false;
  bool suite_mismatch = false;
  std::vector<DiffEntry> entries;

  bool clean() const { return !config_mismatch && !suite_mismatch && entries.empty(); }
};

std::string to_string(DiffEntry::Change c);

/// Append-only newline-delimited JSON file; a record's id is its 1-based
/// line number. Single writer.
class RunStore {
 public:
  explicit RunStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }

  /// Throws StoreError on I/O failure.
  long append(const RunRecord& record);

  /// Throws StoreError("... line N ...") on a corrupt line.
  std::vector<RunRecord> load() const;
  /// Throws StoreError if the id does not exist.
  RunRecord get(long id) const;

  RunDiff diff(long id_a, long id_b) const;

 private:
  std::filesystem::path path_;
};

RunDiff diff_runs(const RunRecord& a, const RunRecord& b);

}  // namespace qplane
