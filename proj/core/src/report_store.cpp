#include "qplane/report_store.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "qplane/errors.hpp"

namespace qplane {

nlohmann::json RunRecord::to_json() const {
  return {{"timestamp", timestamp}, {"config_hash", config_hash}, {"suite", suite},
          {"payload", payload},     {"passed", passed},           {"version", version}};
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  RunRecord r;
  r.timestamp = j.at("timestamp").get<std::string>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.suite = j.at("suite").get<std::string>();
  r.payload = j.at("payload");
  r.passed = j.at("passed").get<bool>();
  r.version = j.at("version").get<std::string>();
  return r;
}

std::string config_hash(const nlohmann::json& config) {
  const std::string text = config.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw StoreError("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_string(DiffEntry::Change c) {
  switch (c) {
    case DiffEntry::Change::Changed: return "changed";
    case DiffEntry::Change::Regression: return "REGRESSION";
    case DiffEntry::Change::Fixed: return "fixed";
    case DiffEntry::Change::OnlyInA: return "only-in-a";
    case DiffEntry::Change::OnlyInB: return "only-in-b";
  }
  return "?";
}

RunStore::RunStore(std::filesystem::path path) : path_(std::move(path)) {}

long RunStore::append(const RunRecord& record) {
  const long id = std::filesystem::exists(path_) ? static_cast<long>(load().size()) + 1 : 1;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw StoreError("cannot open run store " + path_.string() + " for writing");
  out << record.to_json().dump() << '\n';
  out.flush();
  if (!out) throw StoreError("write to run store " + path_.string() + " failed");
  return id;
}

std::vector<RunRecord> RunStore::load() const {
  std::vector<RunRecord> out;
  if (!std::filesystem::exists(path_)) return out;
  std::ifstream in(path_);
  if (!in) throw StoreError("cannot open run store " + path_.string());
  std::string line;
  long n = 0;
  while (std::getline(in, line)) {
    ++n;
    try {
      out.push_back(RunRecord::from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw StoreError("corrupt run store " + path_.string() + " at line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

RunRecord RunStore::get(long id) const {
  const auto all = load();
  if (id < 1 || id > static_cast<long>(all.size()))
    throw StoreError("run id " + std::to_string(id) + " not found (store has " + std::to_string(all.size()) +
                     " records)");
  return all[static_cast<std::size_t>(id - 1)];
}

RunDiff RunStore::diff(long id_a, long id_b) const { return diff_runs(get(id_a), get(id_b)); }

RunDiff diff_runs(const RunRecord& a, const RunRecord& b) {
  RunDiff d;
  d.config_mismatch = a.config_hash != b.config_hash;
  d.suite_mismatch = a.suite != b.suite;

  const auto index = [](const RunRecord& r) {
    std::map<std::string, nlohmann::json> m;
    if (r.payload.contains("entries"))
      for (const auto& e : r.payload.at("entries")) m[e.at("name").get<std::string>()] = e;
    return m;
  };
  const auto ea = index(a);
  const auto eb = index(b);

  for (const auto& [name, x] : ea) {
    DiffEntry e;
    e.name = name;
    e.value_a = x.value("value", nlohmann::json());
    e.pass_a = x.value("pass", false);
    const auto it = eb.find(name);
    if (it == eb.end()) {
      e.change = DiffEntry::Change::OnlyInA;
      d.entries.push_back(std::move(e));
      continue;
    }
    e.value_b = it->second.value("value", nlohmann::json());
    e.pass_b = it->second.value("pass", false);
    if (e.value_a == e.value_b && e.pass_a == e.pass_b) continue;
    if (e.pass_a && !e.pass_b) e.change = DiffEntry::Change::Regression;
    else if (!e.pass_a && e.pass_b) e.change = DiffEntry::Change::Fixed;
    d.entries.push_back(std::move(e));
  }
  for (const auto& [name, y] : eb) {
    if (ea.count(name)) continue;
    DiffEntry e;
    e.name = name;
    e.value_b = y.value("value", nlohmann::json());
    e.pass_b = y.value("pass", false);
    e.change = DiffEntry::Change::OnlyInB;
    d.entries.push_back(std::move(e));
  }
  return d;
}

}  // namespace qplane
