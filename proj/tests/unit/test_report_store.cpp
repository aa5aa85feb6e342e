#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qplane/errors.hpp"
#include "qplane/report_store.hpp"

using namespace qplane;
using nlohmann::json;

namespace {

class StoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("qplane-store-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path file() const { return dir_ / "runs.ndjson"; }

  std::filesystem::path dir_;
};

RunRecord record(const json& config, const std::string& suite, std::vector<std::pair<long, bool>> values) {
  RunRecord r;
  r.timestamp = "2026-01-01T00:00:00Z";
  r.config_hash = config_hash(config);
  r.suite = suite;
  json entries = json::array();
  bool all = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    entries.push_back({{"name", "e" + std::to_string(i)},
                       {"value", values[i].first},
                       {"expected", values[i].first},
                       {"pass", values[i].second}});
    all = all && values[i].second;
  }
  r.payload = {{"entries", entries}};
  r.passed = all;
  r.version = "test";
  return r;
}

const json kConfigA = json::parse(R"({"q":"1/2","spectrum":"full"})");
const json kConfigB = json::parse(R"({"q":"3/4","spectrum":"full"})");

}  // namespace

TEST(ConfigHash, StableAndKeyOrderIndependent) {
  const json a = json::parse(R"({"q":"1/2","spectrum":{"intervals":[["0.6","0.7"]]}})");
  const json b = json::parse(R"({ "spectrum" : {"intervals":[["0.6","0.7"]]}, "q" : "1/2" })");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 64u);
  EXPECT_NE(config_hash(a), config_hash(kConfigA));
  // sha256 of the two bytes "{}".
  EXPECT_EQ(config_hash(json::object()), "44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a");
}

TEST(Timestamp, IsoUtcShape) {
  const auto t = utc_timestamp();
  ASSERT_EQ(t.size(), 20u);
  EXPECT_EQ(t[4], '-');
  EXPECT_EQ(t[10], 'T');
  EXPECT_EQ(t.back(), 'Z');
}

TEST(RunRecordJson, RoundTrips) {
  const auto r = record(kConfigA, "tip", {{1, true}, {2, false}});
  const auto back = RunRecord::from_json(r.to_json());
  EXPECT_EQ(back.to_json(), r.to_json());
  EXPECT_FALSE(back.passed);
}

TEST_F(StoreTest, AppendAssignsLineIds) {
  RunStore store(file());
  EXPECT_EQ(store.append(record(kConfigA, "tip", {{1, true}})), 1);
  EXPECT_EQ(store.append(record(kConfigA, "tip", {{1, true}})), 2);
  const auto all = store.load();
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].config_hash, all[1].config_hash);
  EXPECT_EQ(store.get(2).suite, "tip");
  EXPECT_THROW(store.get(3), StoreError);
  EXPECT_THROW(store.get(0), StoreError);
}

TEST_F(StoreTest, MissingFileLoadsEmpty) {
  EXPECT_TRUE(RunStore(file()).load().empty());
}

TEST_F(StoreTest, CorruptLineReportsLineNumber) {
  RunStore store(file());
  store.append(record(kConfigA, "tip", {{1, true}}));
  {
    std::ofstream out(file(), std::ios::app);
    out << "{not json\n";
  }
  try {
    store.load();
    FAIL() << "expected StoreError";
  } catch (const StoreError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST_F(StoreTest, AppendFailsOnUnwritablePath) {
  RunStore store(dir_ / "missing" / "deeper" / "runs.ndjson");
  std::filesystem::create_directories(dir_ / "missing");
  std::ofstream(dir_ / "missing" / "deeper") << "a file, not a directory";
  EXPECT_THROW(store.append(record(kConfigA, "tip", {{1, true}})), StoreError);
}

TEST_F(StoreTest, DiffIsReflexive) {
  RunStore store(file());
  const long id = store.append(record(kConfigA, "tip", {{1, true}, {2, true}}));
  EXPECT_TRUE(store.diff(id, id).clean());
}

TEST_F(StoreTest, DiffFlagsConfigMismatch) {
  RunStore store(file());
  const long a = store.append(record(kConfigA, "tip", {{1, true}}));
  const long b = store.append(record(kConfigB, "tip", {{1, true}}));
  const auto d = store.diff(a, b);
  EXPECT_TRUE(d.config_mismatch);
  EXPECT_FALSE(d.suite_mismatch);
  EXPECT_FALSE(d.clean());
}

TEST(Diff, ClassifiesTransitions) {
  const auto a = record(kConfigA, "tip", {{1, true}, {2, false}, {3, true}});
  auto b = record(kConfigA, "tip", {{1, false}, {2, true}, {4, true}});
  const auto d = diff_runs(a, b);
  ASSERT_EQ(d.entries.size(), 3u);
  EXPECT_EQ(d.entries[0].change, DiffEntry::Change::Regression);
  EXPECT_EQ(d.entries[1].change, DiffEntry::Change::Fixed);
  EXPECT_EQ(d.entries[2].change, DiffEntry::Change::Changed);
  EXPECT_EQ(to_string(DiffEntry::Change::Regression), "REGRESSION");

  // Swapping the arguments mirrors the annotations.
  const auto r = diff_runs(b, a);
  ASSERT_EQ(r.entries.size(), 3u);
  EXPECT_EQ(r.entries[0].change, DiffEntry::Change::Fixed);
  EXPECT_EQ(r.entries[1].change, DiffEntry::Change::Regression);
}

TEST(Diff, EntriesPresentOnOneSide) {
  const auto a = record(kConfigA, "tip", {{1, true}, {2, true}});
  const auto b = record(kConfigA, "tip", {{1, true}});
  const auto d = diff_runs(a, b);
  ASSERT_EQ(d.entries.size(), 1u);
  EXPECT_EQ(d.entries[0].change, DiffEntry::Change::OnlyInA);
  EXPECT_EQ(diff_runs(b, a).entries[0].change, DiffEntry::Change::OnlyInB);
  EXPECT_TRUE(diff_runs(a, record(kConfigA, "teo", {{1, true}, {2, true}})).suite_mismatch);
}
