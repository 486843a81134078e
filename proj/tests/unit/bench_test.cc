// Copyright 2026 The OaaS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oaas/bench/bench.h"

namespace oaas::bench {
namespace {

TEST(PercentileTest, NearestRank) {
  EXPECT_EQ(Percentile({}, 50), 0);
  EXPECT_EQ(Percentile({5}, 95), 5);
  EXPECT_EQ(Percentile({4, 1, 3, 2}, 50), 2);
  EXPECT_EQ(Percentile({4, 1, 3, 2}, 95), 4);
  std::vector<double> v;
  for (int i = 100; i >= 1; --i) v.push_back(i);
  EXPECT_EQ(Percentile(v, 50), 50);
  EXPECT_EQ(Percentile(v, 95), 95);
  EXPECT_EQ(Percentile(v, 100), 100);
}

TEST(SummarizeTest, MatchesDirectComputation) {
  std::vector<Sample> samples;
  std::mt19937 rng(5);
  std::map<uint64_t, std::vector<double>> ok;
  for (int i = 0; i < 300; ++i) {
    Sample s;
    s.function = "concat";
    s.size_bytes = 1000u * (1 + rng() % 3);
    s.concurrency = 1;
    s.mode = "redirect";
    s.cache = "on";
    s.latency_ms = static_cast<double>(rng() % 1000) / 10.0;
    s.ok = rng() % 10 != 0;
    if (s.ok) ok[s.size_bytes].push_back(s.latency_ms);
    samples.push_back(s);
  }
  const auto cells = Summarize(samples);
  ASSERT_EQ(cells.size(), 3u);
  for (const auto& c : cells) {
    const auto& v = ok.at(c.size_bytes);
    double sum = 0;
    for (double x : v) sum += x;
    EXPECT_NEAR(c.mean_ms, sum / static_cast<double>(v.size()), 1e-9);
    EXPECT_EQ(c.count - c.failed, v.size());
    EXPECT_EQ(c.p50_ms, Percentile(v, 50));
  }
}

TEST(CsvTest, HeaderAndRows) {
  Sample s;
  s.function = "concat";
  s.size_bytes = 10;
  s.concurrency = 2;
  s.mode = "relay";
  s.cache = "off";
  s.rep = 3;
  s.latency_ms = 1.5;
  std::ostringstream out;
  WriteCsv(out, {s});
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\nconcat,10,2,relay,off,3,1.500,failed\n");
}

class BenchRunTest : public ::testing::Test {
 protected:
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_ = std::filesystem::temp_directory_path() /
                               ("oaas-bench-" + std::to_string(std::random_device{}()));
};

TEST_F(BenchRunTest, RowCountAndOutcomes) {
  for (const auto* fn : {"concat", "json_update", "cpu_burn"}) {
    Scenario sc;
    sc.function = fn;
    sc.state_sizes = {1000, 5000};
    sc.concurrency = {1, 3};
    sc.repetitions = 2;
    sc.invocations_per_client = 2;
    sc.mode = std::string(fn) == "concat" ? blob::DeliveryMode::kRelay : blob::DeliveryMode::kRedirect;
    const auto samples = bench::Run(sc, {dir_ / fn});
    // sizes x reps x (sum over concurrency of clients x per-client)
    EXPECT_EQ(samples.size(), 2u * 2u * (1u + 3u) * 2u) << fn;
    for (const auto& s : samples) EXPECT_TRUE(s.ok) << fn << ": " << s.error;
  }
}

TEST_F(BenchRunTest, UnknownFunctionRejected) {
  Scenario sc;
  sc.function = "nope";
  EXPECT_THROW(bench::Run(sc, {dir_}), std::exception);
}

}  // namespace
}  // namespace oaas::bench
