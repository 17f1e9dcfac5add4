// Copyright 2026 The partmon Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "partmon/calibration.hpp"
#include "partmon/cli.hpp"
#include "partmon/coco_io.hpp"

namespace partmon {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("partmon_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const auto r = run({"synth", "--seed", "7", "--n-scenes", "60", "--out", p("corpus")});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string p(const std::string& name) const { return (dir_ / name).string(); }
  std::string c(const std::string& name) const { return (dir_ / "corpus" / name).string(); }

  std::vector<std::string> inputs() const {
    return {"--gt", c("gt.json"), "--persons", c("persons.json"), "--parts",
            c("parts.json"), "--category-map", c("category_map.json")};
  }

  std::vector<std::string> with(std::vector<std::string> head,
                                const std::vector<std::string>& tail) const {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  }

  fs::path dir_;
};

TEST_F(CliTest, SynthWritesCorpusAndManifest) {
  for (const char* f : {"gt.json", "persons.json", "parts.json", "category_map.json",
                        "labels.json", "synth.manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "corpus" / f)) << f;
  }
}

TEST_F(CliTest, CalibrateEvaluateMonitorPipeline) {
  auto r = run(with(with({"calibrate"}, inputs()), {"--out", p("op.json")}));
  ASSERT_EQ(r.code, 0) << r.err;
  const OperatingPoint op = load_operating_point(p("op.json"));
  EXPECT_EQ(op.conf.size(), 9u);
  const auto manifest = nlohmann::json::parse(read_file(p("op.json.manifest.json")));
  EXPECT_EQ(manifest["command"], "calibrate");
  EXPECT_EQ(manifest["inputs"].size(), 4u);
  EXPECT_EQ(manifest["inputs"][0]["fnv1a64"].get<std::string>().size(), 16u);

  r = run(with(with({"evaluate"}, inputs()),
               {"--operating-point", p("op.json"), "--format", "csv", "--out", p("img.csv")}));
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = read_file(p("img.csv"));
  EXPECT_EQ(csv.rfind("system,alert,tp,fp,fn,tn,precision,recall,mcc\n", 0), 0u);
  EXPECT_TRUE(fs::exists(p("img.csv.manifest.json")));

  r = run(with(with({"evaluate"}, inputs()),
               {"--operating-point", p("op.json"), "--protocol", "per-object", "--system", "SD"}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["protocol"], "per-object");
  EXPECT_EQ(report["rows"][0]["system"], "SD");

  r = run(with(with({"monitor"}, inputs()), {"--operating-point", p("op.json")}));
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("alert_fp"));
    ++n;
  }
  EXPECT_GT(n, 0);

  // Monitoring without ground truth groups detections by image id alone.
  r = run({"monitor", "--persons", c("persons.json"), "--parts", c("parts.json"),
           "--category-map", c("category_map.json"), "--operating-point", p("op.json"),
           "--mode", "object"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"fn_mon\""), std::string::npos);
}

TEST_F(CliTest, ReportsAreByteStableAcrossThreadCounts) {
  ASSERT_EQ(run(with(with({"calibrate"}, inputs()), {"--out", p("a.json")})).code, 0);
  ASSERT_EQ(run(with(with({"calibrate"}, inputs()), {"--out", p("b.json"), "--threads", "6"})).code, 0);
  EXPECT_EQ(read_file(p("a.json")), read_file(p("b.json")));
  const auto e1 = run(with(with({"evaluate"}, inputs()), {"--operating-point", p("a.json")}));
  const auto e2 = run(with(with({"evaluate"}, inputs()),
                           {"--operating-point", p("a.json"), "--threads", "3"}));
  EXPECT_EQ(e1.out, e2.out);
}

TEST_F(CliTest, ValidateSummarisesInputs) {
  const auto r = run(with({"validate"}, inputs()));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ok"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kInputError);
  EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run({"calibrate", "--tau", "1.5"}).code, cli::kInputError);

  auto missing = inputs();
  missing[1] = p("nope.json");
  auto r = run(with(with({"calibrate"}, missing), {"--out", p("op.json")}));
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("nope.json"), std::string::npos);

  write_file(p("bad.json"), "{\"images\": [");
  auto bad = inputs();
  bad[1] = p("bad.json");
  r = run(with(with({"calibrate"}, bad), {"--out", p("op.json")}));
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("byte"), std::string::npos);

  write_file(p("map.json"), "{\"1\": \"person\"}");
  auto unmapped = inputs();
  unmapped[7] = p("map.json");
  EXPECT_EQ(run(with({"validate"}, unmapped)).code, cli::kInputError);
}

TEST_F(CliTest, ConfigFileSuppliesDefaultsAndFlagsWin) {
  write_file(p("run.ini"), "[calibrate]\ntau=0.7\nthreads=2\n");
  auto r = run(with(with({"--config", p("run.ini"), "calibrate"}, inputs()),
                    {"--out", p("cfg.json")}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_operating_point(p("cfg.json")).tau, 0.7);
  r = run(with(with({"--config", p("run.ini"), "calibrate", "--tau", "0.4"}, inputs()),
               {"--out", p("cfg.json")}));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(load_operating_point(p("cfg.json")).tau, 0.4);
}

}  // namespace
}  // namespace partmon
