// Copyright 2026 The Expodesign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_split.h"
#include "expodesign/clustering.h"
#include "expodesign/edge_list.h"
#include "expodesign/graph_snapshot.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "manifest.h"

namespace expodesign::cli {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("expodesign_cli_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  void WriteFile(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name)) << text;
  }

  static std::string ReadFile(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }

  // Small graph with ten outcome and thirty diversion units, ingested and
  // normalized into graph.bin.
  void MakeGraph() {
    ASSERT_EQ(Run({"synth", "--kind", "planted", "--n-outcome", "10",
                   "--n-diversion", "30", "--blocks", "2", "--degree", "4",
                   "--seed", "3", "--out", Path("edges.txt")}),
              0)
        << err_.str();
    ASSERT_EQ(Run({"ingest", "--input", Path("edges.txt"), "--out",
                   Path("graph.bin"), "--normalize"}),
              0)
        << err_.str();
  }

  std::vector<double> Variances(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(ReadFile(csv));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::vector<std::string> fields = absl::StrSplit(line, ',');
      out.push_back(std::stod(fields[2]));
    }
    return out;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, IngestExportRoundTrip) {
  WriteFile("in.txt", "u1 i1 0.3\nu1 i2 0.7\nu2 i1 1\n# done\n");
  ASSERT_EQ(Run({"ingest", "--input", Path("in.txt"), "--out", Path("g.bin")}),
            0)
      << err_.str();
  EXPECT_TRUE(fs::exists(Path("g.bin.manifest.json")));
  EXPECT_TRUE(fs::exists(Path("g.bin.outcome_ids.tsv")));
  ASSERT_EQ(Run({"export", "--graph", Path("g.bin"), "--out", Path("out.txt")}),
            0);
  const BipartiteGraph a = *LoadEdgeList(Path("in.txt"));
  const BipartiteGraph b = *LoadEdgeList(Path("out.txt"));
  ASSERT_EQ(a.num_edges(), b.num_edges());
  EXPECT_EQ(a.outcome_ids(), b.outcome_ids());
  EXPECT_EQ(a.diversion_ids(), b.diversion_ids());
  const std::vector<Edge> ea = a.Edges(), eb = b.Edges();
  for (size_t e = 0; e < ea.size(); ++e) {
    EXPECT_NEAR(ea[e].weight, eb[e].weight, 1e-12);
  }
}

TEST_F(CliTest, MalformedInputReportsLine) {
  WriteFile("bad.txt", "u1 i1 1\nu2 i1\n");
  EXPECT_NE(Run({"ingest", "--input", Path("bad.txt"), "--out", Path("g.bin")}),
            0);
  EXPECT_THAT(err_.str(), HasSubstr("line 2"));
  WriteFile("neg.txt", "u1 i1 -1\n");
  EXPECT_NE(Run({"ingest", "--input", Path("neg.txt"), "--out", Path("g.bin")}),
            0);
  EXPECT_THAT(err_.str(), HasSubstr("NegativeWeight"));
}

TEST_F(CliTest, SingletonDesignFile) {
  MakeGraph();
  ASSERT_EQ(Run({"design", "--graph", Path("graph.bin"), "--method",
                 "singleton", "--out", Path("c.tsv")}),
            0)
      << err_.str();
  const BipartiteGraph g = *LoadGraphSnapshot(Path("graph.bin"));
  const Clustering c = *LoadClustering(Path("c.tsv"), g);
  EXPECT_EQ(c.num_clusters(), g.n_diversion());
}

TEST_F(CliTest, DesignMethods) {
  MakeGraph();
  ASSERT_EQ(Run({"design", "--graph", Path("graph.bin"), "--method",
                 "balanced:3", "--out", Path("b.tsv")}),
            0)
      << err_.str();
  const BipartiteGraph g = *LoadGraphSnapshot(Path("graph.bin"));
  EXPECT_LE(LoadClustering(Path("b.tsv"), g)->num_clusters(), 3u);
  ASSERT_EQ(Run({"design", "--graph", Path("graph.bin"), "--method",
                 "exposure-design", "--k-max", "4", "--seed", "2", "--trace",
                 Path("trace.csv"), "--out", Path("e.tsv")}),
            0)
      << err_.str();
  EXPECT_LE(LoadClustering(Path("e.tsv"), g)->MaxClusterSize(), 4u);
  EXPECT_THAT(ReadFile(Path("trace.csv")),
              HasSubstr("pass,moves_accepted,objective_total"));
  EXPECT_EQ(Run({"design", "--graph", Path("graph.bin"), "--method", "magic",
                 "--out", Path("x.tsv")}),
            kExitUsage);
}

TEST_F(CliTest, OneClusterMomentsHaveUnitVariance) {
  MakeGraph();
  ASSERT_EQ(Run({"design", "--graph", Path("graph.bin"), "--method",
                 "one-cluster", "--out", Path("one.tsv")}),
            0);
  ASSERT_EQ(Run({"moments", "--graph", Path("graph.bin"), "--clustering",
                 Path("one.tsv"), "--out", Path("m.csv")}),
            0)
      << err_.str();
  for (double v : Variances(Path("m.csv"))) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST_F(CliTest, VariancesScaleWithCoinVariance) {
  MakeGraph();
  ASSERT_EQ(Run({"moments", "--graph", Path("graph.bin"), "--bernoulli", "--p",
                 "0.5", "--out", Path("half.csv")}),
            0);
  ASSERT_EQ(Run({"moments", "--graph", Path("graph.bin"), "--bernoulli", "--p",
                 "0.3", "--out", Path("third.csv")}),
            0);
  const std::vector<double> half = Variances(Path("half.csv"));
  const std::vector<double> third = Variances(Path("third.csv"));
  ASSERT_EQ(half.size(), third.size());
  for (size_t i = 0; i < half.size(); ++i) {
    EXPECT_NEAR(third[i], half[i] * 0.84, 1e-12);
  }
}

TEST_F(CliTest, DegenerateDesignExitCode) {
  WriteFile("tiny.txt", "a x 0.000001\nb y 1\n");
  ASSERT_EQ(Run({"ingest", "--input", Path("tiny.txt"), "--out", Path("t.bin")}),
            0);
  EXPECT_EQ(Run({"moments", "--graph", Path("t.bin"), "--bernoulli", "--out",
                 Path("m.csv")}),
            kExitDegenerateDesign);
  EXPECT_THAT(err_.str(), HasSubstr("degenerate"));
  EXPECT_THAT(err_.str(), HasSubstr("a"));
}

TEST_F(CliTest, SameSeedsGiveIdenticalDigests) {
  MakeGraph();
  for (const char* name : {"run1", "run2"}) {
    ASSERT_EQ(Run({"simulate", "--graph", Path("graph.bin"), "--bernoulli",
                   "--scenario-kind", "positive_te", "--model-seed", "4",
                   "--replicates", "300", "--seed", "9", "--out-dir",
                   Path(name)}),
              0)
        << err_.str();
  }
  for (const char* file : {"report.json", "estimates.csv", "histogram.csv"}) {
    EXPECT_EQ(*Sha256File(Path(std::string("run1/") + file)),
              *Sha256File(Path(std::string("run2/") + file)))
        << file;
  }
  const nlohmann::json report =
      nlohmann::json::parse(ReadFile(Path("run1/report.json")));
  EXPECT_EQ(report["replicates"], 300);
}

TEST_F(CliTest, ScenarioFile) {
  MakeGraph();
  WriteFile("scenario.txt", "kind = zero_te\nmodel_seed = 3\n");
  ASSERT_EQ(Run({"simulate", "--graph", Path("graph.bin"), "--bernoulli",
                 "--scenario", Path("scenario.txt"), "--replicates", "50",
                 "--out-dir", Path("sim")}),
            0)
      << err_.str();
  const nlohmann::json report =
      nlohmann::json::parse(ReadFile(Path("sim/report.json")));
  EXPECT_THAT(report["scenario_name"].get<std::string>(), HasSubstr("zero_te"));
}

TEST_F(CliTest, UsageErrors) {
  MakeGraph();
  EXPECT_EQ(Run({"simulate", "--graph", Path("graph.bin"), "--scenario-kind",
                 "positive_te", "--out-dir", Path("sim")}),
            kExitUsage);
  EXPECT_EQ(Run({"sweep", "--graph", Path("graph.bin"), "--scenario-kind",
                 "positive_te", "--phis", "", "--out", Path("s.csv")}),
            kExitUsage);
  EXPECT_EQ(Run({"sweep", "--graph", Path("graph.bin"), "--scenario-kind",
                 "positive_te", "--out", Path("s.csv")}),
            kExitUsage);
  EXPECT_EQ(Run({}), kExitUsage);
  EXPECT_EQ(Run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(Run({"--help"}), kExitOk);
}

TEST_F(CliTest, SweepWritesOneRowPerPhi) {
  MakeGraph();
  ASSERT_EQ(Run({"sweep", "--graph", Path("graph.bin"), "--scenario-kind",
                 "positive_te", "--phis", "0.1,0.5,1,2", "--replicates", "50",
                 "--out", Path("sweep.csv")}),
            0)
      << err_.str();
  const std::string text = ReadFile(Path("sweep.csv"));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST_F(CliTest, ReplayReproducesEveryCommand) {
  MakeGraph();
  ASSERT_EQ(Run({"design", "--graph", Path("graph.bin"), "--method",
                 "exposure-design", "--restarts", "2", "--time-budget", "5",
                 "--trace", Path("trace.csv"), "--out", Path("c.tsv")}),
            0)
      << err_.str();
  WriteFile("scenario.txt", "kind = graph_dependent\nn_outcome_clusters = 3\n");
  ASSERT_EQ(Run({"simulate", "--graph", Path("graph.bin"), "--clustering",
                 Path("c.tsv"), "--scenario", Path("scenario.txt"),
                 "--replicates", "100", "--out-dir", Path("sim")}),
            0)
      << err_.str();
  ASSERT_EQ(Run({"sweep", "--graph", Path("graph.bin"), "--scenario",
                 Path("scenario.txt"), "--phis", "0.5,1", "--replicates", "50",
                 "--out", Path("sweep.csv")}),
            0)
      << err_.str();
  for (const std::string& manifest :
       {Path("graph.bin.manifest.json"), Path("c.tsv.manifest.json"),
        Path("sim/manifest.json"), Path("sweep.csv.manifest.json")}) {
    EXPECT_EQ(Run({"replay", manifest}), 0) << manifest << "\n"
                                            << out_.str() << err_.str();
    EXPECT_THAT(out_.str(), HasSubstr("all outputs identical"));
  }
}

TEST_F(CliTest, ReplayDetectsChangedInputs) {
  MakeGraph();
  ASSERT_EQ(Run({"moments", "--graph", Path("graph.bin"), "--bernoulli",
                 "--out", Path("m.csv")}),
            0);
  WriteFile("edges.txt", "u1 i1 1\n");
  ASSERT_EQ(Run({"ingest", "--input", Path("edges.txt"), "--out",
                 Path("graph.bin"), "--manifest", Path("other.json")}),
            0);
  EXPECT_EQ(Run({"replay", Path("m.csv.manifest.json")}), kExitReplayMismatch);
}

}  // namespace
}  // namespace expodesign::cli
