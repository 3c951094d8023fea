#include "boip/boip.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

using namespace boip;

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("boip_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int boip(const std::string& args) {
    const std::string cmd = std::string(BOIP_CLI_PATH) + " " + args + " > " + (dir_ / "stdout.txt").string() +
                            " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& rel) const { return (dir_ / rel).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenIsByteIdentical) {
  ASSERT_EQ(boip("gen --kind knapsack --size 10 --seed 4 --out " + path("a")), 0);
  ASSERT_EQ(boip("gen --kind knapsack --size 10 --seed 4 --out " + path("b")), 0);
  EXPECT_EQ(read_text(path("a/knapsack-10-4.json")), read_text(path("b/knapsack-10-4.json")));
}

TEST_F(Cli, SolveMatchesOracle) {
  ASSERT_EQ(boip("gen --kind assignment --size 4 --seed 2 --out " + path("i")), 0);
  const std::string inst = path("i/assignment-4-2.json");
  ASSERT_EQ(boip("solve " + inst + " --variant CY --out " + path("run")), 0);
  ASSERT_EQ(boip("oracle " + inst + " --out " + path("oracle")), 0);
  EXPECT_EQ(read_text(path("run/frontier.csv")), read_text(path("oracle/frontier.csv")));
  EXPECT_TRUE(fs::exists(path("run/stats.json")));
  EXPECT_TRUE(fs::exists(path("run/timing.json")));
  EXPECT_TRUE(fs::exists(path("run/iterations.jsonl")));
}

TEST_F(Cli, ApproxWritesMetrics) {
  ASSERT_EQ(boip("gen --kind knapsack --size 12 --seed 9 --out " + path("i")), 0);
  const std::string inst = path("i/knapsack-12-9.json");
  ASSERT_EQ(boip("oracle " + inst + " --out " + path("ref")), 0);
  ASSERT_EQ(boip("approx " + inst + " --variant CN --budget-rbd 2 --reference " + path("ref/frontier.csv") +
                 " --out " + path("ap")),
            0);
  Json m = Json::parse(read_text(path("ap/metrics.json")));
  EXPECT_TRUE(m.contains("sce"));
  Json stats = Json::parse(read_text(path("ap/stats.json")));
  EXPECT_LE(stats["rbd_count"].get<int>(), 2);
}

TEST_F(Cli, ApproxNeedsBudget) {
  ASSERT_EQ(boip("gen --kind knapsack --size 6 --seed 1 --out " + path("i")), 0);
  EXPECT_EQ(boip("approx " + path("i/knapsack-6-1.json") + " --out " + path("ap")), 2);
}

TEST_F(Cli, MetricsRejectsNonSubset) {
  write_text(path("ref.csv"), "z1,z2\n0,4\n2,2\n4,0\n");
  write_text(path("sub.csv"), "z1,z2\n1,1\n");
  EXPECT_EQ(boip("metrics --reference " + path("ref.csv") + " --subset " + path("sub.csv")), 2);
  EXPECT_NE(read_text(path("stderr.txt")).find("subset"), std::string::npos);
}

TEST_F(Cli, MetricsHandExample) {
  write_text(path("ref.csv"), "z1,z2\n0,4\n2,2\n4,0\n");
  write_text(path("sub.csv"), "z1,z2\n2,2\n");
  ASSERT_EQ(boip("metrics --reference " + path("ref.csv") + " --subset " + path("sub.csv") + " --out " + path("m")), 0);
  Json m = Json::parse(read_text(path("m/metrics.json")));
  EXPECT_EQ(m["ce"], 2);
  EXPECT_EQ(m["sce_exact"], "1/2");
}

TEST_F(Cli, BadInputs) {
  write_text(path("bad.json"), "{\"n\": 2}");
  EXPECT_EQ(boip("solve " + path("bad.json")), 2);
  EXPECT_EQ(boip("solve " + path("missing.json")), 2);
  EXPECT_EQ(boip("frobnicate"), 2);
  ASSERT_EQ(boip("gen --size 5 --out " + path("i")), 0);
  EXPECT_EQ(boip("solve " + path("i/knapsack-5-1.json") + " --variant QQ"), 2);
  EXPECT_EQ(boip("solve " + path("i/knapsack-5-1.json") + " --eps 2"), 2);
}

TEST_F(Cli, BenchSummary) {
  write_text(path("spec.json"),
             R"({"generate":[{"kind":"knapsack","size":8,"seeds":[1]}],"algorithms":["FN","WS:FW"],"budgets":["full","1/2"]})");
  ASSERT_EQ(boip("bench " + path("spec.json") + " --out " + path("b")), 0);
  const std::string csv = read_text(path("b/summary.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}
