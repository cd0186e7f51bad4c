#include <gtest/gtest.h>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "cmbd/io.hpp"

namespace fs = std::filesystem;
using cmbd::cli::run;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cmbd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

double aligned_error(const std::string& out) {
  const auto pos = out.find("aligned_error_db ");
  if (pos == std::string::npos) return 1e9;
  return std::stod(out.substr(pos + 17));
}

}  // namespace

TEST_F(CliTest, GenMeasureRecoverPipeline) {
  auto g = invoke({"gen", "--L", "2", "--Mx", "8", "--seed", "5", "-o", path("e.json")});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_EQ(g.out.rfind("resolved: {", 0), 0u);
  auto m = invoke({"measure", "--ensemble", path("e.json"), "--K", "12", "-o", path("m.csv")});
  ASSERT_EQ(m.code, 0) << m.err;
  for (const std::string solver : {"tpi", "bdc", "exhaustive"}) {
    auto r = invoke({"recover", "--measurements", path("m.csv"), "--solver", solver, "--L", "2", "--Mx", "8",
                     "--truth", path("e.json"), "-o", path("r.json")});
    EXPECT_EQ(r.code, 0) << solver << ": " << r.err << r.out;
    EXPECT_LT(aligned_error(r.out), -50.0) << solver;
    const auto result = cmbd::recovery_from_json(cmbd::read_text_file(path("r.json")));
    EXPECT_EQ(result.filters.size(), 2u);
  }
}

TEST_F(CliTest, ResolvedEchoIsValidJson) {
  auto g = invoke({"gen", "--L", "3", "--Mx", "9", "--N", "3", "--source", "linear-complexity", "--Ms", "20",
                   "--Lc", "2", "-o", path("e.json")});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto line = g.out.substr(10, g.out.find('\n') - 10);
  const auto resolved = nlohmann::json::parse(line);
  EXPECT_EQ(resolved.at("Mx").get<int>(), 9);
  const auto e = cmbd::ensemble_from_json(cmbd::read_text_file(path("e.json")));
  EXPECT_EQ(e.filters.size(), 3u);
  EXPECT_EQ(cmbd::source_length(e.source), 20);
}

TEST_F(CliTest, MissingRequiredOptionIsPreconditionExit) {
  EXPECT_EQ(invoke({"gen", "--L", "2"}).code, cmbd::cli::kPrecondition);
  EXPECT_EQ(invoke({"recover", "--measurements", path("missing.csv"), "--Mx", "4"}).code,
            cmbd::cli::kPrecondition);
  EXPECT_EQ(invoke({"frobnicate"}).code, cmbd::cli::kPrecondition);
}

TEST_F(CliTest, InvalidSparsityIsPreconditionExit) {
  EXPECT_EQ(invoke({"gen", "--L", "9", "--Mx", "8", "-o", path("e.json")}).code, cmbd::cli::kPrecondition);
}

TEST_F(CliTest, UncertifiedGridNeedsOverride) {
  ASSERT_EQ(invoke({"gen", "--L", "1", "--Mx", "2", "--Ms", "4", "--source", "explicit", "-o", path("e.json")}).code,
            0);
  const std::string sets = path("sets.json");
  cmbd::write_text_file(sets, "[[0, 2], [0, 2]]");
  auto m = invoke({"measure", "--ensemble", path("e.json"), "--sets", sets, "--barM", "4", "-o", path("m.csv")});
  EXPECT_EQ(m.code, cmbd::cli::kCertification);
  EXPECT_NE(m.err.find("--allow-uncertified"), std::string::npos);
  m = invoke({"measure", "--ensemble", path("e.json"), "--sets", sets, "--barM", "4", "--allow-uncertified", "-o",
              path("m.csv")});
  EXPECT_EQ(m.code, 0) << m.err;
}

TEST_F(CliTest, TooFewMeasurementsIsNotOk) {
  ASSERT_EQ(invoke({"gen", "--L", "2", "--Mx", "8", "-o", path("e.json")}).code, 0);
  ASSERT_EQ(invoke({"measure", "--ensemble", path("e.json"), "--K", "3", "-o", path("m.csv")}).code, 0);
  auto r = invoke({"recover", "--measurements", path("m.csv"), "--solver", "exhaustive", "--L", "2", "--Mx", "8"});
  EXPECT_EQ(r.code, cmbd::cli::kNonConvergence);
  EXPECT_NE(r.out.find("status non_unique"), std::string::npos) << r.out;
}

TEST_F(CliTest, ExhaustiveBudgetIsPreconditionExit) {
  ASSERT_EQ(invoke({"gen", "--L", "2", "--Mx", "8", "-o", path("e.json")}).code, 0);
  ASSERT_EQ(invoke({"measure", "--ensemble", path("e.json"), "--K", "10", "-o", path("m.csv")}).code, 0);
  auto r = invoke({"recover", "--measurements", path("m.csv"), "--solver", "exhaustive", "--L", "2", "--Mx", "8",
                   "--budget", "10"});
  EXPECT_EQ(r.code, cmbd::cli::kPrecondition);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST_F(CliTest, CertifyReportsStatusAndWitness) {
  auto ok = invoke({"certify", "--M", "12", "--K", "5"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("status certified"), std::string::npos);
  EXPECT_NE(ok.out.find("checked 792 of 792"), std::string::npos) << ok.out;
  auto bad = invoke({"certify", "--M", "4", "--rows", "0,2"});
  EXPECT_EQ(bad.code, cmbd::cli::kCertification);
  EXPECT_NE(bad.out.find("witness 0 2"), std::string::npos) << bad.out;
  auto over = invoke({"certify", "--M", "30", "--K", "15", "--budget", "10"});
  EXPECT_EQ(over.code, cmbd::cli::kCertification);
  EXPECT_NE(over.out.find("status uncertified"), std::string::npos);
}

TEST_F(CliTest, ExperimentWritesOutputs) {
  const std::string cfg = path("cfg.json");
  cmbd::write_text_file(cfg, R"({"id": "cli", "solvers": ["nb-omp"], "L": 2, "Mx": 8, "K": [4, 12], "trials": 3})");
  auto x = invoke({"experiment", "--config", cfg, "--out", path("out")});
  ASSERT_EQ(x.code, 0) << x.err;
  EXPECT_NE(x.out.find("solver,L,Mx,K,Lc,trials,successes,rate"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("out/grid.csv")));
  EXPECT_TRUE(fs::exists(path("out/trials.csv")));
  EXPECT_TRUE(fs::exists(path("out/meta.json")));
}

TEST_F(CliTest, PairwiseRecoverReportsJointError) {
  ASSERT_EQ(invoke({"gen", "--L", "2", "--Mx", "8", "--N", "4", "--source", "explicit", "--Ms", "12", "--seed", "3",
                    "-o", path("e.json")})
                .code,
            0);
  const std::string sets = path("sets.json");
  cmbd::write_text_file(sets, "[[1,2,3,4,5,6,7,8],[1,2,3,4,5,6,7,8],[7,8,9,10,11,12,13,14],[7,8,9,10,11,12,13,14]]");
  ASSERT_EQ(invoke({"measure", "--ensemble", path("e.json"), "--sets", sets, "--barM", "15", "-o", path("m.csv")})
                .code,
            0);
  auto r = invoke({"recover", "--measurements", path("m.csv"), "--solver", "pairwise", "--pair-solver", "exhaustive",
                   "--L", "2", "--Mx", "8", "--Ms", "12", "--truth", path("e.json")});
  EXPECT_EQ(r.code, 0) << r.err << r.out;
  EXPECT_LT(aligned_error(r.out), -50.0);
}
