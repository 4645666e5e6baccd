#include "assure/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace assure::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunArgs(std::vector<std::string> args) {
  args.insert(args.begin(), "assure");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("assure_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    Write("signals.csv",
          "snapshot_id,fdi,delta_fpr,delta_fnr,tsz,remediation_event\n"
          "baseline,0.68,0.304,0.694,0.42,0\n"
          "balanced_batch_sampling,0.41,0.206,0.424,0.28,1\n"
          "focal_loss,0.62,0.304,0.701,0.39,1\n");
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::string preds = "sample_id,score,label,subgroup\n";
    for (int i = 0; i < 240; ++i) {
      const char* group = i % 3 == 0 ? "A" : (i % 3 == 1 ? "B" : "C");
      const int label = u(rng) < 0.5 ? 1 : 0;
      const double shift = (i % 3) * 0.1;
      double score = label ? 0.35 + 0.6 * u(rng) - shift : 0.6 * u(rng) + shift / 2;
      score = std::min(1.0, std::max(0.0, score));
      preds += "s" + std::to_string(i) + "," + std::to_string(score) + "," +
               std::to_string(label) + "," + group + "\n";
    }
    Write("preds.csv", preds);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& body) {
    std::ofstream(dir_ / name, std::ios::binary) << body;
    return Path(name);
  }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ScoreReproducesTraceRows) {
  const Result r = RunArgs({"score", "--signals", Path("signals.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "snapshot_id,fdi,delta_fpr,delta_fnr,tsz,das,ges,drc\n"
            "baseline,0.6800,0.3040,0.6940,0.4200,0.4755,High,EscalatedGovernance\n"
            "balanced_batch_sampling,0.4100,0.2060,0.4240,0.2800,0.6700,High,Restricted\n"
            "focal_loss,0.6200,0.3040,0.7010,0.3900,0.4962,Critical,EscalatedGovernance\n");
  const Result again = RunArgs({"score", "--signals", Path("signals.csv")});
  EXPECT_EQ(again.out, r.out);
  const Result json = RunArgs({"score", "--signals", Path("signals.csv"), "--format", "json"});
  ASSERT_EQ(json.code, kExitOk) << json.err;
  EXPECT_NE(json.out.find("config_fingerprint"), std::string::npos);
}

TEST_F(CliTest, LifecycleTraceIsDeterministic) {
  const Result a = RunArgs({"lifecycle", "--signals", Path("signals.csv")});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out.rfind("snapshot_id,fdi,delta_fpr,delta_fnr,tsz,das,ges,stateless_drc,"
                        "governed_state,transition,r_p\n",
                        0),
            0u);
  EXPECT_NE(a.out.find("baseline,0.6800,0.3040,0.6940,0.4200,0.4755,High,EscalatedGovernance,"
                       "EscalatedGovernance,,\n"),
            std::string::npos)
      << a.out;
  EXPECT_EQ(RunArgs({"lifecycle", "--signals", Path("signals.csv")}).out, a.out);
  const Result off = RunArgs({"lifecycle", "--signals", Path("signals.csv"), "--gating", "off",
                              "--initial", "Deployable", "--format", "json"});
  ASSERT_EQ(off.code, kExitOk) << off.err;
  EXPECT_NE(off.out.find("\"rows\""), std::string::npos);
}

TEST_F(CliTest, Classify) {
  EXPECT_EQ(RunArgs({"classify", "--das", "0.48"}).out, "EscalatedGovernance\n");
  EXPECT_EQ(RunArgs({"classify", "--das", "0.71"}).out, "Restricted\n");
  EXPECT_EQ(RunArgs({"classify", "--das", "0.52"}).out, "ReassessmentRequired\n");
  EXPECT_EQ(RunArgs({"classify", "--das", "0.9", "--worst-zone", "GovernanceFragility"}).out,
            "EscalatedGovernance\n");
  EXPECT_EQ(RunArgs({"classify", "--das", "1.5"}).code, kExitValidation);
}

TEST_F(CliTest, EvaluateSweepAssess) {
  const Result e = RunArgs({"evaluate", "--predictions", Path("preds.csv"), "--threshold", "0.5"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_NE(e.out.find("\nmetric,value\n"), std::string::npos);
  EXPECT_NE(e.out.find("\nfdi,"), std::string::npos) << e.out;

  const Result s = RunArgs({"sweep", "--predictions", Path("preds.csv")});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_EQ(s.out.rfind("threshold,fdi,interpolated,s,zone\n", 0), 0u) << s.out;
  EXPECT_NE(s.out.find("\ntsz,"), std::string::npos);
  const Result ranged = RunArgs({"sweep", "--predictions", Path("preds.csv"), "--range",
                                 "0.1:0.5:0.1", "--format", "json"});
  ASSERT_EQ(ranged.code, kExitOk) << ranged.err;

  const Result a = RunArgs({"assess", "--predictions", Path("preds.csv"), "--threshold", "0.5"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_NE(a.out.find("das"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(RunArgs({"score", "--signals", Path("missing.csv")}).code, kExitIo);
  EXPECT_EQ(RunArgs({"score", "--signals", Path("signals.csv"), "--config", Path("nope.json")})
                .code,
            kExitIo);
  const std::string bad =
      Write("bad.csv", "snapshot_id,fdi,delta_fpr,delta_fnr,tsz,remediation_event\nx,1.2,0,0,0,0\n");
  const Result r = RunArgs({"score", "--signals", bad});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("bad.csv:2"), std::string::npos) << r.err;
  const std::string cfg =
      Write("w.json", R"({"weights":{"alpha":0.3,"beta":0.3,"gamma":0.3,"delta":0.0}})");
  const Result c = RunArgs({"score", "--signals", Path("signals.csv"), "--config", cfg});
  EXPECT_EQ(c.code, kExitValidation);
  EXPECT_NE(c.err.find("0.9"), std::string::npos) << c.err;
  EXPECT_EQ(RunArgs({"score"}).code, kExitValidation);
  EXPECT_EQ(RunArgs({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(RunArgs({"sweep", "--predictions", Path("preds.csv"), "--range", "0.5"}).code,
            kExitValidation);
  EXPECT_EQ(RunArgs({"score", "--signals", Path("signals.csv"), "--format", "xml"}).code,
            kExitValidation);
  EXPECT_EQ(RunArgs({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace assure::cli
