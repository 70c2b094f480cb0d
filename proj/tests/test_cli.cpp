#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bessel_br/cli.hpp"

namespace fs = std::filesystem;
using bessel_br::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bessel_br_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ConstantsPrintsNorming) {
  const auto r = call({"constants", "--process", "bessel", "--m", "2", "--n", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("a[bessel] = 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("b[bessel] = 9.2103403719761836"), std::string::npos);
}

TEST_F(CliTest, TailCheckLaplace) {
  const auto r = call({"tail-check", "--m", "2", "--x", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("tail[laplace] = 0.00336897"), std::string::npos);
  EXPECT_NE(r.out.find("ratio[asymptotic/exact] = 1"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(call({}).code, 2);
  auto r = call({"constants", "--bogus", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"marginal-sweep", "--process", "bessel"}).code, 2);  // missing --seed
  EXPECT_EQ(call({"constants", "--n", "1"}).code, 2);
  EXPECT_EQ(call({"constants", "--process", "nope", "--n", "10"}).code, 2);
  EXPECT_EQ(call({"fdd-check", "--times", "0,0.5,1", "--seed", "1"}).code, 2);
  EXPECT_EQ(call({"br-sample", "--seed", "1", "--format", "xml"}).code, 2);
}

TEST_F(CliTest, FailingThresholdExitsOne) {
  const auto r = call({"tail-check", "--m", "1", "--x", "30", "--threshold", "1e-6"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, JsonReportAndCsv) {
  ASSERT_EQ(call({"constants", "--n", "1000", "--out", path("c.json")}).code, 0);
  const auto json = slurp(path("c.json"));
  EXPECT_NE(json.find("\"schema\": \"bessel-br/1\""), std::string::npos);
  EXPECT_EQ(json.find("timings"), std::string::npos);
  ASSERT_EQ(call({"constants", "--n", "1000", "--format", "csv", "--out", path("c.csv")}).code, 0);
  const auto csv = slurp(path("c.csv"));
  EXPECT_EQ(csv.rfind("statistic,label,value\n", 0), 0u);
  ASSERT_EQ(call({"constants", "--n", "1000", "--timings", "--out", path("t.json")}).code, 0);
  EXPECT_NE(slurp(path("t.json")).find("wall_seconds"), std::string::npos);
}

TEST_F(CliTest, SameSeedSameBytes) {
  const std::vector<std::string> base = {"br-sample", "--grid-k", "4", "--replicates", "3", "--seed", "9"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a.json")});
  b.insert(b.end(), {"--out", path("b.json"), "--threads", "4"});
  ASSERT_EQ(call(a).code, 0);
  ASSERT_EQ(call(b).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, ConfigReplayReproducesReport) {
  ASSERT_EQ(call({"fdd-check", "--n", "200", "--replicates", "150", "--seed", "4", "--times",
                  "0.25,0.75", "--out", path("a.json")})
                .code,
            0);
  call({"fdd-check", "--config", path("a.json"), "--out", path("b.json")});
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  // explicit flags override the replayed ones
  call({"fdd-check", "--config", path("a.json"), "--seed", "5", "--out", path("c.json")});
  EXPECT_NE(slurp(path("c.json")).find("\"seed\": 5"), std::string::npos);
  EXPECT_EQ(call({"constants", "--config", path("a.json")}).code, 2);
}

TEST_F(CliTest, KkCheckReportsBothSequences) {
  const auto r = call({"kk-check", "--process", "scalar", "--m", "2", "--s", "1"});
  EXPECT_NE(r.out.find("gumbel_intensity[n=1000] = 0.36787944117144"), std::string::npos);
  EXPECT_NE(r.out.find("condition_kk[n=100000]"), std::string::npos);
}
