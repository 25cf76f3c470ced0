#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "test_util.hpp"
#include "vaf/cli.hpp"

namespace vaf {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("vaf_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, std::string_view text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run_command(std::move(args), out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, EvalDefinedAndUndefined) {
  std::string f = write("count.vaf", test::kCountA);
  EXPECT_EQ(run({"eval", f, "aba"}), cli::kOk);
  EXPECT_EQ(out_.str(), "2  surviving_paths=2 total_paths=4\n");
  EXPECT_EQ(run({"eval", f, "bb"}), cli::kNo);
  EXPECT_EQ(out_.str().rfind("undefined", 0), 0u);
  EXPECT_EQ(run({"eval", "--bruteforce", f, "aba"}), cli::kOk);
  EXPECT_EQ(out_.str(), "2  surviving_paths=2 total_paths=4\n");
}

TEST_F(CliTest, EvalJson) {
  std::string f = write("count.vaf", test::kCountA);
  ASSERT_EQ(run({"eval", "--format", "json", f, "aba"}), cli::kOk);
  auto j = nlohmann::json::parse(out_.str());
  EXPECT_EQ(j["value"], "2");
  EXPECT_EQ(j["defined"], true);
  EXPECT_EQ(j["surviving_paths"], 2);
  EXPECT_EQ(j["total_paths"], 4);
}

TEST_F(CliTest, EvalWordFile) {
  std::string f = write("count.vaf", test::kCountA);
  std::string w = write("word.txt", "a b\na\n");
  EXPECT_EQ(run({"eval", f, "--word-file", w}), cli::kOk);
  EXPECT_EQ(out_.str().substr(0, 1), "2");
}

TEST_F(CliTest, EvalAll) {
  std::string f = write("count.vaf", test::kCountA);
  EXPECT_EQ(run({"eval-all", f, "--maxlen", "1"}), cli::kOk);
  std::string s = out_.str();
  EXPECT_NE(s.find("<empty>\tundefined"), std::string::npos);
  EXPECT_NE(s.find("a\t1"), std::string::npos);
}

TEST_F(CliTest, CheckReportsWitness) {
  std::string f = write("count.vaf", test::kCountA);
  EXPECT_EQ(run({"check", "--format", "json", f}), cli::kOk);
  auto j = nlohmann::json::parse(out_.str());
  EXPECT_EQ(j["unambiguous"], false);
  EXPECT_TRUE(j.contains("witness"));
}

TEST_F(CliTest, OracleAgrees) {
  EXPECT_EQ(run({"oracle", "--seed", "7", "--cases", "20", "--maxlen", "3"}), cli::kOk);
  EXPECT_EQ(out_.str(), "agree 20/20\n");
}

TEST_F(CliTest, Member) {
  std::string f = write("set.filter", "filter d=2 semilinear { linear base=(1,0) periods=[(1,1)] }\n");
  EXPECT_EQ(run({"member", f, "(3,2)"}), cli::kOk);
  EXPECT_EQ(out_.str(), "member\n");
  EXPECT_EQ(run({"member", f, "(3,3)"}), cli::kNo);
}

TEST_F(CliTest, TranslateOutputsParseableVaf) {
  std::string f = write("anbn.pa", test::kAnBn);
  ASSERT_EQ(run({"translate", "pa2vaf", f, "--aggregate", "max"}), cli::kOk);
  Vaf v = test::parse_vaf(out_.str());
  EXPECT_EQ(v.dimension(), 3u);
  std::string g = write("count.wa", test::kCountAWa);
  ASSERT_EQ(run({"translate", "wa2vaf", g}), cli::kOk);
  Vaf w = test::parse_vaf(out_.str());
  EXPECT_EQ(evaluate(w, w.automaton().word_from_chars("abaa")).value, test::nat(3));
}

TEST_F(CliTest, OneSuccessAndSupport) {
  std::string f = write("count.vaf", test::kCountA);
  EXPECT_EQ(run({"one-success", f, "--maxlen", "3"}), cli::kNo);
  EXPECT_NE(out_.str().find("counterexample"), std::string::npos);
  EXPECT_EQ(run({"support0", f, "--zero", "0", "--maxlen", "3"}), cli::kOk);
  EXPECT_EQ(out_.str(), "");
}

TEST_F(CliTest, ErrorStatuses) {
  std::string bad = write("bad.vaf", "vaf d=1\nstates q\nalphabet a\ntrans q a r [ (var 1) ]\n");
  EXPECT_EQ(run({"eval", bad, "a"}), cli::kUsage);
  EXPECT_NE(err_.str().find("line 4"), std::string::npos);
  EXPECT_EQ(run({"nonsense"}), cli::kUsage);
  std::string big = write("big.vaf", R"(
vaf d=1
states p q
alphabet a
init p (0)
init q (0)
trans p a p [ (plus (var 1) (const 1)) ]
trans p a q [ (plus (var 1) (const 2)) ]
trans q a p [ (plus (var 1) (const 3)) ]
trans q a q [ (plus (var 1) (const 5)) ]
collapse p [ (var 1) ]
)");
  EXPECT_EQ(run({"eval", "--max-paths", "16", "--bruteforce", big, "aaaaaaaa"}), cli::kResource);
  EXPECT_EQ(run({"eval", "--max-frontier", "3", big, "aaaaaaaa"}), cli::kResource);
}

}  // namespace
}  // namespace vaf
