#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "permbound/cli.hpp"
#include "permbound/io.hpp"
#include "support.hpp"

using namespace permbound;
using namespace permbound::testing;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("permbound_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

std::vector<nlohmann::json> parse_lines(const std::string& s) {
  std::vector<nlohmann::json> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(parse(line));
  return out;
}

}  // namespace

TEST_F(CliTest, BoundAllOnes) {
  const CliRun r = run({"bound", write("ones.csv", "1,1,1\n1,1,1\n1,1,1\n")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = parse(r.out);
  EXPECT_EQ(j["id"], "ones");
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["arithmetic"], "rational");
  EXPECT_EQ(j["process_bound"], "8");
  EXPECT_EQ(j["rowsum_bound"], "27");
  EXPECT_EQ(j["exact_perm"], "6");
  EXPECT_FALSE(j.contains("elapsed_ms"));
}

TEST_F(CliTest, BoundIdentity) {
  const CliRun r = run({"bound", write("id.csv", "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n")});
  ASSERT_EQ(r.code, kExitOk);
  const nlohmann::json j = parse(r.out);
  EXPECT_EQ(j["process_bound"], "1");
  EXPECT_EQ(j["rowsum_bound"], "1");
  EXPECT_EQ(j["exact_perm"], "1");
}

TEST_F(CliTest, BoundNegativeEntry) {
  const CliRun r = run({"bound", write("neg.csv", "1,0\n0,-1\n")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(parse(r.err)["error"], "NegativeInput");
}

TEST_F(CliTest, BoundZeroPivotIsNumericError) {
  const CliRun r = run({"bound", write("z.csv", "0,1\n1,1\n")});
  EXPECT_EQ(r.code, kExitNumericError);
  EXPECT_EQ(parse(r.err)["error"], "ZeroPivot");
}

TEST_F(CliTest, BoundParseErrors) {
  EXPECT_EQ(run({"bound", write("bad.csv", "1,x\n1,1\n")}).code, kExitInputError);
  EXPECT_EQ(run({"bound", write("rect.csv", "1,2,3\n1,1,1\n")}).code, kExitInputError);
  EXPECT_EQ(run({"bound", (dir_ / "missing.csv").string()}).code, kExitInputError);
  EXPECT_EQ(run({"bound", write("bad.json", "{\"n\": 2, \"entries\": [1, 2, 3]}")}).code, kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
}

TEST_F(CliTest, BoundFlags) {
  const std::string path = write("m.csv", "2,1/2,0\n1,3,1\n0.5,1,1\n");
  const nlohmann::json flt = parse(run({"bound", path, "--arithmetic", "float"}).out);
  EXPECT_EQ(flt["arithmetic"], "float");
  const nlohmann::json rat = parse(run({"bound", path}).out);
  EXPECT_NEAR(std::stod(flt["process_bound"].get<std::string>()),
              Rational(rat["process_bound"].get<std::string>()).get_d(), 1e-9);

  EXPECT_FALSE(parse(run({"bound", path, "--exact-max", "2"}).out).contains("exact_perm"));

  const nlohmann::json ord = parse(run({"bound", path, "--ordering", "3,1,2"}).out);
  EXPECT_EQ(ord["ordering"], (nlohmann::json{3, 1, 2}));
  EXPECT_EQ(run({"bound", path, "--ordering", "1,1,2"}).code, kExitInputError);
  EXPECT_EQ(run({"bound", path, "--ordering", "1,2"}).code, kExitInputError);

  const nlohmann::json snaps = parse(run({"bound", path, "--snapshots"}).out);
  ASSERT_EQ(snaps["snapshots"].size(), 3u);

  const nlohmann::json timed = parse(run({"bound", path, "--timing"}).out);
  EXPECT_TRUE(timed.contains("elapsed_ms"));

  const std::string out = (dir_ / "report.json").string();
  const CliRun to_file = run({"bound", path, "--out", out});
  EXPECT_EQ(to_file.code, kExitOk);
  EXPECT_TRUE(to_file.out.empty());
  std::ifstream in(out);
  EXPECT_EQ(nlohmann::json::parse(in)["process_bound"], rat["process_bound"]);
}

TEST_F(CliTest, BoundDiagDominance) {
  const std::string path = write("dd.csv",
                                 "1,1/12,1/12,1/12\n1/12,1,1/12,1/12\n1/12,1/12,1,1/12\n1/12,1/12,1/12,1\n");
  const nlohmann::json j = parse(run({"bound", path, "--eps", "1"}).out);
  EXPECT_EQ(j["diag_dominance"]["certified"], true);
  EXPECT_EQ(j["diag_dominance"]["bound"], "16");
  const nlohmann::json ones = parse(run({"bound", write("o.csv", "1,1,1\n1,1,1\n1,1,1\n"), "--eps", "1"}).out);
  EXPECT_EQ(ones["diag_dominance"]["certified"], false);
}

TEST_F(CliTest, BoundIsDeterministic) {
  const std::string path = write("m.csv", "2,1/3,5\n1,3,1\n1/7,1,4\n");
  EXPECT_EQ(run({"bound", path}).out, run({"bound", path}).out);
  EXPECT_EQ(run({"bound", path, "--arithmetic", "float"}).out, run({"bound", path, "--arithmetic", "float"}).out);
}

TEST_F(CliTest, BoundGramJson) {
  const std::string path =
      write("g.json", R"({"n": 2, "kind": "gram", "factor": [[1, 1], [0, -1]]})");
  const CliRun r = run({"bound", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json j = parse(r.out);
  // gram = [[1, 1], [1, 2]]: per 3, pivots 1 and 3.
  EXPECT_EQ(j["exact_perm"], "3");
  EXPECT_EQ(j["process_bound"], "3");
  const std::string wrong =
      write("w.json", R"({"n": 2, "kind": "gram", "entries": [1, 0, 0, 2], "factor": [[1, 1], [0, -1]]})");
  EXPECT_EQ(parse(run({"bound", wrong}).err)["error"], "InvalidGram");
}

TEST(CliFamily, Exp) {
  const CliRun r = run({"family", "exp", "--n", "3", "--c", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = parse_lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["process_bound"], "55/32");
  EXPECT_EQ(lines[0]["exact_perm"], "27/16");
}

TEST(CliFamily, AllOnesSweep) {
  const auto lines = parse_lines(run({"family", "allones", "--n", "4", "--count", "3"}).out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0]["process_bound"], "64");
  EXPECT_EQ(lines[0]["exact_perm"], "24");
  EXPECT_EQ(lines[1]["process_bound"], "1024");
  EXPECT_EQ(lines[2]["process_bound"], "32768");
  EXPECT_EQ(lines[2]["n"], 6);
}

TEST(CliFamily, RandomDd) {
  const CliRun r = run({"family", "random-dd", "--n", "4", "--eps", "1", "--delta", "1/12", "--seed", "7"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = parse_lines(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0]["diag_dominance"]["certified"], true);
  EXPECT_EQ(lines[0]["diag_dominance"]["bound"], "16");
  EXPECT_LE(Rational(lines[0]["exact_perm"].get<std::string>()), Rational(16));
}

TEST(CliFamily, OutputIndependentOfThreads) {
  const std::vector<std::string> args{"family", "random-dd", "--n", "5", "--eps", "1",
                                      "--delta", "1/20", "--seed", "3", "--count", "6"};
  ::setenv("PERMBOUND_THREADS", "1", 1);
  const std::string one = run(args).out;
  ::setenv("PERMBOUND_THREADS", "4", 1);
  const std::string four = run(args).out;
  ::unsetenv("PERMBOUND_THREADS");
  EXPECT_EQ(one, four);
  EXPECT_EQ(parse_lines(one).size(), 6u);
}

TEST(CliFamily, ParameterErrors) {
  EXPECT_EQ(run({"family", "exp", "--n", "3", "--c", "0"}).code, kExitInputError);
  EXPECT_EQ(run({"family", "random-dd", "--n", "6", "--eps", "1", "--delta", "5"}).code, kExitInputError);
  EXPECT_EQ(run({"family", "nope", "--n", "3"}).code, kExitInputError);
}

TEST_F(CliTest, VerifyAllOnAllOnes) {
  const CliRun r = run({"verify", write("ones.csv", "1,1,1\n1,1,1\n1,1,1\n"), "--suite", "all"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("PASS schur."), std::string::npos);
  EXPECT_NE(r.out.find("PASS uncross."), std::string::npos);
  EXPECT_NE(r.out.find("PASS boundedness."), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyPsdWithIdentityFactor) {
  const std::string path = write("id.json", R"({"n": 3, "kind": "gram", "factor": [[1,0,0],[0,1,0],[0,0,1]]})");
  const CliRun r = run({"verify", path, "--suite", "psd"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS psd."), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, VerifyPsdOnRandomGram) {
  Rng rng(81);
  const RationalMatrix v = random_signed(3, 5, rng, 2);
  MatrixFile f;
  f.format = MatrixFormat::Json;
  f.kind = MatrixKind::Gram;
  f.n = 5;
  f.factor_rows = 3;
  std::vector<std::string> factor;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 5; ++c) factor.push_back(to_string(v(r, c)));
  f.factor = factor;
  const RationalMatrix gram = transpose(v) * v;
  for (const Rational& e : gram.data()) f.entries.push_back(to_string(e));
  const CliRun r = run({"verify", write("g.json", to_json(f)), "--suite", "psd"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
}

TEST_F(CliTest, VerifyTamperedMajorant) {
  const std::string a = write("ones.csv", "1,1,1\n1,1,1\n1,1,1\n");
  const std::string good = write("good.csv", "1,1,1\n1,2,2\n1,2,6\n");
  const CliRun ok = run({"verify", a, "--suite", "boundedness", "--majorant", good});
  EXPECT_EQ(ok.code, kExitOk) << ok.out;
  const std::string tampered = write("bad.csv", "1,1,1\n1,2,2\n1,2,5\n");
  const CliRun r = run({"verify", a, "--suite", "boundedness", "--majorant", tampered});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(r.out.find("FAIL majorant.certificate"), std::string::npos);
  EXPECT_NE(r.out.find("ConditionViolated"), std::string::npos);
}

TEST_F(CliTest, VerifyBadSuite) {
  EXPECT_EQ(run({"verify", write("o.csv", "1\n"), "--suite", "nope"}).code, kExitInputError);
}

TEST(Io, CsvRoundTrip) {
  Rng rng(82);
  for (int rep = 0; rep < 10; ++rep) {
    const RationalMatrix m = random_signed(4, 4, rng, 9);
    const MatrixFile f = parse_matrix_text(to_csv(m));
    EXPECT_EQ(f.matrix<Rational>(), m);
    EXPECT_EQ(serialize(f), serialize(parse_matrix_text(serialize(f))));
  }
}

TEST(Io, JsonRoundTrip) {
  Rng rng(83);
  for (int rep = 0; rep < 10; ++rep) {
    const RationalMatrix m = random_signed(3, 3, rng, 9);
    const MatrixFile f = matrix_file_from(m, MatrixFormat::Json);
    const std::string text = serialize(f);
    const MatrixFile back = parse_matrix_text(text);
    EXPECT_EQ(back.matrix<Rational>(), m);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Io, CsvLiterals) {
  const MatrixFile f = parse_matrix_text("# comment\n0.25, 3/6 ,-2\n\n1e0,0,7\n1,1,1\n");
  const RationalMatrix m = f.matrix<Rational>();
  EXPECT_EQ(m(0, 0), ratio<Rational>(1, 4));
  EXPECT_EQ(m(0, 1), ratio<Rational>(1, 2));
  EXPECT_EQ(m(0, 2), Rational(-2));
  EXPECT_EQ(m(1, 0), Rational(1));
  EXPECT_THROW(parse_matrix_text("1/0,1\n1,1\n"), Error);
}

TEST(Io, Ordering) {
  EXPECT_EQ(parse_ordering("3,1,2", 3), (std::vector<std::size_t>{3, 1, 2}));
  EXPECT_THROW(parse_ordering("1,2", 3), Error);
  EXPECT_THROW(parse_ordering("0,1,2", 3), Error);
  EXPECT_THROW(parse_ordering("a,b,c", 3), Error);
}
