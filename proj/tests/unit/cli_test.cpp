#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dss_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string& args) {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + DSS_CLI_BINARY + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path write(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, BoundsRows) {
  const auto r = run("bounds --n 20 --k 2 --format csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("variance,20,2,0.564189584,129.184385,undefined"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("first_moment,"), std::string::npos);
  EXPECT_NE(r.out.find("third_moment,"), std::string::npos);

  const auto one = run("bounds --n 1 --k 1 --format json");
  EXPECT_EQ(one.code, 0);
  EXPECT_NE(one.out.find("\"finite_bound\": 1.0"), std::string::npos) << one.out;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("bounds --n 5 --k 0").code, 2);
  EXPECT_EQ(run("crossover --k-min 5 --k-max 4").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bounds --n 5").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify " + (dir_ / "missing.txt").string()).code, 2);
  EXPECT_EQ(run("bounds --n 5 --k 2 --format yaml").code, 2);
}

TEST_F(Cli, CrossoverIsByteIdentical) {
  const auto a = dir_ / "a.csv", b = dir_ / "b.csv";
  ASSERT_EQ(run("crossover --k-min 1 --k-max 30 --out " + a.string()).code, 0);
  ASSERT_EQ(run("crossover --k-min 1 --k-max 30 --out " + b.string()).code, 0);
  const auto text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 31);
  EXPECT_EQ(text.rfind("k,c_first,c_third,c_variance,argmax\n", 0), 0u);
}

TEST_F(Cli, CrossoverReportsRegimeDisagreement) {
  const auto r = run("crossover --k-min 1 --k-max 8");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("k=5"), std::string::npos) << r.err;
  const auto j = run("crossover --k-min 4 --k-max 4 --format json");
  EXPECT_NE(j.out.find("\"agrees\": true"), std::string::npos) << j.out;
}

TEST_F(Cli, LatticeCheck) {
  const auto r = run("lattice-check --n 2 --k 1 --p 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"lemma_ratio\": 1.0"), std::string::npos) << r.out;
  EXPECT_NE(run("lattice-check --n 0 --k 2 --p 2").out.find("\"lemma_ratio\": \"undefined\""), std::string::npos);
  const auto big = run("lattice-check --n 30 --k 2 --p 2");
  EXPECT_EQ(big.code, 3);
  EXPECT_NE(big.err.find("budget"), std::string::npos);
}

TEST_F(Cli, Verify) {
  const auto bad = write("bad.txt", "3 1 3\n1\n2\n3\n");
  const auto r = run("verify " + bad.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out == "collision\n2 1 3\n1\n2\nequals\n1 1 3\n3\n" ||
              r.out == "collision\n1 1 3\n3\nequals\n2 1 3\n1\n2\n")
      << r.out;
  const auto good = write("good.txt", "3 1 4\n1\n2\n4\n");
  const auto g = run("verify " + good.string());
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(g.out, "distinct\n");
  EXPECT_EQ(run("verify " + write("malformed.txt", "2 1 3\n1\n").string()).code, 2);
}

TEST_F(Cli, Search) {
  const auto r = run("search --n 3 --k 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("M_min 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("3 1 4\n1\n2\n4\n"), std::string::npos) << r.out;
  EXPECT_EQ(run("search --n 3 --k 9").code, 2);
}

TEST_F(Cli, Moments) {
  const auto seq = write("s.txt", "3 1 4\n1\n2\n4\n");
  const auto r = run("moments " + seq.string() + " --p 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("exact 21/4\n"), std::string::npos) << r.out;
  const auto j = run("moments " + seq.string() + " --p 2 --format json");
  EXPECT_NE(j.out.find("\"exact\": \"21/4\""), std::string::npos) << j.out;

  const auto a = run("moments " + seq.string() + " --p 1.5 --mode mc --samples 1000");
  const auto b = run("moments " + seq.string() + " --p 1.5 --mode mc --samples 1000");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed 20240917"), std::string::npos);
  EXPECT_EQ(run("moments " + seq.string() + " --p 4").code, 2);
}

TEST_F(Cli, Report) {
  const auto r = run("report --n 3 --k 1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("first_moment,"), std::string::npos);
  // n = k = 1: the third-moment finite form exceeds the true minimum
  EXPECT_EQ(run("report --n 1 --k 1").code, 1);
}

TEST_F(Cli, OutWritesOnlyThatFile) {
  const auto target = dir_ / "bounds.txt";
  ASSERT_EQ(run("bounds --n 8 --k 2 --out " + target.string()).code, 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    if (name != "stdout.txt" && name != "stderr.txt") ++files;
  }
  EXPECT_EQ(files, 1u);
  EXPECT_EQ(slurp(dir_ / "stdout.txt"), "");
  EXPECT_FALSE(slurp(target).empty());
}
