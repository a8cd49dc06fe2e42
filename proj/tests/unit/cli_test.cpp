#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("encmatch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args) const {
    const std::string cmd = "cd '" + dir_.string() + "' && '" ENCMATCH_CLI_PATH "' " + args + " 2>/dev/null";
    Result r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  static std::string line_value(const std::string& out, const std::string& key) {
    const auto pos = out.find(key + " ");
    if (pos == std::string::npos) return {};
    const auto start = pos + key.size() + 1;
    return out.substr(start, out.find('\n', start) - start);
  }

  fs::path dir_;
};

TEST_F(CliTest, SelftestPasses) {
  const auto r = run("selftest");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, EncodeIsDeterministic) {
  const auto a = run("encode --subtask 1 --seed 7 --output a.png");
  const auto b = run("encode --subtask 1 --seed 7 --output b.png");
  const auto c = run("encode --subtask 1 --seed 8 --output c.png");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(line_value(a.out, "hash").size(), 16u);
  EXPECT_EQ(line_value(a.out, "hash"), line_value(b.out, "hash"));
  EXPECT_NE(line_value(a.out, "hash"), line_value(c.out, "hash"));
}

TEST_F(CliTest, EncodeDecodeEachSubtask) {
  ASSERT_EQ(run("encode --subtask 2 --seed 3 --input missing.png").code, 3);
  ASSERT_EQ(run("encode --subtask 1 --seed 3 --output e1.png").code, 0);
  EXPECT_EQ(run("decode --subtask 1 --input e1.png --output d1.png").code, 0);
  ASSERT_EQ(run("keygen --seed 4 --output k.bin").code, 0);
  ASSERT_EQ(run("encode --subtask 3 --seed 3 --keys k.bin --output e3.bin").code, 0);
  const auto ins = run("inspect --input e3.bin --keys k.bin");
  EXPECT_EQ(ins.code, 0);
  EXPECT_EQ(line_value(ins.out, "ciphertexts"), "8");
  EXPECT_EQ(ins.out.find("UNRELIABLE"), std::string::npos);
  EXPECT_EQ(run("decode --subtask 3 --keys k.bin --input e3.bin --output d3.png").code, 0);
  EXPECT_EQ(run("decrypt-image --keys k.bin --input e3.bin --output d3b.png").code, 0);
  EXPECT_EQ(run("encrypt-image --keys k.bin --input d3.png --seed 1 --output again.bin").code, 0);
}

TEST_F(CliTest, EnsembleSingleScore) {
  write("s.csv", "pair_id,model_id,score\n0,m,0.9\n");
  const auto r = run("ensemble --scores s.csv");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("encode").code, 2);
  EXPECT_EQ(run("encode --seed 1 --frobnicate").code, 2);
  EXPECT_EQ(run("encode --seed 1 --subtask 9").code, 2);
  EXPECT_EQ(run("decode --input nothing.png").code, 3);
  EXPECT_EQ(run("--config nothing.ini selftest").code, 3);
  write("bad.txt", "2\n");
  write("good.txt", "1\n");
  EXPECT_EQ(run("score --submission bad.txt --truth good.txt").code, 4);
  write("range.csv", "pair_id,model_id,score\n0,m,1.5\n");
  EXPECT_EQ(run("ensemble --scores range.csv").code, 4);
  EXPECT_EQ(run("encode --seed 1 --key N=32,a=1,b=1").code, 4);
}

TEST_F(CliTest, HelpListsDefaults) {
  const auto r = run("build-dataset --help");
  EXPECT_EQ(r.code, 0);
  for (const char* flag : {"--root", "--subtask", "--count", "--seed", "--key", "--nonmatch", "--train-ratio",
                           "--source", "--threads"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
  EXPECT_NE(r.out.find("[0.8]"), std::string::npos);
  EXPECT_NE(r.out.find("[200]"), std::string::npos);
  EXPECT_NE(run("--help").out.find("make-samples"), std::string::npos);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  write("run.ini", "[encode]\nseed=7\nsubtask=1\n");
  const auto from_config = run("--config run.ini encode --output a.png");
  const auto direct = run("encode --seed 7 --output b.png");
  const auto overridden = run("--config run.ini encode --seed 8 --output c.png");
  const auto direct8 = run("encode --seed 8 --output d.png");
  ASSERT_EQ(from_config.code, 0);
  EXPECT_EQ(line_value(from_config.out, "hash"), line_value(direct.out, "hash"));
  EXPECT_EQ(line_value(overridden.out, "hash"), line_value(direct8.out, "hash"));
}

TEST_F(CliTest, DatasetSamplesScoreReport) {
  ASSERT_EQ(run("build-dataset --root ds --subtask 3 --count 10 --seed 2").code, 0);
  const auto ms = run("make-samples --root ds --subtask 3 --seed 5 --approach T2 --output s.bin");
  ASSERT_EQ(ms.code, 0);
  EXPECT_EQ(line_value(ms.out, "samples"), "20");
  std::string scores = "pair_id,model_id,score\n";
  for (int i = 0; i < 20; ++i) scores += std::to_string(i) + ",flat,0.5\n";
  write("flat.csv", scores);
  const auto rep = run("report --scores flat.csv --manifest ds/3/manifest.csv");
  EXPECT_EQ(rep.code, 0);
  EXPECT_NE(rep.out.find("flat,0.500000,0.693147"), std::string::npos) << rep.out;
  ASSERT_EQ(run("ensemble --scores flat.csv --output sub.txt --expected-lines 20").code, 0);
  const auto sc = run("score --submission sub.txt --manifest ds/3/manifest.csv");
  EXPECT_EQ(line_value(sc.out, "accuracy"), "0.500000");
  EXPECT_EQ(line_value(run("score --accuracies 1 0 0").out, "weighted_accuracy"), "0.100000");
}

}  // namespace
