#include "cli.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mapseg/image_io.hpp"
#include "mapseg/segmenter.hpp"

namespace mapseg {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mapseg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mapseg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    input_ = dir_ / "in.ppm";
    encode_image(testing::two_region(24, 16, 0.05, 9).image, input_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
  fs::path input_;
};

TEST_F(Cli, MissingInputIsUsageError) {
  const auto r = run({"--mask", path("m.pgm")});
  EXPECT_EQ(r.code, cli::kUsageError);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST_F(Cli, BadOptionValues) {
  EXPECT_EQ(run({input_.string(), "--mask", path("m.pgm"), "--lambda", "-1"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({input_.string(), "--mask", path("m.pgm"), "--neighborhood", "6"}).code,
            cli::kUsageError);
  EXPECT_EQ(run({input_.string(), "--mask", path("m.pgm"), "--colors", "0"}).code,
            cli::kUsageError);
}

TEST_F(Cli, UnreadableInputIsIoError) {
  const auto r = run({path("nope.ppm"), "--mask", path("m.pgm")});
  EXPECT_EQ(r.code, cli::kIoError);
  EXPECT_FALSE(fs::exists(dir_ / "m.pgm"));
}

TEST_F(Cli, WritesMaskOfInputSize) {
  const auto r = run({input_.string(), "--mask", path("m.pgm"), "--overlay", path("o.png")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto mask = decode_mask(dir_ / "m.pgm");
  EXPECT_EQ(mask.width(), 24u);
  EXPECT_EQ(mask.height(), 16u);
  EXPECT_EQ(decode_image(dir_ / "o.png").width(), 24u);
  EXPECT_NE(r.out.find("n=384"), std::string::npos);
  EXPECT_NE(r.out.find(" d="), std::string::npos);
}

TEST_F(Cli, EigenvectorDumpRoundTrips) {
  const auto r = run({input_.string(), "--mask", path("m.png"), "--dump-eigenvector",
                      path("x.txt"), "--seed", "3"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  std::istringstream in(slurp(dir_ / "x.txt"));
  std::vector<double> x;
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    std::from_chars(tok.data(), tok.data() + tok.size(), v);
    x.push_back(v);
  }
  SegmentationConfig cfg;
  cfg.lanczos.seed = 3;
  const auto ref = segment(decode_image(input_), cfg);
  EXPECT_EQ(x, ref.eigen.eigenvector);
  EXPECT_EQ(decode_mask(dir_ / "m.png"), labels_from_vector(24, 16, x));
}

TEST_F(Cli, ReportHasKeys) {
  const auto r = run({input_.string(), "--mask", path("m.pgm"), "--report", path("r.txt"),
                      "--lambda", "10", "--neighborhood", "8", "--colors", "4"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const std::string report = slurp(dir_ / "r.txt");
  for (const char* key : {"width = 24", "height = 16", "n = 384", "lambda = 10",
                          "neighborhood = 8", "colors_requested = 4", "eigenvalue = ",
                          "iterations = ", "converged = true", "energy = ",
                          "reduced_objective = ", "time_total_ms = "}) {
    EXPECT_NE(report.find(key), std::string::npos) << key;
  }
}

TEST_F(Cli, NonConvergenceStillWritesOutputs) {
  const auto r = run({input_.string(), "--mask", path("m.pgm"), "--max-iters", "1", "--tol",
                      "1e-14"});
  EXPECT_EQ(r.code, cli::kNotConverged);
  EXPECT_TRUE(fs::exists(dir_ / "m.pgm"));
}

TEST_F(Cli, IdenticalRunsGiveIdenticalMasks) {
  ASSERT_EQ(run({input_.string(), "--mask", path("a.pgm")}).code, cli::kSuccess);
  ASSERT_EQ(run({input_.string(), "--mask", path("b.pgm")}).code, cli::kSuccess);
  EXPECT_EQ(slurp(dir_ / "a.pgm"), slurp(dir_ / "b.pgm"));
}

}  // namespace
}  // namespace mapseg
