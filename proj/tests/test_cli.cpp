#include "optwit/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace optwit;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("optwit_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(std::move(args), out_, err_);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, BuildWritesExactWitness) {
  const std::string file = path("w2.dcoord");
  ASSERT_EQ(run({"build", "--n", "2", "--out", file}), kExitOk) << err_.str();
  EXPECT_NE(out_.str().find("dim 16 nnz 24"), std::string::npos);
  const DyadicOp back = load_dyadic_coordinate(file);
  EXPECT_EQ(back, build_witness(QubitCount(2)).matrix);
  EXPECT_EQ(slurp(file).rfind("%%DyadicCoordinate 16 24\n", 0), 0u);
}

TEST_F(CliTest, BuildRejectsBadN) {
  EXPECT_EQ(run({"build", "--n", "0", "--out", path("w.dcoord")}), kExitUsage);
  EXPECT_FALSE(err_.str().empty());
  EXPECT_EQ(run({"build", "--n", "7", "--out", path("w.dcoord")}), kExitUsage);
  EXPECT_EQ(run({"build"}), kExitUsage);
  EXPECT_EQ(run({}), kExitUsage);
}

TEST_F(CliTest, BuildUnwritablePath) {
  EXPECT_EQ(run({"build", "--n", "1", "--out", path("missing/dir/w.dcoord")}), kExitIo);
}

TEST_F(CliTest, SweepDefaultGrid) {
  const std::string file = path("s.csv");
  ASSERT_EQ(run({"sweep", "--n", "2", "--out", file}), kExitOk) << err_.str();
  std::istringstream is(slurp(file));
  const SweepTable table = parse_sweep_csv(is);
  ASSERT_EQ(table.rows.size(), 61u);
  const auto t = table.column("t");
  const auto w = table.column("witness_value");
  bool seen = false;
  for (std::size_t k = 0; k < t.size(); ++k)
    if (t[k] == 1.0) {
      EXPECT_EQ(w[k], -0.0625);
      seen = true;
    }
  EXPECT_TRUE(seen);
}

TEST_F(CliTest, SweepRejectsBadGrid) {
  EXPECT_EQ(run({"sweep", "--n", "2", "--steps", "1", "--out", path("s.csv")}), kExitUsage);
  EXPECT_EQ(run({"sweep", "--n", "2", "--t-min", "1", "--t-max", "0", "--out", path("s.csv")}), kExitUsage);
  EXPECT_EQ(run({"sweep", "--n", "1", "--out", path("s.csv")}), kExitUsage);
  EXPECT_FALSE(fs::exists(path("s.csv")));
}

TEST_F(CliTest, CertifyTwoQubits) {
  const std::string file = path("c.json");
  ASSERT_EQ(run({"certify", "--n", "2", "--out", file}), kExitOk) << err_.str();
  const auto j = nlohmann::json::parse(slurp(file));
  EXPECT_EQ(j["spa"]["p_star"]["num"], 4);
  EXPECT_EQ(j["spa"]["p_star"]["den"], 5);
  EXPECT_EQ(j["negative_eig_count"], 1);
  EXPECT_EQ(j["optimality_rank"], 16);
  const std::string first = slurp(file);
  ASSERT_EQ(run({"certify", "--n", "2", "--out", file}), kExitOk);
  EXPECT_EQ(slurp(file), first);
}

TEST_F(CliTest, CertifySingleQubitIsDecomposable) {
  const std::string file = path("c1.json");
  ASSERT_EQ(run({"certify", "--n", "1", "--out", file}), kExitOk) << err_.str();
  const auto j = nlohmann::json::parse(slurp(file));
  EXPECT_EQ(j["indecomposability_point"], "not-applicable: decomposable case");
  EXPECT_EQ(j["detection_threshold"], "not-applicable: decomposable case");
}

TEST_F(CliTest, CertifyCeiling) {
  EXPECT_EQ(run({"certify", "--n", "7", "--out", path("c.json")}), kExitUsage);
  EXPECT_EQ(run({"certify", "--n", "0", "--out", path("c.json")}), kExitUsage);
}

TEST_F(CliTest, ProbeWritesReport) {
  const std::string file = path("p.json");
  ASSERT_EQ(run({"probe", "--n", "1", "--restarts", "10", "--iters", "20", "--seed", "3", "--out", file}), kExitOk)
      << err_.str();
  const auto j = nlohmann::json::parse(slurp(file));
  EXPECT_GE(j["min_value"].get<double>(), -1e-10);
  EXPECT_LE(j["min_value"].get<double>(), 1e-10);
  EXPECT_EQ(run({"probe", "--n", "1", "--restarts", "0"}), kExitUsage);
}

TEST_F(CliTest, PlotIsDeterministicAndCrossesZero) {
  const std::string csv = path("s.csv"), a = path("a.svg"), b = path("b.svg");
  ASSERT_EQ(run({"sweep", "--n", "2", "--out", csv}), kExitOk);
  ASSERT_EQ(run({"plot", csv, "--out", a, "--columns", "min_eig_rho_gamma"}), kExitOk) << err_.str();
  ASSERT_EQ(run({"plot", csv, "--out", b, "--columns", "min_eig_rho_gamma"}), kExitOk);
  const std::string svg = slurp(a);
  EXPECT_EQ(svg, slurp(b));
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("data-column=\"min_eig_rho_gamma\""), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);

  // The drawn curve goes from on/above the zero line at t = 1 to below it at t = 1.05.
  std::istringstream is(slurp(csv));
  const SweepTable table = parse_sweep_csv(is);
  const auto series = plot_series(table, {{"min_eig_rho_gamma"}, false});
  const PlotFrame frame = plot_frame(series);
  const double zero_y = frame.y_of(0.0);
  const auto& s = series.front();
  int checked = 0;
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    if (std::abs(s.t[k] - 1.0) < 1e-9) {
      EXPECT_LE(frame.y_of(s.values[k]), zero_y + 1e-6);
      ++checked;
    }
    if (std::abs(s.t[k] - 1.05) < 1e-9) {
      EXPECT_GT(frame.y_of(s.values[k]), zero_y);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 2);
}

TEST_F(CliTest, PlotNormalizeAndDefaults) {
  const std::string csv = path("s.csv"), svg = path("n.svg");
  ASSERT_EQ(run({"sweep", "--n", "2", "--steps", "11", "--out", csv}), kExitOk);
  ASSERT_EQ(run({"plot", csv, "--out", svg, "--normalize"}), kExitOk) << err_.str();
  const std::string text = slurp(svg);
  EXPECT_NE(text.find("data-column=\"min_eig_rho\""), std::string::npos);
  EXPECT_NE(text.find("data-column=\"min_eig_rho_gamma\""), std::string::npos);
  EXPECT_NE(text.find("normalize=true"), std::string::npos);
}

TEST_F(CliTest, PlotErrors) {
  const std::string empty = path("empty.csv");
  std::ofstream(empty).close();
  EXPECT_EQ(run({"plot", empty, "--out", path("x.svg")}), kExitIo);
  EXPECT_EQ(run({"plot", path("nope.csv"), "--out", path("x.svg")}), kExitIo);

  const std::string bad = path("bad.csv");
  std::ofstream(bad) << "t,min_eig_rho\n0.5,abc\n";
  EXPECT_EQ(run({"plot", bad, "--out", path("x.svg")}), kExitIo);

  const std::string csv = path("s.csv");
  ASSERT_EQ(run({"sweep", "--n", "2", "--steps", "5", "--out", csv}), kExitOk);
  EXPECT_EQ(run({"plot", csv, "--out", path("x.svg"), "--columns", "nonexistent"}), kExitUsage);
  EXPECT_EQ(run({"plot", csv}), kExitUsage);
}

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}), kExitOk);
  EXPECT_NE(out_.str().find("certify"), std::string::npos);
}
