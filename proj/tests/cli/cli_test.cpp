#include "commands.hpp"
#include "config.hpp"
#include "svg.hpp"

#include "beatty/errors.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace beatty;
using namespace beatty::cli;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config_text(in);
}

const char* const kK3 =
    "k = 3\n"
    "alpha = [sqrt(2), sqrt(3), sqrt(5)]\n"
    "beta = [0, 0, 0]\n"
    "limit = 200000\n";

class Workspace : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("beatty_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }
  int run(const std::string& args) {
    const std::string cmd = std::string(BEATTY_EXE) + " " + args + " > " + (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST(Config, ValidK3) {
  auto cfg = parse(std::string("# comment line\n") + kK3 + "weighted = true  # trailing\n");
  validate(cfg);
  EXPECT_EQ(cfg.k, 3);
  EXPECT_EQ(cfg.limit, 200000u);
  ASSERT_EQ(cfg.sequences.size(), 3u);
  EXPECT_NEAR(cfg.sequences[2].alpha_value(), std::sqrt(5.0), 1e-15);
}

TEST(Config, RationalAlphaRejected) {
  auto cfg = parse("k = 2\nalpha = [sqrt(2), rational:3/2]\nbeta = [0, 0]\n");
  EXPECT_THROW(validate(cfg), ValidationError);
}

TEST(Config, MissingBeta) {
  try {
    parse("k = 2\nalpha = [sqrt(2), sqrt(3)]\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("beta"), std::string::npos);
  }
}

TEST(Config, LineDiagnostics) {
  try {
    parse("k = 2\nalpha = [sqrt(2), sqrt(3)]\nbeta = [0, 0]\ncolour = blue\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  try {
    parse("k = 2\nalpha = [sqrt(2), sqrt(3)\nbeta = [0, 0]\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  try {
    parse("k = 2\nalpha = [sqrt(2), sqrt(3)]\nbeta = [0, 0]\nlimit = 12.5\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  try {
    parse("k = 2\nalpha = [sqrt(2), sqrt(3 +]\nbeta = [0, 0]\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse("k = 2\nk = 3\nalpha = [sqrt(2)]\nbeta = [0]\n"), ParseError);
  EXPECT_THROW(parse("just words\n"), ParseError);
}

TEST(Config, Invariants) {
  auto mismatch = parse("k = 3\nalpha = [sqrt(2), sqrt(3)]\nbeta = [0, 0, 0]\n");
  EXPECT_THROW(validate(mismatch), ValidationError);
  auto big = parse(std::string(kK3) + "delta = 0.01\n");
  big.limit = kMaxLimit + 1;
  EXPECT_THROW(validate(big), ValidationError);
  // min(gamma, 1 - gamma)/4 for gamma = 1/sqrt(5) is about 0.112.
  auto wide = parse("k = 1\nalpha = [sqrt(5)]\nbeta = [0]\ndelta = 0.2\n");
  EXPECT_THROW(validate(wide), ValidationError);
  auto ok = parse("k = 1\nalpha = [sqrt(5)]\nbeta = [0]\ndelta = 0.1\nlimit = 1e5\n");
  validate(ok);
  EXPECT_EQ(ok.limit, 100000u);
  auto small = parse("k = 1\nalpha = [sqrt(2)/2]\nbeta = [0]\n");
  EXPECT_THROW(validate(small), ValidationError);  // alpha < 1
}

TEST(Config, QuotedAndNestedValues) {
  auto cfg = parse("k = 2\nalpha = [\"quadratic:(1+sqrt(5))/2\", (3 + sqrt(2))/2]\nbeta = [0, 1/3]\n");
  validate(cfg);
  EXPECT_NEAR(cfg.sequences[0].alpha_value(), (1 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_NEAR(cfg.sequences[1].alpha_value(), (3 + std::sqrt(2.0)) / 2, 1e-15);
}

TEST(Plot, Svg) {
  std::ostringstream warn;
  const auto svg = render_svg({"t", "n", "ratio", false, false, {{"r", {1, 2, 3}, {0.9, 1.0, 1.1}}}, {{"y = 1", 1.0, 0.0}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("y = 1"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  const fs::path p = fs::temp_directory_path() / "beatty_empty_plot.svg";
  fs::remove(p);
  EXPECT_FALSE(emit_plot(p, {"t", "x", "y", true, true, {{"empty", {}, {}}}, {}}, warn));
  EXPECT_FALSE(fs::exists(p));
  EXPECT_NE(warn.str().find("warning"), std::string::npos);
  // Nonpositive values cannot go on log axes.
  EXPECT_FALSE(emit_plot(p, {"t", "x", "y", true, true, {{"zeros", {0, 1}, {1, 0}}}, {}}, warn));
}

TEST(Manifest, Hash) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(command_names().size(), 8u);
}

TEST_F(Workspace, VerifyAsymptotic) {
  const auto cfg = write("k3.cfg", "k = 3\nalpha = [sqrt(2), sqrt(3), sqrt(5)]\nbeta = [0, 0, 0]\n"
                                   "limit = 20000\nfirst = 10001\nstride = 500\nmean_window = [0.5, 1.5]\n"
                                   "band = [0.5, 1.5]\n");
  ASSERT_EQ(run("--config " + cfg.string() + " --out " + (dir_ / "a").string() + " verify-asymptotic"), 0)
      << read(dir_ / "stderr.txt");
  const auto csv = read(dir_ / "a" / "verify_asymptotic.csv");
  EXPECT_EQ(csv.rfind("n,R,main_term,ratio\r\n", 0), 0u);
  const auto summary = nlohmann::json::parse(read(dir_ / "a" / "verify_asymptotic.json"));
  EXPECT_TRUE(summary["passed"].get<bool>());
  EXPECT_EQ(summary["ratios"].get<int>(), 20);
  const auto manifest = nlohmann::json::parse(read(dir_ / "a" / "manifest.json"));
  EXPECT_EQ(manifest["command"], "verify-asymptotic");
  EXPECT_EQ(manifest["config_hash"].get<std::string>(), "fnv1a64:" + fnv1a_hex(read(cfg)));
  EXPECT_TRUE(manifest.contains("wall_time_seconds"));
  EXPECT_TRUE(manifest["versions"].contains("beatty"));
  EXPECT_NE(read(dir_ / "a" / "ratio.svg").find("y = 1"), std::string::npos);

  // Same config twice: identical report bytes.
  ASSERT_EQ(run("--config " + cfg.string() + " --out " + (dir_ / "b").string() + " verify-asymptotic"), 0);
  EXPECT_EQ(csv, read(dir_ / "b" / "verify_asymptotic.csv"));
  EXPECT_EQ(read(dir_ / "a" / "verify_asymptotic.json"), read(dir_ / "b" / "verify_asymptotic.json"));
}

TEST_F(Workspace, ExitCodes) {
  const auto failing = write("fail.cfg", "k = 3\nalpha = [sqrt(2), sqrt(3), sqrt(5)]\nbeta = [0, 0, 0]\n"
                                         "limit = 5000\nfirst = 3001\nstride = 500\nmean_window = [5, 6]\n");
  EXPECT_EQ(run("--config " + failing.string() + " --out " + (dir_ / "f").string() + " verify-asymptotic"), 2);
  EXPECT_TRUE(fs::exists(dir_ / "f" / "manifest.json"));

  const auto rational = write("bad.cfg", "k = 1\nalpha = [rational:3/2]\nbeta = [0]\n");
  EXPECT_EQ(run("--config " + rational.string() + " --out " + (dir_ / "g").string() + " oracle-diff"), 1);
  EXPECT_NE(read(dir_ / "stderr.txt").find("invalid config"), std::string::npos);

  const auto syntax = write("syntax.cfg", "k = 1\nalpha = sqrt(2)\n");
  EXPECT_EQ(run("--config " + syntax.string() + " oracle-diff"), 1);
  EXPECT_NE(read(dir_ / "stderr.txt").find("line 2"), std::string::npos);
  EXPECT_EQ(run("--config " + syntax.string() + " no-such-command"), 1);

  // Exceptional scans need k = 2: an operational error.
  const auto k3 = write("k3.cfg", kK3);
  EXPECT_EQ(run("--config " + k3.string() + " --limit 1000 --out " + (dir_ / "h").string() + " exceptional-scan"), 1);
}

TEST_F(Workspace, OracleDiff) {
  const auto cfg = write("k3.cfg", kK3);
  EXPECT_EQ(run("--config " + cfg.string() + " --limit 3000 --threads 2 --out " + (dir_ / "o").string() +
                " oracle-diff"),
            0);
  const auto j = nlohmann::json::parse(read(dir_ / "o" / "oracle_diff.json"));
  EXPECT_EQ(j["unweighted_mismatches"].get<int>(), 0);
  EXPECT_EQ(j["weighted_mismatches"].get<int>(), 0);
  EXPECT_EQ(j["checked"].get<int>(), 3000 - 6 + 1);
}

TEST_F(Workspace, ExceptionalScan) {
  const auto cfg = write("k2.cfg", "k = 2\nalpha = [sqrt(2), sqrt(3)]\nbeta = [0, 0]\nlimit = 100000\n"
                                   "checkpoints = [10000, 50000, 100000]\n");
  ASSERT_EQ(run("--config " + cfg.string() + " --out " + (dir_ / "e").string() + " exceptional-scan"), 0);
  const auto j = nlohmann::json::parse(read(dir_ / "e" / "exceptional_scan.json"));
  EXPECT_TRUE(j["reverified"].get<bool>());
  EXPECT_EQ(j["checkpoints"].size(), 3u);
  for (auto n : j["exceptions"]) EXPECT_EQ(n.get<std::uint64_t>() % 2, 0u);
}

TEST_F(Workspace, OtherCommands) {
  const auto cfg = write("k2.cfg", "k = 2\nalpha = [sqrt(2), sqrt(3)]\nbeta = [0, 0]\nlimit = 10000\n"
                                   "n_values = [100]\ndelta = 0.05\nM = 50\nN = 20000\nm_max = 5\n"
                                   "grid = 200\narcs_q = 10\nq_max = 100\nX_values = [100, 1000]\n");
  const std::string base = "--config " + cfg.string() + " --out " + dir_.string() + "/";
  EXPECT_EQ(run(base + "fr fourier-report"), 0);
  EXPECT_NE(read(dir_ / "fr" / "fourier_decay.svg").find("slope -2"), std::string::npos);
  EXPECT_EQ(run(base + "dt dioph-type"), 0);
  EXPECT_EQ(read(dir_ / "dt" / "type_scan.csv").rfind("m1,m2,distance,exponent\r\n", 0), 0u);
  EXPECT_EQ(run(base + "cs circle-scan"), 0);
  EXPECT_EQ(read(dir_ / "cs" / "lemma1_scan.csv").rfind("xi,a,q,theta,abs_S,bound,ratio\r\n", 0), 0u);
  const auto arcs = nlohmann::json::parse(read(dir_ / "cs" / "farey_arcs.json"));
  EXPECT_EQ(arcs["arcs"].size(), 32u);  // sum of phi(q) for q <= 10
  EXPECT_EQ(run(base + "ss singular-series"), 0);
  EXPECT_EQ(read(dir_ / "ss" / "singular_series.csv").rfind("n,k,value,error_bound,cutoff\r\n", 0), 0u);
  EXPECT_EQ(run(base + "l2 lemma2-scan"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "l2" / "lemma2_alpha2.csv"));
}
