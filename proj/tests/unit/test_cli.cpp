#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "fixtures.hpp"
#include "hybridvol/cli/commands.hpp"
#include "hybridvol/cli/config.hpp"
#include "hybridvol/hybrid.hpp"
#include "hybridvol/mc.hpp"

using namespace hybridvol;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config(double rho, double strike) {
  return {
      {"model", "heston_cir"},
      {"heston",
       {{"kappa", 1.0}, {"theta", 0.04}, {"sigma", 0.2}, {"rho", rho}, {"v0", 0.04}}},
      {"rate", {{"kappa_r", 1.8}, {"theta_r", 0.03}, {"sigma_r", 0.1}, {"r0", 0.035}}},
      {"option", {{"s0", 100.0}, {"strike", strike}, {"maturity", 1.0}, {"kind", "call"}}},
      {"quadrature", {{"abs_tol", 1e-10}, {"rel_tol", 1e-10}}},
      {"mc", {{"paths", 10000}, {"steps", 500}, {"seed", 777}, {"antithetic", false}}},
  };
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hybridvol_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_config(const json& j, const std::string& name = "cfg.json") {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << j.dump(2);
    return path;
  }

  std::string write_text(const std::string& text, const std::string& name) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  struct Run {
    int code;
    std::string out;
    std::string err;
  };

  Run run(const std::string& args) {
    const auto out = (dir_ / "stdout.txt").string();
    const auto err = (dir_ / "stderr.txt").string();
    const std::string cmd = std::string(HYBRIDVOL_CLI_PATH) + " " + args + " > " +
                            out + " 2> " + err;
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

double footer_integral(const std::string& text) {
  const auto pos = text.find("# trapezoid_integral=");
  return std::stod(text.substr(pos + std::string("# trapezoid_integral=").size()));
}

}  // namespace

TEST_F(CliTest, PriceZeroStrikeGivesSpot) {
  json j = base_config(-0.5, 1e-8);
  j["model"] = "heston";
  j["heston"]["mu"] = 0.03;
  const auto r = run("price --config " + write_config(j));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rec = json::parse(r.out);
  EXPECT_EQ(rec["model"], "heston");
  EXPECT_NEAR(rec["price"].get<double>(), 100.0, 1e-6);
  for (const char* key : {"error_estimate", "evaluations", "wall_time"}) {
    EXPECT_TRUE(rec.contains(key)) << key;
  }
}

TEST_F(CliTest, MissingRateBlockForHybridIsConfigError) {
  json j = base_config(0.0, 100.0);
  j.erase("rate");
  const auto r = run("price --config " + write_config(j));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("rate"), std::string::npos);
}

TEST_F(CliTest, PriceIsBitIdenticalToLibrary) {
  const auto r = run("price --config " + write_config(base_config(0.0, 100.0)));
  ASSERT_EQ(r.code, 0) << r.err;
  const double cli_price = json::parse(r.out)["price"].get<double>();
  const double lib = hybrid_call_price(fixtures::atm(100.0), fixtures::base_heston(0.0),
                                       fixtures::base_rate(), QuadratureConfig{});
  EXPECT_EQ(cli_price, lib);
}

TEST_F(CliTest, MalformedInputsExitTwo) {
  EXPECT_EQ(run("price --config " + write_text("{not json", "bad.json")).code, 2);
  json unknown = base_config(0.0, 100.0);
  unknown["heston"]["kapa"] = 1.0;
  EXPECT_EQ(run("price --config " + write_config(unknown)).code, 2);
  json wrong_type = base_config(0.0, 100.0);
  wrong_type["option"]["strike"] = "100";
  EXPECT_EQ(run("price --config " + write_config(wrong_type)).code, 2);
  json bad_model = base_config(0.0, 100.0);
  bad_model["model"] = "sabr";
  EXPECT_EQ(run("price --config " + write_config(bad_model)).code, 2);
  EXPECT_EQ(run("price --config " + (dir_ / "missing.json").string()).code, 2);
  EXPECT_EQ(run("curve --config " + write_config(base_config(0.0, 100.0)) +
                " --strikes 60:140:1 --out " + (dir_ / "c.csv").string())
                .code,
            2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(CliTest, NumericalFailureExitsThree) {
  json j = base_config(-0.5, 100.0);
  j["quadrature"]["max_evals"] = 60;
  const auto r = run("price --config " + write_config(j));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("numerical"), std::string::npos);
}

TEST_F(CliTest, UnwritableOutputExitsFour) {
  const auto cfg = write_config(base_config(0.0, 100.0));
  const std::string bad = (dir_ / "no_such_dir" / "out.csv").string();
  EXPECT_EQ(run("curve --config " + cfg + " --strikes 90:110:3 --out " + bad).code, 4);
  EXPECT_EQ(run("density --config " + cfg + " --xrange -1:1:5 --out " + bad).code, 4);
}

TEST_F(CliTest, CurveColumnsAndBaseline) {
  const auto cfg = write_config(base_config(0.0, 100.0));
  const auto out = (dir_ / "curve.csv").string();
  ASSERT_EQ(run("curve --config " + cfg + " --strikes 60:140:81 --out " + out).code, 0);
  const std::string text = slurp(out);
  std::string header;
  const auto rows = parse_csv(text, &header);
  EXPECT_EQ(header, "strike,bs_r0,bs_theta_r,heston_r0,heston_theta_r,hybrid");
  ASSERT_EQ(rows.size(), 81u);
  EXPECT_EQ(rows.front()[0], 60.0);
  EXPECT_EQ(rows.back()[0], 140.0);
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 6u);
    EXPECT_EQ(row[2] - row[2], 0.0);
    for (double v : row) EXPECT_TRUE(std::isfinite(v));
  }

  // MC spot checks of the hybrid column.
  const auto p = fixtures::base_heston(0.0);
  const auto rp = fixtures::base_rate();
  McConfig mc;
  mc.paths = 10000;
  mc.steps = 500;
  mc.seed = 61;
  for (std::size_t idx : {0u, 20u, 40u, 60u, 80u}) {
    const auto est = mc_price_hybrid(fixtures::atm(rows[idx][0]), p, rp, mc);
    EXPECT_LE(std::abs(rows[idx][5] - est.mean), 3 * est.std_error + 5e-12 * rows[idx][5])
        << rows[idx][0];
  }
}

TEST_F(CliTest, CurveFieldsUseTwelveSignificantDigits) {
  const auto out = (dir_ / "curve.csv").string();
  ASSERT_EQ(run("curve --config " + write_config(base_config(0.0, 100.0)) +
                " --strikes 95:105:3 --out " + out)
                .code,
            0);
  std::istringstream in(slurp(out));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::istringstream ls(line);
  std::string cell;
  std::getline(ls, cell, ',');
  EXPECT_EQ(cell, "95");
  std::getline(ls, cell, ',');
  std::string digits;
  for (char c : cell) {
    if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
  }
  while (!digits.empty() && digits.front() == '0') digits.erase(0, 1);
  EXPECT_LE(digits.size(), 12u) << cell;
  EXPECT_GE(digits.size(), 10u) << cell;
  EXPECT_EQ(cli::format_field(1.0 / 3.0), "0.333333333333");
}

TEST_F(CliTest, VolatileRateHybridLeavesHestonBand) {
  json j = base_config(0.0, 100.0);
  j["rate"]["kappa_r"] = 0.5;
  j["rate"]["sigma_r"] = 0.3;
  const auto out = (dir_ / "volatile.csv").string();
  ASSERT_EQ(run("curve --config " + write_config(j) + " --strikes 60:140:81 --out " + out)
                .code,
            0);
  bool outside = false;
  for (const auto& row : parse_csv(slurp(out))) {
    const double lo = std::min(row[3], row[4]);
    const double hi = std::max(row[3], row[4]);
    outside = outside || row[5] < lo || row[5] > hi;
  }
  EXPECT_TRUE(outside);
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRuns) {
  const auto cfg = write_config(base_config(0.5, 100.0));
  const auto a = (dir_ / "a.csv").string();
  const auto b = (dir_ / "b.csv").string();
  ASSERT_EQ(run("curve --config " + cfg + " --strikes 80:120:9 --out " + a).code, 0);
  ASSERT_EQ(run("curve --config " + cfg + " --strikes 80:120:9 --threads 3 --out " + b)
                .code,
            0);
  EXPECT_EQ(slurp(a), slurp(b));
  ASSERT_EQ(run("density --config " + cfg + " --xrange -1:1:21 --out " + a).code, 0);
  ASSERT_EQ(run("density --config " + cfg + " --xrange -1:1:21 --out " + b).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(CliTest, DensityNormalizationAndTail) {
  const auto cfg = write_config(base_config(-0.5, 100.0));
  const auto out = (dir_ / "d.csv").string();
  ASSERT_EQ(run("density --config " + cfg + " --xrange -3:3:2001 --out " + out).code, 0);
  const std::string text = slurp(out);
  std::string header;
  const auto rows = parse_csv(text, &header);
  EXPECT_EQ(header, "x,density");
  EXPECT_EQ(rows.size(), 2001u);
  EXPECT_NEAR(footer_integral(text), 1.0, 1e-4);

  ASSERT_EQ(run("density --config " + cfg + " --xrange 4.9:5.1:3 --out " + out).code, 0);
  const auto tail = parse_csv(slurp(out));
  EXPECT_LT(tail[1][1], 1e-6);
  EXPECT_EQ(tail[1][0], 5.0);
}

TEST_F(CliTest, CorrelationSignMovesDensityMean) {
  std::vector<double> means;
  for (double rho : {-0.5, 0.0, 0.5}) {
    const auto out = (dir_ / "m.csv").string();
    ASSERT_EQ(run("density --config " + write_config(base_config(rho, 100.0)) +
                  " --xrange -1.5:1.5:301 --out " + out)
                  .code,
              0);
    const auto rows = parse_csv(slurp(out));
    double mean = 0.0;
    double mass = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double dx = rows[i][0] - rows[i - 1][0];
      mean += 0.5 * dx * (rows[i][0] * rows[i][1] + rows[i - 1][0] * rows[i - 1][1]);
      mass += 0.5 * dx * (rows[i][1] + rows[i - 1][1]);
    }
    means.push_back(mean / mass);
  }
  const double down = means[0] - means[1];
  const double up = means[2] - means[1];
  EXPECT_NE(down, 0.0);
  EXPECT_LT(down * up, 0.0);
}

TEST_F(CliTest, VerifyDegenerateRateGivesZeroScore) {
  json j = base_config(-0.5, 100.0);
  j["rate"]["sigma_r"] = 0.0;
  j["mc"]["paths"] = 200;
  j["mc"]["steps"] = 10;
  const auto r = run("verify --config " + write_config(j));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rec = json::parse(r.out);
  EXPECT_EQ(rec["z"].get<double>(), 0.0);
  EXPECT_EQ(rec["std_error"].get<double>(), 0.0);
}

TEST_F(CliTest, VerifyBaseCasePasses) {
  const auto r = run("verify --config " + write_config(base_config(-0.5, 100.0)));
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto rec = json::parse(r.out);
  EXPECT_LE(std::abs(rec["z"].get<double>()), 3.0);
  EXPECT_TRUE(rec["passed"].get<bool>());
}

TEST_F(CliTest, VerifyRejectsCorruptedConfigBeforeWork) {
  json j = base_config(-0.5, 100.0);
  j["heston"]["theta"] = -0.04;
  j["mc"]["paths"] = 100000000;
  const auto r = run("verify --config " + write_config(j));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("theta"), std::string::npos);
  json no_mc = base_config(-0.5, 100.0);
  no_mc.erase("mc");
  EXPECT_EQ(run("verify --config " + write_config(no_mc)).code, 2);
}

TEST_F(CliTest, VerifyFailureExitsFive) {
  json j = base_config(0.0, 100.0);
  j["model"] = "bs";
  j["heston"]["mu"] = 0.03;
  j["mc"]["paths"] = 2;
  j["mc"]["seed"] = 5;
  const auto r = run("verify --config " + write_config(j));
  const auto rec = json::parse(r.out);
  const bool passed = rec["passed"].get<bool>();
  EXPECT_EQ(r.code, passed ? 0 : 5);
}

TEST_F(CliTest, SeedOverrideChangesMonteCarloOnly) {
  json j = base_config(0.0, 100.0);
  j["model"] = "bs";
  j["heston"]["mu"] = 0.03;
  j["mc"]["paths"] = 1000;
  const auto cfg = write_config(j);
  const auto a = json::parse(run("verify --config " + cfg + " --seed 1").out);
  const auto b = json::parse(run("verify --config " + cfg + " --seed 2").out);
  const auto c = json::parse(run("verify --config " + cfg + " --seed 1 --threads 2").out);
  EXPECT_EQ(a["analytic"], b["analytic"]);
  EXPECT_NE(a["mc"], b["mc"]);
  EXPECT_EQ(a["mc"], c["mc"]);
  EXPECT_EQ(a["seed"].get<std::uint64_t>(), 1u);
}

TEST_F(CliTest, FellerWarningGoesToStderr) {
  json j = base_config(0.0, 100.0);
  j["rate"]["kappa_r"] = 0.5;
  j["rate"]["sigma_r"] = 0.3;
  const auto r = run("price --config " + write_config(j));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("Feller"), std::string::npos);
  EXPECT_EQ(r.out.find("Feller"), std::string::npos);
}

TEST(CliConfig, ParsesDefaultsAndRejectsUnknownKeys) {
  const auto cfg = cli::parse_config(R"({
    "model": "heston",
    "heston": {"kappa": 1, "theta": 0.04, "sigma": 0.2, "rho": 0, "v0": 0.04},
    "option": {"s0": 100, "strike": 90, "maturity": 0.5}
  })");
  EXPECT_EQ(cfg.model, cli::ModelKind::heston);
  EXPECT_EQ(cfg.option.kind, OptionKind::call);
  EXPECT_EQ(cfg.heston.lambda, 0.0);
  EXPECT_FALSE(cfg.rate.has_value());
  EXPECT_FALSE(cfg.mc.has_value());
  EXPECT_THROW(cli::parse_config(R"({"model":"heston","extra":1})"), cli::ConfigError);
  EXPECT_THROW(cli::parse_config(R"({
    "model": "heston",
    "heston": {"kappa": 1, "theta": 0.04, "sigma": 0.2, "rho": 0, "v0": 0.04},
    "option": {"s0": 100, "strike": 90, "maturity": 0.5},
    "mc": {"paths": -5}
  })"),
               cli::ConfigError);
}

TEST(CliGrid, ParsesAndRejects) {
  const auto g = cli::parse_grid("60:140:81");
  EXPECT_EQ(g.points, 81u);
  const auto v = g.values();
  EXPECT_EQ(v.front(), 60.0);
  EXPECT_EQ(v[1], 61.0);
  EXPECT_EQ(v.back(), 140.0);
  for (const char* bad : {"60:140", "60:140:1", "a:b:3", "1:0:3", "0:1:3x", "0:1:-4"}) {
    EXPECT_THROW(cli::parse_grid(bad), cli::ConfigError) << bad;
  }
}
