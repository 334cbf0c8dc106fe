#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "tvs/error.hpp"
#include "tvs_cli/commands.hpp"
#include "tvs_cli/io.hpp"

namespace tvs::cli {
namespace {
namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("tvs_cli_") + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  fs::path write_config(const std::string& name, const json& doc) {
    const fs::path p = root_ / name;
    write_json(p, doc);
    return p;
  }

  fs::path root_;
};

TEST(DataCsv, ParsesBothHeaders) {
  const DataTable a = parse_data_csv("t,x,y\n0,0,1.5\n1,2,3\n");
  EXPECT_EQ(a.x, (std::vector<double>{0, 2}));
  EXPECT_EQ(a.y, (std::vector<double>{1.5, 3}));
  EXPECT_FALSE(a.shifted_effect);
  const DataTable b = parse_data_csv("t,x,y,shifted_effect\r\n0,0,1,1\r\n");
  ASSERT_TRUE(b.shifted_effect);
  EXPECT_EQ(*b.shifted_effect, (std::vector<double>{1}));
}

TEST(DataCsv, ErrorsNameTheRow) {
  auto message = [](const std::string& text) {
    try {
      parse_data_csv(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("t,x,y\n0,0,1\n1,abc,2\n").find("row 3"), std::string::npos);
  EXPECT_NE(message("t,x,y\n0,0,1\n2,0,2\n").find("row 3"), std::string::npos);
  EXPECT_NE(message("t,x,y\n0,0\n").find("row 2"), std::string::npos);
  EXPECT_NE(message("time,x,y\n").find("row 1"), std::string::npos);
  EXPECT_NE(message("t,x,y\n").find("no data"), std::string::npos);
}

TEST(DataCsv, DoublesRoundTrip) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> normal(0.0, 1e3);
  DataTable t;
  for (int i = 0; i < 500; ++i) {
    t.x.push_back(normal(gen));
    t.y.push_back(normal(gen) * 1e-7);
  }
  const fs::path p = fs::temp_directory_path() / "tvs_roundtrip.csv";
  write_data_csv(p, t);
  const DataTable back = read_data_csv(p);
  fs::remove(p);
  EXPECT_EQ(back.x, t.x);
  EXPECT_EQ(back.y, t.y);
}

TEST(Compare, TwentyImpulseShiftVectors) {
  const std::vector<int> truth{2, 1, 2, 0, 2, 3, 1, 0, 2, 4, 1, 2, 3, 2, 1, 0, 0, 1, 1, 0};
  const std::vector<int> est{2, 1, 2, 0, 2, 3, 1, 1, 2, 4, 1, 2, 3, 2, 1, 0, 0, 1, 1, 0};
  EXPECT_DOUBLE_EQ(shift_recovery_rate(truth, est), 0.95);
  EXPECT_DOUBLE_EQ(shift_recovery_rate(truth, truth), 1.0);
  EXPECT_THROW(shift_recovery_rate(truth, std::vector<int>(19, 0)), Error);
  EXPECT_NEAR(beta_error_ratio(2.09, 0.50, 2.00), 0.06, 1e-12);
}

TEST(Compare, IdenticalDocumentsHaveZeroError) {
  const json truth = {{"params", {{"beta", 2.0}, {"intercept", 6.5}, {"sigma_eps", 0.2}, {"lambda_tau", 2.0}}},
                      {"shifts", {1, 0, 3}},
                      {"realized_shift_mean", 4.0 / 3.0}};
  const json result = {{"tvs", {{"beta", 2.0}, {"intercept", 6.5}, {"sigma_eps", 0.2},
                                {"lambda_tau", 4.0 / 3.0}, {"shifts", {1, 0, 3}}}},
                       {"ols", {{"beta", 0.5}, {"sigma", 1.0}}}};
  const json report = compare_documents(result, truth);
  EXPECT_EQ(report["shift_recovery_rate"].get<double>(), 1.0);
  for (const char* key : {"beta", "intercept", "sigma_eps", "lambda_tau"}) {
    EXPECT_EQ(report["abs_error"][key].get<double>(), 0.0) << key;
  }
  EXPECT_EQ(report["beta_error_ratio"].get<double>(), 0.0);

  json mismatched = result;
  mismatched["tvs"]["shifts"] = {1, 0};
  EXPECT_THROW(compare_documents(mismatched, truth), Error);
}

TEST(FitSettings, DefaultsAndValidation) {
  const FitSettings d = fit_settings_from_json(json::object());
  EXPECT_EQ(d.fit.inner.tau_max, 28);
  EXPECT_EQ(d.fit.population_size, 60u);
  const FitSettings narrow = fit_settings_from_json({{"bounds", {{"lambda_tau", {0.0, 4.0}}}}});
  EXPECT_EQ(narrow.fit.inner.tau_max, default_tau_max(4.0));
  EXPECT_THROW(fit_settings_from_json({{"popsize", 10}}), Error);
  EXPECT_THROW(fit_settings_from_json({{"bounds", {{"sigma_eps", {0.0, 1.0}}}}}), Error);
  EXPECT_THROW(fit_settings_from_json({{"mutation", "big"}}), Error);
  EXPECT_THROW(sim_config_from_json({{"n", 10}, {"k", 5}, {"min_gap", 3}}), Error);
}

TEST_F(CliTest, SimulateWritesArtifactsDeterministically) {
  const fs::path cfg = write_config("sim.json", {{"n", 400}, {"k", 20}, {"seed", 5}});
  cmd_simulate({cfg, root_ / "a", std::nullopt});
  cmd_simulate({cfg, root_ / "b", std::nullopt});
  for (const char* f : {"data.csv", "truth.json", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(root_ / "a" / f)) << f;
  }
  EXPECT_EQ(slurp(root_ / "a" / "data.csv"), slurp(root_ / "b" / "data.csv"));
  EXPECT_EQ(slurp(root_ / "a" / "truth.json"), slurp(root_ / "b" / "truth.json"));

  const DataTable table = read_data_csv(root_ / "a" / "data.csv");
  EXPECT_EQ(table.x.size(), 400u);
  EXPECT_EQ(std::count_if(table.x.begin(), table.x.end(), [](double v) { return v != 0.0; }), 20);

  const json manifest = read_json(root_ / "a" / "manifest.json");
  for (const auto& path : manifest["artifacts"]) EXPECT_TRUE(fs::exists(path.get<std::string>()));
  EXPECT_EQ(manifest["config"]["seed"], 5);

  cmd_simulate({cfg, root_ / "c", 6});
  EXPECT_NE(slurp(root_ / "a" / "data.csv"), slurp(root_ / "c" / "data.csv"));
}

TEST_F(CliTest, FitRefusesEmptySupportAndCleansUp) {
  const fs::path sim_cfg = write_config("sim.json", {{"k", 0}, {"seed", 1}});
  cmd_simulate({sim_cfg, root_ / "sim", std::nullopt});
  const DataTable t = read_data_csv(root_ / "sim" / "data.csv");
  EXPECT_TRUE(std::all_of(t.x.begin(), t.x.end(), [](double v) { return v == 0.0; }));

  const fs::path fit_cfg = write_config("fit.json", json::object());
  EXPECT_THROW(cmd_fit({root_ / "sim" / "data.csv", fit_cfg, root_ / "fit", std::nullopt}), Error);
  EXPECT_FALSE(fs::exists(root_ / "fit"));
}

TEST_F(CliTest, FitRejectsConstantOutput) {
  write_text(root_ / "flat.csv", "t,x,y\n0,1,2\n1,0,2\n2,0,2\n");
  const fs::path fit_cfg = write_config("fit.json", json::object());
  try {
    cmd_fit({root_ / "flat.csv", fit_cfg, root_ / "fit", std::nullopt});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateInput);
  }
  EXPECT_FALSE(fs::exists(root_ / "fit"));
}

TEST_F(CliTest, FailedWritesLeaveNoPartialFiles) {
  fs::create_directories(root_ / "existing");
  write_text(root_ / "existing" / "keep.txt", "keep");
  {
    OutputDir dir(root_ / "existing");
    write_text(dir.file("partial.csv"), "x");
  }
  EXPECT_FALSE(fs::exists(root_ / "existing" / "partial.csv"));
  EXPECT_TRUE(fs::exists(root_ / "existing" / "keep.txt"));
  {
    OutputDir dir(root_ / "fresh");
    write_text(dir.file("partial.csv"), "x");
  }
  EXPECT_FALSE(fs::exists(root_ / "fresh"));
}

TEST_F(CliTest, FitAndCompareEndToEnd) {
  const fs::path sim_cfg = write_config("sim.json", {{"n", 200}, {"k", 10}, {"seed", 21}});
  cmd_simulate({sim_cfg, root_ / "sim", std::nullopt});
  const fs::path fit_cfg = write_config("fit.json", {{"seed", 4}, {"max_generations", 60}});
  cmd_fit({root_ / "sim" / "data.csv", fit_cfg, root_ / "fit", std::nullopt});
  cmd_fit({root_ / "sim" / "data.csv", fit_cfg, root_ / "fit2", std::nullopt});

  for (const char* f : {"result.json", "trace.csv", "residuals.csv", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(root_ / "fit" / f)) << f;
  }
  EXPECT_EQ(slurp(root_ / "fit" / "result.json"), slurp(root_ / "fit2" / "result.json"));

  // JSON outputs survive reread-and-rewrite unchanged.
  for (const fs::path& p : {root_ / "fit" / "result.json", root_ / "sim" / "truth.json"}) {
    const json doc = read_json(p);
    EXPECT_EQ(doc.dump(2) + "\n", slurp(p)) << p;
  }

  const json result = read_json(root_ / "fit" / "result.json");
  EXPECT_GT(result["tvs"]["beta"].get<double>(), result["ols"]["beta"].get<double>());
  EXPECT_EQ(result["tvs"]["shifts"].size(), 10u);

  std::istringstream trace(slurp(root_ / "fit" / "trace.csv"));
  std::string line;
  std::getline(trace, line);
  EXPECT_EQ(line, "generation,best_objective");
  double previous = -INFINITY;
  int rows = 0;
  while (std::getline(trace, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    EXPECT_GE(v, previous);
    previous = v;
    ++rows;
  }
  EXPECT_EQ(rows, result["optimizer"]["generations"].get<int>() + 1);

  std::istringstream res(slurp(root_ / "fit" / "residuals.csv"));
  std::getline(res, line);
  EXPECT_EQ(line, "t,y,yhat,residual");
  double ss = 0.0;
  std::size_t n = 0;
  while (std::getline(res, line)) {
    const double r = std::stod(line.substr(line.rfind(',') + 1));
    ss += r * r;
    ++n;
  }
  const double residual_std = std::sqrt(ss / static_cast<double>(n));
  EXPECT_NEAR(residual_std, result["tvs"]["sigma_eps"].get<double>(),
              0.1 * result["tvs"]["sigma_eps"].get<double>());

  const json report = cmd_compare({root_ / "fit" / "result.json", root_ / "sim" / "truth.json", root_ / "cmp"});
  EXPECT_TRUE(fs::exists(root_ / "cmp" / "compare.json"));
  EXPECT_GE(report["shift_recovery_rate"].get<double>(), 0.0);
  EXPECT_LT(report["beta_error_ratio"].get<double>(), 1.0);
}

}  // namespace
}  // namespace tvs::cli
