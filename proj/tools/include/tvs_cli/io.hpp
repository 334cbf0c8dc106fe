#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvs/tvs.hpp"

namespace tvs::cli {

struct DataTable {
  std::vector<double> x;
  std::vector<double> y;
  std::optional<std::vector<double>> shifted_effect;
};

// Decimal text that parses back to the identical double.
std::string format_double(double v);

// Header `t,x,y[,shifted_effect]`; t must run 0, 1, 2, ...
DataTable read_data_csv(const std::filesystem::path& path);
DataTable parse_data_csv(const std::string& text);
void write_data_csv(const std::filesystem::path& path, const DataTable& table);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

SimConfig sim_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const SimConfig& cfg);

struct FitSettings {
  FitConfig fit;
  double sparsity_threshold = kDefaultSparsityThreshold;
};
FitSettings fit_settings_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const FitSettings& settings);

nlohmann::json to_json(const ModelParams& p);
ModelParams params_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const JointLogLik& ll);
nlohmann::json to_json(const OlsResult& ols);
nlohmann::json to_json(const ScalingRecord& s);
nlohmann::json to_json(const SparsityReport& r);

// Files written into an output directory are deleted again (and the
// directory too, if this object created it) unless commit() is called.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  ~OutputDir();
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  std::filesystem::path file(const std::string& name);
  const std::vector<std::filesystem::path>& files() const noexcept { return files_; }
  const std::filesystem::path& path() const noexcept { return dir_; }
  void commit() noexcept { committed_ = true; }

 private:
  std::filesystem::path dir_;
  bool created_ = false;
  bool committed_ = false;
  std::vector<std::filesystem::path> files_;
};

}  // namespace tvs::cli
