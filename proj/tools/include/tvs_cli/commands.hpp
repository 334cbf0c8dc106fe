#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>

#include <json.hpp>

namespace tvs::cli {

struct SimulateArgs {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
};

struct FitArgs {
  std::filesystem::path data;
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
};

struct CompareArgs {
  std::filesystem::path result;
  std::filesystem::path truth;
  std::filesystem::path out;
};

// Each command throws tvs::Error on failure and leaves no partial output.
void cmd_simulate(const SimulateArgs& args);
void cmd_fit(const FitArgs& args);
// Returns the compare.json document it wrote.
nlohmann::json cmd_compare(const CompareArgs& args);

// Fraction of positions where the two vectors agree. Throws on length mismatch.
double shift_recovery_rate(std::span<const int> truth, std::span<const int> estimate);

// |tvs - truth| / |ols - truth|.
double beta_error_ratio(double tvs_beta, double ols_beta, double true_beta);

nlohmann::json compare_documents(const nlohmann::json& result, const nlohmann::json& truth);

}  // namespace tvs::cli
