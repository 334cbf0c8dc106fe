#include "tvs_cli/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace tvs::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line_no, const char* column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw Error(ErrorKind::kParse, "row " + std::to_string(line_no) + ": cannot parse " +
                                       column + " value '" + std::string(field) + "'");
  }
  return v;
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed, const char* what) {
  if (!doc.is_object()) {
    throw Error(ErrorKind::kConfig, std::string(what) + " must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) {
      throw Error(ErrorKind::kConfig, std::string("unknown ") + what + " key '" + key + "'");
    }
  }
}

template <typename T>
void read_key(const json& doc, const char* key, T& target) {
  if (!doc.contains(key)) return;
  try {
    target = doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("bad value for '") + key + "': " + e.what());
  }
}

void read_interval(const json& doc, const char* key, Interval& target) {
  if (!doc.contains(key)) return;
  const json& v = doc.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw Error(ErrorKind::kConfig, std::string("bound '") + key + "' must be [lower, upper]");
  }
  target = {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DataTable parse_data_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::kParse, "row 1: missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool with_effect = false;
  if (line == "t,x,y,shifted_effect") {
    with_effect = true;
  } else if (line != "t,x,y") {
    throw Error(ErrorKind::kParse, "row 1: expected header 't,x,y[,shifted_effect]', got '" + line + "'");
  }

  DataTable table;
  if (with_effect) table.shifted_effect.emplace();
  const std::size_t columns = with_effect ? 4 : 3;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != columns) {
      throw Error(ErrorKind::kParse, "row " + std::to_string(line_no) + ": expected " +
                                         std::to_string(columns) + " fields, got " +
                                         std::to_string(fields.size()));
    }
    long long t = -1;
    const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), t);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size() ||
        t != static_cast<long long>(table.x.size())) {
      throw Error(ErrorKind::kParse, "row " + std::to_string(line_no) + ": t must be " +
                                         std::to_string(table.x.size()) + ", got '" +
                                         std::string(fields[0]) + "'");
    }
    table.x.push_back(parse_number(fields[1], line_no, "x"));
    table.y.push_back(parse_number(fields[2], line_no, "y"));
    if (with_effect) table.shifted_effect->push_back(parse_number(fields[3], line_no, "shifted_effect"));
  }
  if (table.x.empty()) {
    throw Error(ErrorKind::kParse, "no data rows");
  }
  return table;
}

DataTable read_data_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_data_csv(buf.str());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path.string());
}

void write_data_csv(const fs::path& path, const DataTable& table) {
  std::string text = table.shifted_effect ? "t,x,y,shifted_effect\n" : "t,x,y\n";
  for (std::size_t t = 0; t < table.x.size(); ++t) {
    text += std::to_string(t);
    text += ',' + format_double(table.x[t]);
    text += ',' + format_double(table.y[t]);
    if (table.shifted_effect) text += ',' + format_double((*table.shifted_effect)[t]);
    text += '\n';
  }
  write_text(path, text);
}

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

SimConfig sim_config_from_json(const json& doc) {
  reject_unknown_keys(doc, {"n", "k", "beta", "intercept", "sigma_eps", "lambda", "min_gap", "seed"},
                      "simulation config");
  SimConfig cfg;
  read_key(doc, "n", cfg.n);
  read_key(doc, "k", cfg.k);
  read_key(doc, "beta", cfg.beta);
  read_key(doc, "intercept", cfg.intercept);
  read_key(doc, "sigma_eps", cfg.sigma_eps);
  read_key(doc, "lambda", cfg.lambda);
  read_key(doc, "min_gap", cfg.min_gap);
  read_key(doc, "seed", cfg.rng_seed);
  cfg.validate();
  return cfg;
}

json to_json(const SimConfig& cfg) {
  return {{"n", cfg.n},           {"k", cfg.k},
          {"beta", cfg.beta},     {"intercept", cfg.intercept},
          {"sigma_eps", cfg.sigma_eps}, {"lambda", cfg.lambda},
          {"min_gap", cfg.min_gap}, {"seed", cfg.rng_seed}};
}

FitSettings fit_settings_from_json(const json& doc) {
  reject_unknown_keys(doc,
                      {"bounds", "population_size", "max_generations", "mutation", "crossover",
                       "tolerance", "seed", "inner", "sparsity_threshold"},
                      "fit config");
  FitSettings s;
  FitConfig& cfg = s.fit;
  if (doc.contains("bounds")) {
    const json& b = doc.at("bounds");
    reject_unknown_keys(b, {"beta", "intercept", "sigma_eps", "lambda_tau"}, "bounds");
    read_interval(b, "beta", cfg.bounds.beta);
    read_interval(b, "intercept", cfg.bounds.intercept);
    read_interval(b, "sigma_eps", cfg.bounds.sigma_eps);
    read_interval(b, "lambda_tau", cfg.bounds.lambda_tau);
  }
  read_key(doc, "population_size", cfg.population_size);
  read_key(doc, "max_generations", cfg.max_generations);
  read_key(doc, "mutation", cfg.mutation);
  read_key(doc, "crossover", cfg.crossover);
  read_key(doc, "tolerance", cfg.tolerance);
  read_key(doc, "seed", cfg.rng_seed);
  read_key(doc, "sparsity_threshold", s.sparsity_threshold);

  bool explicit_tau_max = false;
  if (doc.contains("inner")) {
    const json& in = doc.at("inner");
    reject_unknown_keys(in, {"n_iters", "iters_per_impulse", "proposal_size", "tau_max"}, "inner");
    if (in.contains("n_iters")) {
      int n = 0;
      read_key(in, "n_iters", n);
      cfg.inner.n_iters = n;
    }
    read_key(in, "iters_per_impulse", cfg.inner.iters_per_impulse);
    read_key(in, "proposal_size", cfg.inner.proposal_size);
    explicit_tau_max = in.contains("tau_max");
    read_key(in, "tau_max", cfg.inner.tau_max);
  }
  cfg.bounds.validate();
  if (!explicit_tau_max) cfg.inner.tau_max = default_tau_max(cfg.bounds.lambda_tau.upper);
  cfg.validate();
  return s;
}

json to_json(const FitSettings& s) {
  const FitConfig& c = s.fit;
  auto iv = [](const Interval& i) { return json::array({i.lower, i.upper}); };
  json inner = {{"iters_per_impulse", c.inner.iters_per_impulse},
                {"proposal_size", c.inner.proposal_size},
                {"tau_max", c.inner.tau_max}};
  if (c.inner.n_iters) inner["n_iters"] = *c.inner.n_iters;
  return {{"bounds",
           {{"beta", iv(c.bounds.beta)},
            {"intercept", iv(c.bounds.intercept)},
            {"sigma_eps", iv(c.bounds.sigma_eps)},
            {"lambda_tau", iv(c.bounds.lambda_tau)}}},
          {"population_size", c.population_size},
          {"max_generations", c.max_generations},
          {"mutation", c.mutation},
          {"crossover", c.crossover},
          {"tolerance", c.tolerance},
          {"seed", c.rng_seed},
          {"inner", inner},
          {"sparsity_threshold", s.sparsity_threshold}};
}

json to_json(const ModelParams& p) {
  return {{"beta", p.beta}, {"intercept", p.intercept}, {"sigma_eps", p.sigma_eps},
          {"lambda_tau", p.lambda_tau}};
}

ModelParams params_from_json(const json& doc) {
  try {
    return {doc.at("beta").get<double>(), doc.at("intercept").get<double>(),
            doc.at("sigma_eps").get<double>(), doc.at("lambda_tau").get<double>()};
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("bad parameter record: ") + e.what());
  }
}

json to_json(const JointLogLik& ll) { return {{"l1", ll.l1}, {"l2", ll.l2}, {"total", ll.total}}; }

json to_json(const OlsResult& ols) {
  return {{"beta", ols.beta}, {"intercept", ols.intercept}, {"sigma", ols.sigma},
          {"r_squared", ols.r_squared}};
}

json to_json(const ScalingRecord& s) {
  return {{"x_scale", s.x_scale}, {"y_min", s.y_min}, {"y_range", s.y_range}};
}

json to_json(const SparsityReport& r) {
  return {{"impulse_count", r.impulse_count}, {"length", r.length}, {"density", r.density},
          {"threshold", r.threshold}, {"warning", r.warning}};
}

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  if (!fs::exists(dir_, ec)) {
    if (!fs::create_directories(dir_, ec) || ec) {
      throw Error(ErrorKind::kIo, "cannot create output directory " + dir_.string());
    }
    created_ = true;
  } else if (!fs::is_directory(dir_, ec)) {
    throw Error(ErrorKind::kIo, dir_.string() + " is not a directory");
  }
}

OutputDir::~OutputDir() {
  if (committed_) return;
  std::error_code ec;
  for (const fs::path& f : files_) fs::remove(f, ec);
  if (created_) fs::remove_all(dir_, ec);
}

fs::path OutputDir::file(const std::string& name) {
  files_.push_back(dir_ / name);
  return files_.back();
}

}  // namespace tvs::cli
