#include "cli_common.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "talkshare/ingest.hpp"

namespace fs = std::filesystem;

namespace talkshare::cli {

AnalysisConfig ConfigOptions::resolve() const {
  AnalysisConfig config;
  if (!config_path.empty()) config = load_config(config_path);
  if (k) config.window.k_seconds = *k;
  if (l) config.window.l_seconds = *l;
  if (m) config.window.dominance_threshold = *m;
  if (silence_floor) config.window.silence_floor_seconds = *silence_floor;
  if (seed) config.rng_seed = *seed;
  config.validate();
  return config;
}

void add_config_flags(CLI::App& cmd, ConfigOptions& options) {
  cmd.add_option("--config", options.config_path, "Analysis config JSON");
  cmd.add_option("--k", options.k, "Window length K in seconds");
  cmd.add_option("--l", options.l, "Window stride L in seconds");
  cmd.add_option("--m", options.m, "Symmetric dominance threshold M");
  cmd.add_option("--silence-floor", options.silence_floor,
                 "Window talk below this many seconds is silent");
  cmd.add_option("--seed", options.seed, "RNG seed");
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buffer[20];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp.string());
    out << content;
    if (!out.good()) throw DataError("short write: " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string iso8601_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

nlohmann::json config_to_json(const AnalysisConfig& config) {
  return nlohmann::json{
      {"window",
       {{"k_seconds", config.window.k_seconds},
        {"l_seconds", config.window.l_seconds},
        {"m", config.window.dominance_threshold},
        {"thresholds", config.window.party_thresholds},
        {"silence_floor_seconds", config.window.silence_floor_seconds}}},
      {"stereotypes",
       {{"gray_min", config.stereotypes.gray_min},
        {"red_min", config.stereotypes.red_min},
        {"blue_min", config.stereotypes.blue_min}}},
      {"mixed_segment_fraction", config.mixed_segment_fraction},
      {"quartile_direction", to_string(config.quartile_direction)},
      {"fightin_words",
       {{"ngram_max", config.fightin_words.ngram_max},
        {"alpha", config.fightin_words.alpha}}},
      {"rng_seed", config.rng_seed}};
}

nlohmann::json manifest_json(const AnalysisConfig& config,
                             const std::vector<std::string>& input_paths) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& path : input_paths) {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    inputs.push_back({{"path", path},
                      {"fnv1a64", hex64(fnv1a64(bytes))},
                      {"bytes", bytes.size()}});
  }
  return nlohmann::json{{"tool_version", kToolVersion},
                        {"created_utc", iso8601_utc_now()},
                        {"seed", config.rng_seed},
                        {"config", config_to_json(config)},
                        {"inputs", inputs}};
}

std::string sanitize_filename(const std::string& id) {
  std::string out;
  out.reserve(id.size());
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty()) out = "conversation";
  return out;
}

void print_warnings(const Diagnostics& diag) {
  for (const auto& warning : diag.warnings)
    std::cerr << "warning: " << warning << "\n";
}

}  // namespace talkshare::cli
