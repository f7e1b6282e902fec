// Shared CLI plumbing: config flag resolution, atomic writes, run manifests.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "talkshare/config.hpp"
#include "talkshare/model.hpp"

namespace talkshare::cli {

// --config plus the individual override flags; flags win over the file.
struct ConfigOptions {
  std::string config_path;
  std::optional<double> k, l, m, silence_floor;
  std::optional<std::uint64_t> seed;

  AnalysisConfig resolve() const;
};

void add_config_flags(CLI::App& cmd, ConfigOptions& options);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t value);

// Write-temp-then-rename; creates parent directories.
void atomic_write(const std::string& path, const std::string& content);

std::string iso8601_utc_now();

nlohmann::json config_to_json(const AnalysisConfig& config);
nlohmann::json manifest_json(const AnalysisConfig& config,
                             const std::vector<std::string>& input_paths);

std::string sanitize_filename(const std::string& id);

void print_warnings(const Diagnostics& diag);

}  // namespace talkshare::cli
