#pragma once

#include "CLI11.hpp"

namespace talkshare::cli {

void register_analyze(CLI::App& app);
void register_compare(CLI::App& app);
void register_viz(CLI::App& app);
void register_consistency(CLI::App& app);
void register_demographics(CLI::App& app);
void register_synth(CLI::App& app);
void register_validate_intervals(CLI::App& app);

}  // namespace talkshare::cli
