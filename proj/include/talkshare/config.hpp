// Analysis configuration and role maps shared by the pipeline stages.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "talkshare/model.hpp"

namespace talkshare {

// Which imbalance quartile counts as "balanced" in filter queries. The
// lowest-imbalance quartile is the default reading.
enum class QuartileDirection { LowIsBalanced, HighIsBalanced };

const char* to_string(QuartileDirection direction);
QuartileDirection quartile_direction_from_string(const std::string& name);

struct FightinWordsConfig {
  int ngram_max = 3;
  double alpha = 0.01;  // symmetric Dirichlet prior per n-gram
};

struct AnalysisConfig {
  WindowConfig window;
  StereotypeThresholds stereotypes;
  double mixed_segment_fraction = 0.60;  // in (0.5, 1)
  QuartileDirection quartile_direction = QuartileDirection::LowIsBalanced;
  FightinWordsConfig fightin_words;
  std::uint64_t rng_seed = 0;

  void validate() const;  // throws DataError
};

// Optional speaker -> party grouping with per-party dominance thresholds and
// a fixed primary role (asymmetric settings like courtroom arguments).
struct RoleMap {
  std::map<std::string, std::string> parties;     // speaker -> party
  std::map<std::string, double> thresholds;       // party -> threshold override
  std::optional<std::string> expected_primary;
};

// Regroups speakers into the mapped parties. Speakers absent from the map
// keep their identity party.
Conversation apply_role_map(Conversation conv, const RoleMap& roles);

// Window config with the role map's per-party thresholds merged in.
WindowConfig merge_role_thresholds(WindowConfig config, const RoleMap& roles);

}  // namespace talkshare
