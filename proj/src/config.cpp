#include "talkshare/config.hpp"

namespace talkshare {

const char* to_string(QuartileDirection direction) {
  return direction == QuartileDirection::LowIsBalanced ? "low_is_balanced"
                                                       : "high_is_balanced";
}

QuartileDirection quartile_direction_from_string(const std::string& name) {
  if (name == "low_is_balanced") return QuartileDirection::LowIsBalanced;
  if (name == "high_is_balanced") return QuartileDirection::HighIsBalanced;
  throw ParseError("unknown quartile direction: " + name);
}

void AnalysisConfig::validate() const {
  window.validate();
  stereotypes.validate();
  if (!(mixed_segment_fraction > 0.5 && mixed_segment_fraction < 1.0))
    throw DataError("mixed_segment_fraction must be in (0.5, 1)");
  if (fightin_words.ngram_max < 1)
    throw DataError("fightin_words.ngram_max must be >= 1");
  if (!(fightin_words.alpha > 0.0))
    throw DataError("fightin_words.alpha must be positive");
}

Conversation apply_role_map(Conversation conv, const RoleMap& roles) {
  for (auto& [speaker, party] : conv.party_of) {
    auto it = roles.parties.find(speaker);
    if (it != roles.parties.end()) party = it->second;
  }
  // Speakers named only in the role map still count as (possibly silent) parties.
  for (const auto& [speaker, party] : roles.parties)
    conv.party_of.emplace(speaker, party);
  return conv;
}

WindowConfig merge_role_thresholds(WindowConfig config, const RoleMap& roles) {
  for (const auto& [party, threshold] : roles.thresholds)
    config.party_thresholds[party] = threshold;
  return config;
}

}  // namespace talkshare
