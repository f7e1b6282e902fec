// Talk-time sharing dynamics: imbalance, sliding-window regimes, stereotype
// classification, flip counting, and mixed-regime detection.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "talkshare/config.hpp"
#include "talkshare/model.hpp"

namespace talkshare {

// Conversation-level primary/secondary parties used for Blue/Red labeling.
struct RoleAssignment {
  std::string primary;
  std::string secondary;
};

// Total seconds the party speaks, clipped to the span when one is given.
// Overlapping speech is summed per speaker, so party totals can exceed the
// span length. Throws DataError for unknown parties.
double talk_time(const Conversation& conv, const std::string& party,
                 std::optional<Span> span = std::nullopt);

// Throws DataError("silent conversation") when total talk-time is zero.
ImbalanceResult conversation_imbalance(const Conversation& conv);

// Window labels for one conversation. Window starts are span.start + i*L
// with start + K <= span.end; full windows only.
struct RegimeSequence {
  std::vector<WindowResult> windows;
  WindowConfig config_used;
  std::string primary_party;
  std::string secondary_party;
};

struct LabelOutcome {
  Regime label = Regime::Gray;
  std::optional<std::string> dominant_party;
  double dominance_fraction = 0.0;
};

// Labels one window from per-party talk seconds. A window below the silence
// floor is Gray with fraction 0. Otherwise parties whose share strictly
// exceeds their threshold are candidates; one candidate dominates (Blue when
// it is the primary role), several resolve by largest share-over-threshold
// margin, and an exact margin tie is Gray.
LabelOutcome label_window(const std::map<std::string, double>& talk_by_party,
                          const WindowConfig& config, const RoleAssignment& roles);

// Slides K-second windows in steps of L over the span (whole conversation by
// default). Roles default to conversation_imbalance. Throws DataError when
// the span is shorter than one window. Requires exactly two parties; group
// multi-party conversations through a role map first.
RegimeSequence make_windows(const Conversation& conv, const WindowConfig& config,
                            std::optional<RoleAssignment> roles = std::nullopt,
                            std::optional<Span> span = std::nullopt);

// Label counts over window count. Throws DataError on an empty sequence.
Composition composition(const RegimeSequence& sequence);

// Checked in precedence order DominatingThroughout -> AlternatingDominance ->
// BackAndForth; first strict exceedance wins, otherwise Other.
Stereotype classify(const Composition& comp, const StereotypeThresholds& cuts);

// Dominant-role flips after dropping Gray windows: runs - 1, floored at 0.
int count_flips(const std::vector<Regime>& labels);
int count_flips(const RegimeSequence& sequence);

struct MixedResult {
  Stereotype first = Stereotype::Other;
  Stereotype last = Stereotype::Other;
  bool transition = false;  // first != last and neither is Other
};

// Classifies the first and last `fraction` of the conversation separately.
// Throws DataError when either segment is shorter than one window.
MixedResult mixed_dynamics(const Conversation& conv, const WindowConfig& config,
                           const StereotypeThresholds& cuts, double fraction,
                           std::optional<RoleAssignment> roles = std::nullopt);

struct DynamicsReport {
  std::string id;
  double duration = 0.0;
  ImbalanceResult imbalance;
  RegimeSequence regimes;
  Composition composition;
  Stereotype stereotype = Stereotype::Other;
  int flips = 0;
  // Absent when the mixed-dynamics segments are shorter than one window.
  std::optional<MixedResult> mixed;
};

// Full per-conversation report. Roles come from conversation_imbalance unless
// expected_primary pins them. Validates the conversation first.
DynamicsReport analyze(const Conversation& conv, const AnalysisConfig& config,
                       std::optional<std::string> expected_primary = std::nullopt);

// One corpus entry: either a report or the reason the conversation was
// skipped (shorter than one window, silent, failed validation).
struct ConversationOutcome {
  std::string id;
  std::optional<DynamicsReport> report;
  std::string skip_reason;
};

// Analyzes a corpus, in parallel when OpenMP is enabled. Outcomes are
// returned in conversation-id order regardless of scheduling.
std::vector<ConversationOutcome> analyze_corpus(
    const std::vector<Conversation>& corpus, const AnalysisConfig& config,
    const std::optional<RoleMap>& roles = std::nullopt, bool parallel = true);

}  // namespace talkshare
