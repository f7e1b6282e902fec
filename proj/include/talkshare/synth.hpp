// Seeded generator of synthetic conversations with planted talk-time-sharing
// regimes; the end-to-end test oracle.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "talkshare/model.hpp"

namespace talkshare {

struct BlueprintSegment {
  enum class Kind { PrimaryLed, SecondaryLed, Balanced, Silent };
  Kind kind = Kind::Balanced;
  double length = 0.0;  // seconds, positive
  double share = 0.0;   // leading party's target share, in (0.5, 1]; *Led only
};

struct Blueprint {
  std::vector<BlueprintSegment> segments;
  double turn_seconds = 5.0;  // mean utterance length
  std::uint64_t seed = 0;
  std::string id;  // defaults to "synth-<seed>"
};

// Speakers are "A" (primary) and "B". Within each segment, utterances
// alternate between the two with jittered lengths, the leading party's turns
// scaled so the realized share lands within +-0.03 of the target; generation
// retries up to 10 times before erroring. Utterances never overlap and lie
// inside their segment. Deterministic for a fixed blueprint.
Conversation synthesize(const Blueprint& blueprint);

Blueprint parse_blueprint_text(const std::string& json_text);
Blueprint load_blueprint(const std::string& path);

}  // namespace talkshare
