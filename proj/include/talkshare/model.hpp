// Core domain types for talk-time sharing analysis: utterances,
// conversations, window configuration, regimes, and survey records.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace talkshare {

inline constexpr const char* kToolVersion = "0.1.0";

// Input file could not be parsed; the message names the offending line or key.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input violated a semantic precondition.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collects non-fatal diagnostics emitted by parsers and aggregators.
struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

// Half-open-ish time span in seconds; end must be >= start wherever used.
struct Span {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
};

// One timestamped speech span by one speaker. Invariants: end > start,
// start >= 0.
struct Utterance {
  std::string speaker;
  double start = 0.0;  // seconds
  double end = 0.0;    // seconds
  std::optional<std::string> text;
  double length() const { return end - start; }
  bool operator==(const Utterance&) const = default;
};

// Ordered utterances plus duration and the speaker -> party map.
// Utterances are kept sorted by (start, speaker).
struct Conversation {
  std::string id;
  std::vector<Utterance> utterances;
  double duration = 0.0;  // >= max utterance end
  std::map<std::string, std::string> party_of;

  std::set<std::string> parties() const;
  // Party of a speaker; throws DataError for speakers outside party_of.
  const std::string& party(const std::string& speaker) const;
};

// Sorts utterances by (start, speaker). Idempotent.
void canonicalize(Conversation& conv);

// Builds a conversation with canonical ordering. When no party map is given,
// each speaker is its own party; when no duration is given, it defaults to
// the max utterance end.
Conversation make_conversation(std::string id, std::vector<Utterance> utterances,
                               std::optional<double> duration = std::nullopt,
                               std::map<std::string, std::string> party_of = {});

enum class Severity { Warning, Error };

struct ValidationFinding {
  Severity severity = Severity::Error;
  std::string message;
  std::optional<std::size_t> utterance_index;  // locus, when tied to one utterance
};

// Returns an empty list iff all type invariants hold. Findings, not failures.
std::vector<ValidationFinding> validate_conversation(const Conversation& conv);
bool has_errors(const std::vector<ValidationFinding>& findings);
// Throws DataError naming the first error finding, if any.
void require_valid(const Conversation& conv);

// Sliding-window parameters. The symmetric dominance threshold M applies to
// every party unless overridden per party (role-asymmetric settings).
struct WindowConfig {
  double k_seconds = 150.0;  // window length K
  double l_seconds = 30.0;   // stride L, 0 < L <= K
  double dominance_threshold = 0.60;
  std::map<std::string, double> party_thresholds;  // per-party overrides
  double silence_floor_seconds = 1.0;

  double threshold_for(const std::string& party) const;
  void validate() const;  // throws DataError on invariant violations
};

enum class Regime { Blue, Red, Gray };

const char* to_string(Regime regime);
Regime regime_from_string(const std::string& name);

// One K-second window with per-party talk-time and its dominance label.
// dominant_party is present iff label != Gray. dominance_fraction is the
// dominant party's share of window talk (max share for Gray, 0 if silent).
struct WindowResult {
  double start = 0.0;
  double end = 0.0;
  std::map<std::string, double> talk_by_party;
  Regime label = Regime::Gray;
  std::optional<std::string> dominant_party;
  double dominance_fraction = 0.0;
};

// Fractions of blue/red/gray windows; sums to 1 within 1e-12.
struct Composition {
  double blue_frac = 0.0;
  double red_frac = 0.0;
  double gray_frac = 0.0;
};

// Strict-exceedance cuts over a Composition.
struct StereotypeThresholds {
  double gray_min = 0.60;
  double red_min = 0.25;
  double blue_min = 0.75;
  void validate() const;
};

enum class Stereotype { DominatingThroughout, BackAndForth, AlternatingDominance, Other };

const char* to_string(Stereotype stereotype);
Stereotype stereotype_from_string(const std::string& name);

// Per-speaker survey metadata joined to a conversation.
struct SurveyRecord {
  std::string conversation_id;
  std::string speaker;
  int enjoyment = 0;
  std::optional<std::string> gender;
  std::optional<int> age;
  std::optional<std::string> comment_positive;
  std::optional<std::string> comment_negative;
  std::optional<std::string> outcome;
};

// Conversation-level imbalance: the most talkative party's share of total
// talk-time. ranking lists all parties, most talkative first; ties are
// broken lexicographically and flagged.
struct ImbalanceResult {
  double value = 0.0;
  std::string primary;
  std::string secondary;
  std::vector<std::string> ranking;
  bool tie = false;
};

}  // namespace talkshare
