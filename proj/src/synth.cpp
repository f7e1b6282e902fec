#include "talkshare/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "detail/csv.hpp"
#include "json.hpp"
#include "talkshare/stats.hpp"

namespace talkshare {

namespace {

constexpr double kShareTolerance = 0.03;
constexpr int kMaxAttempts = 10;

double target_primary_share(const BlueprintSegment& segment) {
  switch (segment.kind) {
    case BlueprintSegment::Kind::PrimaryLed: return segment.share;
    case BlueprintSegment::Kind::SecondaryLed: return 1.0 - segment.share;
    case BlueprintSegment::Kind::Balanced: return 0.5;
    case BlueprintSegment::Kind::Silent: return 0.0;
  }
  return 0.5;
}

void validate_blueprint(const Blueprint& blueprint) {
  if (blueprint.segments.empty()) throw DataError("blueprint: no segments");
  if (!(blueprint.turn_seconds > 0.0))
    throw DataError("blueprint: turn_seconds must be positive");
  for (const auto& segment : blueprint.segments) {
    if (!(segment.length > 0.0))
      throw DataError("blueprint: segment lengths must be positive");
    const bool led = segment.kind == BlueprintSegment::Kind::PrimaryLed ||
                     segment.kind == BlueprintSegment::Kind::SecondaryLed;
    if (led && !(segment.share > 0.5 && segment.share <= 1.0))
      throw DataError("blueprint: led-segment share must be in (0.5, 1]");
  }
}

struct Turn {
  bool primary = false;
  double length = 0.0;
};

// Lays the scaled alternating turns into [0, segment_length], clipping at the
// boundary, and reports the realized primary share.
double layout_share(const std::vector<Turn>& turns, double scale_primary,
                    double scale_secondary, double segment_length) {
  double t = 0.0, talk_primary = 0.0, talk_secondary = 0.0;
  for (const auto& turn : turns) {
    if (t >= segment_length) break;
    const double len = std::min(
        turn.length * (turn.primary ? scale_primary : scale_secondary),
        segment_length - t);
    if (turn.primary)
      talk_primary += len;
    else
      talk_secondary += len;
    t += len;
  }
  const double total = talk_primary + talk_secondary;
  return total > 0.0 ? talk_primary / total : 0.0;
}

// One attempt at a segment: jittered alternating turns, the leading party
// scaled toward the target share, re-adjusted a few times because the final
// clipped turn perturbs the realized share.
bool try_segment(std::uint64_t seed, const BlueprintSegment& segment,
                 double turn_seconds, double segment_start,
                 std::vector<Utterance>& out, std::size_t& token_counter) {
  const double target = target_primary_share(segment);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.5 * turn_seconds, 1.5 * turn_seconds);

  const std::size_t n_pairs =
      static_cast<std::size_t>(std::ceil(segment.length / (2.0 * turn_seconds))) + 2;
  std::vector<Turn> turns;
  turns.reserve(2 * n_pairs);
  double sum_primary = 0.0, sum_secondary = 0.0;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const double a = jitter(rng);
    const double b = jitter(rng);
    turns.push_back({true, a});
    turns.push_back({false, b});
    sum_primary += a;
    sum_secondary += b;
  }

  const bool primary_leads = target >= 0.5;
  double scale_primary = 1.0, scale_secondary = 1.0;
  if (primary_leads)
    scale_primary = (target / (1.0 - target)) * (sum_secondary / sum_primary);
  else
    scale_secondary = ((1.0 - target) / target) * (sum_primary / sum_secondary);

  double realized = layout_share(turns, scale_primary, scale_secondary, segment.length);
  for (int iter = 0; iter < 6 && std::abs(realized - target) > 0.01; ++iter) {
    if (realized <= 0.0 || realized >= 1.0) break;
    const double correction =
        (target / (1.0 - target)) / (realized / (1.0 - realized));
    if (primary_leads)
      scale_primary *= correction;
    else
      scale_secondary /= correction;
    realized = layout_share(turns, scale_primary, scale_secondary, segment.length);
  }
  if (std::abs(realized - target) > kShareTolerance) return false;

  double t = segment_start;
  const double segment_end = segment_start + segment.length;
  for (const auto& turn : turns) {
    if (t >= segment_end) break;
    const double len = std::min(
        turn.length * (turn.primary ? scale_primary : scale_secondary), segment_end - t);
    if (len > 1e-9) {
      Utterance utterance;
      utterance.speaker = turn.primary ? "A" : "B";
      utterance.start = t;
      utterance.end = t + len;
      utterance.text = "t" + std::to_string(token_counter++);
      out.push_back(std::move(utterance));
    }
    t += len;
  }
  return true;
}

}  // namespace

Conversation synthesize(const Blueprint& blueprint) {
  validate_blueprint(blueprint);

  std::vector<Utterance> utterances;
  std::size_t token_counter = 0;
  double segment_start = 0.0;
  for (std::size_t s = 0; s < blueprint.segments.size(); ++s) {
    const auto& segment = blueprint.segments[s];
    if (segment.kind != BlueprintSegment::Kind::Silent) {
      bool done = false;
      for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
        const std::uint64_t seed =
            mix_seed(blueprint.seed, (s << 8) | static_cast<std::uint64_t>(attempt));
        done = try_segment(seed, segment, blueprint.turn_seconds, segment_start,
                           utterances, token_counter);
      }
      if (!done)
        throw DataError("blueprint: segment " + std::to_string(s) +
                        " could not reach its target share after " +
                        std::to_string(kMaxAttempts) + " attempts");
    }
    segment_start += segment.length;
  }

  const std::string id =
      blueprint.id.empty() ? "synth-" + std::to_string(blueprint.seed) : blueprint.id;
  return make_conversation(id, std::move(utterances), segment_start,
                           {{"A", "A"}, {"B", "B"}});
}

Blueprint parse_blueprint_text(const std::string& json_text) {
  using nlohmann::json;
  json root = json::parse(json_text, nullptr, false);
  if (root.is_discarded() || !root.is_object())
    throw ParseError("blueprint: expected a JSON object");
  for (const auto& [key, value] : root.items()) {
    (void)value;
    if (key != "segments" && key != "turn_seconds" && key != "seed" && key != "id")
      throw ParseError("blueprint: unknown key '" + key + "'");
  }
  if (!root.contains("segments") || !root.at("segments").is_array())
    throw ParseError("blueprint: 'segments' array is required");

  Blueprint blueprint;
  if (root.contains("turn_seconds")) {
    if (!root.at("turn_seconds").is_number())
      throw ParseError("blueprint: turn_seconds: expected a number");
    blueprint.turn_seconds = root.at("turn_seconds").get<double>();
  }
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_integer() && !root.at("seed").is_number_unsigned())
      throw ParseError("blueprint: seed: expected an unsigned integer");
    blueprint.seed = root.at("seed").get<std::uint64_t>();
  }
  if (root.contains("id")) {
    if (!root.at("id").is_string()) throw ParseError("blueprint: id: expected a string");
    blueprint.id = root.at("id").get<std::string>();
  }

  for (const auto& entry : root.at("segments")) {
    if (!entry.is_object()) throw ParseError("blueprint: segments must be objects");
    BlueprintSegment segment;
    bool has_regime = false;
    for (const auto& [key, value] : entry.items()) {
      if (key == "regime") {
        if (!value.is_string()) throw ParseError("blueprint: segment regime: expected a string");
        const std::string name = value.get<std::string>();
        if (name == "primary_led")
          segment.kind = BlueprintSegment::Kind::PrimaryLed;
        else if (name == "secondary_led")
          segment.kind = BlueprintSegment::Kind::SecondaryLed;
        else if (name == "balanced")
          segment.kind = BlueprintSegment::Kind::Balanced;
        else if (name == "silent")
          segment.kind = BlueprintSegment::Kind::Silent;
        else
          throw ParseError("blueprint: unknown segment regime '" + name + "'");
        has_regime = true;
      } else if (key == "length") {
        if (!value.is_number()) throw ParseError("blueprint: segment length: expected a number");
        segment.length = value.get<double>();
      } else if (key == "share") {
        if (!value.is_number()) throw ParseError("blueprint: segment share: expected a number");
        segment.share = value.get<double>();
      } else {
        throw ParseError("blueprint: unknown segment key '" + key + "'");
      }
    }
    if (!has_regime) throw ParseError("blueprint: segment missing 'regime'");
    const bool led = segment.kind == BlueprintSegment::Kind::PrimaryLed ||
                     segment.kind == BlueprintSegment::Kind::SecondaryLed;
    if (led && segment.share == 0.0)
      throw ParseError("blueprint: led segment missing 'share'");
    blueprint.segments.push_back(segment);
  }
  validate_blueprint(blueprint);
  return blueprint;
}

Blueprint load_blueprint(const std::string& path) {
  return parse_blueprint_text(detail::read_file(path));
}

}  // namespace talkshare
