#include "talkshare/model.hpp"

#include <algorithm>
#include <cmath>

namespace talkshare {

std::set<std::string> Conversation::parties() const {
  std::set<std::string> out;
  for (const auto& [speaker, party] : party_of) out.insert(party);
  return out;
}

const std::string& Conversation::party(const std::string& speaker) const {
  auto it = party_of.find(speaker);
  if (it == party_of.end()) throw DataError("unknown speaker: " + speaker);
  return it->second;
}

void canonicalize(Conversation& conv) {
  std::stable_sort(conv.utterances.begin(), conv.utterances.end(),
                   [](const Utterance& a, const Utterance& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.speaker < b.speaker;
                   });
}

Conversation make_conversation(std::string id, std::vector<Utterance> utterances,
                               std::optional<double> duration,
                               std::map<std::string, std::string> party_of) {
  Conversation conv;
  conv.id = std::move(id);
  conv.utterances = std::move(utterances);
  if (party_of.empty()) {
    for (const auto& utt : conv.utterances) party_of.emplace(utt.speaker, utt.speaker);
  }
  conv.party_of = std::move(party_of);
  double max_end = 0.0;
  for (const auto& utt : conv.utterances) max_end = std::max(max_end, utt.end);
  conv.duration = duration.value_or(max_end);
  canonicalize(conv);
  return conv;
}

std::vector<ValidationFinding> validate_conversation(const Conversation& conv) {
  std::vector<ValidationFinding> findings;
  double max_end = 0.0;
  for (std::size_t i = 0; i < conv.utterances.size(); ++i) {
    const Utterance& utt = conv.utterances[i];
    if (!(utt.end > utt.start))
      findings.push_back({Severity::Error, "non-positive duration", i});
    if (utt.start < 0.0)
      findings.push_back({Severity::Error, "negative start time", i});
    if (conv.party_of.find(utt.speaker) == conv.party_of.end())
      findings.push_back({Severity::Error, "speaker '" + utt.speaker + "' missing from party map", i});
    max_end = std::max(max_end, utt.end);
  }
  if (conv.duration < max_end)
    findings.push_back({Severity::Error, "duration shorter than last utterance end", std::nullopt});
  if (conv.parties().size() < 2)
    findings.push_back({Severity::Error, "fewer than 2 distinct parties", std::nullopt});
  for (std::size_t i = 1; i < conv.utterances.size(); ++i) {
    const Utterance& prev = conv.utterances[i - 1];
    const Utterance& curr = conv.utterances[i];
    if (curr.start < prev.start ||
        (curr.start == prev.start && curr.speaker < prev.speaker)) {
      findings.push_back({Severity::Error, "utterances not in canonical order", i});
      break;
    }
  }
  return findings;
}

bool has_errors(const std::vector<ValidationFinding>& findings) {
  for (const auto& finding : findings)
    if (finding.severity == Severity::Error) return true;
  return false;
}

void require_valid(const Conversation& conv) {
  for (const auto& finding : validate_conversation(conv)) {
    if (finding.severity != Severity::Error) continue;
    std::string where = finding.utterance_index
                            ? " (utterance " + std::to_string(*finding.utterance_index) + ")"
                            : "";
    throw DataError("conversation '" + conv.id + "': " + finding.message + where);
  }
}

double WindowConfig::threshold_for(const std::string& party) const {
  auto it = party_thresholds.find(party);
  return it != party_thresholds.end() ? it->second : dominance_threshold;
}

void WindowConfig::validate() const {
  if (!(k_seconds > 0.0)) throw DataError("window config: K must be positive");
  if (!(l_seconds > 0.0 && l_seconds <= k_seconds))
    throw DataError("window config: require 0 < L <= K");
  if (!(dominance_threshold > 0.0 && dominance_threshold <= 1.0))
    throw DataError("window config: dominance threshold must be in (0,1]");
  for (const auto& [party, threshold] : party_thresholds)
    if (!(threshold > 0.0 && threshold <= 1.0))
      throw DataError("window config: threshold for party '" + party + "' must be in (0,1]");
  if (silence_floor_seconds < 0.0)
    throw DataError("window config: silence floor must be non-negative");
}

void StereotypeThresholds::validate() const {
  for (double cut : {gray_min, red_min, blue_min})
    if (!(cut > 0.0 && cut < 1.0))
      throw DataError("stereotype thresholds must be in (0,1)");
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::Blue: return "Blue";
    case Regime::Red: return "Red";
    case Regime::Gray: return "Gray";
  }
  return "Gray";
}

Regime regime_from_string(const std::string& name) {
  if (name == "Blue") return Regime::Blue;
  if (name == "Red") return Regime::Red;
  if (name == "Gray") return Regime::Gray;
  throw ParseError("unknown regime label: " + name);
}

const char* to_string(Stereotype stereotype) {
  switch (stereotype) {
    case Stereotype::DominatingThroughout: return "DominatingThroughout";
    case Stereotype::BackAndForth: return "BackAndForth";
    case Stereotype::AlternatingDominance: return "AlternatingDominance";
    case Stereotype::Other: return "Other";
  }
  return "Other";
}

Stereotype stereotype_from_string(const std::string& name) {
  if (name == "DominatingThroughout") return Stereotype::DominatingThroughout;
  if (name == "BackAndForth") return Stereotype::BackAndForth;
  if (name == "AlternatingDominance") return Stereotype::AlternatingDominance;
  if (name == "Other") return Stereotype::Other;
  throw ParseError("unknown stereotype: " + name);
}

}  // namespace talkshare
