#include "talkshare/dynamics.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace talkshare {

namespace {

// Below this window count the parallel-for overhead is not worth paying.
constexpr std::size_t kParallelWindowThreshold = 512;

std::vector<std::string> sorted_parties(const Conversation& conv) {
  auto parties = conv.parties();
  return {parties.begin(), parties.end()};
}

std::map<std::string, double> party_talk_totals(const Conversation& conv,
                                                std::optional<Span> span) {
  std::map<std::string, double> totals;
  for (const auto& party : conv.parties()) totals[party] = 0.0;
  for (const auto& utt : conv.utterances) {
    double lo = utt.start;
    double hi = utt.end;
    if (span) {
      lo = std::max(lo, span->start);
      hi = std::min(hi, span->end);
    }
    if (hi > lo) totals[conv.party(utt.speaker)] += hi - lo;
  }
  return totals;
}

std::size_t window_count(const Span& span, const WindowConfig& config) {
  double usable = span.length() - config.k_seconds;
  if (usable < 0.0) return 0;
  return static_cast<std::size_t>(std::floor(usable / config.l_seconds)) + 1;
}

// Per-window per-party talk seconds, flat [window][party] layout. Windows are
// independent, so the gather over windows parallelizes without sharing.
std::vector<double> window_talk_grid(const Conversation& conv,
                                     const std::vector<std::string>& parties,
                                     const WindowConfig& config, const Span& span,
                                     std::size_t n_windows) {
  const std::size_t n_parties = parties.size();
  std::vector<double> grid(n_windows * n_parties, 0.0);

  const auto& utts = conv.utterances;
  std::vector<std::size_t> party_index(utts.size());
  double max_len = 0.0;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    const auto& party = conv.party(utts[i].speaker);
    party_index[i] =
        std::lower_bound(parties.begin(), parties.end(), party) - parties.begin();
    max_len = std::max(max_len, utts[i].length());
  }

  const double k = config.k_seconds;
  const double l = config.l_seconds;
  const std::int64_t n = static_cast<std::int64_t>(n_windows);

#pragma omp parallel for schedule(static) if (n_windows >= kParallelWindowThreshold)
  for (std::int64_t w = 0; w < n; ++w) {
    const double ws = span.start + static_cast<double>(w) * l;
    const double we = ws + k;
    // Utterances are sorted by start; anything starting before ws - max_len
    // cannot reach into this window.
    auto first = std::lower_bound(utts.begin(), utts.end(), ws - max_len,
                                  [](const Utterance& u, double t) { return u.start < t; });
    double* row = grid.data() + static_cast<std::size_t>(w) * n_parties;
    for (auto it = first; it != utts.end(); ++it) {
      if (it->start >= we) break;
      const double overlap = std::min(it->end, we) - std::max(it->start, ws);
      if (overlap > 0.0) row[party_index[it - utts.begin()]] += overlap;
    }
  }
  return grid;
}

}  // namespace

double talk_time(const Conversation& conv, const std::string& party,
                 std::optional<Span> span) {
  auto parties = conv.parties();
  if (parties.find(party) == parties.end())
    throw DataError("unknown party: " + party);
  return party_talk_totals(conv, span).at(party);
}

ImbalanceResult conversation_imbalance(const Conversation& conv) {
  auto totals = party_talk_totals(conv, std::nullopt);
  double total = 0.0;
  for (const auto& [party, talk] : totals) total += talk;
  if (!(total > 0.0)) throw DataError("silent conversation: " + conv.id);

  ImbalanceResult result;
  for (const auto& [party, talk] : totals) result.ranking.push_back(party);
  std::sort(result.ranking.begin(), result.ranking.end(),
            [&](const std::string& a, const std::string& b) {
              if (totals.at(a) != totals.at(b)) return totals.at(a) > totals.at(b);
              return a < b;
            });
  result.primary = result.ranking.front();
  result.secondary = result.ranking[1];
  result.value = totals.at(result.primary) / total;
  result.tie = totals.at(result.primary) == totals.at(result.secondary);
  return result;
}

LabelOutcome label_window(const std::map<std::string, double>& talk_by_party,
                          const WindowConfig& config, const RoleAssignment& roles) {
  double total = 0.0;
  for (const auto& [party, talk] : talk_by_party) total += talk;
  if (total < config.silence_floor_seconds) return {Regime::Gray, std::nullopt, 0.0};

  double max_share = 0.0;
  double best_margin = 0.0;
  int candidates_at_best = 0;
  const std::string* winner = nullptr;
  for (const auto& [party, talk] : talk_by_party) {
    const double share = talk / total;
    max_share = std::max(max_share, share);
    const double margin = share - config.threshold_for(party);
    if (margin <= 0.0) continue;
    if (winner == nullptr || margin > best_margin) {
      best_margin = margin;
      winner = &party;
      candidates_at_best = 1;
    } else if (margin == best_margin) {
      ++candidates_at_best;
    }
  }
  if (winner == nullptr || candidates_at_best > 1)
    return {Regime::Gray, std::nullopt, max_share};

  const Regime label = *winner == roles.primary ? Regime::Blue : Regime::Red;
  return {label, *winner, talk_by_party.at(*winner) / total};
}

RegimeSequence make_windows(const Conversation& conv, const WindowConfig& config,
                            std::optional<RoleAssignment> roles,
                            std::optional<Span> span) {
  config.validate();
  const Span full{0.0, conv.duration};
  const Span window_span = span.value_or(full);

  const auto parties = sorted_parties(conv);
  if (parties.size() != 2)
    throw DataError("conversation '" + conv.id +
                    "': window analysis needs exactly 2 parties; supply a role map");

  const std::size_t n_windows = window_count(window_span, config);
  if (n_windows == 0)
    throw DataError("conversation '" + conv.id + "' shorter than one window");

  if (!roles) {
    const auto imbalance = conversation_imbalance(conv);
    roles = RoleAssignment{imbalance.primary, imbalance.secondary};
  }

  const auto grid = window_talk_grid(conv, parties, config, window_span, n_windows);

  RegimeSequence sequence;
  sequence.config_used = config;
  sequence.primary_party = roles->primary;
  sequence.secondary_party = roles->secondary;
  sequence.windows.reserve(n_windows);
  for (std::size_t w = 0; w < n_windows; ++w) {
    WindowResult window;
    window.start = window_span.start + static_cast<double>(w) * config.l_seconds;
    window.end = window.start + config.k_seconds;
    for (std::size_t p = 0; p < parties.size(); ++p)
      window.talk_by_party[parties[p]] = grid[w * parties.size() + p];
    const LabelOutcome outcome = label_window(window.talk_by_party, config, *roles);
    window.label = outcome.label;
    window.dominant_party = outcome.dominant_party;
    window.dominance_fraction = outcome.dominance_fraction;
    sequence.windows.push_back(std::move(window));
  }
  return sequence;
}

Composition composition(const RegimeSequence& sequence) {
  if (sequence.windows.empty()) throw DataError("composition of empty window sequence");
  std::size_t blue = 0, red = 0, gray = 0;
  for (const auto& window : sequence.windows) {
    switch (window.label) {
      case Regime::Blue: ++blue; break;
      case Regime::Red: ++red; break;
      case Regime::Gray: ++gray; break;
    }
  }
  const double n = static_cast<double>(sequence.windows.size());
  return {blue / n, red / n, gray / n};
}

Stereotype classify(const Composition& comp, const StereotypeThresholds& cuts) {
  if (comp.blue_frac > cuts.blue_min) return Stereotype::DominatingThroughout;
  if (comp.red_frac > cuts.red_min) return Stereotype::AlternatingDominance;
  if (comp.gray_frac > cuts.gray_min) return Stereotype::BackAndForth;
  return Stereotype::Other;
}

int count_flips(const std::vector<Regime>& labels) {
  int runs = 0;
  Regime prev = Regime::Gray;
  for (const Regime label : labels) {
    if (label == Regime::Gray) continue;
    if (runs == 0 || label != prev) ++runs;
    prev = label;
  }
  return std::max(runs - 1, 0);
}

int count_flips(const RegimeSequence& sequence) {
  std::vector<Regime> labels;
  labels.reserve(sequence.windows.size());
  for (const auto& window : sequence.windows) labels.push_back(window.label);
  return count_flips(labels);
}

MixedResult mixed_dynamics(const Conversation& conv, const WindowConfig& config,
                           const StereotypeThresholds& cuts, double fraction,
                           std::optional<RoleAssignment> roles) {
  if (!(fraction > 0.5 && fraction < 1.0))
    throw DataError("mixed-dynamics fraction must be in (0.5, 1)");
  const double segment = fraction * conv.duration;
  if (segment < config.k_seconds)
    throw DataError("conversation '" + conv.id +
                    "': mixed-dynamics segment shorter than one window");
  if (!roles) {
    const auto imbalance = conversation_imbalance(conv);
    roles = RoleAssignment{imbalance.primary, imbalance.secondary};
  }
  const Span head{0.0, segment};
  const Span tail{conv.duration - segment, conv.duration};
  MixedResult result;
  result.first = classify(composition(make_windows(conv, config, roles, head)), cuts);
  result.last = classify(composition(make_windows(conv, config, roles, tail)), cuts);
  result.transition = result.first != result.last &&
                      result.first != Stereotype::Other &&
                      result.last != Stereotype::Other;
  return result;
}

DynamicsReport analyze(const Conversation& conv, const AnalysisConfig& config,
                       std::optional<std::string> expected_primary) {
  config.validate();
  require_valid(conv);

  DynamicsReport report;
  report.id = conv.id;
  report.duration = conv.duration;
  report.imbalance = conversation_imbalance(conv);

  RoleAssignment roles{report.imbalance.primary, report.imbalance.secondary};
  if (expected_primary) {
    roles.primary = *expected_primary;
    roles.secondary.clear();
    for (const auto& party : report.imbalance.ranking)
      if (party != roles.primary) {
        roles.secondary = party;
        break;
      }
    if (roles.secondary.empty())
      throw DataError("expected primary '" + roles.primary +
                      "' leaves no secondary party");
  }

  report.regimes = make_windows(conv, config.window, roles);
  report.composition = composition(report.regimes);
  report.stereotype = classify(report.composition, config.stereotypes);
  report.flips = count_flips(report.regimes);
  if (config.mixed_segment_fraction * conv.duration >= config.window.k_seconds)
    report.mixed = mixed_dynamics(conv, config.window, config.stereotypes,
                                  config.mixed_segment_fraction, roles);
  return report;
}

std::vector<ConversationOutcome> analyze_corpus(
    const std::vector<Conversation>& corpus, const AnalysisConfig& config,
    const std::optional<RoleMap>& roles, bool parallel) {
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus[a].id < corpus[b].id;
  });

  std::vector<ConversationOutcome> outcomes(corpus.size());
  const std::int64_t n = static_cast<std::int64_t>(corpus.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t slot = 0; slot < n; ++slot) {
    const Conversation& base = corpus[order[static_cast<std::size_t>(slot)]];
    ConversationOutcome& outcome = outcomes[static_cast<std::size_t>(slot)];
    outcome.id = base.id;
    try {
      if (roles) {
        Conversation grouped = apply_role_map(base, *roles);
        AnalysisConfig grouped_config = config;
        grouped_config.window = merge_role_thresholds(config.window, *roles);
        outcome.report = analyze(grouped, grouped_config, roles->expected_primary);
      } else {
        outcome.report = analyze(base, config);
      }
    } catch (const DataError& err) {
      outcome.skip_reason = err.what();
    }
  }
  return outcomes;
}

}  // namespace talkshare
