#include "talkshare/reference.hpp"

#include <algorithm>
#include <cmath>

namespace talkshare::reference {

std::vector<std::map<std::string, double>> window_talk(
    const Conversation& conv, const WindowConfig& config, std::optional<Span> span) {
  config.validate();
  const Span target = span.value_or(Span{0.0, conv.duration});
  const double k = config.k_seconds;
  const double l = config.l_seconds;

  const double usable = target.length() - k;
  const std::size_t n_windows =
      usable < 0.0 ? 0 : static_cast<std::size_t>(std::floor(usable / l)) + 1;

  std::vector<std::map<std::string, double>> result(n_windows);
  for (auto& window : result)
    for (const auto& party : conv.parties()) window[party] = 0.0;

  for (const auto& utt : conv.utterances) {
    const std::string& party = conv.party(utt.speaker);
    // First window that might still overlap this utterance; the overlap test
    // below discards any over-eager start.
    double first = std::floor((utt.start - target.start - k) / l);
    std::size_t w = first < 0.0 ? 0 : static_cast<std::size_t>(first);
    for (; w < n_windows; ++w) {
      const double ws = target.start + static_cast<double>(w) * l;
      if (ws >= utt.end) break;
      const double we = ws + k;
      const double overlap = std::min(utt.end, we) - std::max(utt.start, ws);
      if (overlap > 0.0) result[w][party] += overlap;
    }
  }
  return result;
}

}  // namespace talkshare::reference
