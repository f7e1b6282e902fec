// Serial reference window kernel. Computes per-window per-party talk-times by
// scattering each utterance into the windows it intersects, the reverse
// traversal of the production gather kernel. Linked only by tests and the
// benchmark; not part of the analysis library.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "talkshare/model.hpp"

namespace talkshare::reference {

std::vector<std::map<std::string, double>> window_talk(
    const Conversation& conv, const WindowConfig& config,
    std::optional<Span> span = std::nullopt);

}  // namespace talkshare::reference
