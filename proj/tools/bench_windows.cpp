// Benchmark: serial reference window kernel vs the OpenMP gather kernel, and
// serial vs parallel corpus analysis. Verifies both paths agree before timing.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "talkshare/dynamics.hpp"
#include "talkshare/reference.hpp"
#include "talkshare/synth.hpp"

using namespace talkshare;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Conversation long_conversation(double duration, std::uint64_t seed) {
  Blueprint blueprint;
  blueprint.seed = seed;
  blueprint.turn_seconds = 4.0;
  for (double t = 0.0; t < duration; t += 600.0) {
    BlueprintSegment segment;
    segment.kind = (static_cast<int>(t / 600.0) % 2 == 0)
                       ? BlueprintSegment::Kind::PrimaryLed
                       : BlueprintSegment::Kind::SecondaryLed;
    segment.share = 0.8;
    segment.length = 600.0;
    blueprint.segments.push_back(segment);
  }
  return synthesize(blueprint);
}

}  // namespace

int main() {
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("threads available: %d\n\n", threads);

  // Dense window sweep over one long conversation.
  const Conversation conv = long_conversation(4.0 * 3600.0, 7);
  WindowConfig config;
  config.k_seconds = 150.0;
  config.l_seconds = 1.0;
  const RoleAssignment roles{"A", "B"};

  const auto ref_start = std::chrono::steady_clock::now();
  const auto reference_grid = reference::window_talk(conv, config);
  const double ref_time = seconds_since(ref_start);

  const auto par_start = std::chrono::steady_clock::now();
  const auto sequence = make_windows(conv, config, roles);
  const double par_time = seconds_since(par_start);

  double max_diff = 0.0;
  for (std::size_t w = 0; w < sequence.windows.size(); ++w)
    for (const auto& [party, talk] : sequence.windows[w].talk_by_party)
      max_diff = std::max(max_diff, std::abs(talk - reference_grid[w].at(party)));

  std::printf("window kernel: %zu windows x %zu utterances\n",
              sequence.windows.size(), conv.utterances.size());
  std::printf("  serial reference: %8.3f s\n", ref_time);
  std::printf("  openmp gather:    %8.3f s  (%.2fx)\n", par_time, ref_time / par_time);
  std::printf("  max |diff|:       %.3g s\n\n", max_diff);

  // Corpus runner over many ordinary conversations.
  std::vector<Conversation> corpus;
  for (int i = 0; i < 256; ++i) {
    Blueprint blueprint;
    blueprint.seed = 1000 + static_cast<std::uint64_t>(i);
    blueprint.segments = {{BlueprintSegment::Kind::PrimaryLed, 750.0, 0.8},
                          {BlueprintSegment::Kind::SecondaryLed, 750.0, 0.8}};
    corpus.push_back(synthesize(blueprint));
  }
  AnalysisConfig analysis;

  const auto serial_start = std::chrono::steady_clock::now();
  const auto serial = analyze_corpus(corpus, analysis, std::nullopt, false);
  const double serial_time = seconds_since(serial_start);

  const auto parallel_start = std::chrono::steady_clock::now();
  const auto parallel = analyze_corpus(corpus, analysis, std::nullopt, true);
  const double parallel_time = seconds_since(parallel_start);

  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i)
    same = serial[i].id == parallel[i].id &&
           serial[i].report->flips == parallel[i].report->flips &&
           serial[i].report->imbalance.value == parallel[i].report->imbalance.value;

  std::printf("corpus runner: %zu conversations\n", corpus.size());
  std::printf("  serial:   %8.3f s\n", serial_time);
  std::printf("  parallel: %8.3f s  (%.2fx)\n", parallel_time,
              serial_time / parallel_time);
  std::printf("  outcomes identical: %s\n", same ? "yes" : "NO");
  return same && max_diff <= 1e-9 ? 0 : 1;
}
