// The synth and validate-intervals commands.
#include <iostream>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "talkshare/ingest.hpp"
#include "talkshare/stats.hpp"
#include "talkshare/synth.hpp"

namespace talkshare::cli {

namespace {

struct SynthOptions {
  std::string blueprint_path;
  std::string out = "synth.csv";
};

void run_synth(const SynthOptions& options) {
  const Blueprint blueprint = load_blueprint(options.blueprint_path);
  const Conversation conv = synthesize(blueprint);
  atomic_write(options.out, transcript_csv({conv}));
  std::cout << "wrote " << options.out << " (" << conv.utterances.size()
            << " utterances, " << conv.duration << "s)\n";
}

struct ValidateOptions {
  std::string reference_path;
  std::string hypothesis_path;
  std::string out;
};

nlohmann::json prf_json(const PrfResult& result) {
  return {{"precision", result.precision},
          {"recall", result.recall},
          {"f1", result.f1}};
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

void run_validate(const ValidateOptions& options) {
  Diagnostics diag;
  const auto reference = parse_intervals(options.reference_path, &diag);
  const auto hypothesis = parse_intervals(options.hypothesis_path, &diag);

  std::set<std::string> speakers;
  for (const auto& [speaker, spans] : reference) speakers.insert(speaker);
  for (const auto& [speaker, spans] : hypothesis) speakers.insert(speaker);
  if (speakers.empty()) throw DataError("no intervals in either file");

  static const std::vector<Span> kEmpty;
  nlohmann::json per_speaker = nlohmann::json::object();
  std::vector<double> precisions, recalls, f1s;
  std::vector<Span> ref_all, hyp_all;
  for (const auto& speaker : speakers) {
    const auto ref_it = reference.find(speaker);
    const auto hyp_it = hypothesis.find(speaker);
    const auto& ref = ref_it != reference.end() ? ref_it->second : kEmpty;
    const auto& hyp = hyp_it != hypothesis.end() ? hyp_it->second : kEmpty;
    const PrfResult result = interval_prf(ref, hyp);
    for (const auto& warning : result.warnings)
      diag.warn("speaker '" + speaker + "': " + warning);
    per_speaker[speaker] = prf_json(result);
    precisions.push_back(result.precision);
    recalls.push_back(result.recall);
    f1s.push_back(result.f1);
    ref_all.insert(ref_all.end(), ref.begin(), ref.end());
    hyp_all.insert(hyp_all.end(), hyp.begin(), hyp.end());
  }

  nlohmann::json doc{
      {"per_speaker", per_speaker},
      {"median",
       {{"precision", median_of(precisions)},
        {"recall", median_of(recalls)},
        {"f1", median_of(f1s)}}},
      {"pooled", prf_json(interval_prf(ref_all, hyp_all))}};
  print_warnings(diag);
  if (options.out.empty())
    std::cout << doc.dump(2) << "\n";
  else {
    atomic_write(options.out, doc.dump(2) + "\n");
    std::cout << "wrote " << options.out << "\n";
  }
}

}  // namespace

void register_synth(CLI::App& app) {
  auto options = std::make_shared<SynthOptions>();
  CLI::App* cmd = app.add_subcommand(
      "synth", "Generate a synthetic conversation from a blueprint JSON");
  cmd->add_option("--blueprint", options->blueprint_path, "Blueprint JSON")->required();
  cmd->add_option("--out", options->out, "Transcript CSV to write");
  cmd->callback([options] { run_synth(*options); });
}

void register_validate_intervals(CLI::App& app) {
  auto options = std::make_shared<ValidateOptions>();
  CLI::App* cmd = app.add_subcommand(
      "validate-intervals",
      "Overlap precision/recall/F1 between two speech interval sets");
  cmd->add_option("--reference", options->reference_path, "Reference interval CSV")
      ->required();
  cmd->add_option("--hypothesis", options->hypothesis_path, "Hypothesis interval CSV")
      ->required();
  cmd->add_option("--out", options->out, "Output JSON path (default stdout)");
  cmd->callback([options] { run_validate(*options); });
}

}  // namespace talkshare::cli
