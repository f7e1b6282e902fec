#include <filesystem>
#include <iostream>
#include <map>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "talkshare/dynamics.hpp"
#include "talkshare/ingest.hpp"
#include "talkshare/report_json.hpp"
#include "talkshare/summary.hpp"

namespace fs = std::filesystem;

namespace talkshare::cli {

namespace {

struct AnalyzeOptions {
  std::string transcripts;
  std::string format = "auto";
  std::string roles_path;
  std::string out_dir = "out";
  bool serial = false;
  ConfigOptions config;
};

void run_analyze(const AnalyzeOptions& options) {
  const AnalysisConfig config = options.config.resolve();

  std::optional<RoleMap> roles;
  if (!options.roles_path.empty()) roles = load_role_map(options.roles_path);

  const TranscriptFormat format =
      options.format == "csv"    ? TranscriptFormat::Csv
      : options.format == "jsonl" ? TranscriptFormat::Jsonl
                                  : guess_transcript_format(options.transcripts);

  Diagnostics diag;
  const auto corpus = parse_transcripts(options.transcripts, format, &diag);
  const auto outcomes = analyze_corpus(corpus, config, roles, !options.serial);

  // All inputs parsed and analyzed; only now do any files get written.
  const fs::path out_dir(options.out_dir);
  std::map<std::string, int> name_uses;
  std::vector<SummaryRow> rows;
  std::size_t analyzed = 0, skipped = 0;
  for (const auto& outcome : outcomes) {
    rows.push_back(summary_row(outcome));
    if (!outcome.report) {
      ++skipped;
      diag.warn("skipping conversation '" + outcome.id + "': " + outcome.skip_reason);
      continue;
    }
    ++analyzed;
    if (outcome.report->imbalance.tie)
      diag.warn("conversation '" + outcome.id +
                "': primary speaker tie broken lexicographically");
    std::string name = sanitize_filename(outcome.id);
    const int uses = name_uses[name]++;
    if (uses > 0) name += "-" + std::to_string(uses + 1);
    atomic_write((out_dir / "reports" / (name + ".json")).string(),
                 report_to_json(*outcome.report));
  }
  atomic_write((out_dir / "summary.csv").string(), summary_csv(rows));

  std::vector<std::string> inputs = {options.transcripts};
  if (!options.roles_path.empty()) inputs.push_back(options.roles_path);
  atomic_write((out_dir / "manifest.json").string(),
               manifest_json(config, inputs).dump(2) + "\n");

  print_warnings(diag);
  std::cout << "analyzed " << analyzed << " conversation(s), skipped " << skipped
            << "; outputs in " << out_dir.string() << "\n";
}

}  // namespace

void register_analyze(CLI::App& app) {
  auto options = std::make_shared<AnalyzeOptions>();
  CLI::App* cmd = app.add_subcommand(
      "analyze", "Per-conversation dynamics reports and a corpus summary CSV");
  cmd->add_option("transcripts", options->transcripts, "Transcript CSV or JSONL file")
      ->required();
  cmd->add_option("--format", options->format, "Transcript format: csv, jsonl, auto")
      ->check(CLI::IsMember({"csv", "jsonl", "auto"}));
  cmd->add_option("--roles", options->roles_path, "Role map JSON");
  cmd->add_option("--out-dir", options->out_dir, "Output directory");
  cmd->add_flag("--serial", options->serial, "Disable parallel corpus analysis");
  add_config_flags(*cmd, options->config);
  cmd->callback([options] { run_analyze(*options); });
}

}  // namespace talkshare::cli
