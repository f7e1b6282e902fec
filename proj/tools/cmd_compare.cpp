#include <algorithm>
#include <filesystem>
#include <iostream>
#include <memory>

#include "cli_common.hpp"
#include "commands.hpp"
#include "detail/csv.hpp"
#include "talkshare/ingest.hpp"
#include "talkshare/stats.hpp"
#include "talkshare/summary.hpp"

namespace fs = std::filesystem;

namespace talkshare::cli {

namespace {

struct CompareOptions {
  std::string summary_path;
  std::string survey_path;
  std::string group_a;
  std::string group_b;
  std::string field = "comment_positive";
  std::string out_dir = "compare";
  int enjoyment_max = 9;
  ConfigOptions config;
};

std::string fightin_words_csv(const std::vector<FightinWordsEntry>& entries) {
  std::string out = "ngram,count_a,count_b,z\n";
  char z[32];
  for (const auto& entry : entries) {
    std::snprintf(z, sizeof(z), "%.6f", entry.z);
    out += detail::csv_join({entry.ngram, std::to_string(entry.count_a),
                             std::to_string(entry.count_b), z});
    out += '\n';
  }
  return out;
}

nlohmann::json test_json(const TestResult& result) {
  return {{"statistic", result.statistic},
          {"p_value", result.p_value},
          {"method", result.method},
          {"n", result.n}};
}

nlohmann::json group_json(const std::string& filter, const GroupSummary& summary) {
  return {{"filter", filter},
          {"n", summary.n},
          {"mean_enjoyment", summary.mean_enjoyment},
          {"pct_max", summary.pct_max}};
}

void run_compare(const CompareOptions& options) {
  const AnalysisConfig config = options.config.resolve();

  Diagnostics diag;
  const auto summary = read_summary_csv(options.summary_path);
  const auto survey = parse_survey(options.survey_path, options.enjoyment_max,
                                   nullptr, &diag);
  const auto joined = join_records(summary, survey, &diag);

  const Filter filter_a = Filter::parse(options.group_a, config.quartile_direction);
  const Filter filter_b = Filter::parse(options.group_b, config.quartile_direction);

  std::vector<SurveyRecord> records_a, records_b;
  std::vector<std::string> docs_a, docs_b;
  std::vector<double> enjoyment_a, enjoyment_b;
  for (const auto& record : joined) {
    auto collect = [&](std::vector<SurveyRecord>& records, std::vector<std::string>& docs,
                       std::vector<double>& enjoyment) {
      records.push_back(*record.response);
      enjoyment.push_back(static_cast<double>(record.response->enjoyment));
      const auto& comment = options.field == "comment_positive"
                                ? record.response->comment_positive
                                : record.response->comment_negative;
      if (comment && !comment->empty()) docs.push_back(*comment);
    };
    if (filter_a.matches(record)) collect(records_a, docs_a, enjoyment_a);
    if (filter_b.matches(record)) collect(records_b, docs_b, enjoyment_b);
  }
  if (records_a.empty())
    throw DataError("empty group after filtering: '" + options.group_a + "'");
  if (records_b.empty())
    throw DataError("empty group after filtering: '" + options.group_b + "'");
  if (docs_a.empty())
    throw DataError("group '" + options.group_a + "' has no " + options.field + " texts");
  if (docs_b.empty())
    throw DataError("group '" + options.group_b + "' has no " + options.field + " texts");

  const auto entries = fightin_words(docs_a, docs_b, config.fightin_words.ngram_max,
                                     config.fightin_words.alpha);
  // The reverse ranking is the same comparison seen from group b.
  std::vector<FightinWordsEntry> reversed = entries;
  for (auto& entry : reversed) {
    std::swap(entry.count_a, entry.count_b);
    entry.z = -entry.z;
  }
  std::sort(reversed.begin(), reversed.end(),
            [](const FightinWordsEntry& a, const FightinWordsEntry& b) {
              if (a.z != b.z) return a.z > b.z;
              return a.ngram < b.ngram;
            });

  const GroupSummary summary_a = group_summary(records_a, options.enjoyment_max);
  const GroupSummary summary_b = group_summary(records_b, options.enjoyment_max);
  const TestResult mwu = mann_whitney_u(enjoyment_a, enjoyment_b);

  const fs::path out_dir(options.out_dir);
  const std::string tag = options.field;
  atomic_write((out_dir / ("fightin_words_" + tag + "_a_over_b.csv")).string(),
               fightin_words_csv(entries));
  atomic_write((out_dir / ("fightin_words_" + tag + "_b_over_a.csv")).string(),
               fightin_words_csv(reversed));

  nlohmann::json doc{{"field", options.field},
                     {"group_a", group_json(options.group_a, summary_a)},
                     {"group_b", group_json(options.group_b, summary_b)},
                     {"mann_whitney_u", test_json(mwu)}};
  atomic_write((out_dir / "comparison.json").string(), doc.dump(2) + "\n");
  atomic_write((out_dir / "manifest.json").string(),
               manifest_json(config, {options.summary_path, options.survey_path})
                       .dump(2) +
                   "\n");

  print_warnings(diag);
  std::cout << "compared " << summary_a.n << " vs " << summary_b.n
            << " responses; outputs in " << out_dir.string() << "\n";
}

}  // namespace

void register_compare(CLI::App& app) {
  auto options = std::make_shared<CompareOptions>();
  CLI::App* cmd = app.add_subcommand(
      "compare",
      "Fightin' Words phrases plus enjoyment summaries for two filtered groups");
  cmd->add_option("--summary", options->summary_path, "summary.csv from analyze")
      ->required();
  cmd->add_option("--survey", options->survey_path, "Survey CSV")->required();
  cmd->add_option("--group-a", options->group_a, "Filter for group A")->required();
  cmd->add_option("--group-b", options->group_b, "Filter for group B")->required();
  cmd->add_option("--field", options->field, "Comment field to compare")
      ->check(CLI::IsMember({"comment_positive", "comment_negative"}));
  cmd->add_option("--out-dir", options->out_dir, "Output directory");
  cmd->add_option("--enjoyment-max", options->enjoyment_max, "Enjoyment scale maximum");
  add_config_flags(*cmd, options->config);
  cmd->callback([options] { run_compare(*options); });
}

}  // namespace talkshare::cli
