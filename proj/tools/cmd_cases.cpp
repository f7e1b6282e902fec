// The consistency and demographics case-study commands.
#include <algorithm>
#include <iostream>
#include <map>
#include <memory>
#include <random>

#include "cli_common.hpp"
#include "commands.hpp"
#include "talkshare/ingest.hpp"
#include "talkshare/stats.hpp"
#include "talkshare/summary.hpp"

namespace talkshare::cli {

namespace {

void emit(const std::string& out_path, const nlohmann::json& doc) {
  if (out_path.empty())
    std::cout << doc.dump(2) << "\n";
  else {
    atomic_write(out_path, doc.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
  }
}

nlohmann::json test_json(const TestResult& result) {
  return {{"statistic", result.statistic},
          {"p_value", result.p_value},
          {"method", result.method},
          {"n", result.n}};
}

bool is_gender(const std::optional<std::string>& gender, const char* wanted) {
  if (!gender) return false;
  std::string lower = *gender;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return lower == wanted;
}

// ---------------------------------------------------------------------------
// consistency: are speakers the primary/secondary speaker across conversations?
// ---------------------------------------------------------------------------

struct ConsistencyOptions {
  std::string summary_path;
  std::string survey_path;
  std::string filter;
  std::string out;
  int enjoyment_max = 9;
  ConfigOptions config;
};

void run_consistency(const ConsistencyOptions& options) {
  const AnalysisConfig config = options.config.resolve();
  Diagnostics diag;
  const auto summary = read_summary_csv(options.summary_path);
  const auto survey = parse_survey(options.survey_path, options.enjoyment_max,
                                   nullptr, &diag);
  const auto joined = join_records(summary, survey, &diag);

  std::optional<Filter> filter;
  if (!options.filter.empty())
    filter = Filter::parse(options.filter, config.quartile_direction);

  // Speaker -> (conversation id, role), deduplicated per conversation.
  std::map<std::string, std::map<std::string, std::string>> by_speaker;
  for (const auto& record : joined) {
    if (filter && !filter->matches(record)) continue;
    if (record.role != "primary" && record.role != "secondary") continue;
    by_speaker[record.response->speaker][record.conv->id] = record.role;
  }

  std::vector<std::string> roles_first, roles_second;
  for (const auto& [speaker, conversations] : by_speaker) {
    if (conversations.size() < 2) continue;
    std::vector<const std::string*> roles;
    roles.reserve(conversations.size());
    for (const auto& [conv_id, role] : conversations) roles.push_back(&role);
    std::mt19937_64 rng(mix_seed(config.rng_seed, fnv1a64(speaker)));
    const std::size_t first = rng() % roles.size();
    std::size_t second = rng() % (roles.size() - 1);
    if (second >= first) ++second;
    roles_first.push_back(*roles[first]);
    roles_second.push_back(*roles[second]);
  }

  nlohmann::json doc{{"n_speakers", roles_first.size()},
                     {"seed", config.rng_seed},
                     {"filter", options.filter}};
  if (roles_first.empty()) {
    doc["computable"] = false;
    doc["reason"] = "no speaker has two qualifying conversations";
    doc["agreement"] = nullptr;
    doc["kappa"] = nullptr;
  } else {
    double agree = 0.0;
    for (std::size_t i = 0; i < roles_first.size(); ++i)
      if (roles_first[i] == roles_second[i]) agree += 1.0;
    doc["computable"] = true;
    doc["agreement"] = agree / static_cast<double>(roles_first.size());
    try {
      doc["kappa"] = cohens_kappa(roles_first, roles_second);
    } catch (const DataError&) {
      doc["kappa"] = nullptr;
    }
  }
  print_warnings(diag);
  emit(options.out, doc);
}

// ---------------------------------------------------------------------------
// demographics: gender/age vs primary role and stereotype share tables
// ---------------------------------------------------------------------------

struct DemographicsOptions {
  std::string summary_path;
  std::string survey_path;
  std::optional<int> age_split;
  int age_gap = 3;
  std::string out;
  int enjoyment_max = 9;
  ConfigOptions config;
};

void run_demographics(const DemographicsOptions& options) {
  const AnalysisConfig config = options.config.resolve();
  Diagnostics diag;
  const auto summary = read_summary_csv(options.summary_path);
  const auto survey = parse_survey(options.survey_path, options.enjoyment_max,
                                   nullptr, &diag);
  const auto joined = join_records(summary, survey, &diag);

  std::map<std::string, std::vector<const JoinedRecord*>> by_conversation;
  for (const auto& record : joined) by_conversation[record.conv->id].push_back(&record);

  // Median age over distinct speakers unless an explicit split is given.
  int age_split = 0;
  if (options.age_split) {
    age_split = *options.age_split;
  } else {
    std::map<std::string, int> speaker_age;
    for (const auto& record : joined)
      if (record.response->age) speaker_age[record.response->speaker] = *record.response->age;
    std::vector<double> ages;
    ages.reserve(speaker_age.size());
    for (const auto& [speaker, age] : speaker_age) ages.push_back(age);
    if (!ages.empty()) {
      std::sort(ages.begin(), ages.end());
      const std::size_t mid = ages.size() / 2;
      age_split = static_cast<int>(
          ages.size() % 2 ? ages[mid] : (ages[mid - 1] + ages[mid]) / 2.0);
    }
  }

  int mixed_gender = 0, male_primary = 0;
  int gapped = 0, older_primary = 0;
  std::map<std::string, std::map<std::string, int>> gender_table, age_table;

  for (const auto& [conv_id, records] : by_conversation) {
    if (records.size() != 2) continue;
    const JoinedRecord* a = records[0];
    const JoinedRecord* b = records[1];
    const JoinedRecord* primary =
        a->role == "primary" ? a : (b->role == "primary" ? b : nullptr);
    const std::string stereotype = a->conv->stereotype;

    const bool a_male = is_gender(a->response->gender, "male");
    const bool a_female = is_gender(a->response->gender, "female");
    const bool b_male = is_gender(b->response->gender, "male");
    const bool b_female = is_gender(b->response->gender, "female");
    std::string gender_cell = "other";
    if (a_male && b_male)
      gender_cell = "both_male";
    else if (a_female && b_female)
      gender_cell = "both_female";
    else if ((a_male && b_female) || (a_female && b_male))
      gender_cell = "male_female";
    ++gender_table["overall"][gender_cell];
    ++gender_table[stereotype][gender_cell];

    if (gender_cell == "male_female" && primary) {
      ++mixed_gender;
      if (is_gender(primary->response->gender, "male")) ++male_primary;
    }

    if (a->response->age && b->response->age) {
      const int age_a = *a->response->age;
      const int age_b = *b->response->age;
      auto age_cell = [&](int age) { return age < age_split ? 0 : 1; };
      std::string cell = "younger_older";
      if (age_cell(age_a) == 0 && age_cell(age_b) == 0) cell = "both_younger";
      if (age_cell(age_a) == 1 && age_cell(age_b) == 1) cell = "both_older";
      ++age_table["overall"][cell];
      ++age_table[stereotype][cell];

      if (std::abs(age_a - age_b) >= options.age_gap && primary) {
        ++gapped;
        const JoinedRecord* secondary = primary == a ? b : a;
        if (*primary->response->age > *secondary->response->age) ++older_primary;
      }
    }
  }

  auto shares = [](const std::map<std::string, std::map<std::string, int>>& table) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [row_name, cells] : table) {
      int total = 0;
      for (const auto& [cell, count] : cells) total += count;
      nlohmann::json row{{"n", total}};
      for (const auto& [cell, count] : cells)
        row[cell] = {{"count", count},
                     {"share", total ? static_cast<double>(count) / total : 0.0}};
      out[row_name] = std::move(row);
    }
    return out;
  };

  nlohmann::json doc{
      {"gender",
       {{"n_mixed", mixed_gender},
        {"male_primary", male_primary},
        {"share", mixed_gender ? static_cast<double>(male_primary) / mixed_gender : 0.0},
        {"sign_test", mixed_gender
                          ? test_json(sign_test(male_primary, mixed_gender, Tail::Two))
                          : nlohmann::json()}}},
      {"age",
       {{"split", age_split},
        {"gap", options.age_gap},
        {"n_gapped", gapped},
        {"older_primary", older_primary},
        {"share", gapped ? static_cast<double>(older_primary) / gapped : 0.0},
        {"sign_test", gapped ? test_json(sign_test(older_primary, gapped, Tail::Two))
                             : nlohmann::json()}}},
      {"gender_table", shares(gender_table)},
      {"age_table", shares(age_table)}};
  print_warnings(diag);
  emit(options.out, doc);
}

}  // namespace

void register_consistency(CLI::App& app) {
  auto options = std::make_shared<ConsistencyOptions>();
  CLI::App* cmd = app.add_subcommand(
      "consistency", "Role consistency (agreement and kappa) across conversations");
  cmd->add_option("--summary", options->summary_path, "summary.csv from analyze")
      ->required();
  cmd->add_option("--survey", options->survey_path, "Survey CSV")->required();
  cmd->add_option("--filter", options->filter,
                  "Only conversations matching this filter qualify");
  cmd->add_option("--out", options->out, "Output JSON path (default stdout)");
  cmd->add_option("--enjoyment-max", options->enjoyment_max, "Enjoyment scale maximum");
  add_config_flags(*cmd, options->config);
  cmd->callback([options] { run_consistency(*options); });
}

void register_demographics(CLI::App& app) {
  auto options = std::make_shared<DemographicsOptions>();
  CLI::App* cmd = app.add_subcommand(
      "demographics", "Gender/age sign tests and stereotype share tables");
  cmd->add_option("--summary", options->summary_path, "summary.csv from analyze")
      ->required();
  cmd->add_option("--survey", options->survey_path, "Survey CSV")->required();
  cmd->add_option("--age-split", options->age_split,
                  "Younger/older boundary (default: median age)");
  cmd->add_option("--age-gap", options->age_gap,
                  "Minimum age difference for the older-primary test");
  cmd->add_option("--out", options->out, "Output JSON path (default stdout)");
  cmd->add_option("--enjoyment-max", options->enjoyment_max, "Enjoyment scale maximum");
  add_config_flags(*cmd, options->config);
  cmd->callback([options] { run_demographics(*options); });
}

}  // namespace talkshare::cli
