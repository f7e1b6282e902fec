#include "talkshare/ingest.hpp"

#include <algorithm>
#include <set>

#include "detail/csv.hpp"
#include "json.hpp"

namespace talkshare {

using detail::CsvRow;
using nlohmann::json;

namespace {

const std::vector<std::string> kTranscriptColumns = {"conversation_id", "speaker",
                                                     "start", "end", "text"};
const std::vector<std::string> kSurveyColumns = {
    "conversation_id", "speaker",           "enjoyment", "gender",
    "age",             "comment_positive",  "comment_negative", "outcome"};

void warn(Diagnostics* diag, std::string message) {
  if (diag) diag->warn(std::move(message));
}

// Checks a header against the fixed column order; extra columns are ignored
// with a warning. Returns the number of recognized columns.
std::size_t check_header(const CsvRow& header, const std::vector<std::string>& expected,
                         std::size_t required, const std::string& what,
                         Diagnostics* diag) {
  const std::size_t known = std::min(header.fields.size(), expected.size());
  for (std::size_t i = 0; i < known; ++i) {
    if (header.fields[i] != expected[i])
      throw ParseError(what + " header: column " + std::to_string(i + 1) +
                       " must be '" + expected[i] + "', got '" + header.fields[i] + "'");
  }
  if (header.fields.size() < required)
    throw ParseError(what + " header: expected at least " + std::to_string(required) +
                     " columns");
  for (std::size_t i = expected.size(); i < header.fields.size(); ++i)
    warn(diag, what + ": ignoring unknown column '" + header.fields[i] + "'");
  return known;
}

struct RawUtterance {
  std::string conversation_id;
  Utterance utterance;
  std::size_t line = 0;
};

std::vector<Conversation> group_conversations(std::vector<RawUtterance> rows,
                                              Diagnostics* diag) {
  std::map<std::string, std::vector<Utterance>> grouped;
  for (auto& row : rows) grouped[row.conversation_id].push_back(std::move(row.utterance));

  std::vector<Conversation> corpus;
  corpus.reserve(grouped.size());
  for (auto& [id, utterances] : grouped) {
    Conversation conv = make_conversation(id, std::move(utterances));
    for (const auto& finding : validate_conversation(conv)) {
      if (finding.severity == Severity::Warning) {
        warn(diag, "conversation '" + id + "': " + finding.message);
        continue;
      }
      if (finding.message == "fewer than 2 distinct parties") {
        warn(diag, "conversation '" + id +
                       "' has a single party; supply a role map or it will be skipped");
        continue;
      }
      throw DataError("conversation '" + id + "': " + finding.message);
    }
    corpus.push_back(std::move(conv));
  }
  return corpus;
}

RawUtterance transcript_row(const std::vector<std::string>& fields, std::size_t line) {
  const std::string context = "line " + std::to_string(line);
  if (fields.size() < 4)
    throw ParseError(context + ": expected at least 4 fields, got " +
                     std::to_string(fields.size()));
  RawUtterance row;
  row.line = line;
  row.conversation_id = fields[0];
  row.utterance.speaker = fields[1];
  row.utterance.start = detail::parse_double(fields[2], context);
  row.utterance.end = detail::parse_double(fields[3], context);
  if (fields.size() >= 5 && !fields[4].empty()) row.utterance.text = fields[4];
  if (row.conversation_id.empty()) throw ParseError(context + ": empty conversation_id");
  if (row.utterance.speaker.empty()) throw ParseError(context + ": empty speaker");
  if (!(row.utterance.end > row.utterance.start))
    throw ParseError(context + ": utterance end must exceed start");
  if (row.utterance.start < 0.0)
    throw ParseError(context + ": negative start time");
  return row;
}

std::vector<RawUtterance> parse_transcript_csv(const std::string& text,
                                               Diagnostics* diag) {
  const auto rows = detail::parse_csv(text);
  if (rows.empty()) throw ParseError("transcript: missing header row");
  check_header(rows[0], kTranscriptColumns, 4, "transcript", diag);
  std::vector<RawUtterance> out;
  out.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i)
    out.push_back(transcript_row(rows[i].fields, rows[i].line));
  return out;
}

std::vector<RawUtterance> parse_transcript_jsonl(const std::string& text,
                                                 Diagnostics* diag) {
  std::vector<RawUtterance> out;
  std::set<std::string> warned_keys;
  std::size_t line = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const std::size_t next = text.find('\n', offset);
    const std::string chunk =
        text.substr(offset, next == std::string::npos ? next : next - offset);
    offset = next == std::string::npos ? text.size() + 1 : next + 1;
    ++line;
    if (chunk.find_first_not_of(" \t\r") == std::string::npos) continue;

    const std::string context = "line " + std::to_string(line);
    json obj = json::parse(chunk, nullptr, false);
    if (obj.is_discarded() || !obj.is_object())
      throw ParseError(context + ": expected a JSON object");

    std::vector<std::string> fields(5);
    for (const auto& [key, value] : obj.items()) {
      const auto it =
          std::find(kTranscriptColumns.begin(), kTranscriptColumns.end(), key);
      if (it == kTranscriptColumns.end()) {
        if (warned_keys.insert(key).second)
          warn(diag, "transcript: ignoring unknown key '" + key + "'");
        continue;
      }
      const std::size_t idx = it - kTranscriptColumns.begin();
      if (value.is_null()) continue;
      if (idx == 2 || idx == 3) {
        if (!value.is_number()) throw ParseError(context + ": '" + key + "' must be a number");
        fields[idx] = detail::format_double(value.get<double>());
      } else {
        if (!value.is_string()) throw ParseError(context + ": '" + key + "' must be a string");
        fields[idx] = value.get<std::string>();
      }
    }
    for (std::size_t required : {0u, 1u, 2u, 3u})
      if (fields[required].empty() && !obj.contains(kTranscriptColumns[required]))
        throw ParseError(context + ": missing key '" + kTranscriptColumns[required] + "'");
    out.push_back(transcript_row(fields, line));
  }
  return out;
}

}  // namespace

TranscriptFormat guess_transcript_format(const std::string& path) {
  const std::string suffix = ".jsonl";
  if (path.size() >= suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return TranscriptFormat::Jsonl;
  return TranscriptFormat::Csv;
}

std::vector<Conversation> parse_transcripts_text(const std::string& text,
                                                 TranscriptFormat format,
                                                 Diagnostics* diag) {
  auto rows = format == TranscriptFormat::Csv ? parse_transcript_csv(text, diag)
                                              : parse_transcript_jsonl(text, diag);
  return group_conversations(std::move(rows), diag);
}

std::vector<Conversation> parse_transcripts(const std::string& path,
                                            TranscriptFormat format,
                                            Diagnostics* diag) {
  return parse_transcripts_text(detail::read_file(path), format, diag);
}

std::string transcript_csv(const std::vector<Conversation>& corpus) {
  std::string out = "conversation_id,speaker,start,end,text\n";
  for (const auto& conv : corpus) {
    for (const auto& utt : conv.utterances) {
      out += detail::csv_join({conv.id, utt.speaker, detail::format_double(utt.start),
                               detail::format_double(utt.end), utt.text.value_or("")});
      out += '\n';
    }
  }
  return out;
}

std::vector<SurveyRecord> parse_survey_text(const std::string& text, int enjoyment_max,
                                            const std::set<std::string>* known_conversations,
                                            Diagnostics* diag) {
  const auto rows = detail::parse_csv(text);
  if (rows.empty()) throw ParseError("survey: missing header row");
  const std::size_t known = check_header(rows[0], kSurveyColumns, 3, "survey", diag);

  std::vector<SurveyRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& fields = rows[r].fields;
    const std::string context = "line " + std::to_string(rows[r].line);
    if (fields.size() < 3)
      throw ParseError(context + ": expected at least 3 fields");

    auto field = [&](std::size_t idx) -> std::string {
      return idx < std::min(fields.size(), known) ? fields[idx] : std::string();
    };

    SurveyRecord record;
    record.conversation_id = field(0);
    record.speaker = field(1);
    if (record.conversation_id.empty()) throw ParseError(context + ": empty conversation_id");
    if (record.speaker.empty()) throw ParseError(context + ": empty speaker");
    record.enjoyment = static_cast<int>(detail::parse_int(field(2), context));
    if (record.enjoyment < 0 || record.enjoyment > enjoyment_max)
      throw ParseError(context + ": enjoyment " + std::to_string(record.enjoyment) +
                       " outside [0, " + std::to_string(enjoyment_max) + "]");
    if (!field(3).empty()) record.gender = field(3);
    if (!field(4).empty())
      record.age = static_cast<int>(detail::parse_int(field(4), context));
    if (!field(5).empty()) record.comment_positive = field(5);
    if (!field(6).empty()) record.comment_negative = field(6);
    if (!field(7).empty()) record.outcome = field(7);

    if (known_conversations && !known_conversations->count(record.conversation_id))
      warn(diag, context + ": survey row for unknown conversation '" +
                     record.conversation_id + "'");
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<SurveyRecord> parse_survey(const std::string& path, int enjoyment_max,
                                       const std::set<std::string>* known_conversations,
                                       Diagnostics* diag) {
  return parse_survey_text(detail::read_file(path), enjoyment_max, known_conversations,
                           diag);
}

std::map<std::string, std::vector<Span>> parse_intervals_text(const std::string& text,
                                                              Diagnostics* diag) {
  (void)diag;
  const auto rows = detail::parse_csv(text);
  std::map<std::string, std::vector<Span>> intervals;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& fields = rows[r].fields;
    if (r == 0 && fields.size() == 3 && fields[0] == "speaker" && fields[1] == "start" &&
        fields[2] == "end")
      continue;
    const std::string context = "line " + std::to_string(rows[r].line);
    if (fields.size() != 3)
      throw ParseError(context + ": expected 3 fields (speaker,start,end)");
    if (fields[0].empty()) throw ParseError(context + ": empty speaker");
    Span span;
    span.start = detail::parse_double(fields[1], context);
    span.end = detail::parse_double(fields[2], context);
    if (!(span.end > span.start))
      throw ParseError(context + ": interval end must exceed start");
    intervals[fields[0]].push_back(span);
  }
  for (auto& [speaker, spans] : intervals)
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
      if (a.start != b.start) return a.start < b.start;
      return a.end < b.end;
    });
  return intervals;
}

std::map<std::string, std::vector<Span>> parse_intervals(const std::string& path,
                                                         Diagnostics* diag) {
  return parse_intervals_text(detail::read_file(path), diag);
}

namespace {

[[noreturn]] void key_error(const std::string& path, const std::string& what) {
  throw ParseError("config: " + path + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      key_error(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double number_at(const json& obj, const std::string& path, const std::string& key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) key_error(path + key, "expected a number");
  return obj.at(key).get<double>();
}

json object_at(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) return json::object();
  if (!obj.at(key).is_object()) key_error(path + key, "expected an object");
  return obj.at(key);
}

}  // namespace

AnalysisConfig parse_config_text(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object())
    throw ParseError("config: expected a JSON object");

  AnalysisConfig config;
  reject_unknown_keys(root, "",
                      {"window", "stereotypes", "mixed_segment_fraction",
                       "quartile_direction", "fightin_words", "rng_seed"});

  const json window = object_at(root, "", "window");
  reject_unknown_keys(window, "window",
                      {"k_seconds", "l_seconds", "m", "thresholds",
                       "silence_floor_seconds"});
  config.window.k_seconds = number_at(window, "window.", "k_seconds", config.window.k_seconds);
  config.window.l_seconds = number_at(window, "window.", "l_seconds", config.window.l_seconds);
  config.window.dominance_threshold =
      number_at(window, "window.", "m", config.window.dominance_threshold);
  config.window.silence_floor_seconds = number_at(
      window, "window.", "silence_floor_seconds", config.window.silence_floor_seconds);
  if (window.contains("thresholds")) {
    if (!window.at("thresholds").is_object())
      key_error("window.thresholds", "expected an object");
    for (const auto& [party, value] : window.at("thresholds").items()) {
      if (!value.is_number()) key_error("window.thresholds." + party, "expected a number");
      config.window.party_thresholds[party] = value.get<double>();
    }
  }

  const json cuts = object_at(root, "", "stereotypes");
  reject_unknown_keys(cuts, "stereotypes", {"gray_min", "red_min", "blue_min"});
  config.stereotypes.gray_min =
      number_at(cuts, "stereotypes.", "gray_min", config.stereotypes.gray_min);
  config.stereotypes.red_min =
      number_at(cuts, "stereotypes.", "red_min", config.stereotypes.red_min);
  config.stereotypes.blue_min =
      number_at(cuts, "stereotypes.", "blue_min", config.stereotypes.blue_min);

  config.mixed_segment_fraction =
      number_at(root, "", "mixed_segment_fraction", config.mixed_segment_fraction);

  if (root.contains("quartile_direction")) {
    if (!root.at("quartile_direction").is_string())
      key_error("quartile_direction", "expected a string");
    config.quartile_direction =
        quartile_direction_from_string(root.at("quartile_direction").get<std::string>());
  }

  const json fightin = object_at(root, "", "fightin_words");
  reject_unknown_keys(fightin, "fightin_words", {"ngram_max", "alpha"});
  if (fightin.contains("ngram_max")) {
    if (!fightin.at("ngram_max").is_number_integer())
      key_error("fightin_words.ngram_max", "expected an integer");
    config.fightin_words.ngram_max = fightin.at("ngram_max").get<int>();
  }
  config.fightin_words.alpha =
      number_at(fightin, "fightin_words.", "alpha", config.fightin_words.alpha);

  if (root.contains("rng_seed")) {
    if (!root.at("rng_seed").is_number_unsigned() && !root.at("rng_seed").is_number_integer())
      key_error("rng_seed", "expected an unsigned integer");
    config.rng_seed = root.at("rng_seed").get<std::uint64_t>();
  }

  config.validate();
  return config;
}

AnalysisConfig load_config(const std::string& path) {
  return parse_config_text(detail::read_file(path));
}

RoleMap parse_role_map_text(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object())
    throw ParseError("role map: expected a JSON object");
  reject_unknown_keys(root, "", {"parties", "thresholds", "expected_primary"});

  RoleMap roles;
  if (root.contains("parties")) {
    if (!root.at("parties").is_object()) key_error("parties", "expected an object");
    for (const auto& [speaker, party] : root.at("parties").items()) {
      if (!party.is_string()) key_error("parties." + speaker, "expected a string");
      roles.parties[speaker] = party.get<std::string>();
    }
  }
  if (root.contains("thresholds")) {
    if (!root.at("thresholds").is_object()) key_error("thresholds", "expected an object");
    for (const auto& [party, value] : root.at("thresholds").items()) {
      if (!value.is_number()) key_error("thresholds." + party, "expected a number");
      roles.thresholds[party] = value.get<double>();
    }
  }
  if (root.contains("expected_primary")) {
    if (!root.at("expected_primary").is_string())
      key_error("expected_primary", "expected a string");
    roles.expected_primary = root.at("expected_primary").get<std::string>();
  }
  return roles;
}

RoleMap load_role_map(const std::string& path) {
  return parse_role_map_text(detail::read_file(path));
}

}  // namespace talkshare
