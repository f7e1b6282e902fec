// Parsers for transcripts, survey metadata, interval files, role maps, and
// the analysis configuration, plus the transcript writer.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "talkshare/config.hpp"
#include "talkshare/model.hpp"

namespace talkshare {

enum class TranscriptFormat { Csv, Jsonl };

// Picks Jsonl for a ".jsonl" path, Csv otherwise.
TranscriptFormat guess_transcript_format(const std::string& path);

// One Conversation per distinct conversation_id, sorted by id, utterances
// canonical. Malformed rows raise ParseError with the line number. Structural
// problems a role map cannot fix abort; a single-party conversation is only
// warned about here and resolved (or skipped) at analysis time.
std::vector<Conversation> parse_transcripts(const std::string& path,
                                            TranscriptFormat format,
                                            Diagnostics* diag = nullptr);
std::vector<Conversation> parse_transcripts_text(const std::string& text,
                                                 TranscriptFormat format,
                                                 Diagnostics* diag = nullptr);

// Standard transcript CSV: conversation_id,speaker,start,end,text.
std::string transcript_csv(const std::vector<Conversation>& corpus);

// Survey CSV: conversation_id,speaker,enjoyment,gender,age,comment_positive,
// comment_negative,outcome; trailing columns optional, empty values absent.
// When known_conversations is given, unmatched ids are reported as warnings.
std::vector<SurveyRecord> parse_survey(
    const std::string& path, int enjoyment_max = 9,
    const std::set<std::string>* known_conversations = nullptr,
    Diagnostics* diag = nullptr);
std::vector<SurveyRecord> parse_survey_text(
    const std::string& text, int enjoyment_max = 9,
    const std::set<std::string>* known_conversations = nullptr,
    Diagnostics* diag = nullptr);

// Interval CSV rows: speaker,start,end (header optional). Output per speaker
// is sorted by (start, end); end must exceed start.
std::map<std::string, std::vector<Span>> parse_intervals(const std::string& path,
                                                         Diagnostics* diag = nullptr);
std::map<std::string, std::vector<Span>> parse_intervals_text(const std::string& text,
                                                              Diagnostics* diag = nullptr);

// JSON analysis config; missing keys take defaults, unknown keys are
// rejected, type mismatches name the offending key path.
AnalysisConfig load_config(const std::string& path);
AnalysisConfig parse_config_text(const std::string& text);

// Role map JSON: {"parties": {speaker: party}, "thresholds": {party: x},
// "expected_primary": party}.
RoleMap load_role_map(const std::string& path);
RoleMap parse_role_map_text(const std::string& text);

}  // namespace talkshare
