#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "talkshare/ingest.hpp"

using namespace talkshare;

TEST_CASE("transcript csv maps fields directly") {
  const std::string text =
      "conversation_id,speaker,start,end,text\n"
      "c1,A,0.0,10.0,hello there\n"
      "c1,B,10.0,20.0,\n";
  const auto corpus = parse_transcripts_text(text, TranscriptFormat::Csv);
  REQUIRE(corpus.size() == 1);
  const Conversation& conv = corpus[0];
  CHECK(conv.id == "c1");
  REQUIRE(conv.utterances.size() == 2);
  CHECK(conv.duration == 20.0);
  CHECK(conv.utterances[0].text == "hello there");
  CHECK(!conv.utterances[1].text.has_value());
}

TEST_CASE("header-only file yields an empty corpus") {
  const auto corpus =
      parse_transcripts_text("conversation_id,speaker,start,end,text\n",
                             TranscriptFormat::Csv);
  CHECK(corpus.empty());
}

TEST_CASE("end before start names the line") {
  const std::string text =
      "conversation_id,speaker,start,end,text\n"
      "c1,A,0,10,\n"
      "c1,B,12,11,\n";
  CHECK_THROWS_WITH_AS(parse_transcripts_text(text, TranscriptFormat::Csv),
                       doctest::Contains("line 3"), ParseError);
}

TEST_CASE("quoted text keeps commas and newlines") {
  const std::string text =
      "conversation_id,speaker,start,end,text\n"
      "c1,A,0,10,\"well, hello\nthere\"\n"
      "c1,B,10,20,plain\n";
  const auto corpus = parse_transcripts_text(text, TranscriptFormat::Csv);
  CHECK(corpus[0].utterances[0].text == "well, hello\nthere");
}

TEST_CASE("unknown transcript columns warn and are ignored") {
  Diagnostics diag;
  const std::string text =
      "conversation_id,speaker,start,end,text,mood\n"
      "c1,A,0,10,,happy\n"
      "c1,B,10,20,,sad\n";
  const auto corpus = parse_transcripts_text(text, TranscriptFormat::Csv, &diag);
  CHECK(corpus.size() == 1);
  REQUIRE(diag.warnings.size() == 1);
  CHECK(diag.warnings[0].find("mood") != std::string::npos);
}

TEST_CASE("jsonl transcripts parse like csv") {
  const std::string text =
      R"({"conversation_id":"c1","speaker":"A","start":0.0,"end":10.0,"text":"hi"})"
      "\n"
      R"({"conversation_id":"c1","speaker":"B","start":10.0,"end":20.0})"
      "\n";
  const auto corpus = parse_transcripts_text(text, TranscriptFormat::Jsonl);
  REQUIRE(corpus.size() == 1);
  CHECK(corpus[0].utterances.size() == 2);
  CHECK(corpus[0].utterances[0].text == "hi");
}

TEST_CASE("jsonl reports the offending line") {
  const std::string text =
      R"({"conversation_id":"c1","speaker":"A","start":0.0,"end":10.0})"
      "\nnot json\n";
  CHECK_THROWS_WITH_AS(parse_transcripts_text(text, TranscriptFormat::Jsonl),
                       doctest::Contains("line 2"), ParseError);
}

TEST_CASE("parse-serialize-parse is the identity on records") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::string text = "conversation_id,speaker,start,end,text\n";
    const int n = 2 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      const double start =
          static_cast<double>(rng() % 10000) / 7.0;  // awkward decimals on purpose
      const double len = 0.5 + static_cast<double>(rng() % 100) / 9.0;
      text += "c" + std::to_string(rng() % 2) + "," + (rng() % 2 ? "A" : "B") + "," +
              std::to_string(start) + "," + std::to_string(start + len) +
              ",\"tok,en\"\n";
    }
    const auto first = parse_transcripts_text(text, TranscriptFormat::Csv);
    const std::string serialized = transcript_csv(first);
    const auto second = parse_transcripts_text(serialized, TranscriptFormat::Csv);
    REQUIRE(first.size() == second.size());
    for (std::size_t c = 0; c < first.size(); ++c) {
      CHECK(first[c].id == second[c].id);
      CHECK(first[c].utterances == second[c].utterances);
      CHECK(first[c].duration == second[c].duration);
    }
    CHECK(serialized == transcript_csv(second));
  }
}

TEST_CASE("survey rows parse with optional fields") {
  const std::string text =
      "conversation_id,speaker,enjoyment,gender,age,comment_positive,comment_negative,outcome\n"
      "c1,A,9,Female,34,fun,nothing,\n"
      "c1,B,5,,,,,\n";
  const auto records = parse_survey_text(text);
  REQUIRE(records.size() == 2);
  CHECK(records[0].enjoyment == 9);
  CHECK(records[0].gender == "Female");
  CHECK(records[0].age == 34);
  CHECK(records[0].comment_positive == "fun");
  CHECK(!records[0].outcome.has_value());
  CHECK(!records[1].age.has_value());
}

TEST_CASE("survey enjoyment outside the scale is an error") {
  const std::string text =
      "conversation_id,speaker,enjoyment\n"
      "c1,A,12\n";
  CHECK_THROWS_WITH_AS(parse_survey_text(text, 9), doctest::Contains("enjoyment"),
                       ParseError);
  CHECK_NOTHROW(parse_survey_text(text, 12));
}

TEST_CASE("survey with missing trailing columns") {
  const std::string text =
      "conversation_id,speaker,enjoyment,gender\n"
      "c1,A,7,Male\n";
  const auto records = parse_survey_text(text);
  REQUIRE(records.size() == 1);
  CHECK(records[0].gender == "Male");
  CHECK(!records[0].age.has_value());
}

TEST_CASE("survey warns about unknown conversation ids") {
  Diagnostics diag;
  const std::set<std::string> known = {"c1"};
  const std::string text =
      "conversation_id,speaker,enjoyment\n"
      "c1,A,5\n"
      "zz,B,5\n";
  parse_survey_text(text, 9, &known, &diag);
  REQUIRE(diag.warnings.size() == 1);
  CHECK(diag.warnings[0].find("zz") != std::string::npos);
}

TEST_CASE("intervals parse sorted and validated") {
  const auto intervals = parse_intervals_text("A,7,9\nA,0,5\nB,1,2\n");
  REQUIRE(intervals.size() == 2);
  REQUIRE(intervals.at("A").size() == 2);
  CHECK(intervals.at("A")[0].start == 0.0);
  CHECK(intervals.at("A")[1].start == 7.0);
  CHECK_THROWS_AS(parse_intervals_text("A,5,5\n"), ParseError);
}

TEST_CASE("config defaults match the documented analysis setup") {
  const AnalysisConfig config = parse_config_text("{}");
  CHECK(config.window.k_seconds == 150.0);
  CHECK(config.window.l_seconds == 30.0);
  CHECK(config.window.dominance_threshold == 0.6);
  CHECK(config.stereotypes.gray_min == 0.6);
  CHECK(config.stereotypes.red_min == 0.25);
  CHECK(config.stereotypes.blue_min == 0.75);
  CHECK(config.mixed_segment_fraction == 0.6);
  CHECK(config.fightin_words.ngram_max == 3);
  CHECK(config.fightin_words.alpha == 0.01);
}

TEST_CASE("config accepts the courtroom window setup") {
  const AnalysisConfig config =
      parse_config_text(R"({"window":{"k_seconds":120,"l_seconds":30}})");
  CHECK(config.window.k_seconds == 120.0);
  CHECK(config.window.l_seconds == 30.0);
}

TEST_CASE("config rejects L greater than K") {
  CHECK_THROWS_AS(parse_config_text(R"({"window":{"l_seconds":200,"k_seconds":150}})"),
                  DataError);
}

TEST_CASE("config rejects unknown keys and wrong types by path") {
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"windows":{}})"),
                       doctest::Contains("windows"), ParseError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"window":{"k_seconds":"long"}})"),
                       doctest::Contains("window.k_seconds"), ParseError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"fightin_words":{"alpha":[1]}})"),
                       doctest::Contains("fightin_words.alpha"), ParseError);
}

TEST_CASE("role map parses and regroups parties") {
  const RoleMap roles = parse_role_map_text(
      R"({"parties":{"l1":"lawyer","l2":"lawyer","j1":"justice"},
          "thresholds":{"lawyer":0.8,"justice":0.4},
          "expected_primary":"lawyer"})");
  CHECK(roles.expected_primary == "lawyer");

  auto conv = make_conversation(
      "case", {{"l1", 0.0, 10.0, std::nullopt}, {"j1", 10.0, 20.0, std::nullopt}});
  conv = apply_role_map(conv, roles);
  CHECK(conv.party("l1") == "lawyer");
  CHECK(conv.party("l2") == "lawyer");
  CHECK(conv.parties() == std::set<std::string>{"lawyer", "justice"});

  const WindowConfig config = merge_role_thresholds(WindowConfig{}, roles);
  CHECK(config.threshold_for("lawyer") == 0.8);
  CHECK(config.threshold_for("justice") == 0.4);
  CHECK(config.threshold_for("someone_else") == 0.6);
}
