// Corpus summary rows (one per conversation), the conjunctive filter
// mini-language, and the summary/survey join used by the comparison and
// case-study commands.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "talkshare/config.hpp"
#include "talkshare/dynamics.hpp"

namespace talkshare {

// Raised for malformed command-line usage (bad filters, bad flag combos).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SummaryRow {
  std::string id;
  std::string status;  // "ok" or "skipped"
  double duration = 0.0;
  double imbalance = 0.0;
  std::string primary;
  std::string secondary;
  double blue_frac = 0.0;
  double red_frac = 0.0;
  double gray_frac = 0.0;
  std::string stereotype;
  int flips = 0;
  std::string mixed_first;       // empty when mixed was not computable
  std::string mixed_last;
  std::string mixed_transition;  // "true"/"false"/""
  std::string note;              // skip reason
};

SummaryRow summary_row(const ConversationOutcome& outcome);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_summary_csv_text(const std::string& text);
std::vector<SummaryRow> read_summary_csv(const std::string& path);

// Type-7 quartiles (linear interpolation) of the given values.
std::pair<double, double> quartiles(std::vector<double> values);

// One survey response joined to its conversation's summary row.
struct JoinedRecord {
  const SummaryRow* conv = nullptr;
  const SurveyRecord* response = nullptr;
  std::string role;      // "primary", "secondary", or "other"
  std::string quartile;  // canonical "bottom", "mid", or "top" by imbalance
};

// Joins survey records to "ok" summary rows. Unmatched survey rows warn.
std::vector<JoinedRecord> join_records(const std::vector<SummaryRow>& summary,
                                       const std::vector<SurveyRecord>& survey,
                                       Diagnostics* diag = nullptr);

// Field lookup for filters; absent fields yield nullopt and fail the clause.
std::optional<std::string> lookup_field(const JoinedRecord& record,
                                        const std::string& column);

struct FilterClause {
  enum class Op { Eq, Ne, Lt, Le, Gt, Ge };
  std::string column;
  Op op = Op::Eq;
  std::string value;
};

// Conjunctive "column op value" clauses, comma-separated, e.g.
// "stereotype=BackAndForth,blue_frac<0.5". Ops: = != < <= > >=.
// The quartile aliases balanced/imbalanced resolve per the configured
// direction.
struct Filter {
  std::vector<FilterClause> clauses;
  std::string source;

  static Filter parse(const std::string& text, QuartileDirection direction);
  bool matches(const JoinedRecord& record) const;
};

}  // namespace talkshare
