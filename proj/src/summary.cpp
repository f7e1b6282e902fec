#include "talkshare/summary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "detail/csv.hpp"

namespace talkshare {

namespace {

const std::vector<std::string> kSummaryColumns = {
    "id",        "status",    "duration",  "imbalance",   "primary",
    "secondary", "blue_frac", "red_frac",  "gray_frac",   "stereotype",
    "flips",     "mixed_first", "mixed_last", "mixed_transition", "note"};

const std::set<std::string> kFilterColumns = {
    "id",         "imbalance",  "primary",    "secondary",        "blue_frac",
    "red_frac",   "gray_frac",  "stereotype", "flips",            "mixed_first",
    "mixed_last", "mixed_transition", "imbalance_quartile", "role",
    "speaker",    "enjoyment",  "gender",     "age",              "outcome"};

std::string fixed6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

std::optional<double> try_number(const std::string& token) {
  if (token.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

SummaryRow summary_row(const ConversationOutcome& outcome) {
  SummaryRow row;
  row.id = outcome.id;
  if (!outcome.report) {
    row.status = "skipped";
    row.note = outcome.skip_reason;
    return row;
  }
  const DynamicsReport& report = *outcome.report;
  row.status = "ok";
  row.duration = report.duration;
  row.imbalance = report.imbalance.value;
  row.primary = report.imbalance.primary;
  row.secondary = report.imbalance.secondary;
  row.blue_frac = report.composition.blue_frac;
  row.red_frac = report.composition.red_frac;
  row.gray_frac = report.composition.gray_frac;
  row.stereotype = to_string(report.stereotype);
  row.flips = report.flips;
  if (report.mixed) {
    row.mixed_first = to_string(report.mixed->first);
    row.mixed_last = to_string(report.mixed->last);
    row.mixed_transition = report.mixed->transition ? "true" : "false";
  }
  return row;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < kSummaryColumns.size(); ++i) {
    if (i) out += ',';
    out += kSummaryColumns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    const bool ok = row.status == "ok";
    std::vector<std::string> fields = {
        row.id,
        row.status,
        ok ? fixed6(row.duration) : "",
        ok ? fixed6(row.imbalance) : "",
        row.primary,
        row.secondary,
        ok ? fixed6(row.blue_frac) : "",
        ok ? fixed6(row.red_frac) : "",
        ok ? fixed6(row.gray_frac) : "",
        row.stereotype,
        ok ? std::to_string(row.flips) : "",
        row.mixed_first,
        row.mixed_last,
        row.mixed_transition,
        row.note};
    out += detail::csv_join(fields);
    out += '\n';
  }
  return out;
}

std::vector<SummaryRow> parse_summary_csv_text(const std::string& text) {
  const auto rows = detail::parse_csv(text);
  if (rows.empty()) throw ParseError("summary: missing header row");
  if (rows[0].fields != kSummaryColumns)
    throw ParseError("summary: unexpected header; regenerate with the analyze command");

  std::vector<SummaryRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& fields = rows[r].fields;
    const std::string context = "line " + std::to_string(rows[r].line);
    if (fields.size() != kSummaryColumns.size())
      throw ParseError(context + ": expected " + std::to_string(kSummaryColumns.size()) +
                       " fields");
    SummaryRow row;
    row.id = fields[0];
    row.status = fields[1];
    if (row.status == "ok") {
      row.duration = detail::parse_double(fields[2], context);
      row.imbalance = detail::parse_double(fields[3], context);
      row.blue_frac = detail::parse_double(fields[6], context);
      row.red_frac = detail::parse_double(fields[7], context);
      row.gray_frac = detail::parse_double(fields[8], context);
      row.flips = static_cast<int>(detail::parse_int(fields[10], context));
    }
    row.primary = fields[4];
    row.secondary = fields[5];
    row.stereotype = fields[9];
    row.mixed_first = fields[11];
    row.mixed_last = fields[12];
    row.mixed_transition = fields[13];
    row.note = fields[14];
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
  return parse_summary_csv_text(detail::read_file(path));
}

std::pair<double, double> quartiles(std::vector<double> values) {
  if (values.empty()) throw DataError("quartiles: empty input");
  std::sort(values.begin(), values.end());
  auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  return {at(0.25), at(0.75)};
}

std::vector<JoinedRecord> join_records(const std::vector<SummaryRow>& summary,
                                       const std::vector<SurveyRecord>& survey,
                                       Diagnostics* diag) {
  std::map<std::string, const SummaryRow*> by_id;
  std::vector<double> imbalances;
  for (const auto& row : summary) {
    if (row.status != "ok") continue;
    by_id[row.id] = &row;
    imbalances.push_back(row.imbalance);
  }
  double q1 = 0.0, q3 = 0.0;
  if (!imbalances.empty()) std::tie(q1, q3) = quartiles(imbalances);

  std::vector<JoinedRecord> joined;
  for (const auto& record : survey) {
    const auto it = by_id.find(record.conversation_id);
    if (it == by_id.end()) {
      if (diag)
        diag->warn("survey row for conversation '" + record.conversation_id +
                   "' has no analyzed summary row");
      continue;
    }
    JoinedRecord j;
    j.conv = it->second;
    j.response = &record;
    if (record.speaker == it->second->primary)
      j.role = "primary";
    else if (record.speaker == it->second->secondary)
      j.role = "secondary";
    else
      j.role = "other";
    // Quartile membership is inclusive at both cut points.
    if (it->second->imbalance <= q1)
      j.quartile = "bottom";
    else if (it->second->imbalance >= q3)
      j.quartile = "top";
    else
      j.quartile = "mid";
    joined.push_back(j);
  }
  return joined;
}

std::optional<std::string> lookup_field(const JoinedRecord& record,
                                        const std::string& column) {
  const SummaryRow& conv = *record.conv;
  const SurveyRecord& response = *record.response;
  if (column == "id") return conv.id;
  if (column == "imbalance") return fixed6(conv.imbalance);
  if (column == "primary") return conv.primary;
  if (column == "secondary") return conv.secondary;
  if (column == "blue_frac") return fixed6(conv.blue_frac);
  if (column == "red_frac") return fixed6(conv.red_frac);
  if (column == "gray_frac") return fixed6(conv.gray_frac);
  if (column == "stereotype") return conv.stereotype;
  if (column == "flips") return std::to_string(conv.flips);
  if (column == "mixed_first")
    return conv.mixed_first.empty() ? std::nullopt
                                    : std::optional<std::string>(conv.mixed_first);
  if (column == "mixed_last")
    return conv.mixed_last.empty() ? std::nullopt
                                   : std::optional<std::string>(conv.mixed_last);
  if (column == "mixed_transition")
    return conv.mixed_transition.empty()
               ? std::nullopt
               : std::optional<std::string>(conv.mixed_transition);
  if (column == "imbalance_quartile") return record.quartile;
  if (column == "role") return record.role;
  if (column == "speaker") return response.speaker;
  if (column == "enjoyment") return std::to_string(response.enjoyment);
  if (column == "gender") return response.gender;
  if (column == "age")
    return response.age ? std::optional<std::string>(std::to_string(*response.age))
                        : std::nullopt;
  if (column == "outcome") return response.outcome;
  return std::nullopt;
}

Filter Filter::parse(const std::string& text, QuartileDirection direction) {
  Filter filter;
  filter.source = text;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string clause_text = text.substr(pos, comma - pos);
    pos = comma + 1;

    const std::size_t begin = clause_text.find_first_not_of(" \t");
    if (begin == std::string::npos) {
      if (pos > text.size()) break;
      throw UsageError("filter '" + text + "': empty clause");
    }
    const std::size_t end = clause_text.find_last_not_of(" \t");
    clause_text = clause_text.substr(begin, end - begin + 1);

    static const std::vector<std::pair<std::string, FilterClause::Op>> kOps = {
        {"<=", FilterClause::Op::Le}, {">=", FilterClause::Op::Ge},
        {"!=", FilterClause::Op::Ne}, {"=", FilterClause::Op::Eq},
        {"<", FilterClause::Op::Lt},  {">", FilterClause::Op::Gt}};
    FilterClause clause;
    std::size_t op_pos = std::string::npos;
    std::size_t op_len = 0;
    for (const auto& [token, op] : kOps) {
      const std::size_t found = clause_text.find(token);
      if (found != std::string::npos && (op_pos == std::string::npos || found < op_pos ||
                                         (found == op_pos && token.size() > op_len))) {
        op_pos = found;
        op_len = token.size();
        clause.op = op;
      }
    }
    if (op_pos == std::string::npos || op_pos == 0)
      throw UsageError("filter clause '" + clause_text +
                       "': expected column<op>value with op in = != < <= > >=");
    clause.column = clause_text.substr(0, op_pos);
    clause.value = clause_text.substr(op_pos + op_len);
    while (!clause.column.empty() && clause.column.back() == ' ') clause.column.pop_back();
    while (!clause.value.empty() && clause.value.front() == ' ') clause.value.erase(0, 1);
    if (clause.value.empty())
      throw UsageError("filter clause '" + clause_text + "': empty value");
    if (!kFilterColumns.count(clause.column))
      throw UsageError("filter clause '" + clause_text + "': unknown column '" +
                       clause.column + "'");

    if (clause.column == "imbalance_quartile") {
      const bool low_balanced = direction == QuartileDirection::LowIsBalanced;
      if (clause.value == "balanced") clause.value = low_balanced ? "bottom" : "top";
      else if (clause.value == "imbalanced") clause.value = low_balanced ? "top" : "bottom";
      else if (clause.value != "top" && clause.value != "bottom" && clause.value != "mid")
        throw UsageError("filter: imbalance_quartile must be one of "
                         "balanced/imbalanced/top/bottom/mid");
    }
    filter.clauses.push_back(std::move(clause));
    if (comma == text.size()) break;
  }
  if (filter.clauses.empty()) throw UsageError("empty filter expression");
  return filter;
}

bool Filter::matches(const JoinedRecord& record) const {
  for (const auto& clause : clauses) {
    const auto field = lookup_field(record, clause.column);
    if (!field) return false;
    const auto lhs = try_number(*field);
    const auto rhs = try_number(clause.value);
    int cmp;
    if (lhs && rhs)
      cmp = *lhs < *rhs ? -1 : (*lhs > *rhs ? 1 : 0);
    else
      cmp = field->compare(clause.value) < 0 ? -1 : (*field == clause.value ? 0 : 1);
    bool ok = false;
    switch (clause.op) {
      case FilterClause::Op::Eq: ok = cmp == 0; break;
      case FilterClause::Op::Ne: ok = cmp != 0; break;
      case FilterClause::Op::Lt: ok = cmp < 0; break;
      case FilterClause::Op::Le: ok = cmp <= 0; break;
      case FilterClause::Op::Gt: ok = cmp > 0; break;
      case FilterClause::Op::Ge: ok = cmp >= 0; break;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace talkshare
