// Corpus statistics: Fightin' Words log-odds, nonparametric tests, bootstrap
// intervals, agreement, tolerance matching, and interval overlap scoring.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "talkshare/model.hpp"

namespace talkshare {

// Lowercases, deletes apostrophes in place ("didn't" -> "didnt"), turns any
// other punctuation into a separator, and splits on whitespace.
std::vector<std::string> tokenize(const std::string& text);

struct FightinWordsEntry {
  std::string ngram;
  std::int64_t count_a = 0;
  std::int64_t count_b = 0;
  double z = 0.0;
};

// z-scored log-odds with a symmetric Dirichlet prior alpha per n-gram, over
// all n-grams of order 1..ngram_max (n-grams never cross documents). Sorted
// by z descending. Throws DataError on empty corpora or empty vocabulary.
std::vector<FightinWordsEntry> fightin_words(const std::vector<std::string>& docs_a,
                                             const std::vector<std::string>& docs_b,
                                             int ngram_max, double alpha);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string method;
  std::vector<std::size_t> n;
};

// U for sample a, midranks over the pooled values. Exact enumeration for
// small samples, otherwise the normal approximation with tie and continuity
// corrections.
TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

enum class Tail { One, Two };

// Exact binomial test at p = 1/2; ties are excluded by the caller.
TestResult sign_test(int successes, int n, Tail tail);

// min(W+, W-) over signed midranks with zero differences dropped. Exact sign
// enumeration for small n, otherwise the normal approximation with tie
// correction. Differences are second - first.
TestResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs);

struct BootstrapStatistic {
  enum class Kind { Mean, ProportionAtMax };
  Kind kind = Kind::Mean;
  double max_value = 0.0;

  static BootstrapStatistic mean() { return {Kind::Mean, 0.0}; }
  static BootstrapStatistic proportion_max(double value) {
    return {Kind::ProportionAtMax, value};
  }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Seeded percentile bootstrap. Per-resample RNG streams derive from
// (seed, resample index), so results are independent of thread count.
Interval bootstrap_ci(const std::vector<double>& samples,
                      const BootstrapStatistic& statistic, double level,
                      int n_resamples, std::uint64_t seed);

// Cohen's kappa from the two label lists' marginals; degenerate chance
// agreement of 1 yields 1 when observed agreement is also 1.
double cohens_kappa(const std::vector<std::string>& labels_a,
                    const std::vector<std::string>& labels_b);

struct MatchItem {
  std::string id;
  std::vector<double> key;
};

// Greedy disjoint matching across two groups: candidate pairs ordered by max
// componentwise distance, accepted when every component is within tolerance.
std::vector<std::pair<std::string, std::string>> match_pairs(
    const std::vector<MatchItem>& group_a, const std::vector<MatchItem>& group_b,
    const std::vector<double>& tolerance);

struct PrfResult {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<std::string> warnings;
};

// Overlap precision/recall/F1 between two interval sets; each side is first
// flattened by union, so self-overlapping inputs are fine.
PrfResult interval_prf(const std::vector<Span>& reference,
                       const std::vector<Span>& hypothesis);

struct GroupSummary {
  double mean_enjoyment = 0.0;
  double pct_max = 0.0;
  std::size_t n = 0;
};

GroupSummary group_summary(const std::vector<SurveyRecord>& records,
                           int enjoyment_max = 9);

struct CrosstabCell {
  std::size_t count = 0;
  double share = 0.0;
};

struct CrosstabRow {
  std::size_t n = 0;
  std::map<std::string, CrosstabCell> outcomes;
  bool low_n = false;
};

// Outcome shares per stereotype. Rows with empty outcomes are excluded with a
// warning; rows with n below min_cell are flagged.
std::map<Stereotype, CrosstabRow> crosstab(
    const std::vector<std::pair<Stereotype, std::string>>& rows,
    std::size_t min_cell = 5, Diagnostics* diag = nullptr);

// Splitmix64-style mix of a seed and a stream index; used everywhere a
// deterministic per-item RNG stream is needed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace talkshare
