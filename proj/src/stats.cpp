#include "talkshare/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace talkshare {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double clamp_p(double p) { return std::min(1.0, std::max(0.0, p)); }

// Midranks (average rank of tied spans), 1-based.
std::vector<double> midranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size(), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

// Sum of t^3 - t over tie groups of the pooled values.
double tie_term(const std::vector<double>& pooled) {
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    total += t * t * t - t;
    i = j + 1;
  }
  return total;
}

// All samples this small get the exact distribution instead of the normal
// approximation; its error at tiny n exceeds any useful tolerance.
constexpr std::size_t kExactMannWhitneyTotal = 16;
constexpr std::size_t kExactWilcoxonN = 16;

double exact_mann_whitney_p(const std::vector<double>& ranks, std::size_t n1,
                            double dev_obs) {
  const std::size_t total = ranks.size();
  const std::size_t n2 = total - n1;
  const double mean = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;
  const double offset = static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;

  std::vector<std::size_t> pick(n1);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  std::uint64_t hits = 0;
  std::uint64_t count = 0;
  while (true) {
    double rank_sum = 0.0;
    for (const std::size_t idx : pick) rank_sum += ranks[idx];
    const double u = rank_sum - offset;
    if (std::abs(u - mean) >= dev_obs - 1e-9) ++hits;
    ++count;

    // Next lexicographic combination.
    std::size_t k = n1;
    while (k > 0 && pick[k - 1] == total - n1 + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < n1; ++j) pick[j] = pick[j - 1] + 1;
  }
  return static_cast<double>(hits) / static_cast<double>(count);
}

double binomial_tail(int n, int lo, int hi) {
  if (lo > hi) return 0.0;
  if (n <= 50) {
    // Binomial coefficients up to C(50,25) stay exact in a double.
    double sum = 0.0;
    double coeff = 1.0;  // C(n, 0)
    for (int k = 0; k <= hi; ++k) {
      if (k >= lo) sum += coeff;
      coeff = coeff * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
    return std::ldexp(sum, -n);
  }
  double p = 0.0;
  const double log_half = -static_cast<double>(n) * std::log(2.0);
  for (int k = lo; k <= hi; ++k) {
    const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(n - k + 1.0) + log_half;
    p += std::exp(log_pmf);
  }
  return clamp_p(p);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<std::string> tokenize(const std::string& text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == '\'') continue;
    // U+2019 right single quote is deleted like the ASCII apostrophe.
    if (c == 0xE2 && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0x99) {
      i += 2;
      continue;
    }
    if (std::isalnum(c) || c >= 0x80) {
      cleaned += static_cast<char>(std::tolower(c));
    } else {
      cleaned += ' ';
    }
  }
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    const std::size_t start = cleaned.find_first_not_of(' ', pos);
    if (start == std::string::npos) break;
    const std::size_t end = cleaned.find(' ', start);
    tokens.push_back(cleaned.substr(start, end - start));
    pos = end == std::string::npos ? cleaned.size() : end;
  }
  return tokens;
}

std::vector<FightinWordsEntry> fightin_words(const std::vector<std::string>& docs_a,
                                             const std::vector<std::string>& docs_b,
                                             int ngram_max, double alpha) {
  if (docs_a.empty() || docs_b.empty())
    throw DataError("fightin_words: both corpora must be non-empty");
  if (ngram_max < 1) throw DataError("fightin_words: ngram_max must be >= 1");
  if (!(alpha > 0.0)) throw DataError("fightin_words: alpha must be positive");

  auto count_side = [&](const std::vector<std::string>& docs,
                        std::map<std::string, std::int64_t>& counts) -> double {
    double total = 0.0;
    for (const auto& doc : docs) {
      const auto tokens = tokenize(doc);
      for (int n = 1; n <= ngram_max; ++n) {
        if (tokens.size() < static_cast<std::size_t>(n)) break;
        for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
          std::string gram = tokens[i];
          for (int j = 1; j < n; ++j) gram += " " + tokens[i + j];
          ++counts[gram];
          total += 1.0;
        }
      }
    }
    return total;
  };

  std::map<std::string, std::int64_t> counts_a, counts_b;
  const double n1 = count_side(docs_a, counts_a);
  const double n2 = count_side(docs_b, counts_b);

  std::map<std::string, std::pair<std::int64_t, std::int64_t>> vocab;
  for (const auto& [gram, count] : counts_a) vocab[gram].first = count;
  for (const auto& [gram, count] : counts_b) vocab[gram].second = count;
  if (vocab.empty()) throw DataError("fightin_words: empty vocabulary");

  const double alpha0 = alpha * static_cast<double>(vocab.size());
  std::vector<FightinWordsEntry> entries;
  entries.reserve(vocab.size());
  for (const auto& [gram, counts] : vocab) {
    const double y1 = static_cast<double>(counts.first);
    const double y2 = static_cast<double>(counts.second);
    const double delta = std::log((y1 + alpha) / (n1 + alpha0 - y1 - alpha)) -
                         std::log((y2 + alpha) / (n2 + alpha0 - y2 - alpha));
    const double sigma2 = 1.0 / (y1 + alpha) + 1.0 / (y2 + alpha);
    FightinWordsEntry entry;
    entry.ngram = gram;
    entry.count_a = counts.first;
    entry.count_b = counts.second;
    entry.z = delta / std::sqrt(sigma2);
    entries.push_back(std::move(entry));
  }
  std::sort(entries.begin(), entries.end(),
            [](const FightinWordsEntry& a, const FightinWordsEntry& b) {
              if (a.z != b.z) return a.z > b.z;
              return a.ngram < b.ngram;
            });
  return entries;
}

TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty())
    throw DataError("mann_whitney_u: both samples must be non-empty");
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < n1; ++i) rank_sum_a += ranks[i];
  const double u = rank_sum_a - static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;
  const double mean = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;

  TestResult result;
  result.statistic = u;
  result.n = {n1, n2};

  if (n1 + n2 <= kExactMannWhitneyTotal) {
    result.method = "mann_whitney_u_exact";
    result.p_value = exact_mann_whitney_p(ranks, n1, std::abs(u - mean));
    return result;
  }

  result.method = "mann_whitney_u_normal";
  const double nn = static_cast<double>(n1 + n2);
  const double variance = (static_cast<double>(n1) * static_cast<double>(n2) / 12.0) *
                          ((nn + 1.0) - tie_term(pooled) / (nn * (nn - 1.0)));
  if (variance <= 0.0) {
    result.p_value = 1.0;  // every pooled value identical
    return result;
  }
  double dev = u - mean;
  if (dev > 0.5)
    dev -= 0.5;
  else if (dev < -0.5)
    dev += 0.5;
  else
    dev = 0.0;
  const double z = dev / std::sqrt(variance);
  result.p_value = clamp_p(2.0 * (1.0 - normal_cdf(std::abs(z))));
  return result;
}

TestResult sign_test(int successes, int n, Tail tail) {
  if (n < 1) throw DataError("sign_test: n must be >= 1");
  if (successes < 0 || successes > n)
    throw DataError("sign_test: successes outside [0, n]");

  TestResult result;
  result.statistic = static_cast<double>(successes);
  result.n = {static_cast<std::size_t>(n)};
  const double upper = binomial_tail(n, successes, n);
  if (tail == Tail::One) {
    result.method = "sign_test_one_tailed";
    result.p_value = clamp_p(upper);
  } else {
    result.method = "sign_test_two_tailed";
    const double lower = binomial_tail(n, 0, successes);
    result.p_value = clamp_p(2.0 * std::min(lower, upper));
  }
  return result;
}

TestResult wilcoxon_signed_rank(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<double> diffs;
  diffs.reserve(pairs.size());
  for (const auto& [first, second] : pairs) {
    const double d = second - first;
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) throw DataError("wilcoxon_signed_rank: all differences are zero");

  const std::size_t n = diffs.size();
  std::vector<double> magnitudes(n);
  for (std::size_t i = 0; i < n; ++i) magnitudes[i] = std::abs(diffs[i]);
  const auto ranks = midranks(magnitudes);

  double w_plus = 0.0;
  double rank_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rank_total += ranks[i];
    if (diffs[i] > 0.0) w_plus += ranks[i];
  }
  const double w = std::min(w_plus, rank_total - w_plus);

  TestResult result;
  result.statistic = w;
  result.n = {n};

  if (n <= kExactWilcoxonN) {
    result.method = "wilcoxon_signed_rank_exact";
    const std::uint64_t patterns = 1ULL << n;
    std::uint64_t hits = 0;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      double plus = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1ULL << i)) plus += ranks[i];
      if (std::min(plus, rank_total - plus) <= w + 1e-9) ++hits;
    }
    result.p_value = static_cast<double>(hits) / static_cast<double>(patterns);
    return result;
  }

  result.method = "wilcoxon_signed_rank_normal";
  const double nd = static_cast<double>(n);
  const double mean = nd * (nd + 1.0) / 4.0;
  const double variance =
      nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term(magnitudes) / 48.0;
  if (variance <= 0.0) {
    result.p_value = 1.0;
    return result;
  }
  const double z = (w - mean) / std::sqrt(variance);
  result.p_value = clamp_p(2.0 * (1.0 - normal_cdf(std::abs(z))));
  return result;
}

namespace {

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.size() == 1) return sorted.front();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

Interval bootstrap_ci(const std::vector<double>& samples,
                      const BootstrapStatistic& statistic, double level,
                      int n_resamples, std::uint64_t seed) {
  if (samples.empty()) throw DataError("bootstrap_ci: empty sample");
  if (!(level > 0.0 && level < 1.0)) throw DataError("bootstrap_ci: level must be in (0,1)");
  if (n_resamples < 1) throw DataError("bootstrap_ci: n_resamples must be >= 1");

  const std::size_t n = samples.size();
  std::vector<double> stats(static_cast<std::size_t>(n_resamples), 0.0);

#pragma omp parallel for schedule(static) if (n_resamples >= 64)
  for (int r = 0; r < n_resamples; ++r) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = samples[rng() % n];
      if (statistic.kind == BootstrapStatistic::Kind::Mean)
        acc += v;
      else if (v == statistic.max_value)
        acc += 1.0;
    }
    stats[static_cast<std::size_t>(r)] = acc / static_cast<double>(n);
  }

  std::sort(stats.begin(), stats.end());
  const double tail = (1.0 - level) / 2.0;
  return {percentile(stats, tail), percentile(stats, 1.0 - tail)};
}

double cohens_kappa(const std::vector<std::string>& labels_a,
                    const std::vector<std::string>& labels_b) {
  if (labels_a.size() != labels_b.size())
    throw DataError("cohens_kappa: label lists differ in length");
  if (labels_a.empty()) throw DataError("cohens_kappa: empty label lists");

  const double n = static_cast<double>(labels_a.size());
  std::map<std::string, double> marginal_a, marginal_b;
  double agree = 0.0;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    marginal_a[labels_a[i]] += 1.0;
    marginal_b[labels_b[i]] += 1.0;
    if (labels_a[i] == labels_b[i]) agree += 1.0;
  }
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [label, count] : marginal_a) {
    const auto it = marginal_b.find(label);
    if (it != marginal_b.end()) p_e += (count / n) * (it->second / n);
  }
  if (p_e >= 1.0) {
    if (p_o == 1.0) return 1.0;
    throw DataError("cohens_kappa: chance agreement is 1 with imperfect agreement");
  }
  return (p_o - p_e) / (1.0 - p_e);
}

std::vector<std::pair<std::string, std::string>> match_pairs(
    const std::vector<MatchItem>& group_a, const std::vector<MatchItem>& group_b,
    const std::vector<double>& tolerance) {
  struct Candidate {
    double distance;
    std::size_t a;
    std::size_t b;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < group_a.size(); ++i) {
    if (group_a[i].key.size() != tolerance.size())
      throw DataError("match_pairs: key dimension does not match tolerance");
    for (std::size_t j = 0; j < group_b.size(); ++j) {
      if (group_b[j].key.size() != tolerance.size())
        throw DataError("match_pairs: key dimension does not match tolerance");
      double max_dist = 0.0;
      bool ok = true;
      for (std::size_t c = 0; c < tolerance.size(); ++c) {
        const double dist = std::abs(group_a[i].key[c] - group_b[j].key[c]);
        max_dist = std::max(max_dist, dist);
        if (dist > tolerance[c]) {
          ok = false;
          break;
        }
      }
      if (ok) candidates.push_back({max_dist, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& x, const Candidate& y) {
              if (x.distance != y.distance) return x.distance < y.distance;
              if (group_a[x.a].id != group_a[y.a].id)
                return group_a[x.a].id < group_a[y.a].id;
              return group_b[x.b].id < group_b[y.b].id;
            });

  std::vector<bool> used_a(group_a.size(), false), used_b(group_b.size(), false);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& candidate : candidates) {
    if (used_a[candidate.a] || used_b[candidate.b]) continue;
    used_a[candidate.a] = true;
    used_b[candidate.b] = true;
    pairs.emplace_back(group_a[candidate.a].id, group_b[candidate.b].id);
  }
  return pairs;
}

namespace {

std::vector<Span> union_intervals(const std::vector<Span>& intervals,
                                  const char* which) {
  for (const auto& span : intervals)
    if (!(span.end > span.start))
      throw DataError(std::string("interval_prf: ") + which +
                      " interval end must exceed start");
  std::vector<Span> sorted = intervals;
  std::sort(sorted.begin(), sorted.end(), [](const Span& a, const Span& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });
  std::vector<Span> merged;
  for (const auto& span : sorted) {
    if (!merged.empty() && span.start <= merged.back().end)
      merged.back().end = std::max(merged.back().end, span.end);
    else
      merged.push_back(span);
  }
  return merged;
}

double total_length(const std::vector<Span>& intervals) {
  double total = 0.0;
  for (const auto& span : intervals) total += span.length();
  return total;
}

double intersection_length(const std::vector<Span>& a, const std::vector<Span>& b) {
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double lo = std::max(a[i].start, b[j].start);
    const double hi = std::min(a[i].end, b[j].end);
    if (hi > lo) total += hi - lo;
    if (a[i].end < b[j].end)
      ++i;
    else
      ++j;
  }
  return total;
}

}  // namespace

PrfResult interval_prf(const std::vector<Span>& reference,
                       const std::vector<Span>& hypothesis) {
  const auto ref = union_intervals(reference, "reference");
  const auto hyp = union_intervals(hypothesis, "hypothesis");
  const double r = total_length(ref);
  const double h = total_length(hyp);
  const double overlap = intersection_length(ref, hyp);

  PrfResult result;
  if (h > 0.0) {
    result.precision = overlap / h;
  } else {
    result.warnings.push_back("empty hypothesis; precision reported as 0");
  }
  if (r > 0.0) {
    result.recall = overlap / r;
  } else {
    result.warnings.push_back("empty reference; recall reported as 0");
  }
  if (overlap > 0.0 && result.precision + result.recall > 0.0)
    result.f1 =
        2.0 * result.precision * result.recall / (result.precision + result.recall);
  return result;
}

GroupSummary group_summary(const std::vector<SurveyRecord>& records, int enjoyment_max) {
  if (records.empty()) throw DataError("group_summary: empty record list");
  GroupSummary summary;
  summary.n = records.size();
  double total = 0.0;
  double at_max = 0.0;
  for (const auto& record : records) {
    total += static_cast<double>(record.enjoyment);
    if (record.enjoyment == enjoyment_max) at_max += 1.0;
  }
  summary.mean_enjoyment = total / static_cast<double>(summary.n);
  summary.pct_max = at_max / static_cast<double>(summary.n);
  return summary;
}

std::map<Stereotype, CrosstabRow> crosstab(
    const std::vector<std::pair<Stereotype, std::string>>& rows, std::size_t min_cell,
    Diagnostics* diag) {
  if (rows.empty()) throw DataError("crosstab: empty input");
  std::map<Stereotype, CrosstabRow> table;
  for (const auto& [stereotype, outcome] : rows) {
    if (outcome.empty()) {
      if (diag) diag->warn("crosstab: excluding row with empty outcome");
      continue;
    }
    auto& row = table[stereotype];
    ++row.n;
    ++row.outcomes[outcome].count;
  }
  for (auto& [stereotype, row] : table) {
    row.low_n = row.n < min_cell;
    for (auto& [outcome, cell] : row.outcomes)
      cell.share = static_cast<double>(cell.count) / static_cast<double>(row.n);
  }
  return table;
}

}  // namespace talkshare
