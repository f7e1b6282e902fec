#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "talkshare/stats.hpp"

using namespace talkshare;

// ---------------------------------------------------------------------------
// independent oracles (kept free of the implementation's code paths)
// ---------------------------------------------------------------------------

namespace oracle {

// Midranks recomputed with a value->positions map rather than a sort of indices.
std::vector<double> midranks(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), values[i]);
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), values[i]);
    const double first = static_cast<double>(lo - sorted.begin()) + 1.0;
    const double last = static_cast<double>(hi - sorted.begin());
    ranks[i] = (first + last) / 2.0;
  }
  return ranks;
}

// Exact two-sided Mann-Whitney p by recursive assignment enumeration.
double mann_whitney_exact(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);
  const std::size_t n1 = a.size();
  const double mean = double(n1) * double(b.size()) / 2.0;
  double observed = 0.0;
  for (std::size_t i = 0; i < n1; ++i) observed += ranks[i];
  const double dev_obs =
      std::abs(observed - double(n1) * double(n1 + 1) / 2.0 - mean);

  long hits = 0, total = 0;
  std::vector<std::size_t> chosen;
  auto recurse = [&](auto&& self, std::size_t next) -> void {
    if (chosen.size() == n1) {
      double sum = 0.0;
      for (const std::size_t idx : chosen) sum += ranks[idx];
      const double u = sum - double(n1) * double(n1 + 1) / 2.0;
      if (std::abs(u - mean) >= dev_obs - 1e-9) ++hits;
      ++total;
      return;
    }
    if (next >= pooled.size()) return;
    chosen.push_back(next);
    self(self, next + 1);
    chosen.pop_back();
    if (pooled.size() - next - 1 >= n1 - chosen.size()) self(self, next + 1);
  };
  recurse(recurse, 0);
  return double(hits) / double(total);
}

// Exact two-sided Wilcoxon p over all sign patterns.
double wilcoxon_exact(const std::vector<double>& diffs) {
  std::vector<double> magnitudes;
  for (const double d : diffs)
    if (d != 0.0) magnitudes.push_back(std::abs(d));
  const auto ranks = midranks(magnitudes);
  double total_rank = std::accumulate(ranks.begin(), ranks.end(), 0.0);
  double w_plus = 0.0;
  std::size_t k = 0;
  for (const double d : diffs) {
    if (d == 0.0) continue;
    if (d > 0.0) w_plus += ranks[k];
    ++k;
  }
  const double observed = std::min(w_plus, total_rank - w_plus);
  const std::size_t n = magnitudes.size();
  long hits = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    double plus = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1ULL << i)) plus += ranks[i];
    if (std::min(plus, total_rank - plus) <= observed + 1e-9) ++hits;
  }
  return double(hits) / double(1ULL << n);
}

// Binomial tail via Pascal's triangle.
double binom_tail_ge(int n, int s) {
  std::vector<double> row = {1.0};
  for (int i = 1; i <= n; ++i) {
    std::vector<double> next(i + 1, 1.0);
    for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = next;
  }
  double sum = 0.0;
  for (int k = s; k <= n; ++k) sum += row[k];
  return sum / std::pow(2.0, n);
}

// Optimal matching size by recursion over group a.
int best_matching(const std::vector<MatchItem>& a, const std::vector<MatchItem>& b,
                  const std::vector<double>& tol, std::size_t i,
                  std::vector<bool>& used) {
  if (i == a.size()) return 0;
  int best = best_matching(a, b, tol, i + 1, used);  // leave a[i] unmatched
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    bool ok = true;
    for (std::size_t c = 0; c < tol.size(); ++c)
      if (std::abs(a[i].key[c] - b[j].key[c]) > tol[c]) ok = false;
    if (!ok) continue;
    used[j] = true;
    best = std::max(best, 1 + best_matching(a, b, tol, i + 1, used));
    used[j] = false;
  }
  return best;
}

// Millisecond-sweep PRF for small integer-millisecond interval sets.
PrfResult prf_sweep(const std::vector<Span>& ref, const std::vector<Span>& hyp,
                    int horizon_ms) {
  auto covered = [&](const std::vector<Span>& spans, int ms) {
    const double t = (ms + 0.5) / 1000.0;
    for (const auto& span : spans)
      if (t > span.start && t < span.end) return true;
    return false;
  };
  double r = 0, h = 0, o = 0;
  for (int ms = 0; ms < horizon_ms; ++ms) {
    const bool in_r = covered(ref, ms);
    const bool in_h = covered(hyp, ms);
    if (in_r) r += 1.0;
    if (in_h) h += 1.0;
    if (in_r && in_h) o += 1.0;
  }
  PrfResult out;
  out.precision = h > 0 ? o / h : 0.0;
  out.recall = r > 0 ? o / r : 0.0;
  out.f1 = o > 0 ? 2 * out.precision * out.recall / (out.precision + out.recall) : 0.0;
  return out;
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// tokenize / fightin words
// ---------------------------------------------------------------------------

TEST_CASE("tokenizer lowercases and deletes apostrophes in place") {
  CHECK(tokenize("I'm didn't WASN'T really.") ==
        std::vector<std::string>{"im", "didnt", "wasnt", "really"});
  CHECK(tokenize("talked, too-much!") ==
        std::vector<std::string>{"talked", "too", "much"});
  CHECK(tokenize("  ") == std::vector<std::string>{});
  CHECK(tokenize("don’t") == std::vector<std::string>{"dont"});
}

TEST_CASE("identical corpora give zero z everywhere") {
  const std::vector<std::string> docs = {"we both had a lot in common", "he talked"};
  for (const auto& entry : fightin_words(docs, docs, 3, 0.01))
    CHECK(std::abs(entry.z) < 1e-12);
}

TEST_CASE("corpus swap negates z exactly") {
  const std::vector<std::string> docs_a = {"she talked a lot", "good listener"};
  const std::vector<std::string> docs_b = {"we both", "we had a lot in common"};
  const auto forward = fightin_words(docs_a, docs_b, 2, 0.01);
  const auto backward = fightin_words(docs_b, docs_a, 2, 0.01);
  std::map<std::string, double> reverse_z;
  for (const auto& entry : backward) reverse_z[entry.ngram] = entry.z;
  for (const auto& entry : forward) CHECK(entry.z == -reverse_z.at(entry.ngram));
}

TEST_CASE("tiny corpus z matches the direct formula") {
  const auto entries = fightin_words({"a a b"}, {"a b b"}, 1, 0.01);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].ngram == "a");
  CHECK(entries[1].ngram == "b");

  // Hand evaluation with y1=2, y2=1, n1=n2=3, |V|=2, alpha=0.01.
  const double alpha = 0.01, alpha0 = 0.02;
  const double delta = std::log((2 + alpha) / (3 + alpha0 - 2 - alpha)) -
                       std::log((1 + alpha) / (3 + alpha0 - 1 - alpha));
  const double sigma = std::sqrt(1.0 / (2 + alpha) + 1.0 / (1 + alpha));
  CHECK(entries[0].z == doctest::Approx(delta / sigma).epsilon(1e-12));
  CHECK(entries[0].z > 0.0);
  CHECK(entries[1].z < 0.0);
  CHECK(entries[0].count_a == 2);
  CHECK(entries[0].count_b == 1);
}

TEST_CASE("every relatively more frequent ngram gets positive z at equal totals") {
  const auto entries = fightin_words({"x x x y z"}, {"x y y y z"}, 1, 0.05);
  for (const auto& entry : entries) {
    if (entry.count_a > entry.count_b) CHECK(entry.z > 0.0);
    if (entry.count_a < entry.count_b) CHECK(entry.z < 0.0);
    if (entry.count_a == entry.count_b) CHECK(std::abs(entry.z) < 1e-12);
  }
}

TEST_CASE("ngrams stop at document boundaries") {
  // "b a" never occurs inside one document.
  const auto entries = fightin_words({"a b", "a b"}, {"c d"}, 2, 0.01);
  for (const auto& entry : entries) CHECK(entry.ngram != "b a");
}

TEST_CASE("fightin words errors") {
  CHECK_THROWS_AS(fightin_words({}, {"x"}, 1, 0.01), DataError);
  CHECK_THROWS_AS(fightin_words({"..."}, {"..."}, 1, 0.01), DataError);
}

// ---------------------------------------------------------------------------
// mann-whitney
// ---------------------------------------------------------------------------

TEST_CASE("identical samples give p of 1") {
  const std::vector<double> x = {3, 1, 4, 1, 5};
  const auto result = mann_whitney_u(x, x);
  CHECK(result.p_value >= 0.99);
}

TEST_CASE("fully separated tiny samples match the enumeration") {
  const auto result = mann_whitney_u({1, 2, 3}, {4, 5, 6});
  CHECK(result.statistic == 0.0);
  CHECK(result.p_value == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(result.method == "mann_whitney_u_exact");
}

TEST_CASE("swapping samples leaves p unchanged") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a, b;
    for (std::size_t i = 0; i < 3 + rng() % 10; ++i) a.push_back(value(rng));
    for (std::size_t i = 0; i < 3 + rng() % 10; ++i) b.push_back(value(rng));
    CHECK(mann_whitney_u(a, b).p_value ==
          doctest::Approx(mann_whitney_u(b, a).p_value).epsilon(1e-12));
  }
}

TEST_CASE("exact and approximate paths track the enumeration oracle") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> value(0, 6);  // ties likely
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<double> a, b;
    const std::size_t n1 = 1 + rng() % 7, n2 = 1 + rng() % 7;
    for (std::size_t i = 0; i < n1; ++i) a.push_back(value(rng));
    for (std::size_t i = 0; i < n2; ++i) b.push_back(value(rng));
    bool all_same = true;
    for (const double v : a) all_same = all_same && v == a[0];
    for (const double v : b) all_same = all_same && v == a[0];
    const double exact = oracle::mann_whitney_exact(a, b);
    const auto result = mann_whitney_u(a, b);
    CHECK(std::abs(result.p_value - exact) <= 0.03);
    if (all_same) CHECK(result.p_value == 1.0);
  }
}

TEST_CASE("u statistics of the two sides sum to n1*n2 without ties") {
  const std::vector<double> a = {0.1, 0.9, 2.5, 7.0};
  const std::vector<double> b = {1.0, 3.0, 4.0};
  const double u_a = mann_whitney_u(a, b).statistic;
  const double u_b = mann_whitney_u(b, a).statistic;
  CHECK(u_a + u_b == 12.0);
}

// ---------------------------------------------------------------------------
// sign test
// ---------------------------------------------------------------------------

TEST_CASE("sign test equals binomial tail sums exactly") {
  CHECK(sign_test(8, 10, Tail::One).p_value == 0.0546875);
  CHECK(sign_test(10, 10, Tail::One).p_value == 1.0 / 1024.0);
  CHECK(sign_test(5, 10, Tail::Two).p_value == 1.0);
}

TEST_CASE("sign test agrees with the Pascal oracle and is symmetric") {
  for (int n = 1; n <= 24; ++n) {
    for (int s = 0; s <= n; ++s) {
      CHECK(sign_test(s, n, Tail::One).p_value ==
            doctest::Approx(oracle::binom_tail_ge(n, s)).epsilon(1e-12));
      CHECK(sign_test(s, n, Tail::Two).p_value ==
            doctest::Approx(sign_test(n - s, n, Tail::Two).p_value).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(sign_test(0, 0, Tail::One), DataError);
  CHECK_THROWS_AS(sign_test(5, 4, Tail::One), DataError);
}

TEST_CASE("large-n sign test stays sane") {
  const auto result = sign_test(560, 1000, Tail::Two);
  CHECK(result.p_value > 0.0);
  CHECK(result.p_value < 0.001);  // 56% of 1000 at p=1/2
}

// ---------------------------------------------------------------------------
// wilcoxon
// ---------------------------------------------------------------------------

TEST_CASE("mirrored pairs show no effect") {
  const std::vector<std::pair<double, double>> pairs = {{1, 2}, {2, 1}, {3, 5}, {5, 3}};
  CHECK(wilcoxon_signed_rank(pairs).p_value >= 0.99);
}

TEST_CASE("all-positive differences hit the exact enumeration") {
  const std::vector<std::pair<double, double>> pairs = {{1, 2}, {1, 3}, {1, 4},
                                                        {1, 5}, {1, 6}, {1, 7}};
  const auto result = wilcoxon_signed_rank(pairs);
  CHECK(result.statistic == 0.0);
  CHECK(result.p_value == 0.03125);
  CHECK(result.method == "wilcoxon_signed_rank_exact");
}

TEST_CASE("scaling differences changes nothing") {
  const std::vector<std::pair<double, double>> pairs = {{0, 1}, {0, -2}, {0, 3}, {0, 0.5}};
  std::vector<std::pair<double, double>> scaled;
  for (const auto& [x, y] : pairs) scaled.emplace_back(7.0 * x, 7.0 * y);
  const auto base = wilcoxon_signed_rank(pairs);
  const auto big = wilcoxon_signed_rank(scaled);
  CHECK(base.statistic == big.statistic);
  CHECK(base.p_value == big.p_value);
}

TEST_CASE("zero differences drop; all-zero errors") {
  const std::vector<std::pair<double, double>> pairs = {{1, 1}, {2, 2}};
  CHECK_THROWS_AS(wilcoxon_signed_rank(pairs), DataError);
  const std::vector<std::pair<double, double>> one = {{1, 1}, {1, 4}};
  CHECK(wilcoxon_signed_rank(one).n == std::vector<std::size_t>{1});
}

TEST_CASE("wilcoxon tracks the sign-pattern oracle") {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> delta(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<double, double>> pairs;
    std::vector<double> diffs;
    const std::size_t n = 2 + rng() % 11;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = delta(rng);
      pairs.push_back({0.0, d});
      diffs.push_back(d);
    }
    bool any = false;
    for (const double d : diffs) any = any || d != 0.0;
    if (!any) continue;
    CHECK(std::abs(wilcoxon_signed_rank(pairs).p_value - oracle::wilcoxon_exact(diffs)) <=
          0.03);
  }
}

// ---------------------------------------------------------------------------
// bootstrap
// ---------------------------------------------------------------------------

TEST_CASE("degenerate sample collapses the interval") {
  const auto interval = bootstrap_ci({5, 5, 5, 5}, BootstrapStatistic::mean(), 0.95,
                                     200, 1);
  CHECK(interval.lo == 5.0);
  CHECK(interval.hi == 5.0);
}

TEST_CASE("bootstrap is deterministic per seed and widens with level") {
  const std::vector<double> sample = {1, 2, 2, 3, 4, 4, 5, 6, 7, 9};
  const auto a = bootstrap_ci(sample, BootstrapStatistic::mean(), 0.9, 500, 42);
  const auto b = bootstrap_ci(sample, BootstrapStatistic::mean(), 0.9, 500, 42);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  const auto wide = bootstrap_ci(sample, BootstrapStatistic::mean(), 0.99, 500, 42);
  CHECK(wide.lo <= a.lo);
  CHECK(wide.hi >= a.hi);
}

TEST_CASE("proportion-at-max statistic") {
  const std::vector<double> sample = {9, 9, 5, 7};
  const auto interval =
      bootstrap_ci(sample, BootstrapStatistic::proportion_max(9), 0.95, 400, 3);
  CHECK(interval.lo >= 0.0);
  CHECK(interval.hi <= 1.0);
  CHECK(interval.lo <= 0.5);
  CHECK(interval.hi >= 0.5);
}

// ---------------------------------------------------------------------------
// kappa
// ---------------------------------------------------------------------------

TEST_CASE("kappa basics") {
  const std::vector<std::string> same = {"P", "S", "P", "P"};
  CHECK(cohens_kappa(same, same) == 1.0);

  const std::vector<std::string> a = {"P", "P", "S", "S"};
  const std::vector<std::string> b = {"P", "S", "P", "S"};
  CHECK(cohens_kappa(a, b) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(cohens_kappa({"P"}, {"P", "S"}), DataError);
}

TEST_CASE("kappa is invariant under a label swap applied to both lists") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> a, b, a_swapped, b_swapped;
    const std::size_t n = 2 + rng() % 30;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(rng() % 2 ? "P" : "S");
      b.push_back(rng() % 2 ? "P" : "S");
      a_swapped.push_back(a.back() == "P" ? "S" : "P");
      b_swapped.push_back(b.back() == "P" ? "S" : "P");
    }
    double base;
    try {
      base = cohens_kappa(a, b);
    } catch (const DataError&) {
      continue;
    }
    CHECK(base == doctest::Approx(cohens_kappa(a_swapped, b_swapped)).epsilon(1e-12));
  }
}

TEST_CASE("kappa matches hand-computed contingency tables") {
  std::mt19937_64 rng(88);
  const char* labels[] = {"x", "y", "z"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> a, b;
    const std::size_t n = 4 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(labels[rng() % 3]);
      b.push_back(labels[rng() % 3]);
    }
    // Direct contingency computation.
    std::map<std::string, std::map<std::string, double>> table;
    for (std::size_t i = 0; i < n; ++i) table[a[i]][b[i]] += 1.0;
    double p_o = 0.0, p_e = 0.0;
    for (const auto& row : {std::string("x"), std::string("y"), std::string("z")}) {
      double row_total = 0.0, col_total = 0.0;
      for (const auto& col : {std::string("x"), std::string("y"), std::string("z")}) {
        const double cell = table.count(row) && table[row].count(col) ? table[row][col] : 0.0;
        row_total += cell;
        if (table.count(col)) {
          const auto it = table[col].find(row);
          col_total += it != table[col].end() ? it->second : 0.0;
        }
        if (row == col) p_o += cell;
      }
      p_e += (row_total / double(n)) * (col_total / double(n));
    }
    p_o /= double(n);
    if (p_e >= 1.0) continue;
    const double expected = (p_o - p_e) / (1.0 - p_e);
    CHECK(cohens_kappa(a, b) == doctest::Approx(expected).epsilon(1e-12));
  }
}

// ---------------------------------------------------------------------------
// match_pairs
// ---------------------------------------------------------------------------

TEST_CASE("matching respects the tolerance boundary") {
  const std::vector<MatchItem> a = {{"x", {0.50}}};
  CHECK(match_pairs(a, {{"y", {0.503}}}, {0.005}).size() == 1);
  CHECK(match_pairs(a, {{"y", {0.506}}}, {0.005}).empty());
  CHECK(match_pairs(a, {{"y", {0.505}}}, {0.005}).size() == 1);  // inclusive
}

TEST_CASE("three-vs-one picks the single closest pair, matching brute force") {
  const std::vector<MatchItem> group_a = {
      {"a1", {0.50}}, {"a2", {0.502}}, {"a3", {0.498}}};
  const std::vector<MatchItem> group_b = {{"b1", {0.5015}}};
  const auto pairs = match_pairs(group_a, group_b, {0.005});
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].first == "a2");  // distance 0.0005

  std::vector<bool> used(group_b.size(), false);
  CHECK(oracle::best_matching(group_a, group_b, {0.005}, 0, used) == 1);
}

TEST_CASE("pairs are disjoint, valid, and never beat twice the optimum") {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> key(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MatchItem> a, b;
    for (int i = 0; i < 5; ++i) a.push_back({"a" + std::to_string(i), {key(rng)}});
    for (int i = 0; i < 5; ++i) b.push_back({"b" + std::to_string(i), {key(rng)}});
    const std::vector<double> tol = {0.15};
    const auto pairs = match_pairs(a, b, tol);
    std::set<std::string> seen;
    for (const auto& [x, y] : pairs) {
      CHECK(seen.insert(x).second);
      CHECK(seen.insert(y).second);
    }
    std::vector<bool> used(b.size(), false);
    const int optimal = oracle::best_matching(a, b, tol, 0, used);
    CHECK(static_cast<int>(pairs.size()) <= optimal);
    // Greedy maximal matching is at least half of optimal.
    CHECK(2 * static_cast<int>(pairs.size()) >= optimal);
  }
}

TEST_CASE("two-component keys with per-component tolerances") {
  const std::vector<MatchItem> a = {{"a", {0.30, 0.70}}};
  CHECK(match_pairs(a, {{"b", {0.31, 0.69}}}, {0.02, 0.02}).size() == 1);
  CHECK(match_pairs(a, {{"b", {0.31, 0.60}}}, {0.02, 0.02}).empty());
  CHECK_THROWS_AS(match_pairs(a, {{"b", {0.31}}}, {0.02, 0.02}), DataError);
}

// ---------------------------------------------------------------------------
// interval prf
// ---------------------------------------------------------------------------

TEST_CASE("identical interval sets are perfect") {
  const std::vector<Span> spans = {{0, 10}, {12, 15}};
  const auto result = interval_prf(spans, spans);
  CHECK(result.precision == 1.0);
  CHECK(result.recall == 1.0);
  CHECK(result.f1 == 1.0);
}

TEST_CASE("half-covered reference") {
  const auto result = interval_prf({{0, 10}}, {{0, 5}});
  CHECK(result.precision == 1.0);
  CHECK(result.recall == 0.5);
  CHECK(result.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("self-overlapping inputs are unioned first") {
  const auto result = interval_prf({{0, 4}, {2, 6}}, {{0, 3}});
  CHECK(result.precision == 1.0);
  CHECK(result.recall == 0.5);
}

TEST_CASE("empty sides warn and report zero") {
  const auto no_hyp = interval_prf({{0, 5}}, {});
  CHECK(no_hyp.precision == 0.0);
  CHECK(no_hyp.f1 == 0.0);
  REQUIRE(no_hyp.warnings.size() == 1);
  const auto no_ref = interval_prf({}, {{0, 5}});
  CHECK(no_ref.recall == 0.0);
  CHECK_THROWS_AS(interval_prf({{3, 3}}, {{0, 5}}), DataError);
}

TEST_CASE("precision/recall duality and sweep oracle on random sets") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    auto random_spans = [&](std::size_t max_n) {
      std::vector<Span> spans;
      for (std::size_t i = 0; i < 1 + rng() % max_n; ++i) {
        const double start = static_cast<double>(rng() % 5000) / 1000.0;
        const double len = static_cast<double>(1 + rng() % 2000) / 1000.0;
        spans.push_back({start, start + len});
      }
      return spans;
    };
    const auto r = random_spans(6);
    const auto h = random_spans(6);
    const auto forward = interval_prf(r, h);
    const auto backward = interval_prf(h, r);
    CHECK(forward.precision == backward.recall);
    CHECK(forward.recall == backward.precision);

    const auto swept = oracle::prf_sweep(r, h, 8000);
    CHECK(forward.precision == doctest::Approx(swept.precision).epsilon(1e-6));
    CHECK(forward.recall == doctest::Approx(swept.recall).epsilon(1e-6));
  }
}

// ---------------------------------------------------------------------------
// group summary / crosstab
// ---------------------------------------------------------------------------

namespace {
SurveyRecord rec(int enjoyment) {
  SurveyRecord r;
  r.conversation_id = "c";
  r.speaker = "s";
  r.enjoyment = enjoyment;
  return r;
}
}  // namespace

TEST_CASE("group summary means and max share") {
  const auto summary = group_summary({rec(9), rec(9), rec(5), rec(7)}, 9);
  CHECK(summary.mean_enjoyment == 7.5);
  CHECK(summary.pct_max == 0.5);
  CHECK(summary.n == 4);
  CHECK(group_summary({rec(9), rec(9)}, 9).pct_max == 1.0);
  const auto single = group_summary({rec(3)}, 9);
  CHECK(single.mean_enjoyment == 3.0);
  CHECK(single.pct_max == 0.0);
  CHECK_THROWS_AS(group_summary({}, 9), DataError);
}

TEST_CASE("crosstab outcome shares per stereotype") {
  using S = Stereotype;
  Diagnostics diag;
  const auto table = crosstab({{S::DominatingThroughout, "win"},
                               {S::DominatingThroughout, "loss"},
                               {S::AlternatingDominance, "loss"},
                               {S::BackAndForth, ""}},
                              2, &diag);
  CHECK(table.at(S::DominatingThroughout).outcomes.at("win").share == 0.5);
  CHECK(table.at(S::AlternatingDominance).outcomes.count("win") == 0);
  CHECK(table.at(S::AlternatingDominance).outcomes.at("loss").share == 1.0);
  CHECK(!table.at(S::DominatingThroughout).low_n);
  CHECK(table.at(S::AlternatingDominance).low_n);
  CHECK(table.count(S::BackAndForth) == 0);  // empty outcome excluded
  CHECK(diag.warnings.size() == 1);
}
