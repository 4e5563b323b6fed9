#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "passrank/metrics.hpp"
#include "passrank/rng.hpp"
#include "test_util.hpp"

using namespace passrank;
using testutil::make_pool;

namespace {

// Independent oracle: enumerate every k-subset of n candidates (the first c
// being positive) and count subsets containing at least one positive.
double enumerated_pass_at_k(int n, int c, int k) {
  int64_t total = 0, hit = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    ++total;
    if ((mask & ((1u << c) - 1u)) != 0) ++hit;
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

// Position of the m-th (1-based) candidate with the wanted label in the
// ranked order, or -1.
int ranked_position_of(const RankedPool& ranked, int wanted_label, int m) {
  int seen = 0;
  for (size_t pos = 0; pos < ranked.order.size(); ++pos) {
    const auto idx = static_cast<size_t>(ranked.order[pos]);
    if (ranked.pool.entries[idx].label.value == wanted_label && ++seen == m) {
      return static_cast<int>(pos);
    }
  }
  return -1;
}

}  // namespace

TEST_CASE("estimated_pass_at_k frozen examples") {
  CHECK(estimated_pass_at_k(200, 0, 10) == 0.0);
  CHECK(estimated_pass_at_k(5, 1, 1) == doctest::Approx(0.2).epsilon(1e-12));   // 1 of 5 draws
  CHECK(estimated_pass_at_k(4, 2, 2) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));  // 5 of 6 pairs
  CHECK(estimated_pass_at_k(10, 3, 8) == 1.0);  // n-c = 7 < k
}

TEST_CASE("estimated_pass_at_k matches exhaustive enumeration for n <= 12") {
  for (int n = 1; n <= 12; ++n) {
    for (int c = 0; c <= n; ++c) {
      for (int k = 1; k <= n; ++k) {
        CHECK(std::abs(estimated_pass_at_k(n, c, k) - enumerated_pass_at_k(n, c, k)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("estimated_pass_at_k rejects bad ranges") {
  CHECK_THROWS_AS(estimated_pass_at_k(5, 6, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimated_pass_at_k(5, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimated_pass_at_k(5, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimated_pass_at_k(5, 2, 6), std::invalid_argument);
}

TEST_CASE("estimated_pass_at_k is monotone in k and c") {
  for (int n : {7, 30, 200}) {
    for (int c = 0; c <= n; c += n / 7 + 1) {
      for (int k = 2; k <= n; k += n / 11 + 1) {
        CHECK(estimated_pass_at_k(n, c, k) >= estimated_pass_at_k(n, c, k - 1) - 1e-15);
        if (c >= 1) CHECK(estimated_pass_at_k(n, c, k) >= estimated_pass_at_k(n, c - 1, k) - 1e-15);
      }
    }
  }
}

TEST_CASE("pass_at_k_variance frozen examples") {
  CHECK(pass_at_k_variance(200, 0, 5) == 0.0);
  CHECK(pass_at_k_variance(4, 2, 2) == doctest::Approx(5.0 / 36.0).epsilon(1e-12));
  CHECK(pass_at_k_variance(5, 5, 1) == 0.0);
}

TEST_CASE("ranked_pass_at_k prefix semantics") {
  const LabeledPool pool = make_pool({0, 1, 0});
  const RankedPool ranked = rank_pool(pool, {0.9, 0.5, 0.1});  // order: neg, pos, neg
  CHECK(ranked_pass_at_k(ranked, 1) == 0);
  CHECK(ranked_pass_at_k(ranked, 2) == 1);
  CHECK(ranked_pass_at_k(ranked, 50) == 1);  // k > n clamps

  const RankedPool all_neg = rank_pool(make_pool({0, 0, 0, 0}), {4, 3, 2, 1});
  for (int k = 1; k <= 6; ++k) CHECK(ranked_pass_at_k(all_neg, k) == 0);

  CHECK_THROWS_AS(ranked_pass_at_k(ranked, 0), std::invalid_argument);
}

TEST_CASE("ranked_pass_at_k equals the first-positive-vs-kth-negative indicator") {
  Rng rng(7);
  for (int round = 0; round < 400; ++round) {
    const int n = 1 + static_cast<int>(rng.below(50));
    std::vector<int> labels(static_cast<size_t>(n));
    std::vector<double> scores(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      labels[static_cast<size_t>(i)] = static_cast<int>(rng.below(2));
      scores[static_cast<size_t>(i)] = static_cast<double>(rng.below(8)) / 4.0;  // with ties
    }
    const RankedPool ranked = rank_pool(make_pool(labels), scores);
    const int c = ranked.pool.c();
    const int negatives = n - c;

    for (int k = 1; k <= n; ++k) {
      const int got = ranked_pass_at_k(ranked, k);
      if (negatives >= k) {
        // indicator: does the best positive precede the k-th negative?
        const int pos_first = ranked_position_of(ranked, 1, 1);
        const int neg_kth = ranked_position_of(ranked, 0, k);
        const int indicator = (pos_first >= 0 && pos_first < neg_kth) ? 1 : 0;
        CHECK(got == indicator);
      } else {
        CHECK(got == (c >= 1 ? 1 : 0));
      }
    }
  }
}

TEST_CASE("average_pass_at_k") {
  const RankedPool pass_pool = rank_pool(make_pool({1, 0}, "a"), {0.9, 0.1});
  const RankedPool fail_pool = rank_pool(make_pool({0, 1}, "b"), {0.9, 0.1});
  const MetricReport report = average_pass_at_k({pass_pool, fail_pool}, {1, 2});
  CHECK(report.averages.at(1) == doctest::Approx(0.5));
  CHECK(report.averages.at(2) == doctest::Approx(1.0));
  CHECK(report.per_task.at("a").at(1) == 1);
  CHECK(report.per_task.at("b").at(1) == 0);

  const MetricReport solo = average_pass_at_k({pass_pool}, {1});
  CHECK(solo.averages.at(1) == 1.0);

  CHECK_THROWS_AS(average_pass_at_k({}, {1}), std::invalid_argument);
}

TEST_CASE("average over 165 tasks with 12 passing lands at the reported scale") {
  std::vector<RankedPool> pools;
  for (int t = 0; t < 165; ++t) {
    const bool pass = t < 12;
    pools.push_back(rank_pool(make_pool({pass ? 1 : 0, 0}, "t" + std::to_string(t)), {1.0, 0.5}));
  }
  const MetricReport report = average_pass_at_k(pools, {1});
  CHECK(report.averages.at(1) == doctest::Approx(12.0 / 165.0).epsilon(1e-12));
  CHECK(report.averages.at(1) == doctest::Approx(0.0727).epsilon(1e-2));
}

TEST_CASE("monte_carlo_pass_at_k agrees with the analytic estimator") {
  // 3-sigma bound from the analytic variance
  auto bound = [](int n, int c, int k, int64_t trials) {
    return 3.0 * std::sqrt(pass_at_k_variance(n, c, k) / static_cast<double>(trials)) + 1e-12;
  };
  const int64_t trials = 100000;

  const MonteCarloResult a = monte_carlo_pass_at_k(5, 1, 1, trials, 11);
  CHECK(std::abs(a.mean - 0.2) <= bound(5, 1, 1, trials));
  CHECK(std::abs(a.mean - 0.2) <= 0.004);

  const MonteCarloResult b = monte_carlo_pass_at_k(4, 2, 2, trials, 12);
  CHECK(std::abs(b.variance - 5.0 / 36.0) <= 0.005);

  const MonteCarloResult zero = monte_carlo_pass_at_k(50, 0, 5, 1000, 13);
  CHECK(zero.mean == 0.0);
  CHECK(zero.variance == 0.0);

  for (const auto& [n, c, k] : std::vector<std::tuple<int, int, int>>{
           {20, 2, 3}, {50, 5, 1}, {200, 20, 10}}) {
    const MonteCarloResult mc = monte_carlo_pass_at_k(n, c, k, trials, 99);
    CHECK(std::abs(mc.mean - estimated_pass_at_k(n, c, k)) <= bound(n, c, k, trials));
  }
}

TEST_CASE("monte_carlo is deterministic given the seed") {
  const MonteCarloResult a = monte_carlo_pass_at_k(30, 4, 5, 2000, 123);
  const MonteCarloResult b = monte_carlo_pass_at_k(30, 4, 5, 2000, 123);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
}

TEST_CASE("metric report serializes with string keys") {
  const RankedPool pool = rank_pool(make_pool({1}, "t9"), {1.0});
  const MetricReport report = average_pass_at_k({pool}, {1, 5});
  const nlohmann::json j = metric_report_to_json(report);
  CHECK(j["averages"]["1"] == 1.0);
  CHECK(j["per_task"]["t9"]["5"] == 1);
  CHECK(j["ks"] == nlohmann::json::array({1, 5}));
}
