#include "passrank/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include "nlohmann/json.hpp"
#include "passrank/rng.hpp"

namespace passrank {

namespace {

void check_nck(int n, int c, int k) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (c < 0 || c > n) throw std::invalid_argument("c must satisfy 0 <= c <= n");
  if (k < 1 || k > n) throw std::invalid_argument("k must satisfy 1 <= k <= n");
}

// B = C(n-c,k)/C(n,k) = prod_{i=n-c+1..n} (1 - k/i); 0 when n-c < k.
double miss_probability(int n, int c, int k) {
  if (n - c < k) return 0.0;
  double b = 1.0;
  for (int i = n - c + 1; i <= n; ++i) {
    b *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return b;
}

}  // namespace

double estimated_pass_at_k(int n, int c, int k) {
  check_nck(n, c, k);
  return 1.0 - miss_probability(n, c, k);
}

double pass_at_k_variance(int n, int c, int k) {
  check_nck(n, c, k);
  const double b = miss_probability(n, c, k);
  return (1.0 - b) * b;
}

int ranked_pass_at_k(const RankedPool& ranked, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const int n = static_cast<int>(ranked.order.size());
  const int prefix = std::min(k, n);
  for (int pos = 0; pos < prefix; ++pos) {
    const auto idx = static_cast<size_t>(ranked.order[static_cast<size_t>(pos)]);
    if (ranked.pool.entries[idx].label.value == 1) return 1;
  }
  return 0;
}

MetricReport average_pass_at_k(const std::vector<RankedPool>& pools, const std::vector<int>& ks) {
  if (pools.empty()) throw std::invalid_argument("average_pass_at_k: empty task list");
  MetricReport report;
  report.ks = ks;
  for (int k : ks) report.averages[k] = 0.0;
  for (const auto& pool : pools) {
    auto& row = report.per_task[pool.pool.task.task_id];
    for (int k : ks) {
      const int pass = ranked_pass_at_k(pool, k);
      row[k] = pass;
      report.averages[k] += pass;
    }
  }
  for (int k : ks) report.averages[k] /= static_cast<double>(pools.size());
  return report;
}

MonteCarloResult monte_carlo_pass_at_k(int n, int c, int k, int64_t trials, uint64_t seed) {
  check_nck(n, c, k);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  // Candidates are exchangeable, so indices < c stand for the positives and a
  // partial Fisher-Yates draw of the k-prefix simulates a full random order.
  Rng rng(seed);
  std::vector<int> idx(static_cast<size_t>(n));
  int64_t hits = 0;
  for (int64_t t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
    bool pass = false;
    for (int i = 0; i < k && !pass; ++i) {
      const int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
      std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
      pass = idx[static_cast<size_t>(i)] < c;
    }
    hits += pass ? 1 : 0;
  }

  const double mean = static_cast<double>(hits) / static_cast<double>(trials);
  return MonteCarloResult{mean, mean * (1.0 - mean)};
}

nlohmann::json metric_report_to_json(const MetricReport& report) {
  nlohmann::json j;
  j["ks"] = report.ks;
  nlohmann::json averages = nlohmann::json::object();
  for (const auto& [k, v] : report.averages) averages[std::to_string(k)] = v;
  j["averages"] = std::move(averages);
  nlohmann::json per_task = nlohmann::json::object();
  for (const auto& [task_id, row] : report.per_task) {
    nlohmann::json jrow = nlohmann::json::object();
    for (const auto& [k, v] : row) jrow[std::to_string(k)] = v;
    per_task[task_id] = std::move(jrow);
  }
  j["per_task"] = std::move(per_task);
  return j;
}

}  // namespace passrank
