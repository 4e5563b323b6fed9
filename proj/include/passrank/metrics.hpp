#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlohmann/json_fwd.hpp"
#include "passrank/core.hpp"

namespace passrank {

// Per-task 0/1 outcomes and their averages for a list of cutoffs k.
struct MetricReport {
  std::vector<int> ks;
  std::map<int, double> averages;                       // k -> mean over tasks
  std::map<std::string, std::map<int, int>> per_task;   // task_id -> k -> {0,1}
};

nlohmann::json metric_report_to_json(const MetricReport& report);

// Expected pass@k of a uniformly ordered pool of n candidates with c correct:
// 1 - C(n-c,k)/C(n,k), evaluated as 1 - prod_{i=n-c+1..n} (1 - k/i) so n=200
// never touches large binomials. Exactly 1 when n-c < k, exactly 0 when c=0.
// Throws std::invalid_argument outside 0 <= c <= n, 1 <= k <= n.
double estimated_pass_at_k(int n, int c, int k);

// Bernoulli variance (1-B)*B with B = C(n-c,k)/C(n,k).
double pass_at_k_variance(int n, int c, int k);

// 1 iff a positive appears within the first min(k, n) ranked candidates.
// k < 1 is rejected; k > n clamps to n so fixed k-sweeps work on small pools.
int ranked_pass_at_k(const RankedPool& ranked, int k);

// Arithmetic mean of ranked_pass_at_k over tasks, per k. Rejects an empty
// task list.
MetricReport average_pass_at_k(const std::vector<RankedPool>& pools, const std::vector<int>& ks);

struct MonteCarloResult {
  double mean = 0.0;
  double variance = 0.0;
};

// Simulates `trials` uniformly random orderings (only the k-prefix is ever
// inspected) and returns the empirical mean and population variance of the
// 0/1 outcomes. Deterministic given the seed; this is the sampling oracle the
// analytic forms are checked against.
MonteCarloResult monte_carlo_pass_at_k(int n, int c, int k, int64_t trials, uint64_t seed);

}  // namespace passrank
