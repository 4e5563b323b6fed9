#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "passrank/core.hpp"
#include "passrank/metrics.hpp"
#include "passrank/scorer.hpp"

namespace passrank {

// The printed surrogate (1-z)^2 also penalizes margins beyond 1; the clamped
// variant max(0, 1-z)^2 is the standard squared hinge. Both are exposed; the
// two-sided form is the default.
enum class SurrogateKind { hinge_square_two_sided, hinge_square_clamped };

// classification_only drops the pairwise term entirely; it reproduces the
// plain binary-classification ranker used as the ablation baseline.
enum class Objective { combined, classification_only };

struct TrainConfig {
  double p = 0.9;  // keep proportion of top-scored positives
  double q = 0.5;  // keep proportion of top-scored negatives
  double lambda = 0.3;
  double lr = 5e-5;
  double weight_decay = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int epochs = 10;
  int warmup_epochs = 1;  // epochs trained with p = q = 1 before selection kicks in
  std::optional<int> max_candidates_per_task;
  uint64_t shuffle_seed = 0;
  SurrogateKind surrogate = SurrogateKind::hinge_square_two_sided;
  Objective objective = Objective::combined;
};

// Throws std::invalid_argument naming the offending field.
void validate(const TrainConfig& cfg);

// Parses the flat key=value config format. Unknown keys are rejected.
TrainConfig train_config_from_kv(const std::map<std::string, std::string>& kv);

const char* to_string(SurrogateKind kind);
const char* to_string(Objective objective);

struct LossBreakdown {
  double l_passk = 0.0;
  double l_cls = 0.0;
  double total = 0.0;
  int64_t pairs_used = 0;
  int positives_selected = 0;
  int negatives_selected = 0;
};

// Index sets ordered by descending score (ties by candidate position).
struct SelectionResult {
  std::vector<int> positive_indices;
  std::vector<int> negative_indices;
};

// Top ceil(p*c) positive-labeled indices by score; at least one whenever a
// positive exists, empty when none does. p outside (0,1] is rejected.
std::vector<int> select_top_positives(const std::vector<double>& scores,
                                      const std::vector<int>& labels, double p);
std::vector<int> select_top_negatives(const std::vector<double>& scores,
                                      const std::vector<int>& labels, double q);
SelectionResult select_pairs(const std::vector<double>& scores, const std::vector<int>& labels,
                             double p, double q);

// l(z) and dl/dz for the configured surrogate.
std::pair<double, double> surrogate_loss(double z, SurrogateKind kind);

struct PasskLossResult {
  double loss = 0.0;
  std::vector<double> dloss_dscore;
  int64_t pairs_used = 0;
};

// Mean surrogate over all selected positive/negative pairs of s_i - s_j, with
// per-score gradients. Zero loss and gradients when either side is empty.
PasskLossResult pass_at_k_loss(const std::vector<double>& scores, const std::vector<int>& labels,
                               const SelectionResult& sel, SurrogateKind kind);

struct ClsLossResult {
  double loss = 0.0;
  std::vector<double> dloss_dscore;
};

// Mean sigmoid cross-entropy over all candidates, log-sum-exp stable.
ClsLossResult cls_loss(const std::vector<double>& scores, const std::vector<int>& labels);

struct TotalLossResult {
  LossBreakdown breakdown;
  std::vector<double> dloss_dscore;
  SelectionResult selection;
};

// Runs selection on the current scores and combines the two terms:
// total = l_passk + lambda * l_cls.
TotalLossResult total_loss(const std::vector<double>& scores, const std::vector<int>& labels,
                           const TrainConfig& cfg);

// ------------------------------ optimizer ------------------------------

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
};

// One decoupled-weight-decay adaptive-moment step with bias correction;
// t is the 1-based step index. Non-finite gradients reject the step.
void adamw_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
                const TrainConfig& cfg, int64_t t);

// ------------------------------ training ------------------------------

struct EpochRecord {
  int epoch = 0;
  LossBreakdown mean_loss;              // averaged over task steps
  std::map<int, double> train_pass_at;  // train-split ranked pass@k
};

struct TrainResult {
  ScorerParams params;
  std::vector<EpochRecord> history;
};

inline const std::vector<int>& default_eval_ks() {
  static const std::vector<int> ks = {1, 2, 3, 5, 10};
  return ks;
}

// One optimization step per task per epoch; tasks shuffled by seed each epoch;
// selection proportions overridden to p=q=1 during warmup epochs. Fully
// deterministic given the configs.
TrainResult train(const std::vector<LabeledPool>& dataset, const ScorerConfig& scfg,
                  const EncoderConfig& ecfg, const TrainConfig& tcfg);

// Scores and ranks every pool, then averages ranked pass@k.
MetricReport evaluate(const ScorerParams& params, const std::vector<LabeledPool>& dataset,
                      const std::vector<int>& ks);

// The ranked pools themselves, for callers that need orderings, not averages.
std::vector<RankedPool> rank_dataset(const ScorerParams& params,
                                     const std::vector<LabeledPool>& dataset);

std::string history_to_jsonl(const std::vector<EpochRecord>& history);

}  // namespace passrank
