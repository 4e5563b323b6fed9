#include "passrank/learning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nlohmann/json.hpp"
#include "passrank/rng.hpp"

namespace passrank {

void validate(const TrainConfig& cfg) {
  if (!(cfg.p > 0.0 && cfg.p <= 1.0)) throw std::invalid_argument("p must be in (0,1]");
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) throw std::invalid_argument("q must be in (0,1]");
  if (!(cfg.lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
  if (!(cfg.lr > 0.0)) throw std::invalid_argument("lr must be > 0");
  if (!(cfg.weight_decay >= 0.0)) throw std::invalid_argument("weight_decay must be >= 0");
  if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0)) throw std::invalid_argument("beta1 must be in [0,1)");
  if (!(cfg.beta2 >= 0.0 && cfg.beta2 < 1.0)) throw std::invalid_argument("beta2 must be in [0,1)");
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  if (cfg.epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (cfg.warmup_epochs < 0) throw std::invalid_argument("warmup_epochs must be >= 0");
  if (cfg.max_candidates_per_task && *cfg.max_candidates_per_task < 2) {
    throw std::invalid_argument("max_candidates_per_task must be >= 2");
  }
}

const char* to_string(SurrogateKind kind) {
  return kind == SurrogateKind::hinge_square_two_sided ? "hinge_square_two_sided"
                                                       : "hinge_square_clamped";
}

const char* to_string(Objective objective) {
  return objective == Objective::combined ? "combined" : "classification_only";
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': invalid number '" + value + "'");
  }
}

int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const int64_t v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': invalid integer '" + value + "'");
  }
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': invalid seed '" + value + "'");
  }
}

}  // namespace

TrainConfig train_config_from_kv(const std::map<std::string, std::string>& kv) {
  TrainConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "p") cfg.p = parse_double(key, value);
    else if (key == "q") cfg.q = parse_double(key, value);
    else if (key == "lambda") cfg.lambda = parse_double(key, value);
    else if (key == "lr") cfg.lr = parse_double(key, value);
    else if (key == "weight_decay") cfg.weight_decay = parse_double(key, value);
    else if (key == "beta1") cfg.beta1 = parse_double(key, value);
    else if (key == "beta2") cfg.beta2 = parse_double(key, value);
    else if (key == "epsilon") cfg.epsilon = parse_double(key, value);
    else if (key == "epochs") cfg.epochs = static_cast<int>(parse_int(key, value));
    else if (key == "warmup_epochs") cfg.warmup_epochs = static_cast<int>(parse_int(key, value));
    else if (key == "max_candidates_per_task") cfg.max_candidates_per_task = static_cast<int>(parse_int(key, value));
    else if (key == "shuffle_seed") cfg.shuffle_seed = parse_u64(key, value);
    else if (key == "surrogate") {
      if (value == "hinge_square_two_sided") cfg.surrogate = SurrogateKind::hinge_square_two_sided;
      else if (value == "hinge_square_clamped") cfg.surrogate = SurrogateKind::hinge_square_clamped;
      else throw std::invalid_argument("config key 'surrogate': unknown kind '" + value + "'");
    } else if (key == "objective") {
      if (value == "combined") cfg.objective = Objective::combined;
      else if (value == "classification_only") cfg.objective = Objective::classification_only;
      else throw std::invalid_argument("config key 'objective': unknown value '" + value + "'");
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

namespace {

// ceil(prop * count) with a nudge against FP artifacts like 0.9*10 -> 9.0000..2.
int keep_count(double prop, int count) {
  if (count <= 0) return 0;
  const int m = static_cast<int>(std::ceil(prop * count - 1e-9));
  return std::clamp(m, 1, count);
}

std::vector<int> select_side(const std::vector<double>& scores, const std::vector<int>& labels,
                             double prop, int wanted_label, const char* name) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels must have equal length");
  }
  if (!(prop > 0.0 && prop <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must be in (0,1]");
  }
  std::vector<int> side;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == wanted_label) side.push_back(static_cast<int>(i));
  }
  // descending score; stable so ties keep candidate order
  std::stable_sort(side.begin(), side.end(), [&](int a, int b) {
    return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
  });
  side.resize(static_cast<size_t>(keep_count(prop, static_cast<int>(side.size()))));
  return side;
}

}  // namespace

std::vector<int> select_top_positives(const std::vector<double>& scores,
                                      const std::vector<int>& labels, double p) {
  return select_side(scores, labels, p, 1, "p");
}

std::vector<int> select_top_negatives(const std::vector<double>& scores,
                                      const std::vector<int>& labels, double q) {
  return select_side(scores, labels, q, 0, "q");
}

SelectionResult select_pairs(const std::vector<double>& scores, const std::vector<int>& labels,
                             double p, double q) {
  return SelectionResult{select_top_positives(scores, labels, p),
                         select_top_negatives(scores, labels, q)};
}

std::pair<double, double> surrogate_loss(double z, SurrogateKind kind) {
  if (kind == SurrogateKind::hinge_square_two_sided) {
    const double margin = 1.0 - z;
    return {margin * margin, -2.0 * margin};
  }
  const double margin = std::max(0.0, 1.0 - z);
  return {margin * margin, -2.0 * margin};
}

PasskLossResult pass_at_k_loss(const std::vector<double>& scores, const std::vector<int>& labels,
                               const SelectionResult& sel, SurrogateKind kind) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels must have equal length");
  }
  PasskLossResult result;
  result.dloss_dscore.assign(scores.size(), 0.0);
  result.pairs_used = static_cast<int64_t>(sel.positive_indices.size()) *
                      static_cast<int64_t>(sel.negative_indices.size());
  if (result.pairs_used == 0) return result;

  const double inv_pairs = 1.0 / static_cast<double>(result.pairs_used);
  double sum = 0.0;
  for (int pi : sel.positive_indices) {
    for (int nj : sel.negative_indices) {
      const double z = scores[static_cast<size_t>(pi)] - scores[static_cast<size_t>(nj)];
      const auto [value, dvalue] = surrogate_loss(z, kind);
      sum += value;
      result.dloss_dscore[static_cast<size_t>(pi)] += dvalue * inv_pairs;
      result.dloss_dscore[static_cast<size_t>(nj)] -= dvalue * inv_pairs;
    }
  }
  result.loss = sum * inv_pairs;
  return result;
}

ClsLossResult cls_loss(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels must have equal length");
  }
  ClsLossResult result;
  result.dloss_dscore.assign(scores.size(), 0.0);
  if (scores.empty()) return result;

  const double inv_n = 1.0 / static_cast<double>(scores.size());
  double sum = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const double s = scores[i];
    const double y = static_cast<double>(labels[i]);
    // log(1 + e^s) - s*y, computed as max(s,0) - s*y + log1p(e^{-|s|})
    sum += std::max(s, 0.0) - s * y + std::log1p(std::exp(-std::abs(s)));
    const double sigmoid = 1.0 / (1.0 + std::exp(-s));
    result.dloss_dscore[i] = (sigmoid - y) * inv_n;
  }
  result.loss = sum * inv_n;
  return result;
}

TotalLossResult total_loss(const std::vector<double>& scores, const std::vector<int>& labels,
                           const TrainConfig& cfg) {
  TotalLossResult result;
  result.dloss_dscore.assign(scores.size(), 0.0);

  if (cfg.objective == Objective::combined) {
    result.selection = select_pairs(scores, labels, cfg.p, cfg.q);
    PasskLossResult passk = pass_at_k_loss(scores, labels, result.selection, cfg.surrogate);
    result.breakdown.l_passk = passk.loss;
    result.breakdown.pairs_used = passk.pairs_used;
    result.breakdown.positives_selected = static_cast<int>(result.selection.positive_indices.size());
    result.breakdown.negatives_selected = static_cast<int>(result.selection.negative_indices.size());
    result.dloss_dscore = std::move(passk.dloss_dscore);
  }

  const ClsLossResult cls = cls_loss(scores, labels);
  result.breakdown.l_cls = cls.loss;
  result.breakdown.total = result.breakdown.l_passk + cfg.lambda * cls.loss;
  for (size_t i = 0; i < scores.size(); ++i) {
    result.dloss_dscore[i] += cfg.lambda * cls.dloss_dscore[i];
  }
  return result;
}

void adamw_step(std::vector<double>& params, const std::vector<double>& grads, AdamState& state,
                const TrainConfig& cfg, int64_t t) {
  if (grads.size() != params.size()) {
    throw std::invalid_argument("gradient length does not match parameter count");
  }
  if (t < 1) throw std::invalid_argument("step index t must be >= 1");
  for (size_t i = 0; i < grads.size(); ++i) {
    if (!std::isfinite(grads[i])) {
      throw std::invalid_argument("non-finite gradient at parameter index " + std::to_string(i));
    }
  }
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size()) {
    throw std::invalid_argument("optimizer state does not match parameter count");
  }

  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
  for (size_t i = 0; i < params.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= cfg.lr * (m_hat / (std::sqrt(v_hat) + cfg.epsilon) + cfg.weight_decay * params[i]);
  }
}

namespace {

// stream tags keeping the epoch-shuffle and subsample draws independent
constexpr uint64_t kEpochShuffleTag = 0x45504f4348ULL;
constexpr uint64_t kSubsampleTag = 0x5355425341ULL;

}  // namespace

std::vector<RankedPool> rank_dataset(const ScorerParams& params,
                                     const std::vector<LabeledPool>& dataset) {
  std::vector<RankedPool> ranked;
  ranked.reserve(dataset.size());
  for (const auto& pool : dataset) {
    std::vector<double> scores(pool.entries.size());
    for (size_t i = 0; i < pool.entries.size(); ++i) {
      scores[i] = score(params, featurize(pool.task, pool.entries[i].candidate, params.encoder_cfg));
    }
    ranked.push_back(rank_pool(pool, std::move(scores)));
  }
  return ranked;
}

MetricReport evaluate(const ScorerParams& params, const std::vector<LabeledPool>& dataset,
                      const std::vector<int>& ks) {
  return average_pass_at_k(rank_dataset(params, dataset), ks);
}

TrainResult train(const std::vector<LabeledPool>& dataset, const ScorerConfig& scfg,
                  const EncoderConfig& ecfg, const TrainConfig& tcfg) {
  if (dataset.empty()) throw std::invalid_argument("training dataset has zero pools");
  validate(tcfg);
  validate(scfg);
  validate(ecfg);

  TrainResult result;
  result.params = init_params(scfg, ecfg);

  AdamState state;
  std::vector<double> grad(result.params.values.size());
  int64_t step = 0;

  std::vector<int> task_order(dataset.size());

  for (int epoch = 0; epoch < tcfg.epochs; ++epoch) {
    std::iota(task_order.begin(), task_order.end(), 0);
    Rng shuffle_rng(mix_seed({tcfg.shuffle_seed, kEpochShuffleTag, static_cast<uint64_t>(epoch)}));
    shuffle_rng.shuffle(task_order);

    TrainConfig step_cfg = tcfg;
    if (epoch < tcfg.warmup_epochs) {
      step_cfg.p = 1.0;
      step_cfg.q = 1.0;
    }

    LossBreakdown sums;
    for (int task_pos : task_order) {
      const LabeledPool& pool = dataset[static_cast<size_t>(task_pos)];

      // batch = this task's pool, optionally capped by a seeded subsample
      std::vector<int> batch(pool.entries.size());
      std::iota(batch.begin(), batch.end(), 0);
      if (tcfg.max_candidates_per_task &&
          static_cast<int>(batch.size()) > *tcfg.max_candidates_per_task) {
        Rng sample_rng(mix_seed({tcfg.shuffle_seed, kSubsampleTag, static_cast<uint64_t>(epoch),
                                 static_cast<uint64_t>(task_pos)}));
        batch = sample_rng.sample_indices(static_cast<int>(batch.size()),
                                          *tcfg.max_candidates_per_task);
      }
      if (batch.empty()) continue;

      std::vector<FeatureVector> feats;
      feats.reserve(batch.size());
      std::vector<double> scores(batch.size());
      std::vector<int> labels(batch.size());
      for (size_t i = 0; i < batch.size(); ++i) {
        const auto& entry = pool.entries[static_cast<size_t>(batch[i])];
        feats.push_back(featurize(pool.task, entry.candidate, ecfg));
        scores[i] = score(result.params, feats[i]);
        labels[i] = entry.label.value;
      }

      const TotalLossResult loss = total_loss(scores, labels, step_cfg);

      std::fill(grad.begin(), grad.end(), 0.0);
      for (size_t i = 0; i < batch.size(); ++i) {
        if (loss.dloss_dscore[i] != 0.0) {
          accumulate_score_grad(result.params, feats[i], loss.dloss_dscore[i], grad);
        }
      }
      ++step;
      adamw_step(result.params.values, grad, state, tcfg, step);

      sums.l_passk += loss.breakdown.l_passk;
      sums.l_cls += loss.breakdown.l_cls;
      sums.total += loss.breakdown.total;
      sums.pairs_used += loss.breakdown.pairs_used;
      sums.positives_selected += loss.breakdown.positives_selected;
      sums.negatives_selected += loss.breakdown.negatives_selected;
    }

    EpochRecord record;
    record.epoch = epoch;
    const double inv_tasks = 1.0 / static_cast<double>(dataset.size());
    record.mean_loss.l_passk = sums.l_passk * inv_tasks;
    record.mean_loss.l_cls = sums.l_cls * inv_tasks;
    record.mean_loss.total = sums.total * inv_tasks;
    record.mean_loss.pairs_used = sums.pairs_used;
    record.mean_loss.positives_selected = sums.positives_selected;
    record.mean_loss.negatives_selected = sums.negatives_selected;

    const MetricReport train_report = evaluate(result.params, dataset, default_eval_ks());
    record.train_pass_at = train_report.averages;
    result.history.push_back(std::move(record));
  }

  return result;
}

std::string history_to_jsonl(const std::vector<EpochRecord>& history) {
  std::string out;
  for (const auto& rec : history) {
    nlohmann::json j;
    j["epoch"] = rec.epoch;
    j["l_passk"] = rec.mean_loss.l_passk;
    j["l_cls"] = rec.mean_loss.l_cls;
    j["total"] = rec.mean_loss.total;
    j["pairs_used"] = rec.mean_loss.pairs_used;
    j["positives_selected"] = rec.mean_loss.positives_selected;
    j["negatives_selected"] = rec.mean_loss.negatives_selected;
    nlohmann::json pass = nlohmann::json::object();
    for (const auto& [k, v] : rec.train_pass_at) pass[std::to_string(k)] = v;
    j["train_pass_at"] = std::move(pass);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace passrank
