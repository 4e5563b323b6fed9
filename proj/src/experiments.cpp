#include "passrank/experiments.hpp"

#include <stdexcept>

#include "passrank/rng.hpp"

namespace passrank {

void validate(const BenchmarkSpec& spec) {
  validate(spec.gen);
  validate(spec.encoder);
  validate(spec.scorer);
  validate(spec.train);
  if (spec.holdout_tasks < 0 || spec.holdout_tasks >= spec.gen.tasks) {
    throw std::invalid_argument("holdout_tasks must be in [0, tasks)");
  }
}

BenchmarkSpec separable_benchmark(uint64_t seed) {
  BenchmarkSpec spec;
  spec.gen.tasks = 20;
  spec.gen.candidates_per_task = 50;
  spec.gen.positive_rate = 0.2;
  spec.gen.signal_strength = 1.5;
  spec.gen.noise_rate = 0.0;
  spec.gen.seed = seed;
  spec.holdout_tasks = 0;

  spec.encoder.dim = 4096;
  spec.scorer.arch = ScorerConfig::Arch::linear;
  spec.scorer.init_seed = splitmix64(seed ^ 0x1717);

  spec.train.p = 0.9;
  spec.train.q = 0.5;
  spec.train.lambda = 0.3;
  spec.train.lr = 0.02;  // small linear model; the 5e-5 default suits much larger ones
  spec.train.epochs = 20;
  spec.train.warmup_epochs = 1;
  spec.train.shuffle_seed = splitmix64(seed ^ 0x5455);
  return spec;
}

// Tuned so that the label noise genuinely breaks the plain classification
// ranker while top-p/top-q selection sheds the flipped candidates: at
// noise_rate 0.25 roughly 58% of the labeled positives are false, so p keeps
// only the top-scored third of them.
BenchmarkSpec noisy_benchmark(uint64_t seed) {
  BenchmarkSpec spec;
  spec.gen.tasks = 45;
  spec.gen.candidates_per_task = 64;
  spec.gen.positive_rate = 0.15;
  spec.gen.signal_strength = 0.8;
  spec.gen.noise_rate = 0.25;
  spec.gen.seed = seed;
  spec.holdout_tasks = 15;

  spec.encoder.dim = 4096;
  spec.scorer.arch = ScorerConfig::Arch::linear;
  spec.scorer.init_seed = splitmix64(seed ^ 0x1717);

  spec.train.p = 0.3;
  spec.train.q = 0.5;
  spec.train.lambda = 0.2;
  spec.train.lr = 0.02;
  spec.train.epochs = 8;
  spec.train.warmup_epochs = 1;
  spec.train.shuffle_seed = splitmix64(seed ^ 0x5455);
  return spec;
}

PairedRunResult run_paired_benchmark(const BenchmarkSpec& spec) {
  validate(spec);

  const FeatureBenchmark bench = gen_feature_benchmark(spec.gen);
  const size_t train_tasks = bench.pools.size() - static_cast<size_t>(spec.holdout_tasks);

  std::vector<LabeledPool> train_split(bench.pools.begin(),
                                       bench.pools.begin() + static_cast<long>(train_tasks));
  std::vector<LabeledPool> eval_split;
  if (spec.holdout_tasks > 0) {
    for (size_t i = train_tasks; i < bench.pools.size(); ++i) {
      eval_split.push_back(bench.clean_pool(i));
    }
  } else {
    for (size_t i = 0; i < bench.pools.size(); ++i) eval_split.push_back(bench.clean_pool(i));
  }

  PairedRunResult result;
  {
    FeatureBenchmark train_only{train_split, {bench.true_labels.begin(),
                                              bench.true_labels.begin() + static_cast<long>(train_tasks)}};
    result.measured_fp_rate = train_only.measured_fp_rate();
  }

  TrainResult full = train(train_split, spec.scorer, spec.encoder, spec.train);
  result.full_pass_at = evaluate(full.params, eval_split, default_eval_ks()).averages;

  TrainConfig ablated_cfg = spec.train;
  ablated_cfg.objective = Objective::classification_only;
  ablated_cfg.lambda = 1.0;  // pure cross-entropy baseline
  TrainResult ablated = train(train_split, spec.scorer, spec.encoder, ablated_cfg);
  result.ablated_pass_at = evaluate(ablated.params, eval_split, default_eval_ks()).averages;

  return result;
}

std::vector<FpSweepRow> run_fp_sweep(const BenchmarkSpec& spec,
                                     const std::vector<double>& fractions) {
  if (fractions.empty()) throw std::invalid_argument("fp sweep needs at least one fraction");
  std::vector<FpSweepRow> rows;
  rows.reserve(fractions.size());
  for (double fraction : fractions) {
    BenchmarkSpec point = spec;
    point.gen.noise_rate = fraction;
    const PairedRunResult run = run_paired_benchmark(point);
    FpSweepRow row;
    row.fraction = fraction;
    row.measured_fp_rate = run.measured_fp_rate;
    row.full_pass1 = run.full_pass_at.at(1);
    row.full_pass3 = run.full_pass_at.at(3);
    row.ablated_pass1 = run.ablated_pass_at.at(1);
    row.ablated_pass3 = run.ablated_pass_at.at(3);
    rows.push_back(row);
  }
  return rows;
}

namespace {

double as_double(const std::string& key, const std::string& value) {
  try {
    return std::stod(value);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': invalid number '" + value + "'");
  }
}

int as_int(const std::string& key, const std::string& value) {
  try {
    return std::stoi(value);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': invalid integer '" + value + "'");
  }
}

uint64_t as_u64(const std::string& key, const std::string& value) {
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': invalid seed '" + value + "'");
  }
}

}  // namespace

BenchmarkSpec benchmark_spec_from_kv(const std::map<std::string, std::string>& kv) {
  BenchmarkSpec spec;  // generator/encoder/scorer/trainer defaults unless keyed

  std::map<std::string, std::string> train_kv;
  for (const auto& [key, value] : kv) {
    if (key == "tasks") spec.gen.tasks = as_int(key, value);
    else if (key == "candidates_per_task") spec.gen.candidates_per_task = as_int(key, value);
    else if (key == "positive_rate") spec.gen.positive_rate = as_double(key, value);
    else if (key == "signal_strength") spec.gen.signal_strength = as_double(key, value);
    else if (key == "noise_rate") spec.gen.noise_rate = as_double(key, value);
    else if (key == "seed") spec.gen.seed = as_u64(key, value);
    else if (key == "holdout_tasks") spec.holdout_tasks = as_int(key, value);
    else if (key == "encoder_dim") spec.encoder.dim = as_int(key, value);
    else if (key == "use_bigrams") spec.encoder.use_bigrams = value == "true" || value == "1";
    else if (key == "arch") {
      if (value == "linear") spec.scorer.arch = ScorerConfig::Arch::linear;
      else if (value == "mlp") spec.scorer.arch = ScorerConfig::Arch::mlp;
      else throw std::invalid_argument("config key 'arch': unknown value '" + value + "'");
    } else if (key == "hidden") spec.scorer.hidden = as_int(key, value);
    else if (key == "init_seed") spec.scorer.init_seed = as_u64(key, value);
    else train_kv[key] = value;  // remaining keys must be trainer fields
  }
  spec.train = train_config_from_kv(train_kv);
  validate(spec);
  return spec;
}

}  // namespace passrank
