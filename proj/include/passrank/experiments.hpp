#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "passrank/learning.hpp"
#include "passrank/synth.hpp"

namespace passrank {

// A self-contained synthetic experiment: generate pools, train on the first
// (tasks - holdout_tasks) of them, evaluate on the clean-labeled remainder.
struct BenchmarkSpec {
  SynthConfig gen;
  int holdout_tasks = 0;
  EncoderConfig encoder;
  ScorerConfig scorer;
  TrainConfig train;
};

void validate(const BenchmarkSpec& spec);

// Fixed configuration for the noise-free training check: a linear scorer must
// reach train pass@1 = 1.0 on these pools within the configured epochs.
BenchmarkSpec separable_benchmark(uint64_t seed);

// Fixed configuration for the label-noise comparisons between the combined
// objective and the classification-only ablation.
BenchmarkSpec noisy_benchmark(uint64_t seed);

struct PairedRunResult {
  double measured_fp_rate = 0.0;
  std::map<int, double> full_pass_at;     // held-out, clean labels
  std::map<int, double> ablated_pass_at;  // same data, classification-only
};

// Trains both objectives on identical data/seeds and evaluates both on the
// clean held-out split.
PairedRunResult run_paired_benchmark(const BenchmarkSpec& spec);

struct FpSweepRow {
  double fraction = 0.0;  // injected noise fraction for this row
  double measured_fp_rate = 0.0;
  double full_pass1 = 0.0;
  double full_pass3 = 0.0;
  double ablated_pass1 = 0.0;
  double ablated_pass3 = 0.0;
};

// Reruns the paired benchmark with the generator's noise knob swept through
// `fractions`; everything else (seeds included) is held fixed, so the rows
// are directly comparable.
std::vector<FpSweepRow> run_fp_sweep(const BenchmarkSpec& spec, const std::vector<double>& fractions);

// kv-file form of a BenchmarkSpec (generator + trainer keys); see README.
BenchmarkSpec benchmark_spec_from_kv(const std::map<std::string, std::string>& kv);

}  // namespace passrank
