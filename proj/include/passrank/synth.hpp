#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "passrank/core.hpp"
#include "passrank/scorer.hpp"

namespace passrank {

// Synthetic benchmark generation. Everything here is a deterministic function
// of the config seed, which is what makes the training-dynamics and
// label-noise experiments reproducible end to end.
struct SynthConfig {
  int tasks = 8;
  int candidates_per_task = 200;
  double positive_rate = 0.2;
  double signal_strength = 1.0;  // separation of the planted token mixtures
  double noise_rate = 0.0;       // fraction of true negatives flipped to positive labels
  uint64_t seed = 0;
};

void validate(const SynthConfig& cfg);

// Pools with observed (possibly noise-flipped) labels; the pre-flip truth is
// kept alongside so false-positive rates and clean evaluation stay available.
struct FeatureBenchmark {
  std::vector<LabeledPool> pools;
  std::vector<std::vector<int>> true_labels;  // [pool][entry]

  // FP / labeled positives, pooled over all tasks.
  double measured_fp_rate() const;

  // The pool with labels replaced by ground truth (for clean evaluation).
  LabeledPool clean_pool(size_t pool_index) const;
};

// Feature-planted pools. Correct candidates draw most of their tokens from a
// global "quality" vocabulary; hard negatives mix decoy tokens with a thinner
// slice of quality ones; easy negatives are filler. Separation grows with
// signal_strength: at signal_strength >= 1 (the documented threshold) the
// planted witness below ranks every true positive above every negative, so
// with noise_rate = 0 a perfect linear scorer exists by construction.
FeatureBenchmark gen_feature_benchmark(const SynthConfig& cfg);

// Linear parameters: +1 on each quality-token coordinate of the code block,
// -1 on each decoy coordinate, zero elsewhere.
ScorerParams planted_witness(const EncoderConfig& ecfg);

// ---------------------------------------------------------------------------
// Executable micro-task corpus for end-to-end judge coverage.
// ---------------------------------------------------------------------------

struct ManifestEntry {
  std::string candidate_id;
  std::string task_id;
  int label = 0;
  VerdictKind intended_verdict = VerdictKind::WrongAnswer;
};

struct ExecutableCorpus {
  std::vector<ProgrammingTask> tasks;
  std::vector<Candidate> candidates;
  std::vector<ManifestEntry> manifest;  // aligned with candidates
};

// >= 10 string/arithmetic micro-tasks in Python 3, each with >= 8 seeded
// tests plus one long-input edge test, and a candidate set holding a
// reference solution, three wrong-answer variants (off-by-one, misread-spec
// decoy, and a near-miss that fails only the edge test, so test dropout can
// turn it into a false positive), an infinite-loop variant, and a crashing
// variant. The manifest pins each candidate's intended verdict.
ExecutableCorpus gen_executable_corpus(uint64_t seed);

}  // namespace passrank
