#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "passrank/encoder.hpp"

namespace passrank {

// The ranker f mapping a feature vector to a raw correctness logit. Scores
// are deliberately unsquashed: the pairwise loss consumes logits directly and
// the classification loss applies its own sigmoid.
struct ScorerConfig {
  enum class Arch { linear, mlp };
  Arch arch = Arch::linear;
  int hidden = 64;            // mlp only
  uint64_t init_seed = 0;
  // activation is tanh, fixed: smooth everywhere so gradient checks are clean
};

void validate(const ScorerConfig& cfg);

const char* to_string(ScorerConfig::Arch arch);

// Flat parameter vector with derived layout.
//   linear: [w(dim), b]
//   mlp:    [W1(hidden x dim, row-major), b1(hidden), w2(hidden), b2]
struct ScorerParams {
  ScorerConfig scorer_cfg;
  EncoderConfig encoder_cfg;
  std::vector<double> values;
};

int64_t param_count(const ScorerConfig& scfg, const EncoderConfig& ecfg);
std::vector<std::vector<int64_t>> param_shapes(const ScorerConfig& scfg, const EncoderConfig& ecfg);

// Weights uniform in +-1/sqrt(fan_in), biases zero; deterministic in init_seed.
ScorerParams init_params(const ScorerConfig& scfg, const EncoderConfig& ecfg);

double score(const ScorerParams& params, const FeatureVector& x);

// (s, ds/dtheta) with the gradient exact and dense.
std::pair<double, std::vector<double>> score_with_grad(const ScorerParams& params,
                                                       const FeatureVector& x);

// grad += coeff * ds/dtheta, returning s. The training loop uses this to fold
// per-candidate chain-rule terms into one buffer without materializing each
// candidate's full gradient.
double accumulate_score_grad(const ScorerParams& params, const FeatureVector& x, double coeff,
                             std::vector<double>& grad);

// ---------------------------------------------------------------------------
// Checkpoints: "PRNK" | u32 version | u32 header length | JSON header |
// little-endian f64 parameter array. The header carries both configs and the
// shapes so a checkpoint is self-describing.
// ---------------------------------------------------------------------------

inline constexpr uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { io, bad_magic, bad_header, version_mismatch, corrupt_length, non_finite };

  CheckpointError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

void save_checkpoint(const ScorerParams& params, const std::string& path);
ScorerParams load_checkpoint(const std::string& path);

// In-memory forms, used by save/load and by byte-level tests.
std::string checkpoint_to_bytes(const ScorerParams& params);
ScorerParams checkpoint_from_bytes(const std::string& bytes);

}  // namespace passrank
