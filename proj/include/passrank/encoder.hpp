#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "passrank/core.hpp"

namespace passrank {

// Deterministic hashed-feature encoder for (task, candidate) pairs. This is
// the toolkit's stand-in for a pretrained neural code encoder: every feature
// is a fixed function of the input bytes, so scores and gradients are exactly
// reproducible across runs and platforms.
//
// Layout of the feature vector (length = dim):
//   [0, H)         task-description n-grams, H = (dim - kStatsBlockSize) / 2
//   [H, 2H)        candidate-source n-grams
//   [2H, dim)      bounded hand features over the source
// Each hashed block is L2-normalized when nonzero.
struct EncoderConfig {
  int dim = 65536;          // total vector length; power of two, >= 16
  bool use_bigrams = true;  // add adjacent-token bigrams alongside unigrams
};

inline constexpr int kStatsBlockSize = 8;

void validate(const EncoderConfig& cfg);  // throws std::invalid_argument

inline int hashed_block_size(const EncoderConfig& cfg) { return (cfg.dim - kStatsBlockSize) / 2; }
inline int task_block_start(const EncoderConfig&) { return 0; }
inline int code_block_start(const EncoderConfig& cfg) { return hashed_block_size(cfg); }
inline int stats_block_start(const EncoderConfig& cfg) { return 2 * hashed_block_size(cfg); }

struct FeatureVector {
  std::vector<double> values;
};

// Splits on anything outside [A-Za-z0-9_] and lowercases. ASCII-only on
// purpose: byte values >= 0x80 are separators, independent of locale.
std::vector<std::string> tokenize(std::string_view text);

uint64_t fnv1a64(std::string_view bytes);

// Raw n-gram counts plus stats, before block normalization. Exposed so the
// bounded-coordinate-difference property of the hashing is testable.
FeatureVector featurize_raw(const ProgrammingTask& task, const Candidate& candidate,
                            const EncoderConfig& cfg);

FeatureVector featurize(const ProgrammingTask& task, const Candidate& candidate,
                        const EncoderConfig& cfg);

}  // namespace passrank
