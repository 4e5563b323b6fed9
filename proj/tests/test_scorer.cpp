#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "passrank/jsonl.hpp"
#include "passrank/rng.hpp"
#include "passrank/scorer.hpp"

using namespace passrank;

namespace {

FeatureVector random_features(int dim, Rng& rng) {
  FeatureVector x;
  x.values.resize(static_cast<size_t>(dim));
  for (auto& v : x.values) v = rng.uniform(-1.0, 1.0);
  return x;
}

ScorerParams random_params(ScorerConfig scfg, const EncoderConfig& ecfg, Rng& rng) {
  ScorerParams p = init_params(scfg, ecfg);
  for (auto& v : p.values) v = rng.uniform(-0.5, 0.5);
  return p;
}

}  // namespace

TEST_CASE("parameter counts match the declared shapes") {
  EncoderConfig big{65536, true};
  CHECK(param_count(ScorerConfig{ScorerConfig::Arch::linear, 64, 0}, big) == 65537);
  CHECK(param_count(ScorerConfig{ScorerConfig::Arch::mlp, 64, 0}, big) ==
        65536LL * 64 + 64 + 64 + 1);
}

TEST_CASE("init_params is deterministic and bounded") {
  const EncoderConfig ecfg{256, true};
  const ScorerConfig scfg{ScorerConfig::Arch::mlp, 8, 42};
  const ScorerParams a = init_params(scfg, ecfg);
  const ScorerParams b = init_params(scfg, ecfg);
  CHECK(a.values == b.values);

  const double bound = 1.0 / std::sqrt(256.0);
  for (int i = 0; i < 8 * 256; ++i) CHECK(std::abs(a.values[static_cast<size_t>(i)]) <= bound);
  // biases zero
  for (int i = 8 * 256; i < 8 * 256 + 8; ++i) CHECK(a.values[static_cast<size_t>(i)] == 0.0);

  const ScorerParams other = init_params(ScorerConfig{ScorerConfig::Arch::mlp, 8, 43}, ecfg);
  CHECK(a.values != other.values);
}

TEST_CASE("zero params score zero; normalized-weight dot recovers the norm") {
  const EncoderConfig ecfg{64, true};
  Rng rng(3);
  FeatureVector x = random_features(64, rng);

  ScorerParams zero = init_params(ScorerConfig{ScorerConfig::Arch::linear, 1, 0}, ecfg);
  std::fill(zero.values.begin(), zero.values.end(), 0.0);
  CHECK(score(zero, x) == 0.0);

  double norm = 0;
  for (double v : x.values) norm += v * v;
  norm = std::sqrt(norm);
  ScorerParams unit = zero;
  for (int i = 0; i < 64; ++i) unit.values[static_cast<size_t>(i)] = x.values[static_cast<size_t>(i)] / norm;
  CHECK(score(unit, x) == doctest::Approx(norm).epsilon(1e-12));
}

TEST_CASE("mlp with zero output weights is the constant b2") {
  const EncoderConfig ecfg{64, true};
  ScorerParams p = init_params(ScorerConfig{ScorerConfig::Arch::mlp, 4, 7}, ecfg);
  const int64_t w2_off = 4 * 64 + 4;
  for (int i = 0; i < 4; ++i) p.values[static_cast<size_t>(w2_off + i)] = 0.0;
  p.values.back() = 2.5;  // b2
  Rng rng(9);
  for (int round = 0; round < 5; ++round) {
    CHECK(score(p, random_features(64, rng)) == doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("linear gradient is (x, 1)") {
  const EncoderConfig ecfg{32, true};
  Rng rng(4);
  const ScorerParams p = random_params(ScorerConfig{ScorerConfig::Arch::linear, 1, 0}, ecfg, rng);
  const FeatureVector x = random_features(32, rng);
  const auto [s, g] = score_with_grad(p, x);
  CHECK(s == doctest::Approx(score(p, x)).epsilon(1e-12));
  for (int i = 0; i < 32; ++i) CHECK(g[static_cast<size_t>(i)] == x.values[static_cast<size_t>(i)]);
  CHECK(g[32] == 1.0);

  FeatureVector zero;
  zero.values.assign(32, 0.0);
  const auto [s0, g0] = score_with_grad(p, zero);
  for (int i = 0; i < 32; ++i) CHECK(g0[static_cast<size_t>(i)] == 0.0);
  CHECK(g0[32] == 1.0);
  CHECK(s0 == doctest::Approx(p.values[32]));
}

TEST_CASE("score gradients match central finite differences") {
  const EncoderConfig ecfg{64, true};
  Rng rng(11);
  const double h = 1e-5;

  for (auto arch : {ScorerConfig::Arch::linear, ScorerConfig::Arch::mlp}) {
    for (int round = 0; round < 50; ++round) {
      ScorerParams p = random_params(ScorerConfig{arch, 6, 0}, ecfg, rng);
      const FeatureVector x = random_features(64, rng);
      const auto [s, g] = score_with_grad(p, x);
      CHECK(s == doctest::Approx(score(p, x)).epsilon(1e-12));

      // spot-check 20 coordinates
      for (int probe = 0; probe < 20; ++probe) {
        const auto idx = static_cast<size_t>(rng.below(p.values.size()));
        ScorerParams plus = p, minus = p;
        plus.values[idx] += h;
        minus.values[idx] -= h;
        const double fd = (score(plus, x) - score(minus, x)) / (2 * h);
        const double scale = std::max({std::abs(fd), std::abs(g[idx]), 1e-8});
        CHECK(std::abs(fd - g[idx]) / scale < 1e-6);
      }
    }
  }
}

TEST_CASE("accumulate_score_grad folds coefficients") {
  const EncoderConfig ecfg{32, true};
  Rng rng(21);
  const ScorerParams p = random_params(ScorerConfig{ScorerConfig::Arch::mlp, 4, 0}, ecfg, rng);
  const FeatureVector x1 = random_features(32, rng);
  const FeatureVector x2 = random_features(32, rng);

  std::vector<double> acc(p.values.size(), 0.0);
  accumulate_score_grad(p, x1, 0.25, acc);
  accumulate_score_grad(p, x2, -2.0, acc);

  const auto [s1, g1] = score_with_grad(p, x1);
  const auto [s2, g2] = score_with_grad(p, x2);
  for (size_t i = 0; i < acc.size(); ++i) {
    CHECK(acc[i] == doctest::Approx(0.25 * g1[i] - 2.0 * g2[i]).epsilon(1e-12));
  }
}

TEST_CASE("checkpoint round-trip is bit-identical") {
  const EncoderConfig ecfg{128, false};
  Rng rng(31);
  const ScorerParams p = random_params(ScorerConfig{ScorerConfig::Arch::mlp, 5, 17}, ecfg, rng);

  const std::string path = "scorer_ckpt_tmp.bin";
  save_checkpoint(p, path);
  const ScorerParams loaded = load_checkpoint(path);
  CHECK(loaded.values == p.values);
  CHECK(loaded.scorer_cfg.arch == p.scorer_cfg.arch);
  CHECK(loaded.scorer_cfg.hidden == p.scorer_cfg.hidden);
  CHECK(loaded.encoder_cfg.dim == p.encoder_cfg.dim);
  CHECK(loaded.encoder_cfg.use_bigrams == p.encoder_cfg.use_bigrams);

  // and byte-for-byte stable across saves
  const std::string bytes = checkpoint_to_bytes(p);
  CHECK(bytes == checkpoint_to_bytes(loaded));
  std::filesystem::remove(path);
}

TEST_CASE("checkpoint load failures carry distinct categories") {
  const EncoderConfig ecfg{64, true};
  const ScorerParams p = init_params(ScorerConfig{ScorerConfig::Arch::linear, 1, 5}, ecfg);
  const std::string bytes = checkpoint_to_bytes(p);

  auto kind_of = [](const std::string& data) {
    try {
      checkpoint_from_bytes(data);
    } catch (const CheckpointError& e) {
      return e.kind();
    }
    return CheckpointError::Kind::io;  // "no error" sentinel the checks below never expect
  };

  CHECK(kind_of(bytes.substr(0, bytes.size() - 9)) == CheckpointError::Kind::corrupt_length);
  CHECK(kind_of("junkfile") == CheckpointError::Kind::corrupt_length);

  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK(kind_of(bad_magic) == CheckpointError::Kind::bad_magic);

  std::string bad_version = bytes;
  bad_version[4] = 99;
  CHECK(kind_of(bad_version) == CheckpointError::Kind::version_mismatch);

  std::string nan_payload = bytes;
  for (int i = 0; i < 8; ++i) nan_payload[nan_payload.size() - 8 + i] = static_cast<char>(0xff);
  CHECK(kind_of(nan_payload) == CheckpointError::Kind::non_finite);

  CHECK_THROWS_AS(load_checkpoint("no_such_checkpoint.bin"), CheckpointError);
}
