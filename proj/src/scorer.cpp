#include "passrank/scorer.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "nlohmann/json.hpp"
#include "passrank/rng.hpp"

namespace passrank {

void validate(const ScorerConfig& cfg) {
  if (cfg.arch == ScorerConfig::Arch::mlp && cfg.hidden < 1) {
    throw std::invalid_argument("mlp hidden size must be >= 1");
  }
}

const char* to_string(ScorerConfig::Arch arch) {
  return arch == ScorerConfig::Arch::linear ? "linear" : "mlp";
}

int64_t param_count(const ScorerConfig& scfg, const EncoderConfig& ecfg) {
  const int64_t dim = ecfg.dim;
  if (scfg.arch == ScorerConfig::Arch::linear) return dim + 1;
  const int64_t h = scfg.hidden;
  return h * dim + h + h + 1;
}

std::vector<std::vector<int64_t>> param_shapes(const ScorerConfig& scfg,
                                               const EncoderConfig& ecfg) {
  const int64_t dim = ecfg.dim;
  if (scfg.arch == ScorerConfig::Arch::linear) return {{dim}, {1}};
  const int64_t h = scfg.hidden;
  return {{h, dim}, {h}, {h}, {1}};
}

ScorerParams init_params(const ScorerConfig& scfg, const EncoderConfig& ecfg) {
  validate(scfg);
  validate(ecfg);

  ScorerParams params;
  params.scorer_cfg = scfg;
  params.encoder_cfg = ecfg;
  params.values.assign(static_cast<size_t>(param_count(scfg, ecfg)), 0.0);

  Rng rng(scfg.init_seed);
  const int64_t dim = ecfg.dim;
  if (scfg.arch == ScorerConfig::Arch::linear) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int64_t i = 0; i < dim; ++i) params.values[static_cast<size_t>(i)] = rng.uniform(-bound, bound);
    // bias stays zero
  } else {
    const int64_t h = scfg.hidden;
    const double bound1 = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int64_t i = 0; i < h * dim; ++i) params.values[static_cast<size_t>(i)] = rng.uniform(-bound1, bound1);
    const double bound2 = 1.0 / std::sqrt(static_cast<double>(h));
    const int64_t w2_off = h * dim + h;
    for (int64_t i = 0; i < h; ++i) params.values[static_cast<size_t>(w2_off + i)] = rng.uniform(-bound2, bound2);
    // b1, b2 stay zero
  }
  return params;
}

namespace {

void check_dims(const ScorerParams& params, const FeatureVector& x) {
  if (static_cast<int64_t>(x.values.size()) != params.encoder_cfg.dim) {
    throw std::invalid_argument("feature vector length " + std::to_string(x.values.size()) +
                                " does not match encoder dim " +
                                std::to_string(params.encoder_cfg.dim));
  }
  if (static_cast<int64_t>(params.values.size()) !=
      param_count(params.scorer_cfg, params.encoder_cfg)) {
    throw std::invalid_argument("parameter vector length does not match declared shapes");
  }
}

// mlp hidden activations h = tanh(W1 x + b1)
std::vector<double> mlp_hidden(const ScorerParams& params, const FeatureVector& x) {
  const int64_t dim = params.encoder_cfg.dim;
  const int64_t h = params.scorer_cfg.hidden;
  const double* w1 = params.values.data();
  const double* b1 = params.values.data() + h * dim;
  std::vector<double> hidden(static_cast<size_t>(h));
  for (int64_t j = 0; j < h; ++j) {
    double a = b1[j];
    const double* row = w1 + j * dim;
    for (int64_t i = 0; i < dim; ++i) a += row[i] * x.values[static_cast<size_t>(i)];
    hidden[static_cast<size_t>(j)] = std::tanh(a);
  }
  return hidden;
}

}  // namespace

double score(const ScorerParams& params, const FeatureVector& x) {
  check_dims(params, x);
  const int64_t dim = params.encoder_cfg.dim;
  if (params.scorer_cfg.arch == ScorerConfig::Arch::linear) {
    double s = params.values[static_cast<size_t>(dim)];  // bias
    for (int64_t i = 0; i < dim; ++i) s += params.values[static_cast<size_t>(i)] * x.values[static_cast<size_t>(i)];
    return s;
  }
  const int64_t h = params.scorer_cfg.hidden;
  const std::vector<double> hidden = mlp_hidden(params, x);
  const double* w2 = params.values.data() + h * dim + h;
  double s = params.values[static_cast<size_t>(h * dim + h + h)];  // b2
  for (int64_t j = 0; j < h; ++j) s += w2[j] * hidden[static_cast<size_t>(j)];
  return s;
}

double accumulate_score_grad(const ScorerParams& params, const FeatureVector& x, double coeff,
                             std::vector<double>& grad) {
  check_dims(params, x);
  if (grad.size() != params.values.size()) {
    throw std::invalid_argument("gradient buffer length does not match parameter count");
  }

  const int64_t dim = params.encoder_cfg.dim;
  if (params.scorer_cfg.arch == ScorerConfig::Arch::linear) {
    double s = params.values[static_cast<size_t>(dim)];
    for (int64_t i = 0; i < dim; ++i) {
      s += params.values[static_cast<size_t>(i)] * x.values[static_cast<size_t>(i)];
      grad[static_cast<size_t>(i)] += coeff * x.values[static_cast<size_t>(i)];
    }
    grad[static_cast<size_t>(dim)] += coeff;  // bias
    return s;
  }

  const int64_t h = params.scorer_cfg.hidden;
  const std::vector<double> hidden = mlp_hidden(params, x);
  const double* w2 = params.values.data() + h * dim + h;
  double s = params.values[static_cast<size_t>(h * dim + h + h)];
  for (int64_t j = 0; j < h; ++j) s += w2[j] * hidden[static_cast<size_t>(j)];

  for (int64_t j = 0; j < h; ++j) {
    const double hj = hidden[static_cast<size_t>(j)];
    const double back = coeff * w2[j] * (1.0 - hj * hj);  // through tanh
    double* w1_row_grad = grad.data() + j * dim;
    for (int64_t i = 0; i < dim; ++i) w1_row_grad[i] += back * x.values[static_cast<size_t>(i)];
    grad[static_cast<size_t>(h * dim + j)] += back;            // b1
    grad[static_cast<size_t>(h * dim + h + j)] += coeff * hj;  // w2
  }
  grad[static_cast<size_t>(h * dim + h + h)] += coeff;  // b2
  return s;
}

std::pair<double, std::vector<double>> score_with_grad(const ScorerParams& params,
                                                       const FeatureVector& x) {
  std::vector<double> grad(params.values.size(), 0.0);
  const double s = accumulate_score_grad(params, x, 1.0, grad);
  return {s, std::move(grad)};
}

// --------------------------- checkpoint format ---------------------------

namespace {

void append_u32_le(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

void append_f64_le(std::string& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

double read_f64_le(const unsigned char* p) {
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(p[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

}  // namespace

std::string checkpoint_to_bytes(const ScorerParams& params) {
  nlohmann::json header;
  header["arch"] = to_string(params.scorer_cfg.arch);
  header["hidden"] = params.scorer_cfg.hidden;
  header["init_seed"] = params.scorer_cfg.init_seed;
  header["encoder"] = {{"dim", params.encoder_cfg.dim},
                       {"use_bigrams", params.encoder_cfg.use_bigrams}};
  header["shapes"] = param_shapes(params.scorer_cfg, params.encoder_cfg);
  header["param_count"] = params.values.size();
  header["byte_length"] = params.values.size() * 8;
  const std::string header_bytes = header.dump();

  std::string out = "PRNK";
  append_u32_le(out, kCheckpointVersion);
  append_u32_le(out, static_cast<uint32_t>(header_bytes.size()));
  out += header_bytes;
  for (double v : params.values) append_f64_le(out, v);
  return out;
}

ScorerParams checkpoint_from_bytes(const std::string& bytes) {
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < 12) throw CheckpointError(CheckpointError::Kind::corrupt_length,
                                               "checkpoint shorter than fixed header");
  if (bytes.compare(0, 4, "PRNK") != 0) {
    throw CheckpointError(CheckpointError::Kind::bad_magic, "bad magic bytes");
  }
  const uint32_t version = read_u32_le(data + 4);
  if (version != kCheckpointVersion) {
    throw CheckpointError(CheckpointError::Kind::version_mismatch,
                          "unsupported checkpoint version " + std::to_string(version));
  }
  const uint32_t header_len = read_u32_le(data + 8);
  if (bytes.size() < 12 + static_cast<size_t>(header_len)) {
    throw CheckpointError(CheckpointError::Kind::corrupt_length, "truncated header");
  }

  nlohmann::json header =
      nlohmann::json::parse(bytes.substr(12, header_len), nullptr, false);
  if (header.is_discarded() || !header.is_object()) {
    throw CheckpointError(CheckpointError::Kind::bad_header, "header is not valid JSON");
  }

  ScorerParams params;
  try {
    const std::string arch = header.at("arch").get<std::string>();
    if (arch == "linear") {
      params.scorer_cfg.arch = ScorerConfig::Arch::linear;
    } else if (arch == "mlp") {
      params.scorer_cfg.arch = ScorerConfig::Arch::mlp;
    } else {
      throw CheckpointError(CheckpointError::Kind::bad_header, "unknown arch '" + arch + "'");
    }
    params.scorer_cfg.hidden = header.at("hidden").get<int>();
    params.scorer_cfg.init_seed = header.at("init_seed").get<uint64_t>();
    params.encoder_cfg.dim = header.at("encoder").at("dim").get<int>();
    params.encoder_cfg.use_bigrams = header.at("encoder").at("use_bigrams").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(CheckpointError::Kind::bad_header, e.what());
  }
  validate(params.scorer_cfg);
  validate(params.encoder_cfg);

  const int64_t expected = param_count(params.scorer_cfg, params.encoder_cfg);
  const uint64_t declared = header.value("param_count", uint64_t{0});
  if (declared != static_cast<uint64_t>(expected)) {
    throw CheckpointError(CheckpointError::Kind::corrupt_length,
                          "declared param_count does not match configs");
  }
  const size_t payload_off = 12 + header_len;
  if (bytes.size() - payload_off != static_cast<size_t>(expected) * 8) {
    throw CheckpointError(CheckpointError::Kind::corrupt_length,
                          "payload length does not match parameter count");
  }

  params.values.resize(static_cast<size_t>(expected));
  for (int64_t i = 0; i < expected; ++i) {
    const double v = read_f64_le(data + payload_off + static_cast<size_t>(i) * 8);
    if (!std::isfinite(v)) {
      throw CheckpointError(CheckpointError::Kind::non_finite,
                            "non-finite parameter at index " + std::to_string(i));
    }
    params.values[static_cast<size_t>(i)] = v;
  }
  return params;
}

void save_checkpoint(const ScorerParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError(CheckpointError::Kind::io, "cannot write checkpoint: " + path);
  const std::string bytes = checkpoint_to_bytes(params);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError(CheckpointError::Kind::io, "short write: " + path);
}

ScorerParams load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(CheckpointError::Kind::io, "cannot open checkpoint: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return checkpoint_from_bytes(bytes);
}

}  // namespace passrank
