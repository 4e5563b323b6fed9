#include "passrank/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <unordered_set>

namespace passrank {

void validate(const EncoderConfig& cfg) {
  if (cfg.dim < 16) throw std::invalid_argument("encoder dim must be >= 16");
  if ((cfg.dim & (cfg.dim - 1)) != 0) throw std::invalid_argument("encoder dim must be a power of two");
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char raw : text) {
    const auto ch = static_cast<unsigned char>(raw);
    const bool word = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '_';
    if (word) {
      current.push_back(ch >= 'A' && ch <= 'Z' ? static_cast<char>(ch - 'A' + 'a')
                                               : static_cast<char>(ch));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

void hash_ngrams(const std::vector<std::string>& tokens, std::string_view ns, bool bigrams,
                 std::vector<double>& values, int block_start, int block_size) {
  std::string key;
  auto bump = [&]() {
    const auto slot = fnv1a64(key) % static_cast<uint64_t>(block_size);
    values[static_cast<size_t>(block_start) + slot] += 1.0;
  };
  for (const auto& tok : tokens) {
    key.assign(ns);
    key += ':';
    key += tok;
    bump();
  }
  if (bigrams) {
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
      key.assign(ns);
      key += ':';
      key += tokens[i];
      key += ' ';
      key += tokens[i + 1];
      bump();
    }
  }
}

void l2_normalize_block(std::vector<double>& values, int start, int size) {
  double sq = 0.0;
  for (int i = 0; i < size; ++i) sq += values[static_cast<size_t>(start + i)] * values[static_cast<size_t>(start + i)];
  if (sq <= 0.0) return;
  const double inv = 1.0 / std::sqrt(sq);
  for (int i = 0; i < size; ++i) values[static_cast<size_t>(start + i)] *= inv;
}

bool in_set(const std::string& tok, std::initializer_list<const char*> set) {
  for (const char* s : set) {
    if (tok == s) return true;
  }
  return false;
}

// Stats features, all in [0, 1]:
//   0: min(source bytes / 1000, 1)
//   1: min(line count / 100, 1)
//   2: loop-token density        {for, while, loop}
//   3: branch-token density      {if, else, elif, switch, case, match}
//   4: return-token density      {return, yield}
//   5: recursion indicator: density of call-site reuse of names bound by a
//      preceding def/function/fn token
void fill_stats(const std::string& source, const std::vector<std::string>& tokens,
                std::vector<double>& values, int start) {
  if (source.empty()) return;

  values[static_cast<size_t>(start) + 0] =
      std::min(static_cast<double>(source.size()) / 1000.0, 1.0);

  int64_t lines = static_cast<int64_t>(std::count(source.begin(), source.end(), '\n'));
  if (source.back() != '\n') ++lines;
  values[static_cast<size_t>(start) + 1] = std::min(static_cast<double>(lines) / 100.0, 1.0);

  if (tokens.empty()) return;
  const double total = static_cast<double>(tokens.size());

  double loops = 0, branches = 0, returns = 0, def_uses = 0;
  std::unordered_set<std::string> defined;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    if (in_set(tok, {"for", "while", "loop"})) ++loops;
    if (in_set(tok, {"if", "else", "elif", "switch", "case", "match"})) ++branches;
    if (in_set(tok, {"return", "yield"})) ++returns;
    if (defined.count(tok)) ++def_uses;
    if (i > 0 && in_set(tokens[i - 1], {"def", "function", "fn"})) defined.insert(tok);
  }
  values[static_cast<size_t>(start) + 2] = loops / total;
  values[static_cast<size_t>(start) + 3] = branches / total;
  values[static_cast<size_t>(start) + 4] = returns / total;
  values[static_cast<size_t>(start) + 5] = def_uses / total;
}

}  // namespace

FeatureVector featurize_raw(const ProgrammingTask& task, const Candidate& candidate,
                            const EncoderConfig& cfg) {
  validate(cfg);
  FeatureVector fv;
  fv.values.assign(static_cast<size_t>(cfg.dim), 0.0);

  const int block = hashed_block_size(cfg);
  hash_ngrams(tokenize(task.description), "task", cfg.use_bigrams, fv.values,
              task_block_start(cfg), block);
  const std::vector<std::string> code_tokens = tokenize(candidate.source);
  hash_ngrams(code_tokens, "code", cfg.use_bigrams, fv.values, code_block_start(cfg), block);
  fill_stats(candidate.source, code_tokens, fv.values, stats_block_start(cfg));
  return fv;
}

FeatureVector featurize(const ProgrammingTask& task, const Candidate& candidate,
                        const EncoderConfig& cfg) {
  FeatureVector fv = featurize_raw(task, candidate, cfg);
  const int block = hashed_block_size(cfg);
  l2_normalize_block(fv.values, task_block_start(cfg), block);
  l2_normalize_block(fv.values, code_block_start(cfg), block);
  return fv;
}

}  // namespace passrank
