#include "passrank/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "passrank/encoder.hpp"
#include "passrank/rng.hpp"

namespace passrank {

void validate(const SynthConfig& cfg) {
  if (cfg.tasks < 1) throw std::invalid_argument("tasks must be >= 1");
  if (cfg.candidates_per_task < 2) throw std::invalid_argument("candidates_per_task must be >= 2");
  if (!(cfg.positive_rate >= 0.0 && cfg.positive_rate <= 1.0)) {
    throw std::invalid_argument("positive_rate must be in [0,1]");
  }
  if (!(cfg.signal_strength >= 0.0)) throw std::invalid_argument("signal_strength must be >= 0");
  if (!(cfg.noise_rate >= 0.0 && cfg.noise_rate <= 1.0)) {
    throw std::invalid_argument("noise_rate must be in [0,1]");
  }
}

namespace {

std::string id_num(const char* prefix, int v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03d", prefix, v);
  return buf;
}

// Planted vocabularies. Quality and decoy are global so rankers can transfer
// across tasks; topic tokens are per-task filler carrying no label signal.
constexpr int kQualityVocab = 16;
constexpr int kDecoyVocab = 16;
constexpr int kJunkVocab = 64;
constexpr int kTopicVocab = 32;
constexpr int kTokensPerCandidate = 48;
constexpr double kHardNegativeFraction = 0.5;

std::string quality_token(int i) { return id_num("quality_", i); }
std::string decoy_token(int i) { return id_num("decoy_", i); }
std::string junk_token(int i) { return id_num("junk_", i); }
std::string topic_token(int task, int i) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "topic_%03d_%02d", task, i);
  return buf;
}

struct TokenMix {
  int quality = 0;
  int decoy = 0;
};

// Token-count recipe as a function of signal strength, plus a small seeded
// per-candidate jitter so within-class margins vary. At sigma >= 1 the
// positive quality-minus-decoy mass stays above every negative's even at the
// jitter extremes, which is the witness-separation guarantee.
constexpr int kCountJitter = 2;

int jitter(Rng& rng) { return static_cast<int>(rng.below(2 * kCountJitter + 1)) - kCountJitter; }

TokenMix positive_mix(double sigma, Rng& rng) {
  TokenMix m;
  m.quality = std::clamp<int>(static_cast<int>(std::llround(6.0 + 4.0 * sigma)) + jitter(rng), 0,
                              kQualityVocab);
  m.decoy = std::clamp<int>(
      static_cast<int>(std::llround(std::max(0.0, 4.0 - 2.0 * sigma))) + jitter(rng), 0,
      kDecoyVocab);
  return m;
}

TokenMix hard_negative_mix(double sigma, Rng& rng) {
  TokenMix m;
  m.quality = std::clamp<int>(
      static_cast<int>(std::llround(std::max(0.0, 6.0 - 3.0 * sigma))) + jitter(rng), 0,
      kQualityVocab);
  m.decoy = std::clamp<int>(8 + jitter(rng), 0, kDecoyVocab);
  return m;
}

TokenMix easy_negative_mix(double, Rng& rng) {
  return TokenMix{0, std::clamp<int>(2 + jitter(rng), 0, kDecoyVocab)};
}

std::string render_source(std::vector<std::string> tokens, Rng& rng) {
  rng.shuffle(tokens);
  std::string src;
  for (size_t i = 0; i < tokens.size(); ++i) {
    src += tokens[i];
    src.push_back((i + 1) % 8 == 0 ? '\n' : ' ');
  }
  if (!src.empty() && src.back() == ' ') src.back() = '\n';
  return src;
}

std::vector<std::string> build_candidate_tokens(const TokenMix& mix, int task_index, Rng& rng) {
  std::vector<std::string> tokens;
  tokens.reserve(kTokensPerCandidate);
  for (int i : rng.sample_indices(kQualityVocab, mix.quality)) tokens.push_back(quality_token(i));
  for (int i : rng.sample_indices(kDecoyVocab, mix.decoy)) tokens.push_back(decoy_token(i));

  const int remaining = kTokensPerCandidate - mix.quality - mix.decoy;
  const int topic = (remaining * 3) / 5;
  const int junk = remaining - topic;
  for (int i = 0; i < topic; ++i) {
    tokens.push_back(topic_token(task_index, static_cast<int>(rng.below(kTopicVocab))));
  }
  for (int i = 0; i < junk; ++i) {
    tokens.push_back(junk_token(static_cast<int>(rng.below(kJunkVocab))));
  }
  return tokens;
}

}  // namespace

double FeatureBenchmark::measured_fp_rate() const {
  int64_t labeled_positive = 0;
  int64_t false_positive = 0;
  for (size_t p = 0; p < pools.size(); ++p) {
    for (size_t i = 0; i < pools[p].entries.size(); ++i) {
      if (pools[p].entries[i].label.value == 1) {
        ++labeled_positive;
        if (true_labels[p][i] == 0) ++false_positive;
      }
    }
  }
  if (labeled_positive == 0) return 0.0;
  return static_cast<double>(false_positive) / static_cast<double>(labeled_positive);
}

LabeledPool FeatureBenchmark::clean_pool(size_t pool_index) const {
  LabeledPool pool = pools[pool_index];
  for (size_t i = 0; i < pool.entries.size(); ++i) {
    Verdict v;
    v.kind = true_labels[pool_index][i] == 1 ? VerdictKind::Accepted : VerdictKind::WrongAnswer;
    if (v.kind != VerdictKind::Accepted) {
      v.tests_executed = 1;
      v.failed_test_index = 0;
      v.wall_time_ms = {0.0};
    }
    pool.entries[i].label = make_label(v);
  }
  return pool;
}

FeatureBenchmark gen_feature_benchmark(const SynthConfig& cfg) {
  validate(cfg);

  FeatureBenchmark bench;
  bench.pools.reserve(static_cast<size_t>(cfg.tasks));
  bench.true_labels.reserve(static_cast<size_t>(cfg.tasks));

  for (int t = 0; t < cfg.tasks; ++t) {
    Rng rng(mix_seed({cfg.seed, 0xfea7u, static_cast<uint64_t>(t)}));
    const int n = cfg.candidates_per_task;

    LabeledPool pool;
    pool.task.task_id = id_num("synth", t);
    {
      std::string desc = "task " + pool.task.task_id + " match the planted pattern";
      for (int i = 0; i < 6; ++i) desc += " " + topic_token(t, i);
      pool.task.description = std::move(desc);
    }
    pool.task.time_limit_ms = 1000;  // never executed; kept valid for validation

    const int n_pos = static_cast<int>(std::llround(cfg.positive_rate * n));
    std::vector<int> truth(static_cast<size_t>(n), 0);
    for (int idx : rng.sample_indices(n, n_pos)) truth[static_cast<size_t>(idx)] = 1;

    // hard vs easy split of the true negatives
    std::vector<int> negatives;
    for (int i = 0; i < n; ++i) {
      if (truth[static_cast<size_t>(i)] == 0) negatives.push_back(i);
    }
    std::vector<bool> hard(static_cast<size_t>(n), false);
    {
      const int n_hard = static_cast<int>(
          std::llround(kHardNegativeFraction * static_cast<double>(negatives.size())));
      std::vector<int> shuffled = negatives;
      rng.shuffle(shuffled);
      for (int i = 0; i < n_hard; ++i) hard[static_cast<size_t>(shuffled[static_cast<size_t>(i)])] = true;
    }

    // Observed labels: truth plus a rounded fraction of negatives flipped up.
    // Flips hit the hard (decoy-pattern) negatives first: a weak test suite
    // passes the plausible wrong programs, not arbitrary ones.
    std::vector<int> observed = truth;
    const int n_flip = static_cast<int>(
        std::llround(cfg.noise_rate * static_cast<double>(negatives.size())));
    {
      std::vector<int> hard_negs, easy_negs;
      for (int idx : negatives) {
        (hard[static_cast<size_t>(idx)] ? hard_negs : easy_negs).push_back(idx);
      }
      rng.shuffle(hard_negs);
      rng.shuffle(easy_negs);
      hard_negs.insert(hard_negs.end(), easy_negs.begin(), easy_negs.end());
      for (int i = 0; i < n_flip && i < static_cast<int>(hard_negs.size()); ++i) {
        observed[static_cast<size_t>(hard_negs[static_cast<size_t>(i)])] = 1;
      }
    }

    for (int i = 0; i < n; ++i) {
      const TokenMix mix = truth[static_cast<size_t>(i)] == 1
                               ? positive_mix(cfg.signal_strength, rng)
                           : hard[static_cast<size_t>(i)]
                               ? hard_negative_mix(cfg.signal_strength, rng)
                               : easy_negative_mix(cfg.signal_strength, rng);
      Candidate cand;
      cand.candidate_id = pool.task.task_id + "_" + id_num("c", i);
      cand.task_id = pool.task.task_id;
      cand.source = render_source(build_candidate_tokens(mix, t, rng), rng);

      Verdict v;
      v.kind = observed[static_cast<size_t>(i)] == 1 ? VerdictKind::Accepted : VerdictKind::WrongAnswer;
      if (v.kind != VerdictKind::Accepted) {
        v.tests_executed = 1;
        v.failed_test_index = 0;
        v.wall_time_ms = {0.0};
      }
      pool.entries.push_back(LabeledEntry{std::move(cand), make_label(std::move(v))});
    }

    bench.pools.push_back(std::move(pool));
    bench.true_labels.push_back(std::move(truth));
  }
  return bench;
}

ScorerParams planted_witness(const EncoderConfig& ecfg) {
  validate(ecfg);
  ScorerParams params;
  params.scorer_cfg.arch = ScorerConfig::Arch::linear;
  params.encoder_cfg = ecfg;
  params.values.assign(static_cast<size_t>(ecfg.dim) + 1, 0.0);

  const int block = hashed_block_size(ecfg);
  const int start = code_block_start(ecfg);
  for (int i = 0; i < kQualityVocab; ++i) {
    const auto slot = fnv1a64("code:" + quality_token(i)) % static_cast<uint64_t>(block);
    params.values[static_cast<size_t>(start) + slot] += 1.0;
  }
  for (int i = 0; i < kDecoyVocab; ++i) {
    const auto slot = fnv1a64("code:" + decoy_token(i)) % static_cast<uint64_t>(block);
    params.values[static_cast<size_t>(start) + slot] -= 1.0;
  }
  return params;
}

// ---------------------------------------------------------------------------
// Executable corpus
// ---------------------------------------------------------------------------

namespace {

struct MicroTask {
  std::string name;
  std::string description;
  std::string reference;
  std::string off_by_one;
  std::string misread;
  std::string near_miss;  // correct except on the one long-input edge test
  // produce (input, expected_output) pairs; regular inputs stay under 40
  // characters, the long test well over it, so near_miss fails exactly once
  std::function<std::pair<std::string, std::string>(Rng&)> make_test;
  std::function<std::pair<std::string, std::string>(Rng&)> make_long_test;
};

// 2 * (decimal string), for long inputs past int64
std::string double_decimal(const std::string& digits) {
  std::string out;
  int carry = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    const int d = (*it - '0') * 2 + carry;
    out.push_back(static_cast<char>('0' + d % 10));
    carry = d / 10;
  }
  if (carry) out.push_back(static_cast<char>('0' + carry));
  return {out.rbegin(), out.rend()};
}

std::string random_digits(Rng& rng, int len) {
  std::string s;
  s.push_back(static_cast<char>('1' + rng.below(9)));
  for (int i = 1; i < len; ++i) s.push_back(static_cast<char>('0' + rng.below(10)));
  return s;
}

std::string join_ints(const std::vector<int64_t>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int64_t> random_ints(Rng& rng, int count, int64_t lo, int64_t hi) {
  std::vector<int64_t> v(static_cast<size_t>(count));
  for (auto& x : v) x = lo + static_cast<int64_t>(rng.below(static_cast<uint64_t>(hi - lo + 1)));
  return v;
}

std::string random_word(Rng& rng, int len) {
  static const char* letters = "abcdefghijklmnopqrstuvwxyz";
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back(letters[rng.below(26)]);
  return s;
}

const std::string kTimeoutSource = "while True:\n    pass\n";
const std::string kCrashSource = "raise RuntimeError(\"intentional failure\")\n";

std::pair<std::string, std::string> long_word_test(Rng& rng, bool reversed_expected) {
  std::string w = random_word(rng, 45 + static_cast<int>(rng.below(6)));
  if (w.front() == w.back()) w.back() = w.back() == 'z' ? 'a' : static_cast<char>(w.back() + 1);
  std::string expected = reversed_expected ? std::string(w.rbegin(), w.rend()) : w;
  return {w + "\n", expected + "\n"};
}

std::vector<MicroTask> micro_tasks() {
  std::vector<MicroTask> tasks;

  tasks.push_back(
      {"sum_line",
       "Read one line of space-separated integers and print their sum.",
       "print(sum(map(int, input().split())))\n",
       "print(sum(map(int, input().split())) + 1)\n",
       "print(max(map(int, input().split())))\n",
       "s = input()\nr = sum(map(int, s.split()))\nprint(r + 1 if len(s) > 40 else r)\n",
       [](Rng& rng) {
         auto v = random_ints(rng, 2 + static_cast<int>(rng.below(6)), 1, 99);
         int64_t sum = 0;
         for (auto x : v) sum += x;
         return std::pair(join_ints(v) + "\n", std::to_string(sum) + "\n");
       },
       [](Rng& rng) {
         auto v = random_ints(rng, 16, 10, 99);
         int64_t sum = 0;
         for (auto x : v) sum += x;
         return std::pair(join_ints(v) + "\n", std::to_string(sum) + "\n");
       }});

  tasks.push_back(
      {"max_line",
       "Read one line of space-separated integers and print the largest.",
       "print(max(map(int, input().split())))\n",
       "print(max(map(int, input().split())) + 1)\n",
       "print(min(map(int, input().split())))\n",
       "s = input()\nm = max(map(int, s.split()))\nprint(m + 1 if len(s) > 40 else m)\n",
       [](Rng& rng) {
         auto v = random_ints(rng, 3 + static_cast<int>(rng.below(5)), 1, 500);
         v.push_back(v.back() + 1 + static_cast<int64_t>(rng.below(20)));  // max != min
         int64_t best = v[0];
         for (auto x : v) best = std::max(best, x);
         return std::pair(join_ints(v) + "\n", std::to_string(best) + "\n");
       },
       [](Rng& rng) {
         auto v = random_ints(rng, 16, 10, 99);
         v.push_back(150);
         return std::pair(join_ints(v) + "\n", std::string("150\n"));
       }});

  tasks.push_back(
      {"min_line",
       "Read one line of space-separated integers and print the smallest.",
       "print(min(map(int, input().split())))\n",
       "print(min(map(int, input().split())) - 1)\n",
       "print(max(map(int, input().split())))\n",
       "s = input()\nm = min(map(int, s.split()))\nprint(m - 1 if len(s) > 40 else m)\n",
       [](Rng& rng) {
         auto v = random_ints(rng, 3 + static_cast<int>(rng.below(5)), 10, 500);
         v.push_back(v.front() + 1);  // ensure max != min
         int64_t best = v[0];
         for (auto x : v) best = std::min(best, x);
         return std::pair(join_ints(v) + "\n", std::to_string(best) + "\n");
       },
       [](Rng& rng) {
         auto v = random_ints(rng, 16, 100, 999);
         v.push_back(50);
         return std::pair(join_ints(v) + "\n", std::string("50\n"));
       }});

  tasks.push_back(
      {"reverse_word",
       "Read one lowercase word and print it reversed.",
       "print(input()[::-1])\n",
       "print(input()[::-1][1:])\n",
       "print(input())\n",
       "s = input()\nr = s[::-1]\nprint(r[1:] if len(s) > 40 else r)\n",
       [](Rng& rng) {
         std::string w = random_word(rng, 5 + static_cast<int>(rng.below(6)));
         if (w.front() == w.back()) w.back() = w.back() == 'z' ? 'a' : static_cast<char>(w.back() + 1);
         std::string rev(w.rbegin(), w.rend());
         return std::pair(w + "\n", rev + "\n");
       },
       [](Rng& rng) { return long_word_test(rng, true); }});

  tasks.push_back(
      {"parity",
       "Read one integer and print 'even' or 'odd'.",
       "print('even' if int(input()) % 2 == 0 else 'odd')\n",
       "print('even' if (int(input()) + 1) % 2 == 0 else 'odd')\n",
       "print('yes' if int(input()) % 2 == 0 else 'no')\n",
       "s = input()\nv = int(s) % 2\nv = 1 - v if len(s) > 40 else v\n"
       "print('even' if v == 0 else 'odd')\n",
       [](Rng& rng) {
         const int64_t x = static_cast<int64_t>(rng.below(100000));
         return std::pair(std::to_string(x) + "\n",
                          std::string(x % 2 == 0 ? "even" : "odd") + "\n");
       },
       [](Rng& rng) {
         const std::string digits = random_digits(rng, 45);
         const bool even = (digits.back() - '0') % 2 == 0;
         return std::pair(digits + "\n", std::string(even ? "even" : "odd") + "\n");
       }});

  tasks.push_back(
      {"sort_line",
       "Read one line of space-separated integers and print them in ascending order.",
       "print(*sorted(map(int, input().split())))\n",
       "print(*sorted(map(int, input().split()))[:-1])\n",
       "print(*sorted(map(int, input().split()), reverse=True))\n",
       "s = input()\nv = sorted(map(int, s.split()))\nprint(*(v[:-1] if len(s) > 40 else v))\n",
       [](Rng& rng) {
         auto v = random_ints(rng, 3 + static_cast<int>(rng.below(5)), 1, 99);
         v.push_back(v.front() + 100);  // ascending != descending
         auto sorted_v = v;
         std::sort(sorted_v.begin(), sorted_v.end());
         return std::pair(join_ints(v) + "\n", join_ints(sorted_v) + "\n");
       },
       [](Rng& rng) {
         auto v = random_ints(rng, 16, 10, 99);
         auto sorted_v = v;
         std::sort(sorted_v.begin(), sorted_v.end());
         return std::pair(join_ints(v) + "\n", join_ints(sorted_v) + "\n");
       }});

  tasks.push_back(
      {"count_words",
       "Read one line and print how many whitespace-separated words it holds.",
       "print(len(input().split()))\n",
       "print(len(input().split()) + 1)\n",
       "print(len(input()))\n",
       "s = input()\nc = len(s.split())\nprint(c + 1 if len(s) > 40 else c)\n",
       [](Rng& rng) {
         const int count = 2 + static_cast<int>(rng.below(4));
         std::string line;
         for (int i = 0; i < count; ++i) {
           if (i) line.push_back(' ');
           line += random_word(rng, 2 + static_cast<int>(rng.below(4)));
         }
         return std::pair(line + "\n", std::to_string(count) + "\n");
       },
       [](Rng& rng) {
         std::string line;
         for (int i = 0; i < 9; ++i) {
           if (i) line.push_back(' ');
           line += random_word(rng, 4 + static_cast<int>(rng.below(2)));
         }
         return std::pair(line + "\n", std::string("9\n"));
       }});

  tasks.push_back(
      {"upper_line",
       "Read one lowercase line and print it uppercased.",
       "print(input().upper())\n",
       "print(input().upper()[1:])\n",
       "print(input())\n",
       "s = input()\nu = s.upper()\nprint(u[1:] if len(s) > 40 else u)\n",
       [](Rng& rng) {
         std::string w = random_word(rng, 6 + static_cast<int>(rng.below(6)));
         std::string up = w;
         for (auto& ch : up) ch = static_cast<char>(ch - 'a' + 'A');
         return std::pair(w + "\n", up + "\n");
       },
       [](Rng& rng) {
         auto [input, expected] = long_word_test(rng, false);
         for (auto& ch : expected) {
           if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 'a' + 'A');
         }
         return std::pair(input, expected);
       }});

  tasks.push_back(
      {"abs_diff",
       "Read two integers on one line and print their absolute difference.",
       "a, b = map(int, input().split())\nprint(abs(a - b))\n",
       "a, b = map(int, input().split())\nprint(abs(a - b) + 1)\n",
       "a, b = map(int, input().split())\nprint(a + b)\n",
       "s = input()\na, b = map(int, s.split())\nd = abs(a - b)\n"
       "print(d + 1 if len(s) > 40 else d)\n",
       [](Rng& rng) {
         const int64_t a = 1 + static_cast<int64_t>(rng.below(999));
         const int64_t b = 1 + static_cast<int64_t>(rng.below(999));
         return std::pair(std::to_string(a) + " " + std::to_string(b) + "\n",
                          std::to_string(std::abs(a - b)) + "\n");
       },
       [](Rng& rng) {
         // shared 20-digit prefix keeps the difference within int64
         const std::string prefix = random_digits(rng, 20);
         const int64_t x = 100000 + static_cast<int64_t>(rng.below(900000));
         const int64_t y = 100000 + static_cast<int64_t>(rng.below(900000));
         return std::pair(prefix + std::to_string(x) + " " + prefix + std::to_string(y) + "\n",
                          std::to_string(std::abs(x - y)) + "\n");
       }});

  tasks.push_back(
      {"double_int",
       "Read one integer and print twice its value.",
       "print(2 * int(input()))\n",
       "print(2 * int(input()) + 1)\n",
       "print(int(input()) ** 2)\n",
       "s = input()\nr = 2 * int(s)\nprint(r + 1 if len(s) > 40 else r)\n",
       [](Rng& rng) {
         const int64_t x = 3 + static_cast<int64_t>(rng.below(10000));  // 2x != x^2
         return std::pair(std::to_string(x) + "\n", std::to_string(2 * x) + "\n");
       },
       [](Rng& rng) {
         const std::string digits = random_digits(rng, 45);
         return std::pair(digits + "\n", double_decimal(digits) + "\n");
       }});

  tasks.push_back(
      {"vowel_count",
       "Read one lowercase line and print the number of vowels in it.",
       "print(sum(1 for ch in input() if ch in 'aeiou'))\n",
       "print(sum(1 for ch in input() if ch in 'aeiou') + 1)\n",
       "print(sum(1 for ch in input() if ch not in 'aeiou'))\n",
       "s = input()\nc = sum(1 for ch in s if ch in 'aeiou')\n"
       "print(c + 1 if len(s) > 40 else c)\n",
       [](Rng& rng) {
         // consonant-heavy so vowel count != consonant count
         std::string w = "bcd" + random_word(rng, 5 + static_cast<int>(rng.below(5)));
         int vowels = 0;
         for (char ch : w) {
           if (ch == 'a' || ch == 'e' || ch == 'i' || ch == 'o' || ch == 'u') ++vowels;
         }
         if (vowels * 2 == static_cast<int>(w.size())) {
           w += "x";  // break the tie deterministically
         }
         return std::pair(w + "\n", std::to_string(vowels) + "\n");
       },
       [](Rng& rng) {
         const std::string w = random_word(rng, 45);
         int vowels = 0;
         for (char ch : w) {
           if (ch == 'a' || ch == 'e' || ch == 'i' || ch == 'o' || ch == 'u') ++vowels;
         }
         return std::pair(w + "\n", std::to_string(vowels) + "\n");
       }});

  tasks.push_back(
      {"first_word",
       "Read one line and print its first whitespace-separated word.",
       "print(input().split()[0])\n",
       "print(input().split()[1])\n",
       "print(input().split()[-1])\n",
       "s = input()\nw = s.split()\nprint(w[1] if len(s) > 40 else w[0])\n",
       [](Rng& rng) {
         const int count = 3 + static_cast<int>(rng.below(2));
         std::vector<std::string> words;
         for (int i = 0; i < count; ++i) {
           words.push_back(random_word(rng, 3 + static_cast<int>(rng.below(3))));
         }
         words[0] = "w" + words[0];
         words[1] = "y" + words[1];
         words.back() = "z" + words.back();  // first, second, last all distinct
         std::string line;
         for (size_t i = 0; i < words.size(); ++i) {
           if (i) line.push_back(' ');
           line += words[i];
         }
         return std::pair(line + "\n", words[0] + "\n");
       },
       [](Rng& rng) {
         std::vector<std::string> words;
         for (int i = 0; i < 9; ++i) {
           words.push_back(random_word(rng, 4 + static_cast<int>(rng.below(2))));
         }
         words[0] = "w" + words[0];
         words[1] = "y" + words[1];
         std::string line;
         for (size_t i = 0; i < words.size(); ++i) {
           if (i) line.push_back(' ');
           line += words[i];
         }
         return std::pair(line + "\n", words[0] + "\n");
       }});

  return tasks;
}

}  // namespace

ExecutableCorpus gen_executable_corpus(uint64_t seed) {
  ExecutableCorpus corpus;
  const std::vector<MicroTask> defs = micro_tasks();

  for (size_t t = 0; t < defs.size(); ++t) {
    const MicroTask& def = defs[t];
    Rng rng(mix_seed({seed, 0xec0de5u, static_cast<uint64_t>(t)}));

    ProgrammingTask task;
    task.task_id = "micro_" + def.name;
    task.description = def.description;
    task.time_limit_ms = 1500;
    const int test_count = 8 + static_cast<int>(rng.below(3));
    for (int i = 0; i < test_count; ++i) {
      auto [input, expected] = def.make_test(rng);
      task.tests.push_back(TestCase{std::move(input), std::move(expected)});
    }
    {
      // exactly one long-input edge test, at a seeded position; dropping it is
      // what turns the near-miss candidate into a false positive
      auto [input, expected] = def.make_long_test(rng);
      const auto pos = static_cast<long>(rng.below(task.tests.size() + 1));
      task.tests.insert(task.tests.begin() + pos, TestCase{std::move(input), std::move(expected)});
    }

    auto add_candidate = [&](const std::string& variant, const std::string& source, int label,
                             VerdictKind intended) {
      Candidate cand;
      cand.candidate_id = task.task_id + "_" + variant;
      cand.task_id = task.task_id;
      cand.source = source;
      corpus.candidates.push_back(cand);
      corpus.manifest.push_back(ManifestEntry{cand.candidate_id, cand.task_id, label, intended});
    };

    add_candidate("ref", def.reference, 1, VerdictKind::Accepted);
    add_candidate("off_by_one", def.off_by_one, 0, VerdictKind::WrongAnswer);
    add_candidate("misread", def.misread, 0, VerdictKind::WrongAnswer);
    add_candidate("near_miss", def.near_miss, 0, VerdictKind::WrongAnswer);
    add_candidate("timeout", kTimeoutSource, 0, VerdictKind::TimeLimit);
    add_candidate("crash", kCrashSource, 0, VerdictKind::RuntimeError);

    corpus.tasks.push_back(std::move(task));
  }
  return corpus;
}

}  // namespace passrank
