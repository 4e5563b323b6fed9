#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace passrank {

// ---------------------------------------------------------------------------
// Domain types: tasks, candidates, labels, pools, rankings.
// All of these are plain values, immutable by convention after construction;
// the operations below are pure functions and safe to call concurrently.
// ---------------------------------------------------------------------------

struct TestCase {
  std::string input;            // fed to the program's standard input
  std::string expected_output;  // compared against captured standard output
};

struct ProgrammingTask {
  std::string task_id;
  std::string description;  // the natural-language problem statement
  std::vector<TestCase> tests;
  int64_t time_limit_ms = 0;  // per test; 0 means "use the judge default"
};

struct GenerationMeta {
  std::string model_name;
  double temperature = 0.0;
  double nucleus_p = 0.0;
  int64_t sample_index = 0;
};

struct Candidate {
  std::string candidate_id;
  std::string task_id;
  std::string source;  // program text
  std::optional<GenerationMeta> gen_meta;
};

enum class VerdictKind { Accepted, WrongAnswer, TimeLimit, RuntimeError, StartupError };

const char* to_string(VerdictKind kind);
std::optional<VerdictKind> verdict_kind_from_string(const std::string& name);

// Outcome of judging one candidate against a task's tests. Judging stops at
// the first failing test, so failed_test_index (when present) is always
// tests_executed - 1.
struct Verdict {
  VerdictKind kind = VerdictKind::WrongAnswer;
  std::optional<int> failed_test_index;
  int tests_executed = 0;
  std::vector<double> wall_time_ms;  // one entry per executed test
};

struct Label {
  int value = 0;  // 1 iff verdict.kind == Accepted
  Verdict verdict;
};

inline Label make_label(Verdict v) {
  return Label{v.kind == VerdictKind::Accepted ? 1 : 0, std::move(v)};
}

struct LabeledEntry {
  Candidate candidate;
  Label label;
};

// One task's candidate set with binary labels. Pool-level counts are derived
// so they cannot drift from the entries.
struct LabeledPool {
  ProgrammingTask task;
  std::vector<LabeledEntry> entries;

  int n() const { return static_cast<int>(entries.size()); }
  int c() const {
    int count = 0;
    for (const auto& e : entries) count += e.label.value;
    return count;
  }
};

// Candidates with scores and the induced descending-score order. Ties are
// broken by ascending candidate_id so the ordering is reproducible.
struct RankedPool {
  LabeledPool pool;
  std::vector<double> scores;
  std::vector<int> order;  // permutation of entry indices
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class ValidationIssueKind {
  duplicate_candidate_id,
  cross_task_entry,
  label_verdict_mismatch,
};

struct ValidationIssue {
  ValidationIssueKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

// Report-style check of the pool invariants: duplicate candidate ids,
// entries whose task_id differs from the pool's task, and labels that
// disagree with their verdict. Empty pools and zero-test tasks are legal
// (they occur under full test dropout) but show up as warnings.
ValidationReport validate_pool(const LabeledPool& pool);

// Sorts entry indices by descending score, ties by ascending candidate_id.
// Throws std::invalid_argument on |scores| != pool.n().
RankedPool rank_pool(LabeledPool pool, std::vector<double> scores);

// (n, c): total candidates and positive count.
std::pair<int, int> pool_counts(const LabeledPool& pool);

}  // namespace passrank
