#include "passrank/core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace passrank {

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Accepted: return "Accepted";
    case VerdictKind::WrongAnswer: return "WrongAnswer";
    case VerdictKind::TimeLimit: return "TimeLimit";
    case VerdictKind::RuntimeError: return "RuntimeError";
    case VerdictKind::StartupError: return "StartupError";
  }
  return "WrongAnswer";
}

std::optional<VerdictKind> verdict_kind_from_string(const std::string& name) {
  if (name == "Accepted") return VerdictKind::Accepted;
  if (name == "WrongAnswer") return VerdictKind::WrongAnswer;
  if (name == "TimeLimit") return VerdictKind::TimeLimit;
  if (name == "RuntimeError") return VerdictKind::RuntimeError;
  if (name == "StartupError") return VerdictKind::StartupError;
  return std::nullopt;
}

ValidationReport validate_pool(const LabeledPool& pool) {
  ValidationReport report;

  std::unordered_set<std::string> seen;
  for (const auto& entry : pool.entries) {
    const auto& cand = entry.candidate;
    if (!seen.insert(cand.candidate_id).second) {
      report.errors.push_back({ValidationIssueKind::duplicate_candidate_id,
                               "duplicate candidate_id '" + cand.candidate_id + "'"});
    }
    if (cand.task_id != pool.task.task_id) {
      report.errors.push_back(
          {ValidationIssueKind::cross_task_entry,
           "candidate '" + cand.candidate_id + "' belongs to task '" + cand.task_id +
               "', pool task is '" + pool.task.task_id + "'"});
    }
    const bool accepted = entry.label.verdict.kind == VerdictKind::Accepted;
    if ((entry.label.value == 1) != accepted) {
      report.errors.push_back(
          {ValidationIssueKind::label_verdict_mismatch,
           "candidate '" + cand.candidate_id + "' has label " +
               std::to_string(entry.label.value) + " but verdict " +
               to_string(entry.label.verdict.kind)});
    }
    if (cand.source.empty()) {
      report.warnings.push_back("candidate '" + cand.candidate_id + "' has empty source");
    }
  }

  if (pool.entries.empty()) {
    report.warnings.push_back("pool for task '" + pool.task.task_id + "' is empty");
  }
  if (pool.task.tests.empty()) {
    report.warnings.push_back("task '" + pool.task.task_id +
                              "' has no tests (vacuous-pass semantics apply)");
  }
  if (pool.task.task_id.empty()) {
    report.warnings.push_back("pool task has empty task_id");
  }

  return report;
}

RankedPool rank_pool(LabeledPool pool, std::vector<double> scores) {
  if (scores.size() != pool.entries.size()) {
    throw std::invalid_argument("rank_pool: scores length " + std::to_string(scores.size()) +
                                " does not match pool size " +
                                std::to_string(pool.entries.size()));
  }

  std::vector<int> order(pool.entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[static_cast<size_t>(a)] != scores[static_cast<size_t>(b)]) {
      return scores[static_cast<size_t>(a)] > scores[static_cast<size_t>(b)];
    }
    const auto& id_a = pool.entries[static_cast<size_t>(a)].candidate.candidate_id;
    const auto& id_b = pool.entries[static_cast<size_t>(b)].candidate.candidate_id;
    if (id_a != id_b) return id_a < id_b;
    return a < b;  // duplicate ids are invalid but must still order deterministically
  });

  return RankedPool{std::move(pool), std::move(scores), std::move(order)};
}

std::pair<int, int> pool_counts(const LabeledPool& pool) { return {pool.n(), pool.c()}; }

}  // namespace passrank
