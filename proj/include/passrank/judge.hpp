#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "passrank/core.hpp"

namespace passrank {

// How candidate programs are executed. The command template is literal argv
// split on whitespace, with "{file}" standing for the program's temp file;
// if no argument carries the placeholder the file path is appended.
struct ExecConfig {
  std::string interpreter_cmd = "python3 {file}";
  int64_t default_time_limit_ms = 2000;  // used when a task carries no limit
  int64_t max_output_bytes = 1 << 20;    // beyond this a test is a WrongAnswer
  int workers = 1;
};

void validate(const ExecConfig& cfg);

std::vector<std::string> split_command_template(const std::string& cmd);

// Trailing whitespace per line and trailing blank lines are insignificant;
// everything else must match byte for byte.
std::string normalize_output(const std::string& text);
bool outputs_match(const std::string& actual, const std::string& expected);

// Executes the task's tests in order, stopping at the first failure. Each
// test feeds `input` to the program's stdin and compares captured stdout.
// Zero tests yield a vacuous Accepted. Environment problems (interpreter
// missing, unwritable temp files) become StartupError verdicts rather than
// exceptions.
Verdict run_candidate(const Candidate& candidate, const ProgrammingTask& task,
                      const ExecConfig& cfg);

// Judges every candidate independently on a bounded worker pool and returns
// the pool with entries sorted by candidate_id. Label value is 1 iff the
// verdict is Accepted.
LabeledPool label_pool(const std::vector<Candidate>& candidates, const ProgrammingTask& task,
                       const ExecConfig& cfg);

// Retains round((1 - drop_fraction) * |tests|) tests, chosen uniformly
// without replacement, keeping the survivors in their original order.
ProgrammingTask inject_test_dropout(const ProgrammingTask& task, double drop_fraction,
                                    uint64_t seed);

// Among candidates labeled positive under the weak pool, the fraction labeled
// negative under the full pool; 0 when the weak pool has no positives.
// Candidates are matched by candidate_id and must coincide.
double measure_false_positive_rate(const LabeledPool& weak, const LabeledPool& full);

}  // namespace passrank
