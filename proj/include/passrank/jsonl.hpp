#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "passrank/core.hpp"

namespace passrank::io {

// Thrown on malformed input; carries the 1-based line number so CLI
// diagnostics can name the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, int line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

// Records keep unrecognized JSON fields in `extra` so files round-trip
// without loss.
struct TaskRecord {
  ProgrammingTask task;
  nlohmann::json extra = nlohmann::json::object();
};

struct CandidateRecord {
  Candidate candidate;
  nlohmann::json extra = nlohmann::json::object();
};

struct LabelRecord {
  std::string candidate_id;
  std::string task_id;
  Label label;
  nlohmann::json extra = nlohmann::json::object();
};

std::vector<TaskRecord> read_tasks_file(const std::string& path);
std::vector<CandidateRecord> read_candidates_file(const std::string& path);
// Lines holding a top-level "summary" object (appended by the labeling CLI)
// are skipped.
std::vector<LabelRecord> read_labels_file(const std::string& path);

void write_tasks_file(const std::string& path, const std::vector<TaskRecord>& tasks);
void write_candidates_file(const std::string& path, const std::vector<CandidateRecord>& cands);
void write_labels_file(const std::string& path, const std::vector<LabelRecord>& labels);

nlohmann::json task_to_json(const TaskRecord& rec);
nlohmann::json candidate_to_json(const CandidateRecord& rec);
nlohmann::json label_to_json(const LabelRecord& rec);

// Groups candidates by task (file order preserved within each pool) and
// attaches labels by candidate_id. Pools appear in tasks-file order; tasks
// with no candidates yield empty pools. Throws std::runtime_error on
// candidates referencing unknown tasks or candidates missing labels.
std::vector<LabeledPool> assemble_pools(const std::vector<TaskRecord>& tasks,
                                        const std::vector<CandidateRecord>& candidates,
                                        const std::vector<LabelRecord>& labels);

// Flat "key = value" config files with '#' comments. Unknown keys are the
// caller's business; this just tokenizes.
std::map<std::string, std::string> read_kv_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace passrank::io
