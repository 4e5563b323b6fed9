#include "passrank/jsonl.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace passrank::io {

using nlohmann::json;

namespace {

json parse_line(const std::string& path, int line_no, const std::string& line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ParseError(path, line_no, "invalid JSON");
  if (!j.is_object()) throw ParseError(path, line_no, "expected a JSON object");
  return j;
}

std::string take_string(json& j, const char* key, const std::string& path, int line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw ParseError(path, line_no, std::string("missing or non-string field '") + key + "'");
  }
  std::string value = it->get<std::string>();
  j.erase(it);
  return value;
}

// Iterates a JSONL file, invoking fn(line_no, parsed object) per record line.
template <typename Fn>
void for_each_record(const std::string& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char ch : line) {
      if (ch != ' ' && ch != '\t') { blank = false; break; }
    }
    if (blank) continue;
    fn(line_no, parse_line(path, line_no, line));
  }
}

}  // namespace

std::vector<TaskRecord> read_tasks_file(const std::string& path) {
  std::vector<TaskRecord> out;
  for_each_record(path, [&](int line_no, json j) {
    TaskRecord rec;
    rec.task.task_id = take_string(j, "task_id", path, line_no);
    rec.task.description = take_string(j, "description", path, line_no);
    if (rec.task.task_id.empty()) throw ParseError(path, line_no, "task_id is empty");
    if (auto it = j.find("time_limit_ms"); it != j.end()) {
      if (!it->is_number_integer() || it->get<int64_t>() < 0) {
        throw ParseError(path, line_no, "time_limit_ms must be a non-negative integer");
      }
      rec.task.time_limit_ms = it->get<int64_t>();
      j.erase(it);
    }
    if (auto it = j.find("tests"); it != j.end()) {
      if (!it->is_array()) throw ParseError(path, line_no, "tests must be an array");
      for (auto& t : *it) {
        if (!t.is_object()) throw ParseError(path, line_no, "each test must be an object");
        TestCase tc;
        tc.input = t.value("input", std::string());
        tc.expected_output = t.value("expected_output", std::string());
        rec.task.tests.push_back(std::move(tc));
      }
      j.erase(it);
    }
    rec.extra = std::move(j);
    out.push_back(std::move(rec));
  });
  return out;
}

std::vector<CandidateRecord> read_candidates_file(const std::string& path) {
  std::vector<CandidateRecord> out;
  for_each_record(path, [&](int line_no, json j) {
    CandidateRecord rec;
    rec.candidate.candidate_id = take_string(j, "candidate_id", path, line_no);
    rec.candidate.task_id = take_string(j, "task_id", path, line_no);
    rec.candidate.source = take_string(j, "source", path, line_no);
    if (rec.candidate.candidate_id.empty()) throw ParseError(path, line_no, "candidate_id is empty");
    if (rec.candidate.source.empty()) throw ParseError(path, line_no, "source is empty");
    if (auto it = j.find("gen_meta"); it != j.end()) {
      if (!it->is_object()) throw ParseError(path, line_no, "gen_meta must be an object");
      GenerationMeta meta;
      meta.model_name = it->value("model_name", std::string());
      meta.temperature = it->value("temperature", 0.0);
      meta.nucleus_p = it->value("nucleus_p", 0.0);
      meta.sample_index = it->value("sample_index", int64_t{0});
      if (it->contains("temperature") && !(meta.temperature > 0)) {
        throw ParseError(path, line_no, "gen_meta.temperature must be > 0");
      }
      if (it->contains("nucleus_p") && !(meta.nucleus_p > 0 && meta.nucleus_p <= 1)) {
        throw ParseError(path, line_no, "gen_meta.nucleus_p must be in (0,1]");
      }
      rec.candidate.gen_meta = std::move(meta);
      j.erase(it);
    }
    rec.extra = std::move(j);
    out.push_back(std::move(rec));
  });
  return out;
}

std::vector<LabelRecord> read_labels_file(const std::string& path) {
  std::vector<LabelRecord> out;
  for_each_record(path, [&](int line_no, json j) {
    if (j.contains("summary")) return;  // trailing run summary, not a label
    LabelRecord rec;
    rec.candidate_id = take_string(j, "candidate_id", path, line_no);
    rec.task_id = take_string(j, "task_id", path, line_no);
    auto lit = j.find("label");
    if (lit == j.end() || !lit->is_number_integer()) {
      throw ParseError(path, line_no, "missing or non-integer field 'label'");
    }
    const int64_t value = lit->get<int64_t>();
    if (value != 0 && value != 1) throw ParseError(path, line_no, "label must be 0 or 1");
    rec.label.value = static_cast<int>(value);
    j.erase(lit);
    if (auto it = j.find("verdict"); it != j.end()) {
      if (!it->is_object()) throw ParseError(path, line_no, "verdict must be an object");
      const std::string kind = it->value("kind", std::string());
      auto parsed = verdict_kind_from_string(kind);
      if (!parsed) throw ParseError(path, line_no, "unknown verdict kind '" + kind + "'");
      rec.label.verdict.kind = *parsed;
      if (it->contains("failed_test_index")) {
        rec.label.verdict.failed_test_index = (*it)["failed_test_index"].get<int>();
      }
      rec.label.verdict.tests_executed = it->value("tests_executed", 0);
      if (it->contains("wall_time_ms")) {
        rec.label.verdict.wall_time_ms = (*it)["wall_time_ms"].get<std::vector<double>>();
      }
      j.erase(it);
    } else {
      // Labels without verdict detail stay internally consistent.
      rec.label.verdict.kind = rec.label.value == 1 ? VerdictKind::Accepted
                                                    : VerdictKind::WrongAnswer;
    }
    rec.extra = std::move(j);
    out.push_back(std::move(rec));
  });
  return out;
}

json task_to_json(const TaskRecord& rec) {
  json j = rec.extra.is_object() ? rec.extra : json::object();
  j["task_id"] = rec.task.task_id;
  j["description"] = rec.task.description;
  j["time_limit_ms"] = rec.task.time_limit_ms;
  json tests = json::array();
  for (const auto& t : rec.task.tests) {
    tests.push_back({{"input", t.input}, {"expected_output", t.expected_output}});
  }
  j["tests"] = std::move(tests);
  return j;
}

json candidate_to_json(const CandidateRecord& rec) {
  json j = rec.extra.is_object() ? rec.extra : json::object();
  j["candidate_id"] = rec.candidate.candidate_id;
  j["task_id"] = rec.candidate.task_id;
  j["source"] = rec.candidate.source;
  if (rec.candidate.gen_meta) {
    const auto& m = *rec.candidate.gen_meta;
    j["gen_meta"] = {{"model_name", m.model_name},
                     {"temperature", m.temperature},
                     {"nucleus_p", m.nucleus_p},
                     {"sample_index", m.sample_index}};
  }
  return j;
}

json label_to_json(const LabelRecord& rec) {
  json j = rec.extra.is_object() ? rec.extra : json::object();
  j["candidate_id"] = rec.candidate_id;
  j["task_id"] = rec.task_id;
  j["label"] = rec.label.value;
  json verdict = {{"kind", to_string(rec.label.verdict.kind)},
                  {"tests_executed", rec.label.verdict.tests_executed},
                  {"wall_time_ms", rec.label.verdict.wall_time_ms}};
  if (rec.label.verdict.failed_test_index) {
    verdict["failed_test_index"] = *rec.label.verdict.failed_test_index;
  }
  j["verdict"] = std::move(verdict);
  return j;
}

namespace {

template <typename T, typename Fn>
void write_jsonl(const std::string& path, const std::vector<T>& records, Fn&& to_json_fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  for (const auto& rec : records) out << to_json_fn(rec).dump() << '\n';
}

}  // namespace

void write_tasks_file(const std::string& path, const std::vector<TaskRecord>& tasks) {
  write_jsonl(path, tasks, task_to_json);
}

void write_candidates_file(const std::string& path, const std::vector<CandidateRecord>& cands) {
  write_jsonl(path, cands, candidate_to_json);
}

void write_labels_file(const std::string& path, const std::vector<LabelRecord>& labels) {
  write_jsonl(path, labels, label_to_json);
}

std::vector<LabeledPool> assemble_pools(const std::vector<TaskRecord>& tasks,
                                        const std::vector<CandidateRecord>& candidates,
                                        const std::vector<LabelRecord>& labels) {
  std::unordered_map<std::string, size_t> task_index;
  std::vector<LabeledPool> pools;
  pools.reserve(tasks.size());
  for (const auto& t : tasks) {
    if (!task_index.emplace(t.task.task_id, pools.size()).second) {
      throw std::runtime_error("duplicate task_id '" + t.task.task_id + "' in tasks input");
    }
    pools.push_back(LabeledPool{t.task, {}});
  }

  std::unordered_map<std::string, const Label*> label_by_candidate;
  for (const auto& l : labels) {
    label_by_candidate[l.task_id + "\x1f" + l.candidate_id] = &l.label;
  }

  for (const auto& c : candidates) {
    auto ti = task_index.find(c.candidate.task_id);
    if (ti == task_index.end()) {
      throw std::runtime_error("candidate '" + c.candidate.candidate_id +
                               "' references unknown task '" + c.candidate.task_id + "'");
    }
    auto li = label_by_candidate.find(c.candidate.task_id + "\x1f" + c.candidate.candidate_id);
    if (li == label_by_candidate.end()) {
      throw std::runtime_error("candidate '" + c.candidate.candidate_id + "' has no label");
    }
    pools[ti->second].entries.push_back(LabeledEntry{c.candidate, *li->second});
  }
  return pools;
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, line_no, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(path, line_no, "empty key");
    if (!out.emplace(key, value).second) {
      throw ParseError(path, line_no, "duplicate key '" + key + "'");
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace passrank::io
