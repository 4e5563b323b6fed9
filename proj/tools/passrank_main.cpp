// passrank command-line interface: label -> train -> rank/eval pipelines plus
// the simulation and synthetic-data commands. Batch-only; exit codes are
// stable for scripting: 0 success, 1 usage error, 2 data error, 3 judge or
// runtime environment error.

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "passrank/experiments.hpp"
#include "passrank/judge.hpp"
#include "passrank/jsonl.hpp"
#include "passrank/learning.hpp"
#include "passrank/metrics.hpp"
#include "passrank/rng.hpp"
#include "passrank/scorer.hpp"
#include "passrank/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace passrank;

namespace {

struct JudgeEnvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

std::vector<int> parse_ks(const std::string& csv) {
  std::vector<int> ks;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    ks.push_back(std::stoi(item));
    if (ks.back() < 1) throw std::invalid_argument("k values must be >= 1");
  }
  if (ks.empty()) throw std::invalid_argument("--ks must name at least one k");
  return ks;
}

std::vector<double> parse_fractions(const std::string& csv) {
  std::vector<double> fractions;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    fractions.push_back(std::stod(item));
    if (fractions.back() < 0.0 || fractions.back() > 1.0) {
      throw std::invalid_argument("fractions must be in [0,1]");
    }
  }
  if (fractions.empty()) throw std::invalid_argument("--fractions must name at least one value");
  return fractions;
}

bool interpreter_available(const std::string& cmd_template) {
  const auto argv = split_command_template(cmd_template);
  if (argv.empty()) return false;
  const std::string& exe = argv[0];
  if (exe.find('/') != std::string::npos) return ::access(exe.c_str(), X_OK) == 0;
  const char* path_env = std::getenv("PATH");
  if (path_env == nullptr) return false;
  std::stringstream ss(path_env);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) continue;
    if (::access((dir + "/" + exe).c_str(), X_OK) == 0) return true;
  }
  return false;
}

// ------------------------- dataset file handling -------------------------

struct DataFiles {
  std::vector<io::TaskRecord> tasks;
  std::vector<io::CandidateRecord> candidates;
  std::vector<io::LabelRecord> labels;
};

// Classifies each JSONL file by the keys of its first record.
DataFiles read_data_files(const std::vector<std::string>& paths) {
  DataFiles data;
  for (const auto& path : paths) {
    std::ifstream probe(path);
    if (!probe) throw std::runtime_error("cannot open file: " + path);
    std::string line;
    json first;
    int line_no = 0;
    while (std::getline(probe, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      first = json::parse(line, nullptr, false);
      if (first.is_discarded() || !first.is_object()) {
        throw io::ParseError(path, line_no, "invalid JSON");
      }
      break;
    }
    if (first.is_null()) throw std::runtime_error("file is empty: " + path);

    if (first.contains("source")) {
      auto records = io::read_candidates_file(path);
      data.candidates.insert(data.candidates.end(), records.begin(), records.end());
    } else if (first.contains("label") || first.contains("summary")) {
      auto records = io::read_labels_file(path);
      data.labels.insert(data.labels.end(), records.begin(), records.end());
    } else if (first.contains("description") || first.contains("tests")) {
      auto records = io::read_tasks_file(path);
      data.tasks.insert(data.tasks.end(), records.begin(), records.end());
    } else {
      throw std::runtime_error("cannot classify data file (expected task, candidate, or label records): " + path);
    }
  }
  return data;
}

std::vector<LabeledPool> load_validated_pools(const std::vector<std::string>& paths) {
  const DataFiles data = read_data_files(paths);
  if (data.tasks.empty()) throw std::runtime_error("no task records among data files");
  if (data.candidates.empty()) throw std::runtime_error("no candidate records among data files");
  if (data.labels.empty()) throw std::runtime_error("no label records among data files");
  auto pools = io::assemble_pools(data.tasks, data.candidates, data.labels);
  for (const auto& pool : pools) {
    const ValidationReport report = validate_pool(pool);
    for (const auto& warning : report.warnings) std::cerr << "warning: " << warning << '\n';
    if (!report.ok()) {
      throw std::runtime_error("pool '" + pool.task.task_id +
                               "' failed validation: " + report.errors.front().detail);
    }
  }
  return pools;
}

// Scorer/encoder keys live in the same config file as the trainer keys.
struct TrainFileConfig {
  ScorerConfig scorer;
  EncoderConfig encoder;
  TrainConfig train;
};

TrainFileConfig parse_train_file_config(const std::string& path) {
  TrainFileConfig out;
  auto as_int = [](const std::string& key, const std::string& value) {
    try {
      return std::stoi(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("config key '" + key + "': invalid integer '" + value + "'");
    }
  };
  std::map<std::string, std::string> train_kv;
  for (const auto& [key, value] : io::read_kv_file(path)) {
    if (key == "arch") {
      if (value == "linear") out.scorer.arch = ScorerConfig::Arch::linear;
      else if (value == "mlp") out.scorer.arch = ScorerConfig::Arch::mlp;
      else throw std::invalid_argument("config key 'arch': unknown value '" + value + "'");
    } else if (key == "hidden") {
      out.scorer.hidden = as_int(key, value);
    } else if (key == "init_seed") {
      try {
        out.scorer.init_seed = std::stoull(value);
      } catch (const std::exception&) {
        throw std::invalid_argument("config key 'init_seed': invalid seed '" + value + "'");
      }
    } else if (key == "encoder_dim") {
      out.encoder.dim = as_int(key, value);
    } else if (key == "use_bigrams") {
      out.encoder.use_bigrams = value == "true" || value == "1";
    } else {
      train_kv[key] = value;
    }
  }
  out.train = train_config_from_kv(train_kv);
  validate(out.scorer);
  validate(out.encoder);
  return out;
}

// ------------------------------ subcommands ------------------------------

int cmd_label(const std::string& tasks_path, const std::string& candidates_path,
              const std::string& out_path, const std::string& interpreter, int workers,
              std::optional<double> drop_tests, uint64_t seed,
              const std::string& full_labels_path) {
  ExecConfig cfg;
  cfg.interpreter_cmd = interpreter;
  cfg.workers = workers;
  validate(cfg);
  if (!interpreter_available(interpreter)) {
    throw JudgeEnvError("interpreter not found: " + interpreter);
  }

  const auto tasks = io::read_tasks_file(tasks_path);
  const auto candidates = io::read_candidates_file(candidates_path);

  std::map<std::string, size_t> task_index;
  for (size_t i = 0; i < tasks.size(); ++i) task_index[tasks[i].task.task_id] = i;
  std::vector<std::vector<Candidate>> by_task(tasks.size());
  for (const auto& rec : candidates) {
    auto it = task_index.find(rec.candidate.task_id);
    if (it == task_index.end()) {
      throw std::runtime_error("candidate '" + rec.candidate.candidate_id +
                               "' references unknown task '" + rec.candidate.task_id + "'");
    }
    by_task[it->second].push_back(rec.candidate);
  }

  std::vector<io::LabelRecord> records;
  records.reserve(candidates.size());
  for (size_t t = 0; t < tasks.size(); ++t) {
    ProgrammingTask task = tasks[t].task;
    if (drop_tests) {
      task = inject_test_dropout(task, *drop_tests, mix_seed({seed, static_cast<uint64_t>(t)}));
    }
    const LabeledPool pool = label_pool(by_task[t], task, cfg);
    for (const auto& entry : pool.entries) {
      io::LabelRecord rec;
      rec.candidate_id = entry.candidate.candidate_id;
      rec.task_id = entry.candidate.task_id;
      rec.label = entry.label;
      records.push_back(std::move(rec));
    }
  }
  io::write_labels_file(out_path, records);

  if (!full_labels_path.empty()) {
    const auto full = io::read_labels_file(full_labels_path);
    std::map<std::string, int> full_by_id;
    for (const auto& rec : full) full_by_id[rec.task_id + "\x1f" + rec.candidate_id] = rec.label.value;
    int64_t weak_pos = 0, false_pos = 0;
    for (const auto& rec : records) {
      if (rec.label.value != 1) continue;
      auto it = full_by_id.find(rec.task_id + "\x1f" + rec.candidate_id);
      if (it == full_by_id.end()) {
        throw std::runtime_error("candidate '" + rec.candidate_id + "' missing from --full-labels file");
      }
      ++weak_pos;
      if (it->second == 0) ++false_pos;
    }
    const double fp_rate =
        weak_pos == 0 ? 0.0 : static_cast<double>(false_pos) / static_cast<double>(weak_pos);
    json summary;
    summary["summary"] = {{"measured_fp_rate", fp_rate},
                          {"weak_positives", weak_pos},
                          {"false_positives", false_pos},
                          {"drop_tests", drop_tests ? *drop_tests : 0.0}};
    std::ofstream append(out_path, std::ios::binary | std::ios::app);
    append << summary.dump() << '\n';
    std::cout << "measured_fp_rate: " << fp_rate << " (" << false_pos << "/" << weak_pos << ")\n";
  }

  std::cout << "labeled " << records.size() << " candidates across " << tasks.size()
            << " tasks -> " << out_path << '\n';
  return kExitOk;
}

int cmd_train(const std::vector<std::string>& data_paths, const std::string& config_path,
              const std::string& out_path, const std::string& history_path, bool ablate_passk) {
  TrainFileConfig cfg = parse_train_file_config(config_path);
  if (ablate_passk) {
    cfg.train.objective = Objective::classification_only;
    cfg.train.lambda = 1.0;
  }

  const auto pools = load_validated_pools(data_paths);
  const TrainResult result = train(pools, cfg.scorer, cfg.encoder, cfg.train);

  save_checkpoint(result.params, out_path);
  const std::string hist = history_path.empty() ? out_path + ".history.jsonl" : history_path;
  io::write_text_file(hist, history_to_jsonl(result.history));

  if (!result.history.empty()) {
    const auto& last = result.history.back();
    if (!std::isfinite(last.mean_loss.total)) {
      throw JudgeEnvError("training diverged: final loss is not finite");
    }
    std::cout << "epoch " << last.epoch << " total loss " << last.mean_loss.total
              << " train pass@1 " << last.train_pass_at.at(1) << '\n';
  }
  std::cout << "checkpoint -> " << out_path << "\nhistory -> " << hist << '\n';
  return kExitOk;
}

int cmd_rank(const std::string& checkpoint_path, const std::string& tasks_path,
             const std::string& candidates_path, const std::string& out_path,
             std::optional<int> top) {
  const ScorerParams params = load_checkpoint(checkpoint_path);
  const auto tasks = io::read_tasks_file(tasks_path);
  const auto candidates = io::read_candidates_file(candidates_path);

  std::map<std::string, size_t> task_index;
  for (size_t i = 0; i < tasks.size(); ++i) task_index[tasks[i].task.task_id] = i;
  std::vector<std::vector<Candidate>> by_task(tasks.size());
  for (const auto& rec : candidates) {
    auto it = task_index.find(rec.candidate.task_id);
    if (it == task_index.end()) {
      throw std::runtime_error("candidate '" + rec.candidate.candidate_id +
                               "' references unknown task '" + rec.candidate.task_id + "'");
    }
    by_task[it->second].push_back(rec.candidate);
  }

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + out_path);
  for (size_t t = 0; t < tasks.size(); ++t) {
    LabeledPool pool;
    pool.task = tasks[t].task;
    std::vector<double> scores;
    for (const auto& cand : by_task[t]) {
      scores.push_back(score(params, featurize(pool.task, cand, params.encoder_cfg)));
      pool.entries.push_back(LabeledEntry{cand, Label{}});
    }
    const RankedPool ranked = rank_pool(std::move(pool), std::move(scores));
    const int limit = top ? std::min<int>(*top, static_cast<int>(ranked.order.size()))
                          : static_cast<int>(ranked.order.size());
    for (int r = 0; r < limit; ++r) {
      const int idx = ranked.order[static_cast<size_t>(r)];
      json row;
      row["task_id"] = ranked.pool.task.task_id;
      row["rank"] = r + 1;
      row["candidate_id"] = ranked.pool.entries[static_cast<size_t>(idx)].candidate.candidate_id;
      row["score"] = ranked.scores[static_cast<size_t>(idx)];
      out << row.dump() << '\n';
    }
  }
  std::cout << "ranked " << candidates.size() << " candidates -> " << out_path << '\n';
  return kExitOk;
}

int cmd_eval(const std::string& checkpoint_path, const std::vector<std::string>& data_paths,
             const std::string& ks_csv, const std::string& out_path) {
  const ScorerParams params = load_checkpoint(checkpoint_path);
  const std::vector<int> ks = parse_ks(ks_csv);
  const auto pools = load_validated_pools(data_paths);

  const MetricReport report = evaluate(params, pools, ks);
  io::write_text_file(out_path, metric_report_to_json(report).dump(2) + "\n");
  for (int k : ks) std::cout << "pass@" << k << ": " << report.averages.at(k) << '\n';
  return kExitOk;
}

int cmd_simulate(int n, int c, int k, int64_t trials, uint64_t seed) {
  const double analytic = estimated_pass_at_k(n, c, k);
  const double variance = pass_at_k_variance(n, c, k);
  const MonteCarloResult mc = monte_carlo_pass_at_k(n, c, k, trials, seed);
  std::cout << "estimated_pass_at_k: " << analytic << '\n'
            << "analytic_variance: " << variance << '\n'
            << "monte_carlo_mean: " << mc.mean << " (gap " << std::abs(mc.mean - analytic) << ")\n"
            << "monte_carlo_variance: " << mc.variance << " (gap " << std::abs(mc.variance - variance)
            << ")\n";
  return kExitOk;
}

int cmd_synth(const std::string& kind, const std::string& out_dir, uint64_t seed,
              const std::string& config_path) {
  fs::create_directories(out_dir);
  if (kind == "exec") {
    const ExecutableCorpus corpus = gen_executable_corpus(seed);
    std::vector<io::TaskRecord> tasks;
    for (const auto& t : corpus.tasks) tasks.push_back(io::TaskRecord{t});
    std::vector<io::CandidateRecord> cands;
    for (const auto& c : corpus.candidates) cands.push_back(io::CandidateRecord{c});
    io::write_tasks_file(out_dir + "/tasks.jsonl", tasks);
    io::write_candidates_file(out_dir + "/candidates.jsonl", cands);
    std::ofstream manifest(out_dir + "/manifest.jsonl", std::ios::binary | std::ios::trunc);
    for (const auto& entry : corpus.manifest) {
      json row;
      row["candidate_id"] = entry.candidate_id;
      row["task_id"] = entry.task_id;
      row["label"] = entry.label;
      row["intended_verdict"] = to_string(entry.intended_verdict);
      manifest << row.dump() << '\n';
    }
    std::cout << "executable corpus: " << corpus.tasks.size() << " tasks, "
              << corpus.candidates.size() << " candidates -> " << out_dir << '\n';
    return kExitOk;
  }
  if (kind == "feature") {
    SynthConfig cfg;
    if (!config_path.empty()) {
      const auto kv = io::read_kv_file(config_path);
      const BenchmarkSpec spec = benchmark_spec_from_kv(kv);
      cfg = spec.gen;
    }
    cfg.seed = seed;
    const FeatureBenchmark bench = gen_feature_benchmark(cfg);

    std::vector<io::TaskRecord> tasks;
    std::vector<io::CandidateRecord> cands;
    std::vector<io::LabelRecord> labels;
    std::ofstream truth(out_dir + "/truth.jsonl", std::ios::binary | std::ios::trunc);
    for (size_t p = 0; p < bench.pools.size(); ++p) {
      const auto& pool = bench.pools[p];
      tasks.push_back(io::TaskRecord{pool.task});
      for (size_t i = 0; i < pool.entries.size(); ++i) {
        const auto& entry = pool.entries[i];
        cands.push_back(io::CandidateRecord{entry.candidate});
        io::LabelRecord rec;
        rec.candidate_id = entry.candidate.candidate_id;
        rec.task_id = entry.candidate.task_id;
        rec.label = entry.label;
        labels.push_back(std::move(rec));
        json row;
        row["candidate_id"] = entry.candidate.candidate_id;
        row["task_id"] = entry.candidate.task_id;
        row["true_label"] = bench.true_labels[p][i];
        row["intended_verdict"] =
            to_string(bench.true_labels[p][i] == 1 ? VerdictKind::Accepted : VerdictKind::WrongAnswer);
        truth << row.dump() << '\n';
      }
    }
    io::write_tasks_file(out_dir + "/tasks.jsonl", tasks);
    io::write_candidates_file(out_dir + "/candidates.jsonl", cands);
    io::write_labels_file(out_dir + "/labels.jsonl", labels);
    std::cout << "feature benchmark: " << bench.pools.size() << " tasks, measured FP rate "
              << bench.measured_fp_rate() << " -> " << out_dir << '\n';
    return kExitOk;
  }
  throw std::invalid_argument("--kind must be 'exec' or 'feature'");
}

int cmd_fp_sweep(const std::string& config_path, const std::string& fractions_csv,
                 const std::string& out_path) {
  const BenchmarkSpec spec = benchmark_spec_from_kv(io::read_kv_file(config_path));
  const std::vector<double> fractions = parse_fractions(fractions_csv);

  const std::vector<FpSweepRow> rows = run_fp_sweep(spec, fractions);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + out_path);
  std::cout << "fraction  fp_rate  full@1  full@3  ablated@1  ablated@3\n";
  for (const auto& row : rows) {
    json j;
    j["fraction"] = row.fraction;
    j["measured_fp_rate"] = row.measured_fp_rate;
    j["full"] = {{"pass1", row.full_pass1}, {"pass3", row.full_pass3}};
    j["ablated"] = {{"pass1", row.ablated_pass1}, {"pass3", row.ablated_pass3}};
    j["seed"] = spec.gen.seed;
    out << j.dump() << '\n';
    std::cout << row.fraction << "  " << row.measured_fp_rate << "  " << row.full_pass1 << "  "
              << row.full_pass3 << "  " << row.ablated_pass1 << "  " << row.ablated_pass3 << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank LLM-generated code candidates by likelihood of correctness"};
  app.require_subcommand(1);

  // label
  auto* label = app.add_subcommand("label", "execute candidates against task tests and write labels");
  std::string label_tasks, label_candidates, label_out, label_full;
  std::string label_interpreter = "python3 {file}";
  int label_workers = 4;
  std::optional<double> label_drop;
  uint64_t label_seed = 0;
  label->add_option("--tasks", label_tasks, "tasks JSONL")->required();
  label->add_option("--candidates", label_candidates, "candidates JSONL")->required();
  label->add_option("--out", label_out, "output labels JSONL")->required();
  label->add_option("--interpreter", label_interpreter, "command template with {file} placeholder");
  label->add_option("--workers", label_workers, "parallel judge workers")->check(CLI::PositiveNumber);
  label->add_option("--drop-tests", label_drop, "fraction of tests to drop per task")
      ->check(CLI::Range(0.0, 1.0));
  label->add_option("--seed", label_seed, "seed for test dropout");
  label->add_option("--full-labels", label_full, "full-test labels to measure the FP rate against");

  // train
  auto* train_cmd = app.add_subcommand("train", "fit the ranker on labeled pools");
  std::vector<std::string> train_data;
  std::string train_config, train_out, train_history;
  bool train_ablate = false;
  train_cmd->add_option("--data", train_data, "task/candidate/label JSONL files")->required()->expected(-1);
  train_cmd->add_option("--config", train_config, "key = value training config")->required();
  train_cmd->add_option("--out", train_out, "output checkpoint path")->required();
  train_cmd->add_option("--history", train_history, "history JSONL path (default: <out>.history.jsonl)");
  train_cmd->add_flag("--ablate-passk", train_ablate, "train the classification-only ablation");

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "score and order candidates per task");
  std::string rank_checkpoint, rank_tasks, rank_candidates, rank_out;
  std::optional<int> rank_top;
  rank_cmd->add_option("--checkpoint", rank_checkpoint, "scorer checkpoint")->required();
  rank_cmd->add_option("--tasks", rank_tasks, "tasks JSONL")->required();
  rank_cmd->add_option("--candidates", rank_candidates, "candidates JSONL")->required();
  rank_cmd->add_option("--out", rank_out, "output ranking JSONL")->required();
  rank_cmd->add_option("--top", rank_top, "emit only the top K per task")->check(CLI::PositiveNumber);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "compute ranked pass@k on labeled pools");
  std::string eval_checkpoint, eval_out;
  std::vector<std::string> eval_data;
  std::string eval_ks = "1,2,3,5,10";
  eval_cmd->add_option("--checkpoint", eval_checkpoint, "scorer checkpoint")->required();
  eval_cmd->add_option("--data", eval_data, "task/candidate/label JSONL files")->required()->expected(-1);
  eval_cmd->add_option("--ks", eval_ks, "comma-separated k values");
  eval_cmd->add_option("--out", eval_out, "output metric report JSON")->required();

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "analytic vs Monte Carlo pass@k for one pool shape");
  int sim_n = 200, sim_c = 10, sim_k = 5;
  int64_t sim_trials = 100000;
  uint64_t sim_seed = 1;
  sim_cmd->add_option("--n", sim_n, "pool size")->required();
  sim_cmd->add_option("--c", sim_c, "correct candidates")->required();
  sim_cmd->add_option("--k", sim_k, "inspection budget")->required();
  sim_cmd->add_option("--trials", sim_trials, "Monte Carlo trials");
  sim_cmd->add_option("--seed", sim_seed, "Monte Carlo seed");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate synthetic benchmark files");
  std::string synth_kind = "exec", synth_dir, synth_config;
  uint64_t synth_seed = 0;
  synth_cmd->add_option("--kind", synth_kind, "'exec' (judge corpus) or 'feature' (planted pools)");
  synth_cmd->add_option("--out-dir", synth_dir, "output directory")->required();
  synth_cmd->add_option("--seed", synth_seed, "generator seed");
  synth_cmd->add_option("--config", synth_config, "generator config (feature kind)");

  // fp-sweep
  auto* sweep_cmd = app.add_subcommand(
      "fp-sweep", "train full and ablated objectives across label-noise fractions");
  std::string sweep_config, sweep_fractions = "0.0,0.1,0.2,0.3", sweep_out;
  sweep_cmd->add_option("--data-generator-config", sweep_config, "benchmark spec config")->required();
  sweep_cmd->add_option("--fractions", sweep_fractions, "comma-separated noise fractions");
  sweep_cmd->add_option("--out", sweep_out, "output rows JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (label->parsed()) {
      return cmd_label(label_tasks, label_candidates, label_out, label_interpreter, label_workers,
                       label_drop, label_seed, label_full);
    }
    if (train_cmd->parsed()) {
      return cmd_train(train_data, train_config, train_out, train_history, train_ablate);
    }
    if (rank_cmd->parsed()) {
      return cmd_rank(rank_checkpoint, rank_tasks, rank_candidates, rank_out, rank_top);
    }
    if (eval_cmd->parsed()) return cmd_eval(eval_checkpoint, eval_data, eval_ks, eval_out);
    if (sim_cmd->parsed()) return cmd_simulate(sim_n, sim_c, sim_k, sim_trials, sim_seed);
    if (synth_cmd->parsed()) return cmd_synth(synth_kind, synth_dir, synth_seed, synth_config);
    if (sweep_cmd->parsed()) return cmd_fp_sweep(sweep_config, sweep_fractions, sweep_out);
  } catch (const JudgeEnvError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const CheckpointError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
