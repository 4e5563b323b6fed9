#include "passrank/judge.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "passrank/rng.hpp"

extern char** environ;

namespace passrank {

namespace fs = std::filesystem;

void validate(const ExecConfig& cfg) {
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (cfg.max_output_bytes < 1) throw std::invalid_argument("max_output_bytes must be >= 1");
  if (cfg.default_time_limit_ms < 1) throw std::invalid_argument("default_time_limit_ms must be >= 1");
  if (split_command_template(cfg.interpreter_cmd).empty()) {
    throw std::invalid_argument("interpreter_cmd is empty");
  }
}

std::vector<std::string> split_command_template(const std::string& cmd) {
  std::vector<std::string> argv;
  std::string current;
  for (char c : cmd) {
    if (c == ' ' || c == '\t') {
      if (!current.empty()) {
        argv.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) argv.push_back(std::move(current));
  return argv;
}

std::string normalize_output(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(std::move(line));
      line.clear();
    } else {
      line.push_back(c);
    }
  }
  if (!line.empty()) lines.push_back(std::move(line));

  for (auto& l : lines) {
    while (!l.empty() && (l.back() == ' ' || l.back() == '\t' || l.back() == '\r')) l.pop_back();
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  std::string out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

bool outputs_match(const std::string& actual, const std::string& expected) {
  return normalize_output(actual) == normalize_output(expected);
}

namespace {

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

struct RunOutcome {
  enum class Status { exited, signaled, timeout, output_overflow, startup_error };
  Status status = Status::exited;
  int exit_code = 0;
  std::string output;
  double wall_ms = 0.0;
  std::string error;
};

void set_nonblocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK); }

void close_fd(int& fd) {
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

// Child environment: pass-through with TMPDIR pointed at the judgment dir.
std::vector<std::string> build_env(const std::string& tmpdir) {
  std::vector<std::string> env;
  for (char** e = environ; *e != nullptr; ++e) {
    if (std::strncmp(*e, "TMPDIR=", 7) != 0) env.emplace_back(*e);
  }
  env.push_back("TMPDIR=" + tmpdir);
  return env;
}

RunOutcome run_one_test(const std::vector<std::string>& argv, const std::string& stdin_data,
                        int64_t time_limit_ms, int64_t max_output_bytes,
                        const std::string& tmpdir) {
  ignore_sigpipe_once();

  RunOutcome outcome;
  // Every end is CLOEXEC: workers fork concurrently, and a pipe fd leaked
  // across another thread's fork would hold this child's stdout open past its
  // exit, masking EOF. The dup2 copies below drop CLOEXEC, so the program
  // still gets its stdio.
  int in_pipe[2] = {-1, -1};
  int out_pipe[2] = {-1, -1};
  int exec_pipe[2] = {-1, -1};  // reports execvpe's errno; closes on success
  if (::pipe2(in_pipe, O_CLOEXEC) != 0 || ::pipe2(out_pipe, O_CLOEXEC) != 0 ||
      ::pipe2(exec_pipe, O_CLOEXEC) != 0) {
    outcome.status = RunOutcome::Status::startup_error;
    outcome.error = "pipe creation failed";
    for (int* p : {in_pipe, out_pipe, exec_pipe}) {
      close_fd(p[0]);
      close_fd(p[1]);
    }
    return outcome;
  }

  // Built before fork: the child of a multithreaded parent must not allocate.
  const std::vector<std::string> env = build_env(tmpdir);
  std::vector<char*> cargv, cenv;
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);
  for (const auto& e : env) cenv.push_back(const_cast<char*>(e.c_str()));
  cenv.push_back(nullptr);

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) {
    outcome.status = RunOutcome::Status::startup_error;
    outcome.error = "fork failed";
    for (int* p : {in_pipe, out_pipe, exec_pipe}) {
      close_fd(p[0]);
      close_fd(p[1]);
    }
    return outcome;
  }

  if (pid == 0) {
    ::setpgid(0, 0);  // own process group so a timeout kill reaps grandchildren
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_WRONLY | O_CLOEXEC);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    // originals are CLOEXEC and vanish at exec; only the stdio dups remain

    ::execvpe(cargv[0], cargv.data(), cenv.data());
    const int err = errno;
    ssize_t ignored = ::write(exec_pipe[1], &err, sizeof err);
    (void)ignored;
    ::_exit(127);
  }

  ::setpgid(pid, pid);  // both sides set it, closing the fork/kill race
  close_fd(in_pipe[0]);
  close_fd(out_pipe[1]);
  close_fd(exec_pipe[1]);

  // Blocks until exec succeeds (EOF) or the child reports its errno.
  int exec_errno = 0;
  const ssize_t got = ::read(exec_pipe[0], &exec_errno, sizeof exec_errno);
  close_fd(exec_pipe[0]);
  if (got > 0) {
    close_fd(in_pipe[1]);
    close_fd(out_pipe[0]);
    int status = 0;
    ::waitpid(pid, &status, 0);
    outcome.status = RunOutcome::Status::startup_error;
    outcome.error = std::string("cannot execute '") + argv[0] + "': " + std::strerror(exec_errno);
    outcome.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return outcome;
  }

  set_nonblocking(in_pipe[1]);
  set_nonblocking(out_pipe[0]);

  const auto deadline = start + std::chrono::milliseconds(time_limit_ms);
  size_t written = 0;
  bool stdin_open = true;
  bool stdout_open = true;
  bool killed = false;
  bool overflow = false;
  char buffer[16384];

  if (stdin_data.empty()) {
    close_fd(in_pipe[1]);
    stdin_open = false;
  }

  while (stdout_open || stdin_open) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      killed = true;
      break;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();

    struct pollfd fds[2];
    nfds_t nfds = 0;
    int out_slot = -1, in_slot = -1;
    if (stdout_open) {
      out_slot = static_cast<int>(nfds);
      fds[nfds++] = {out_pipe[0], POLLIN, 0};
    }
    if (stdin_open) {
      in_slot = static_cast<int>(nfds);
      fds[nfds++] = {in_pipe[1], POLLOUT, 0};
    }

    const int rc = ::poll(fds, nfds, static_cast<int>(std::max<int64_t>(remaining, 1)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      killed = true;
      break;
    }
    if (rc == 0) continue;  // deadline re-checked at loop top

    if (out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLHUP | POLLERR))) {
      const ssize_t n = ::read(out_pipe[0], buffer, sizeof buffer);
      if (n > 0) {
        outcome.output.append(buffer, static_cast<size_t>(n));
        if (static_cast<int64_t>(outcome.output.size()) > max_output_bytes) {
          overflow = true;
          killed = true;
          break;
        }
      } else if (n == 0) {
        close_fd(out_pipe[0]);
        stdout_open = false;
        if (stdin_open) {
          close_fd(in_pipe[1]);  // program finished; it will not read more input
          stdin_open = false;
        }
      } else if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
        close_fd(out_pipe[0]);
        stdout_open = false;
      }
    }

    if (in_slot >= 0 && stdin_open && (fds[in_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t n =
          ::write(in_pipe[1], stdin_data.data() + written, stdin_data.size() - written);
      if (n > 0) {
        written += static_cast<size_t>(n);
        if (written == stdin_data.size()) {
          close_fd(in_pipe[1]);
          stdin_open = false;
        }
      } else if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
        close_fd(in_pipe[1]);  // reader is gone (EPIPE); fine
        stdin_open = false;
      }
    }
  }

  if (killed) {
    ::kill(-pid, SIGKILL);
    ::kill(pid, SIGKILL);
  }
  close_fd(in_pipe[1]);
  close_fd(out_pipe[0]);

  int status = 0;
  ::waitpid(pid, &status, 0);
  outcome.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (overflow) {
    outcome.status = RunOutcome::Status::output_overflow;
  } else if (killed) {
    outcome.status = RunOutcome::Status::timeout;
  } else if (WIFSIGNALED(status)) {
    outcome.status = RunOutcome::Status::signaled;
    outcome.exit_code = -WTERMSIG(status);
  } else {
    outcome.status = RunOutcome::Status::exited;
    outcome.exit_code = WEXITSTATUS(status);
  }
  return outcome;
}

// Owns one judgment's scratch directory.
class JudgmentDir {
 public:
  JudgmentDir() {
    std::string templ = (fs::temp_directory_path() / "passrank-judge-XXXXXX").string();
    std::vector<char> buf(templ.begin(), templ.end());
    buf.push_back('\0');
    if (::mkdtemp(buf.data()) == nullptr) {
      throw std::runtime_error("mkdtemp failed");
    }
    path_ = buf.data();
  }

  ~JudgmentDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }

  JudgmentDir(const JudgmentDir&) = delete;
  JudgmentDir& operator=(const JudgmentDir&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::atomic<uint64_t> g_judgment_counter{0};

}  // namespace

Verdict run_candidate(const Candidate& candidate, const ProgrammingTask& task,
                      const ExecConfig& cfg) {
  validate(cfg);

  Verdict verdict;
  if (task.tests.empty()) {
    verdict.kind = VerdictKind::Accepted;  // vacuous pass; callers warn
    return verdict;
  }

  const int64_t limit_ms = task.time_limit_ms > 0 ? task.time_limit_ms : cfg.default_time_limit_ms;

  std::string program_path;
  std::string work_dir;
  try {
    // One scratch dir per worker thread; a fresh program file per judgment.
    static thread_local std::unique_ptr<JudgmentDir> dir;
    if (!dir) dir = std::make_unique<JudgmentDir>();
    work_dir = dir->path();
    program_path = work_dir + "/prog_" +
                   std::to_string(g_judgment_counter.fetch_add(1, std::memory_order_relaxed));
    std::ofstream out(program_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write program file");
    out << candidate.source;
    out.flush();
    if (!out) throw std::runtime_error("short write on program file");
  } catch (const std::exception&) {
    verdict.kind = VerdictKind::StartupError;
    verdict.tests_executed = 1;
    verdict.failed_test_index = 0;
    verdict.wall_time_ms.push_back(0.0);
    return verdict;
  }

  std::vector<std::string> argv = split_command_template(cfg.interpreter_cmd);
  bool placeholder_seen = false;
  for (auto& arg : argv) {
    size_t pos;
    while ((pos = arg.find("{file}")) != std::string::npos) {
      arg.replace(pos, 6, program_path);
      placeholder_seen = true;
    }
  }
  if (!placeholder_seen) argv.push_back(program_path);

  for (size_t i = 0; i < task.tests.size(); ++i) {
    const TestCase& test = task.tests[i];
    const RunOutcome outcome =
        run_one_test(argv, test.input, limit_ms, cfg.max_output_bytes, work_dir);

    verdict.tests_executed = static_cast<int>(i) + 1;
    verdict.wall_time_ms.push_back(outcome.wall_ms);

    VerdictKind failure_kind = VerdictKind::RuntimeError;
    switch (outcome.status) {
      case RunOutcome::Status::startup_error:
        failure_kind = VerdictKind::StartupError;
        break;
      case RunOutcome::Status::timeout:
        failure_kind = VerdictKind::TimeLimit;
        break;
      case RunOutcome::Status::output_overflow:
        failure_kind = VerdictKind::WrongAnswer;
        break;
      case RunOutcome::Status::signaled:
        failure_kind = VerdictKind::RuntimeError;
        break;
      case RunOutcome::Status::exited:
        if (outcome.exit_code != 0) {
          failure_kind = VerdictKind::RuntimeError;
        } else if (!outputs_match(outcome.output, test.expected_output)) {
          failure_kind = VerdictKind::WrongAnswer;
        } else {
          continue;  // test passed
        }
        break;
    }

    verdict.kind = failure_kind;
    verdict.failed_test_index = static_cast<int>(i);
    return verdict;
  }

  verdict.kind = VerdictKind::Accepted;
  return verdict;
}

LabeledPool label_pool(const std::vector<Candidate>& candidates, const ProgrammingTask& task,
                       const ExecConfig& cfg) {
  validate(cfg);
  for (const auto& cand : candidates) {
    if (cand.task_id != task.task_id) {
      throw std::invalid_argument("candidate '" + cand.candidate_id + "' does not belong to task '" +
                                  task.task_id + "'");
    }
  }
  if (task.tests.empty() && !candidates.empty()) {
    std::cerr << "warning: task '" << task.task_id
              << "' has no tests; all candidates pass vacuously\n";
  }

  std::vector<Verdict> verdicts(candidates.size());
  const int worker_count = std::max(1, std::min<int>(cfg.workers, static_cast<int>(candidates.size())));
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= candidates.size()) return;
      verdicts[i] = run_candidate(candidates[i], task, cfg);
    }
  };
  if (worker_count <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  LabeledPool pool;
  pool.task = task;
  pool.entries.reserve(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    pool.entries.push_back(LabeledEntry{candidates[i], make_label(std::move(verdicts[i]))});
  }
  std::stable_sort(pool.entries.begin(), pool.entries.end(),
                   [](const LabeledEntry& a, const LabeledEntry& b) {
                     return a.candidate.candidate_id < b.candidate.candidate_id;
                   });
  return pool;
}

ProgrammingTask inject_test_dropout(const ProgrammingTask& task, double drop_fraction,
                                    uint64_t seed) {
  if (!(drop_fraction >= 0.0 && drop_fraction <= 1.0)) {
    throw std::invalid_argument("drop_fraction must be in [0,1]");
  }
  const int total = static_cast<int>(task.tests.size());
  const int keep = static_cast<int>(std::llround((1.0 - drop_fraction) * total));

  ProgrammingTask out = task;
  if (keep >= total) return out;

  Rng rng(seed);
  const std::vector<int> survivors = rng.sample_indices(total, keep);  // ascending
  out.tests.clear();
  out.tests.reserve(survivors.size());
  for (int idx : survivors) out.tests.push_back(task.tests[static_cast<size_t>(idx)]);
  return out;
}

double measure_false_positive_rate(const LabeledPool& weak, const LabeledPool& full) {
  if (weak.entries.size() != full.entries.size()) {
    throw std::invalid_argument("weak and full pools hold different candidate sets");
  }
  std::unordered_map<std::string, int> full_labels;
  for (const auto& e : full.entries) full_labels[e.candidate.candidate_id] = e.label.value;

  int64_t weak_positives = 0;
  int64_t false_positives = 0;
  for (const auto& e : weak.entries) {
    auto it = full_labels.find(e.candidate.candidate_id);
    if (it == full_labels.end()) {
      throw std::invalid_argument("candidate '" + e.candidate.candidate_id +
                                  "' missing from full pool");
    }
    if (e.label.value == 1) {
      ++weak_positives;
      if (it->second == 0) ++false_positives;
    }
  }
  if (weak_positives == 0) return 0.0;
  return static_cast<double>(false_positives) / static_cast<double>(weak_positives);
}

}  // namespace passrank
