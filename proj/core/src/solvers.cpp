#include "plsat/solvers.hpp"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "plsat/dimacs.hpp"

namespace plsat {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

inline uint32_t lit_code(Lit l) {
  return 2 * (uint32_t(l.var()) - 1) + (l.negated() ? 1 : 0);
}

}  // namespace

SolveOutcome solve_complete(const Formula& f, const SolveOptions& opts) {
  const auto t0 = Clock::now();
  SolveOutcome out;
  const std::size_t n = f.n;
  const std::size_t m = f.m();

  // ---- root pure-literal elimination, run to fixpoint ----
  // Flipping a variable to its pure polarity never falsifies a clause, so
  // satisfiability of the residual equals satisfiability of the input.
  std::vector<int8_t> fixed(n, 0);  // +1 / -1 once eliminated as pure
  std::vector<char> alive(m, 1);
  std::size_t alive_cnt = m;

  if (opts.pure_literal && m > 0) {
    std::vector<std::vector<uint32_t>> occ_pos(n), occ_neg(n);
    std::vector<uint32_t> pos_cnt(n, 0), neg_cnt(n, 0);
    for (std::size_t j = 0; j < m; ++j) {
      for (Lit l : f.clauses[j].lits) {
        std::size_t v = std::size_t(l.var()) - 1;
        if (l.negated()) {
          occ_neg[v].push_back(uint32_t(j));
          ++neg_cnt[v];
        } else {
          occ_pos[v].push_back(uint32_t(j));
          ++pos_cnt[v];
        }
      }
    }
    std::vector<uint32_t> work;
    std::vector<char> queued(n, 0);
    auto consider = [&](std::size_t v) {
      if (fixed[v] || queued[v]) return;
      if ((pos_cnt[v] > 0) != (neg_cnt[v] > 0)) {
        work.push_back(uint32_t(v));
        queued[v] = 1;
      }
    };
    for (std::size_t v = 0; v < n; ++v) consider(v);
    while (!work.empty()) {
      std::size_t v = work.back();
      work.pop_back();
      queued[v] = 0;
      if (fixed[v]) continue;
      bool has_pos = pos_cnt[v] > 0, has_neg = neg_cnt[v] > 0;
      if (has_pos == has_neg) continue;  // stale: counts changed since queueing
      fixed[v] = has_pos ? +1 : -1;
      const auto& kill = has_pos ? occ_pos[v] : occ_neg[v];
      for (uint32_t j : kill) {
        if (!alive[j]) continue;
        alive[j] = 0;
        --alive_cnt;
        for (Lit l : f.clauses[j].lits) {
          std::size_t u = std::size_t(l.var()) - 1;
          if (l.negated()) --neg_cnt[u]; else --pos_cnt[u];
          consider(u);
        }
      }
    }
  }

  // ---- flatten the residual clauses ----
  std::vector<uint32_t> db;
  std::vector<uint32_t> start;
  start.reserve(alive_cnt + 1);
  for (std::size_t j = 0; j < m; ++j) {
    if (!alive[j]) continue;
    start.push_back(uint32_t(db.size()));
    for (Lit l : f.clauses[j].lits) db.push_back(lit_code(l));
  }
  start.push_back(uint32_t(db.size()));
  const std::size_t mc = start.empty() ? 0 : start.size() - 1;

  std::vector<char> active(n, 0);
  for (uint32_t code : db) active[code >> 1] = 1;

  std::vector<int8_t> vals(n, 0);
  std::vector<uint32_t> trail;
  trail.reserve(n);
  std::size_t qhead = 0;
  uint64_t decisions = 0, propagations = 0;

  auto lit_val = [&](uint32_t L) -> int {
    int8_t v = vals[L >> 1];
    if (v == 0) return 0;
    return (L & 1) ? -v : v;
  };
  auto enqueue = [&](uint32_t L) -> bool {
    int val = lit_val(L);
    if (val > 0) return true;
    if (val < 0) return false;
    vals[L >> 1] = (L & 1) ? int8_t(-1) : int8_t(1);
    trail.push_back(L);
    return true;
  };

  auto finish = [&](Status st) {
    out.status = st;
    out.stats.decisions = decisions;
    out.stats.propagations = propagations;
    out.stats.wall_ms = ms_since(t0);
  };

  auto assemble_and_verify = [&]() {
    std::vector<bool> assignment(n, false);
    for (std::size_t v = 0; v < n; ++v) {
      if (active[v]) assignment[v] = vals[v] > 0;
      else if (fixed[v] != 0) assignment[v] = fixed[v] > 0;
    }
    if (!satisfies(f, assignment))
      throw std::logic_error("solve_complete: assignment fails verification");
    out.assignment = std::move(assignment);
  };

  if (mc == 0) {
    assemble_and_verify();
    finish(Status::SAT);
    return out;
  }

  std::vector<std::vector<uint32_t>> watches(2 * n);
  for (std::size_t c = 0; c < mc; ++c) {
    uint32_t s = start[c], e = start[c + 1];
    if (e - s == 1) {
      if (!enqueue(db[s])) {  // contradictory unit clauses
        finish(Status::UNSAT);
        return out;
      }
    } else {
      watches[db[s]].push_back(uint32_t(c));
      watches[db[s + 1]].push_back(uint32_t(c));
    }
  }

  // returns false on conflict
  auto propagate = [&]() -> bool {
    while (qhead < trail.size()) {
      uint32_t Ltrue = trail[qhead++];
      ++propagations;
      uint32_t Lf = Ltrue ^ 1;  // literal that just became false
      auto& wl = watches[Lf];
      std::size_t iw = 0, ow = 0;
      bool conflict = false;
      for (; iw < wl.size(); ++iw) {
        uint32_t c = wl[iw];
        uint32_t s = start[c], e = start[c + 1];
        if (db[s] == Lf) std::swap(db[s], db[s + 1]);
        uint32_t other = db[s];  // the co-watched literal
        if (lit_val(other) > 0) {
          wl[ow++] = c;
          continue;
        }
        bool moved = false;
        for (uint32_t t = s + 2; t < e; ++t) {
          if (lit_val(db[t]) >= 0) {
            std::swap(db[s + 1], db[t]);
            watches[db[s + 1]].push_back(c);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        wl[ow++] = c;  // stays watched either way
        if (lit_val(other) < 0) {
          for (++iw; iw < wl.size(); ++iw) wl[ow++] = wl[iw];
          conflict = true;
          break;
        }
        enqueue(other);  // unit
      }
      wl.resize(ow);
      if (conflict) return false;
    }
    return true;
  };

  struct Frame {
    uint32_t trail_len;  // trail size before this decision
    uint32_t var;        // 1-based decided variable
    uint32_t cursor;     // scan position where var was found
    bool flipped;
  };
  std::vector<Frame> frames;

  auto undo_to = [&](uint32_t len) {
    while (trail.size() > len) {
      vals[trail.back() >> 1] = 0;
      trail.pop_back();
    }
    qhead = len;
  };

  const bool high_first = opts.branching == Branching::HighestIndex;

  for (;;) {
    if (opts.wall_ms > 0 && ms_since(t0) > double(opts.wall_ms)) {
      finish(Status::TIMEOUT);
      return out;
    }
    if (!propagate()) {
      for (;;) {
        if (frames.empty()) {
          finish(Status::UNSAT);
          return out;
        }
        Frame& fr = frames.back();
        if (!fr.flipped) {
          undo_to(fr.trail_len);
          fr.flipped = true;
          enqueue(2 * (fr.var - 1) + 1);  // try the negative phase
          break;
        }
        undo_to(fr.trail_len);
        frames.pop_back();
      }
      continue;
    }
    // pick the next branching variable; vars beyond the parent frame's
    // cursor are all assigned already, so the scan resumes there
    uint32_t scan = frames.empty() ? (high_first ? uint32_t(n) : 1u)
                                   : frames.back().cursor;
    uint32_t pick = 0;
    if (high_first) {
      for (uint32_t v = scan; v >= 1; --v)
        if (active[v - 1] && vals[v - 1] == 0) { pick = v; break; }
    } else {
      for (uint32_t v = scan; v <= uint32_t(n); ++v)
        if (active[v - 1] && vals[v - 1] == 0) { pick = v; break; }
    }
    if (pick == 0) {
      assemble_and_verify();
      finish(Status::SAT);
      return out;
    }
    ++decisions;
    if (opts.max_decisions > 0 && decisions > opts.max_decisions) {
      finish(Status::TIMEOUT);
      return out;
    }
    frames.push_back({uint32_t(trail.size()), pick, pick, false});
    enqueue(2 * (pick - 1));  // positive phase first
  }
}

namespace {

void replace_all(std::string& s, const std::string& from,
                 const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

// Parse "s ..." status and "v ..." model lines (solver competition output).
// Returns true if a status line was found.
bool parse_competition(std::istream& in, Status& status,
                       std::vector<long long>& model) {
  bool found = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      std::string word = line.substr(2);
      while (!word.empty() && (word.back() == '\r' || word.back() == ' '))
        word.pop_back();
      if (word == "SATISFIABLE") { status = Status::SAT; found = true; }
      else if (word == "UNSATISFIABLE") { status = Status::UNSAT; found = true; }
    } else if (line.rfind("v", 0) == 0 &&
               (line.size() == 1 || line[1] == ' ')) {
      std::istringstream ls(line.substr(1));
      long long x;
      while (ls >> x)
        if (x != 0) model.push_back(x);
    }
  }
  return found;
}

// minisat-style result file: first line SAT/UNSAT(ISFIABLE), then the model
bool parse_result_file(std::istream& in, Status& status,
                       std::vector<long long>& model) {
  std::string word;
  if (!(in >> word)) return false;
  if (word == "SAT" || word == "SATISFIABLE") status = Status::SAT;
  else if (word == "UNSAT" || word == "UNSATISFIABLE") status = Status::UNSAT;
  else return false;
  long long x;
  while (in >> x)
    if (x != 0) model.push_back(x);
  return true;
}

std::string read_file_prefix(const std::string& path, std::size_t max_bytes) {
  std::ifstream in(path);
  std::string s;
  char c;
  while (s.size() < max_bytes && in.get(c)) s.push_back(c);
  return s;
}

}  // namespace

SolveOutcome solve_external(const Formula& f, const std::string& solver_cmd,
                            int64_t wall_ms) {
  const auto t0 = Clock::now();
  SolveOutcome out;

  char dir_tmpl[] = "/tmp/plsat-ext-XXXXXX";
  if (!mkdtemp(dir_tmpl))
    throw std::runtime_error("solve_external: mkdtemp failed");
  const std::string dir = dir_tmpl;
  const std::string in_path = dir + "/in.cnf";
  const std::string res_path = dir + "/result.txt";
  const std::string out_path = dir + "/stdout.txt";
  const std::string err_path = dir + "/stderr.txt";

  write_dimacs_file(f, in_path);

  std::string cmd = solver_cmd;
  const bool has_out = cmd.find("{out}") != std::string::npos;
  replace_all(cmd, "{in}", in_path);
  replace_all(cmd, "{out}", res_path);
  // subshell so compound commands are redirected as a whole
  std::string full = "( " + cmd + " ) > " + out_path + " 2> " + err_path;

  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("solve_external: fork failed");
  if (pid == 0) {
    setpgid(0, 0);  // own process group so the whole tree can be killed
    execl("/bin/sh", "sh", "-c", full.c_str(), (char*)nullptr);
    _exit(127);
  }

  bool timed_out = false;
  int wstatus = 0;
  for (;;) {
    pid_t r = waitpid(pid, &wstatus, WNOHANG);
    if (r == pid) break;
    if (r < 0) break;
    if (wall_ms > 0 && ms_since(t0) > double(wall_ms)) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &wstatus, 0);
      timed_out = true;
      break;
    }
    usleep(2000);
  }

  Status status = Status::UNKNOWN;
  std::vector<long long> model;
  bool parsed = false;
  {
    std::ifstream so(out_path);
    parsed = parse_competition(so, status, model);
  }
  if (!parsed && has_out) {
    std::ifstream rf(res_path);
    parsed = parse_result_file(rf, status, model);
  }

  auto cleanup = [&] {
    std::remove(in_path.c_str());
    std::remove(res_path.c_str());
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    rmdir(dir.c_str());
  };

  if (!parsed) {
    out.stats.wall_ms = ms_since(t0);
    if (timed_out) {
      out.status = Status::TIMEOUT;
    } else {
      out.status = Status::UNKNOWN;
      std::string err = read_file_prefix(err_path, 512);
      out.note = "external solver gave no parseable status";
      if (!err.empty()) out.note += "; stderr: " + err;
    }
    cleanup();
    return out;
  }

  if (status == Status::SAT) {
    std::vector<bool> assignment(f.n, false);
    for (long long x : model) {
      long long v = x < 0 ? -x : x;
      if (v >= 1 && std::size_t(v) <= f.n) assignment[std::size_t(v) - 1] = x > 0;
    }
    if (!satisfies(f, assignment)) {
      cleanup();
      throw std::runtime_error(
          "solve_external: solver claimed SAT with an unverifiable model");
    }
    out.assignment = std::move(assignment);
  }
  cleanup();
  out.status = status;
  out.stats.wall_ms = ms_since(t0);
  return out;
}

}  // namespace plsat
