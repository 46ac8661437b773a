#include "plsat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "plsat/bounds.hpp"
#include "plsat/rng.hpp"
#include "plsat/sampler.hpp"
#include "plsat/solvers.hpp"
#include "plsat/twosat.hpp"

namespace plsat {

namespace {

using Clock = std::chrono::steady_clock;

enum class CellStatus { Sat, Unsat, Unknown };

// shortest digit string that parses back to exactly the same double
std::string fmt_shortest(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

struct InstanceResult {
  CellStatus status = CellStatus::Unknown;
  double ms = 0.0;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
  return 0.5 * (v[mid - 1] + hi);
}

}  // namespace

std::vector<SweepCell> run_sweep(const SweepConfig& cfg) {
  if (cfg.betas.empty() || cfg.rs.empty())
    throw std::invalid_argument("run_sweep: empty grid");
  if (cfg.instances < 1)
    throw std::invalid_argument("run_sweep: instances >= 1");
  if (cfg.solver == SweepSolver::External && cfg.external_cmd.empty())
    throw std::invalid_argument("run_sweep: external solver without a command");

  const std::size_t nb = cfg.betas.size(), nr = cfg.rs.size();
  const std::size_t cells_n = nb * nr;
  const std::size_t tasks_n = cells_n * cfg.instances;

  // weights and distribution are per-beta, shared across the row
  std::vector<VariableDistribution> dists(nb);
  std::vector<WeightSequence> weights(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    weights[i] = build_concrete(cfg.n, cfg.betas[i]);
    dists[i] = distribution(weights[i]);
  }

  std::vector<InstanceResult> results(tasks_n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> aborted{false};
  std::string abort_msg;
  std::mutex abort_mu;

  auto run_task = [&](std::size_t task) {
    const std::size_t cell = task / cfg.instances;
    const std::size_t t = task % cfg.instances;
    const std::size_t i = cell / nr;  // beta index
    const std::size_t j = cell % nr;  // r index
    const uint64_t seed = derive_cell_seed(cfg.master_seed, i, j, t);
    const std::size_t m = std::size_t(std::llround(cfg.rs[j] * double(cfg.n)));

    auto t0 = Clock::now();
    auto [f, st] = sample_formula(dists[i], m, cfg.k, seed);
    (void)st;

    CellStatus out = CellStatus::Unknown;
    switch (cfg.solver) {
      case SweepSolver::Internal: {
        SolveOptions opts;
        opts.wall_ms = cfg.budget_ms;
        opts.max_decisions = cfg.budget_decisions;
        SolveOutcome res = solve_complete(f, opts);
        out = res.status == Status::SAT     ? CellStatus::Sat
              : res.status == Status::UNSAT ? CellStatus::Unsat
                                            : CellStatus::Unknown;
        break;
      }
      case SweepSolver::External: {
        SolveOutcome res = solve_external(f, cfg.external_cmd, cfg.budget_ms);
        out = res.status == Status::SAT     ? CellStatus::Sat
              : res.status == Status::UNSAT ? CellStatus::Unsat
                                            : CellStatus::Unknown;
        break;
      }
      case SweepSolver::ShrinkCertifier: {
        Certificate cert = certify_by_shrinking(f, weights[i]);
        out = cert.status == Status::SAT ? CellStatus::Sat
                                         : CellStatus::Unknown;
        break;
      }
    }
    results[task].status = out;
    results[task].ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  unsigned workers = cfg.threads ? cfg.threads
                                 : std::thread::hardware_concurrency();
  if (workers == 0) workers = 4;
  workers = std::min<std::size_t>(workers, tasks_n);

  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t task = next.fetch_add(1);
        if (task >= tasks_n || aborted.load()) return;
        try {
          run_task(task);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lk(abort_mu);
          if (!aborted.exchange(true)) {
            const std::size_t cell = task / cfg.instances;
            std::ostringstream msg;
            msg << "sweep aborted at cell (beta="
                << cfg.betas[cell / nr] << ", r=" << cfg.rs[cell % nr]
                << "), instance " << task % cfg.instances << ": " << e.what();
            abort_msg = msg.str();
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (aborted.load()) throw std::runtime_error(abort_msg);

  std::vector<SweepCell> cells(cells_n);
  for (std::size_t cell = 0; cell < cells_n; ++cell) {
    SweepCell& sc = cells[cell];
    const std::size_t i = cell / nr, j = cell % nr;
    sc.beta = cfg.betas[i];
    sc.r = cfg.rs[j];
    sc.instances = cfg.instances;
    sc.seed = derive_cell_seed(cfg.master_seed, i, j, 0);
    std::vector<double> times;
    times.reserve(cfg.instances);
    for (std::size_t t = 0; t < cfg.instances; ++t) {
      const InstanceResult& r = results[cell * cfg.instances + t];
      switch (r.status) {
        case CellStatus::Sat: ++sc.sat; break;
        case CellStatus::Unsat: ++sc.unsat; break;
        case CellStatus::Unknown: ++sc.unknown; break;
      }
      times.push_back(r.ms);
    }
    sc.median_ms = std::round(median(times) * 1000.0) / 1000.0;
  }
  return cells;
}

void emit_csv(const SweepConfig& cfg, const std::vector<SweepCell>& cells,
              std::ostream& out) {
  out << "k,n,beta,r,instances,sat,unsat,unknown,median_ms,seed\n";
  char buf[64];
  for (const SweepCell& c : cells) {
    out << cfg.k << ',' << cfg.n << ',' << fmt_shortest(c.beta) << ','
        << fmt_shortest(c.r) << ',';
    out << c.instances << ',' << c.sat << ',' << c.unsat << ',' << c.unknown
        << ',';
    std::snprintf(buf, sizeof buf, "%.3f", c.median_ms);
    out << buf << ',' << c.seed << '\n';
  }
}

std::vector<SweepCell> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("parse_csv: empty input");
  if (line.rfind("k,n,beta,r,", 0) != 0)
    throw std::runtime_error("parse_csv: unexpected header");
  std::vector<SweepCell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::size_t k, n;
    SweepCell c;
    if (!(ls >> k >> n >> c.beta >> c.r >> c.instances >> c.sat >> c.unsat >>
          c.unknown >> c.median_ms >> c.seed))
      throw std::runtime_error("parse_csv: malformed row: " + line);
    cells.push_back(c);
  }
  return cells;
}

uint64_t determinism_hash(const std::string& csv_text) {
  // rebuild each row without the median_ms column, then FNV-1a the rest
  uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](const std::string& s) {
    for (char ch : s) {
      h ^= uint64_t(uint8_t(ch));
      h *= 1099511628211ULL;
    }
  };
  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t col = 0, start = 0;
    std::string kept;
    for (std::size_t pos = 0; pos <= line.size(); ++pos) {
      if (pos == line.size() || line[pos] == ',') {
        if (col != 8) {  // drop median_ms
          if (!kept.empty()) kept += ',';
          kept += line.substr(start, pos - start);
        }
        ++col;
        start = pos + 1;
      }
    }
    feed(kept);
    feed("\n");
  }
  return h;
}

void emit_phase_svg(const SweepConfig& cfg, const std::vector<SweepCell>& cells,
                    std::ostream& out) {
  if (cells.empty()) throw std::invalid_argument("emit_phase_svg: no cells");

  const std::size_t nb = cfg.betas.size(), nr = cfg.rs.size();
  const double margin_l = 70, margin_b = 50, margin_t = 40, margin_r = 30;
  const double plot_w = 640, plot_h = 440;
  const double width = margin_l + plot_w + margin_r;
  const double height = margin_t + plot_h + margin_b;

  double bmin = cfg.betas.front(), bmax = cfg.betas.back();
  double rmin = cfg.rs.front(), rmax = cfg.rs.back();
  // pad by half a cell so every grid point owns a full rectangle
  double bpad = nb > 1 ? (bmax - bmin) / double(nb - 1) / 2 : 0.5;
  double rpad = nr > 1 ? (rmax - rmin) / double(nr - 1) / 2 : 0.5;
  double bx0 = bmin - bpad, bx1 = bmax + bpad;
  double ry0 = rmin - rpad, ry1 = rmax + rpad;

  auto X = [&](double beta) {
    return margin_l + (beta - bx0) / (bx1 - bx0) * plot_w;
  };
  auto Y = [&](double r) {
    return margin_t + plot_h - (r - ry0) / (ry1 - ry0) * plot_h;
  };

  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"24\" font-family=\"sans-serif\" "
                "font-size=\"15\">satisfiability phase diagram, k=%zu, "
                "n=%zu, %zu instances/cell</text>\n",
                margin_l, cfg.k, cfg.n, cfg.instances);
  out << buf;

  // heat cells
  const double cw = plot_w / double(nb), ch = plot_h / double(nr);
  for (const SweepCell& c : cells) {
    const char* color = "#9e9e9e";  // unknown
    if (c.sat > c.unsat && c.sat > c.unknown) color = "#4caf50";
    else if (c.unsat > c.sat && c.unsat > c.unknown) color = "#e53935";
    double x = X(c.beta) - cw / 2, y = Y(c.r) - ch / 2;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"%s\" fill-opacity=\"0.85\"/>\n",
                  x, y, cw, ch, color);
    out << buf;
  }

  // axes
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                margin_l, margin_t, plot_w, plot_h);
  out << buf;
  for (std::size_t i = 0; i < nb; ++i) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"11\" text-anchor=\"middle\">%.2g</text>\n",
                  X(cfg.betas[i]), margin_t + plot_h + 16, cfg.betas[i]);
    out << buf;
  }
  for (std::size_t j = 0; j < nr; ++j) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                  "font-size=\"11\" text-anchor=\"end\">%.3g</text>\n",
                  margin_l - 6, Y(cfg.rs[j]) + 4, cfg.rs[j]);
    out << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                "font-size=\"13\" text-anchor=\"middle\">beta</text>\n",
                margin_l + plot_w / 2, height - 12);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.1f\" font-family=\"sans-serif\" "
                "font-size=\"13\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 16 %.1f)\">r = m/n</text>\n",
                margin_t + plot_h / 2, margin_t + plot_h / 2);
  out << buf;

  // vertical dashed line where finite thresholds stop existing
  double bstar = beta_threshold(cfg.k);
  if (bstar > bx0 && bstar < bx1) {
    std::snprintf(buf, sizeof buf,
                  "<line id=\"beta-threshold\" x1=\"%.2f\" y1=\"%.1f\" "
                  "x2=\"%.2f\" y2=\"%.1f\" stroke=\"black\" "
                  "stroke-dasharray=\"6 4\" stroke-width=\"1.5\"/>\n",
                  X(bstar), margin_t, X(bstar), margin_t + plot_h);
    out << buf;
  }

  // single-flip threshold curve across the plotted betas
  std::string pts, data;
  for (double beta : cfg.betas) {
    if (beta < bstar - 1e-12) continue;
    BoundQuery q;
    q.k = cfg.k;
    q.model = BoundQuery::Model::PowerLaw;
    q.beta = beta;
    double rstar;
    try {
      rstar = threshold(q, 1e-4).r_star;
    } catch (const NeverSatisfiedError&) {
      continue;
    }
    std::snprintf(buf, sizeof buf, "%.6g:%.6g;", beta, rstar);
    data += buf;
    if (rstar < ry0 || rstar > ry1) continue;
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(beta), Y(rstar));
    pts += buf;
  }
  if (!data.empty()) {
    out << "<polyline id=\"threshold-curve\" data-points=\"" << data
        << "\" points=\"" << pts
        << "\" fill=\"none\" stroke=\"#1a237e\" stroke-width=\"2\" "
           "stroke-dasharray=\"2 3\"/>\n";
  }

  // legend
  const char* entries[3][2] = {{"#4caf50", "sat"},
                               {"#e53935", "unsat"},
                               {"#9e9e9e", "unknown/timeout"}};
  for (int e = 0; e < 3; ++e) {
    double lx = margin_l + plot_w - 150, ly = margin_t + 14 + 18 * e;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"12\" height=\"12\" "
                  "fill=\"%s\"/><text x=\"%.1f\" y=\"%.1f\" "
                  "font-family=\"sans-serif\" font-size=\"11\">%s</text>\n",
                  lx, ly - 10, entries[e][0], lx + 16, ly, entries[e][1]);
    out << buf;
  }
  out << "</svg>\n";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

SweepConfig load_config(std::istream& in) {
  SweepConfig cfg;
  cfg.betas.clear();
  cfg.rs.clear();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "k") cfg.k = std::stoul(val);
    else if (key == "n") cfg.n = std::stoul(val);
    else if (key == "betas") cfg.betas = parse_list(val);
    else if (key == "rs") cfg.rs = parse_list(val);
    else if (key == "instances") cfg.instances = std::stoul(val);
    else if (key == "seed") cfg.master_seed = std::stoull(val);
    else if (key == "solver") {
      if (val == "internal") cfg.solver = SweepSolver::Internal;
      else if (val == "external") cfg.solver = SweepSolver::External;
      else if (val == "shrink") cfg.solver = SweepSolver::ShrinkCertifier;
      else
        throw std::runtime_error("config: unknown solver '" + val +
                                 "' (want internal|external|shrink)");
    } else if (key == "external_cmd") cfg.external_cmd = val;
    else if (key == "budget_ms") cfg.budget_ms = std::stoll(val);
    else if (key == "budget_decisions") cfg.budget_decisions = std::stoull(val);
    else if (key == "threads") cfg.threads = unsigned(std::stoul(val));
    else
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
  }
  if (cfg.betas.empty() || cfg.rs.empty())
    throw std::runtime_error("config: betas and rs must be non-empty");
  return cfg;
}

SweepConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_config(in);
}

void echo_config(const SweepConfig& cfg, std::ostream& out) {
  auto list = [&](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += fmt_shortest(v[i]);
    }
    return s;
  };
  out << "k = " << cfg.k << '\n';
  out << "n = " << cfg.n << '\n';
  out << "betas = " << list(cfg.betas) << '\n';
  out << "rs = " << list(cfg.rs) << '\n';
  out << "instances = " << cfg.instances << '\n';
  out << "seed = " << cfg.master_seed << '\n';
  out << "solver = "
      << (cfg.solver == SweepSolver::Internal
              ? "internal"
              : cfg.solver == SweepSolver::External ? "external" : "shrink")
      << '\n';
  if (!cfg.external_cmd.empty())
    out << "external_cmd = " << cfg.external_cmd << '\n';
  out << "budget_ms = " << cfg.budget_ms << '\n';
  out << "budget_decisions = " << cfg.budget_decisions << '\n';
  out << "threads = " << cfg.threads << '\n';
}

}  // namespace plsat
