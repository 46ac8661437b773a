#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "plsat/analysis.hpp"
#include "plsat/bounds.hpp"
#include "plsat/dimacs.hpp"
#include "plsat/harness.hpp"
#include "plsat/sampler.hpp"
#include "plsat/solvers.hpp"
#include "plsat/twosat.hpp"
#include "plsat/weights.hpp"

namespace {

constexpr const char* kVersion = "plsat 1.0.0";

plsat::WeightSequence make_weights(std::size_t n, double beta, bool uniform,
                                   const std::string& weights_in) {
  if (!weights_in.empty()) {
    plsat::WeightSequence ws = plsat::read_plw_file(weights_in);
    if (ws.n != n && n != 0)
      throw std::runtime_error("weights file has n=" + std::to_string(ws.n) +
                               ", flag says n=" + std::to_string(n));
    return ws;
  }
  if (uniform) return plsat::build_uniform(n);
  return plsat::build_concrete(n, beta);
}

int cmd_gen(std::size_t n, long long m_flag, double ratio, std::size_t k,
            double beta, bool uniform, const std::string& weights_in,
            uint64_t seed, const std::string& out_path,
            const std::string& weights_out, unsigned threads) {
  std::size_t m;
  if (m_flag >= 0) m = std::size_t(m_flag);
  else m = std::size_t(std::llround(ratio * double(n)));

  plsat::WeightSequence ws = make_weights(n, beta, uniform, weights_in);
  if (n == 0) n = ws.n;
  plsat::VariableDistribution vd = plsat::distribution(ws);
  auto [f, stats] = plsat::sample_formula(vd, m, k, seed, threads);

  std::ostringstream model;
  if (ws.kind == plsat::WeightKind::Concrete)
    model << "concrete beta=" << ws.beta << " n=" << n;
  else if (ws.kind == plsat::WeightKind::Uniform)
    model << "uniform n=" << n;
  else
    model << "user beta=" << ws.beta << " n=" << n;
  f.prov.present = true;
  f.prov.generator = kVersion;
  f.prov.model = model.str();
  f.prov.seed = seed;

  if (out_path.empty() || out_path == "-") plsat::write_dimacs(f, std::cout);
  else plsat::write_dimacs_file(f, out_path);
  if (!weights_out.empty()) plsat::write_plw_file(ws, weights_out);

  std::cerr << "generated m=" << m << " clauses, attempts=" << stats.attempts
            << ", rejections=" << stats.rejections << "\n";
  return 0;
}

int cmd_certify(const std::string& in_path, const std::string& weights_in,
                const std::string& emit_assignment) {
  plsat::Formula f = plsat::read_dimacs_file(in_path);
  plsat::WeightSequence ws = plsat::read_plw_file(weights_in);
  plsat::Certificate cert = plsat::certify_by_shrinking(f, ws);
  std::cout << plsat::to_string(cert.status) << " "
            << plsat::to_string(cert.reason) << "\n";
  if (cert.status == plsat::Status::SAT && !emit_assignment.empty()) {
    std::ofstream out(emit_assignment);
    if (!out) throw std::runtime_error("cannot open " + emit_assignment);
    const auto& a = *cert.assignment;
    for (std::size_t v = 0; v < a.size(); ++v)
      out << 'v' << (v + 1) << ' ' << (a[v] ? 1 : 0) << '\n';
  }
  return cert.status == plsat::Status::SAT ? 10 : 0;
}

void print_model(const std::vector<bool>& a) {
  std::size_t per_line = 20;
  for (std::size_t v = 0; v < a.size(); ++v) {
    if (v % per_line == 0) std::cout << (v ? "\nv " : "v ");
    std::cout << (a[v] ? int(v + 1) : -int(v + 1)) << ' ';
  }
  std::cout << "0\n";
}

int cmd_solve(const std::string& in_path, const std::string& external,
              int64_t budget_ms, uint64_t budget_decisions,
              const std::string& branching, bool no_pure) {
  plsat::Formula f = plsat::read_dimacs_file(in_path);
  plsat::SolveOutcome res;
  if (!external.empty()) {
    res = plsat::solve_external(f, external, budget_ms);
  } else {
    plsat::SolveOptions opts;
    opts.wall_ms = budget_ms;
    opts.max_decisions = budget_decisions;
    opts.pure_literal = !no_pure;
    opts.branching = branching == "lowest" ? plsat::Branching::LowestIndex
                                           : plsat::Branching::HighestIndex;
    res = plsat::solve_complete(f, opts);
  }
  std::printf("c decisions %llu propagations %llu wall_ms %.1f\n",
              (unsigned long long)res.stats.decisions,
              (unsigned long long)res.stats.propagations, res.stats.wall_ms);
  if (!res.note.empty()) std::printf("c note %s\n", res.note.c_str());
  switch (res.status) {
    case plsat::Status::SAT:
      std::cout << "s SATISFIABLE\n";
      print_model(*res.assignment);
      return 10;
    case plsat::Status::UNSAT:
      std::cout << "s UNSATISFIABLE\n";
      return 20;
    default:
      std::cout << "s UNKNOWN\n";
      return 0;
  }
}

int cmd_bound(std::size_t k, double beta, bool uniform,
              const std::string& p_in, std::size_t buckets, bool integral,
              double tol) {
  plsat::BoundQuery q;
  q.k = k;
  if (!p_in.empty()) {
    q.model = plsat::BoundQuery::Model::ExplicitP;
    std::ifstream in(p_in);
    if (!in) throw std::runtime_error("cannot open " + p_in);
    double x, sum = 0;
    while (in >> x) {
      q.p.push_back(x);
      sum += x;
    }
    if (q.p.empty()) throw std::runtime_error("empty p file");
    for (double& v : q.p) v /= sum;  // tolerate unnormalized input
  } else if (uniform) {
    q.model = plsat::BoundQuery::Model::Uniform;
  } else {
    q.model = plsat::BoundQuery::Model::PowerLaw;
    q.beta = beta;
  }
  if (buckets > 0) {
    q.mode = plsat::BoundMode::BucketProduct;
    q.buckets = buckets;
  }
  if (integral) q.mode = plsat::BoundMode::IntegralLimit;

  try {
    plsat::BoundResult res = plsat::threshold(q, tol);
    std::printf("r_star %.6f\n", res.r_star);
    std::printf("bracket [%.4f, %.4f] iterations %d mode %s\n",
                res.bracket_lo, res.bracket_hi, res.iterations,
                q.mode == plsat::BoundMode::IntegralLimit
                    ? "integral"
                    : "buckets");
    return 0;
  } catch (const plsat::NeverSatisfiedError& e) {
    std::printf("never satisfied\n");
    std::printf("%s\n", e.what());
    return 2;
  }
}

int cmd_bound_table(double tol, const std::string& out_path) {
  auto cells = plsat::single_flip_table(tol);
  if (out_path.empty() || out_path == "-") plsat::emit_table_csv(cells, std::cout);
  else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    plsat::emit_table_csv(cells, out);
  }
  return 0;
}

int cmd_degrees(const std::string& in_path, double beta, std::size_t dmin,
                std::size_t dmax, const std::string& csv_path) {
  plsat::Formula f = plsat::read_dimacs_file(in_path);
  if (dmax == 0) {
    if (!(beta > 1.0))
      throw std::runtime_error(
          "degrees: need --beta > 1 to derive the default fit window");
    dmax = std::size_t(std::pow(double(f.n), 1.0 / (beta - 1.0)) / 4.0);
    if (dmax <= dmin) dmax = dmin + 1;
  }
  plsat::DegreeReport rep = plsat::degree_report(f, dmin, dmax);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open " + csv_path);
    out << "d,count_at_least\n";
    for (std::size_t d = 1; d < rep.count_at_least.size(); ++d) {
      if (rep.count_at_least[d] == 0) break;
      out << d << ',' << rep.count_at_least[d] << '\n';
    }
  }
  std::printf("slope %.4f over d in [%zu, %zu]\n", rep.slope, rep.d_min,
              rep.d_max);
  if (beta > 1.0)
    std::printf("expected 1-beta = %.4f\n", 1.0 - beta);
  return 0;
}

int cmd_witness(const std::string& in_path) {
  plsat::Formula f = plsat::read_dimacs_file(in_path);
  auto w = plsat::find_trivial_core(f);
  if (!w) {
    std::cout << "none\n";
    return 0;
  }
  if (!plsat::verify_trivial_core(f, *w))
    throw std::logic_error("witness failed independent verification");
  std::cout << "witness vars";
  for (int32_t v : w->varset) std::cout << ' ' << v;
  std::cout << "\nclause ids";
  for (uint32_t id : w->clause_ids) std::cout << ' ' << id;
  std::cout << "\n";
  return 20;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              long long seed_override, int threads_override) {
  plsat::SweepConfig cfg = plsat::load_config_file(config_path);
  if (seed_override >= 0) cfg.master_seed = uint64_t(seed_override);
  if (threads_override >= 0) cfg.threads = unsigned(threads_override);
  if (cfg.solver == plsat::SweepSolver::External && cfg.external_cmd.empty()) {
    const char* env = std::getenv("PLSAT_SOLVER");
    if (env && *env) cfg.external_cmd = env;
    else
      throw std::runtime_error(
          "sweep: external solver selected but neither external_cmd nor "
          "PLSAT_SOLVER is set");
  }

  std::filesystem::create_directories(out_dir);
  auto cells = plsat::run_sweep(cfg);

  {
    std::ofstream out(out_dir + "/cells.csv");
    if (!out) throw std::runtime_error("cannot write cells.csv");
    plsat::emit_csv(cfg, cells, out);
  }
  {
    std::ofstream out(out_dir + "/phase.svg");
    if (!out) throw std::runtime_error("cannot write phase.svg");
    plsat::emit_phase_svg(cfg, cells, out);
  }
  {
    std::ofstream out(out_dir + "/config.echo");
    if (!out) throw std::runtime_error("cannot write config.echo");
    plsat::echo_config(cfg, out);
  }

  std::ifstream csv(out_dir + "/cells.csv");
  std::stringstream ss;
  ss << csv.rdbuf();
  std::printf("cells %zu, determinism hash %016llx\n", cells.size(),
              (unsigned long long)plsat::determinism_hash(ss.str()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-law random k-SAT: generation, certification, "
               "thresholds, sweeps"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "sample a random formula");
  std::size_t g_n = 0, g_k = 3;
  long long g_m = -1;
  double g_ratio = -1, g_beta = 0;
  bool g_uniform = false;
  std::string g_win, g_out, g_wout;
  uint64_t g_seed = 1;
  unsigned g_threads = 1;
  gen->add_option("--n", g_n, "variable count");
  gen->add_option("--m", g_m, "clause count");
  gen->add_option("--ratio", g_ratio, "clause-variable ratio m/n");
  gen->add_option("--k", g_k, "clause width")->capture_default_str();
  gen->add_option("--beta", g_beta, "power-law exponent (> 2)");
  gen->add_flag("--uniform", g_uniform, "uniform weights");
  gen->add_option("--weights-in", g_win, "read weights from a plw file");
  gen->add_option("--seed", g_seed, "master seed")->capture_default_str();
  gen->add_option("--out", g_out, "output CNF path (default stdout)");
  gen->add_option("--weights-out", g_wout, "also write the weights used");
  gen->add_option("--threads", g_threads, "generator threads")
      ->capture_default_str();

  // certify
  auto* certify = app.add_subcommand(
      "certify", "one-sided satisfiability certificate via clause shrinking");
  std::string c_in, c_win, c_emit;
  certify->add_option("--in", c_in, "input CNF")->required();
  certify->add_option("--weights-in", c_win, "weights plw file")->required();
  certify->add_option("--emit-assignment", c_emit,
                      "write the satisfying assignment here");

  // solve
  auto* solve = app.add_subcommand("solve", "complete solve (internal DPLL "
                                            "or an external solver)");
  std::string s_in, s_ext, s_branch = "highest";
  int64_t s_budget_ms = 0;
  uint64_t s_budget_dec = 0;
  bool s_no_pure = false;
  solve->add_option("--in", s_in, "input CNF")->required();
  solve->add_option("--external", s_ext,
                    "external solver command; {in}/{out} placeholders");
  solve->add_option("--budget-ms", s_budget_ms, "wall-clock budget");
  solve->add_option("--budget-decisions", s_budget_dec,
                    "internal node budget");
  solve->add_option("--branching", s_branch, "highest|lowest index first")
      ->capture_default_str();
  solve->add_flag("--no-pure", s_no_pure,
                  "disable root pure-literal elimination");

  // bound
  auto* bound = app.add_subcommand(
      "bound", "single-flip unsatisfiability threshold r*");
  std::size_t b_k = 3, b_buckets = 0;
  double b_beta = 0, b_tol = 1e-4;
  bool b_uniform = false, b_integral = false;
  std::string b_pin, bt_out;
  bound->add_option("--k", b_k, "clause width")->capture_default_str();
  bound->add_option("--beta", b_beta, "power-law exponent");
  bound->add_flag("--uniform", b_uniform, "uniform distribution");
  bound->add_option("--p-in", b_pin, "explicit probabilities, one per line");
  bound->add_option("--buckets", b_buckets, "finite bucket count");
  bound->add_flag("--integral", b_integral,
                  "integral limit mode (the default)");
  bound->add_option("--tol", b_tol, "bisection tolerance")
      ->capture_default_str();
  auto* table = bound->add_subcommand(
      "table", "full threshold grid as CSV with reference deltas");
  table->add_option("--out", bt_out, "CSV path (default stdout)");

  // degrees
  auto* degrees = app.add_subcommand(
      "degrees", "degree distribution and log-log tail slope");
  std::string d_in, d_csv;
  double d_beta = 0;
  std::size_t d_min = 5, d_max = 0;
  degrees->add_option("--in", d_in, "input CNF")->required();
  degrees->add_option("--beta", d_beta,
                      "exponent used for the default fit window");
  degrees->add_option("--dmin", d_min, "fit window lower end")
      ->capture_default_str();
  degrees->add_option("--dmax", d_max, "fit window upper end (default "
                                       "n^{1/(beta-1)}/4)");
  degrees->add_option("--csv", d_csv, "write (d, N_{>=d}) rows here");

  // witness
  auto* witness = app.add_subcommand(
      "witness", "search for an all-sign-patterns unsatisfiability core");
  std::string w_in;
  witness->add_option("--in", w_in, "input CNF")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "phase-diagram experiment grid");
  std::string sw_cfg, sw_out = "sweep-out";
  long long sw_seed = -1;
  int sw_threads = -1;
  sweep->add_option("--config", sw_cfg, "sweep config file")->required();
  sweep->add_option("--out", sw_out, "output directory")
      ->capture_default_str();
  sweep->add_option("--seed", sw_seed, "override the master seed");
  sweep->add_option("--threads", sw_threads, "override worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (g_n == 0 && g_win.empty()) {
        std::cerr << "gen: --n (or --weights-in) is required\n";
        return 1;
      }
      if ((g_m < 0) == (g_ratio < 0)) {
        std::cerr << "gen: exactly one of --m / --ratio is required\n";
        return 1;
      }
      if (!g_uniform && g_win.empty() && !(g_beta > 2.0)) {
        std::cerr << "gen: need --beta > 2, --uniform, or --weights-in\n";
        return 1;
      }
      return cmd_gen(g_n, g_m, g_ratio, g_k, g_beta, g_uniform, g_win, g_seed,
                     g_out, g_wout, g_threads);
    }
    if (certify->parsed()) return cmd_certify(c_in, c_win, c_emit);
    if (solve->parsed())
      return cmd_solve(s_in, s_ext, s_budget_ms, s_budget_dec, s_branch,
                       s_no_pure);
    if (bound->parsed()) {
      if (table->parsed()) return cmd_bound_table(b_tol, bt_out);
      if (!b_uniform && b_pin.empty() && !(b_beta > 2.0)) {
        std::cerr << "bound: need --beta > 2, --uniform, or --p-in\n";
        return 1;
      }
      return cmd_bound(b_k, b_beta, b_uniform, b_pin, b_buckets, b_integral,
                       b_tol);
    }
    if (degrees->parsed()) return cmd_degrees(d_in, d_beta, d_min, d_max, d_csv);
    if (witness->parsed()) return cmd_witness(w_in);
    if (sweep->parsed()) return cmd_sweep(sw_cfg, sw_out, sw_seed, sw_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
