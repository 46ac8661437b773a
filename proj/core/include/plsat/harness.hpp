#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace plsat {

enum class SweepSolver { Internal, External, ShrinkCertifier };

struct SweepConfig {
  std::size_t k = 3;
  std::size_t n = 1000;
  std::vector<double> betas;
  std::vector<double> rs;
  std::size_t instances = 50;
  uint64_t master_seed = 1;
  SweepSolver solver = SweepSolver::Internal;
  std::string external_cmd;       // External only; "{in}"/"{out}" placeholders
  int64_t budget_ms = 2000;       // per-instance wall budget, 0 = unlimited
  uint64_t budget_decisions = 0;  // internal solver node budget, 0 = unlimited
  unsigned threads = 0;           // 0 = hardware concurrency
};

struct SweepCell {
  double beta = 0.0;
  double r = 0.0;
  std::size_t instances = 0;
  std::size_t sat = 0, unsat = 0, unknown = 0;
  double median_ms = 0.0;
  uint64_t seed = 0;  // seed of this cell's first instance
};

// Runs the (beta, r) grid. Instance t of cell (i, j) uses the seed
// derive_cell_seed(master_seed, i, j, t); outcomes are independent of the
// worker thread count. Cells come back in grid order (beta-major).
std::vector<SweepCell> run_sweep(const SweepConfig& cfg);

// CSV: k,n,beta,r,instances,sat,unsat,unknown,median_ms,seed
void emit_csv(const SweepConfig& cfg, const std::vector<SweepCell>& cells,
              std::ostream& out);
std::vector<SweepCell> parse_csv(std::istream& in);

// FNV-1a over the CSV with the timing column masked out, so reruns of the
// same config hash identically.
uint64_t determinism_hash(const std::string& csv_text);

// Phase-diagram heat map (beta on x, r on y, majority status per cell) with
// the no-finite-threshold exponent as a vertical dashed line and the
// single-flip threshold curve overlaid.
void emit_phase_svg(const SweepConfig& cfg, const std::vector<SweepCell>& cells,
                    std::ostream& out);

// Flat "key = value" file; unknown keys are errors. echo_config writes the
// canonical form back out.
SweepConfig load_config(std::istream& in);
SweepConfig load_config_file(const std::string& path);
void echo_config(const SweepConfig& cfg, std::ostream& out);

}  // namespace plsat
