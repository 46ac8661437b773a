#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace plsat {

// ln 2 / ln(2^k / (2^k - 1)): densities above this are unsatisfiable in
// expectation regardless of the variable distribution.
double first_moment_threshold(std::size_t k);

// (2k - 1) / (k - 1): below this exponent, power-law formulas are
// unsatisfiable at every constant density.
double beta_threshold(std::size_t k);

// Single-flip unsatisfiability curve for an explicit probability vector:
//   (1 - 2^-k)^{m/n} * [ prod_i (2 - (1 - q_i)^m) ]^{1/n},
//   q_i = k p_i / ((2^k - 1)(1 - k^2 ||p||^2 / 2)).
// The formula requires q_i <= 1 for all i and a positive collision margin;
// violations throw with the offending index. Evaluated in log space.
double lhs_general(const std::vector<double>& p, std::size_t k, double m,
                   std::size_t n);

enum class BoundMode { BucketProduct, IntegralLimit };

// The same curve for the concrete power-law model in the n -> infinity limit,
// either as the finite-N bucket product
//   (1 - 2^-k)^r 2^{1/N} prod_{l=1}^{N-1} [2 - exp(-r c (N/l)^{1/(b-1)})]^{1/N}
// or as its N -> infinity integral form, with c = (k/(2^k-1)) (b-2)/(b-1).
double lhs_powerlaw(double beta, std::size_t k, double r, std::size_t N,
                    BoundMode mode);

// Closed-form limit for the uniform distribution:
//   (1 - 2^-k)^r (2 - exp(-r k / (2^k - 1)))
double lhs_uniform_limit(std::size_t k, double r);

struct BoundQuery {
  enum class Model { PowerLaw, Uniform, ExplicitP };
  std::size_t k = 3;
  Model model = Model::PowerLaw;
  double beta = 0.0;            // PowerLaw
  std::vector<double> p;        // ExplicitP
  std::size_t buckets = 100000; // BucketProduct only
  BoundMode mode = BoundMode::IntegralLimit;
};

struct BoundResult {
  double r_star = 0.0;
  std::function<double(double)> lhs_at;
  BoundMode mode = BoundMode::IntegralLimit;
  std::size_t buckets = 0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  int iterations = 0;
};

// Thrown when no finite threshold exists for the query (power-law exponent
// strictly below beta_threshold(k)).
struct NeverSatisfiedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smallest r with lhs(r) < 1: scan upward from 0.1 in steps of 0.1 for the
// first sign change, then bisect to tol.
BoundResult threshold(const BoundQuery& q, double tol = 1e-4);

struct TableCell {
  std::size_t k = 0;
  double beta = 0.0;    // 0 for the uniform column
  bool uniform = false;
  bool never = false;   // no finite threshold at this exponent
  double r_star = 0.0;
  double reference = 0.0;  // published value this cell is compared against
  double delta = 0.0;      // r_star - reference
  double tolerance = 0.0;  // acceptance tolerance for |delta|
};

// The full threshold grid: k in {3,4,5,7,10} x beta in {2.2..2.9}, plus the
// uniform column. Cells are computed in parallel.
std::vector<TableCell> single_flip_table(double tol = 1e-4);

// CSV: k,beta,r_star,ref,delta  (beta column says "uniform" for that column,
// r_star says "never" where no finite threshold exists)
void emit_table_csv(const std::vector<TableCell>& cells, std::ostream& out);

}  // namespace plsat
