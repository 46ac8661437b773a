#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace plsat {

enum class WeightKind { Concrete, UserSupplied, Uniform };

// Non-decreasing positive weights over variables 1..n. For Concrete,
// weights[n-i] = (n/i)^{1/(beta-1)} counting i=1..n from the top, so the
// smallest weight is 1 and the largest is n^{1/(beta-1)}.
struct WeightSequence {
  std::size_t n = 0;
  double beta = 0.0;  // declared exponent; 0 for Uniform
  WeightKind kind = WeightKind::Concrete;
  std::vector<double> weights;  // index 0 holds w_1

  double w(std::size_t i) const { return weights[i - 1]; }  // 1-based
};

// p_i = w_i / sum(w), cached together with ||p||_2^2 and sum(w).
struct VariableDistribution {
  std::vector<double> p;
  double l2sq = 0.0;
  double sumw = 0.0;

  std::size_t n() const { return p.size(); }
};

WeightSequence build_concrete(std::size_t n, double beta);
WeightSequence build_uniform(std::size_t n);

// Validates the declared power-law sandwich alpha1*w^{1-beta} <= F(w) <=
// alpha2*w^{1-beta} on [w_1, w_n] before accepting the sequence.
WeightSequence build_user_supplied(std::vector<double> weights, double beta,
                                   double alpha1, double alpha2);

VariableDistribution distribution(const WeightSequence& ws);

// |{i : w_i >= w}|
std::size_t tail_count(const WeightSequence& ws, double w);

// sum of weights >= w
double tail_weight_sum(const WeightSequence& ws, double w);

// Pr[V >= w] for the size-biased variable V, i.e. tail_weight_sum / sum(w).
double size_biased_tail(const VariableDistribution& vd,
                        const WeightSequence& ws, double w);

// plain text: "plw <n> <beta> <kind>" then one weight per line, full
// round-trip precision
void write_plw(const WeightSequence& ws, std::ostream& out);
WeightSequence read_plw(std::istream& in);
void write_plw_file(const WeightSequence& ws, const std::string& path);
WeightSequence read_plw_file(const std::string& path);

}  // namespace plsat
