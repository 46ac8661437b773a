#include "plsat/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace plsat {

static void check_positive_nondecreasing(const std::vector<double>& w) {
  if (w.empty()) throw std::invalid_argument("weights: empty sequence");
  double prev = 0.0;
  for (double x : w) {
    if (!(x > 0.0)) throw std::invalid_argument("weights: non-positive entry");
    if (x < prev) throw std::invalid_argument("weights: not non-decreasing");
    prev = x;
  }
}

WeightSequence build_concrete(std::size_t n, double beta) {
  if (n == 0) throw std::invalid_argument("build_concrete: n must be >= 1");
  if (!(beta > 2.0))
    throw std::invalid_argument("build_concrete: beta must be > 2");
  WeightSequence ws;
  ws.n = n;
  ws.beta = beta;
  ws.kind = WeightKind::Concrete;
  ws.weights.resize(n);
  const double e = 1.0 / (beta - 1.0);
  // i counts from the top: the i-th largest weight is (n/i)^{1/(beta-1)}
  for (std::size_t i = 1; i <= n; ++i)
    ws.weights[n - i] = std::pow(double(n) / double(i), e);
  return ws;
}

WeightSequence build_uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("build_uniform: n must be >= 1");
  WeightSequence ws;
  ws.n = n;
  ws.beta = 0.0;
  ws.kind = WeightKind::Uniform;
  ws.weights.assign(n, 1.0);
  return ws;
}

WeightSequence build_user_supplied(std::vector<double> weights, double beta,
                                   double alpha1, double alpha2) {
  if (!(beta > 1.0))
    throw std::invalid_argument("build_user_supplied: beta must be > 1");
  if (!(alpha1 > 0.0) || !(alpha2 >= alpha1))
    throw std::invalid_argument(
        "build_user_supplied: need 0 < alpha1 <= alpha2");
  // variable i carries weights[i-1]; the model requires w_1 <= ... <= w_n,
  // so unsorted input is a caller error, not something to fix up silently
  check_positive_nondecreasing(weights);

  const std::size_t n = weights.size();
  // empirical tail F(w) = |{i : w_i >= w}| / n must sit inside the declared
  // sandwich at every distinct weight value
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0 && weights[j] == weights[j - 1]) continue;
    double w = weights[j];
    double f = double(n - j) / double(n);
    double lo = alpha1 * std::pow(w, 1.0 - beta);
    double hi = alpha2 * std::pow(w, 1.0 - beta);
    if (f < lo || f > hi) {
      std::ostringstream msg;
      msg << "build_user_supplied: tail F(" << w << ") = " << f
          << " outside sandwich [" << lo << ", " << hi << "]";
      throw std::invalid_argument(msg.str());
    }
  }

  WeightSequence ws;
  ws.n = n;
  ws.beta = beta;
  ws.kind = WeightKind::UserSupplied;
  ws.weights = std::move(weights);
  return ws;
}

VariableDistribution distribution(const WeightSequence& ws) {
  VariableDistribution vd;
  vd.p.resize(ws.n);
  double sum = 0.0;
  for (double w : ws.weights) sum += w;
  vd.sumw = sum;
  double l2 = 0.0;
  for (std::size_t i = 0; i < ws.n; ++i) {
    double pi = ws.weights[i] / sum;
    vd.p[i] = pi;
    l2 += pi * pi;
  }
  vd.l2sq = l2;
  return vd;
}

std::size_t tail_count(const WeightSequence& ws, double w) {
  if (!(w > 0.0)) throw std::invalid_argument("tail_count: w must be > 0");
  auto it = std::lower_bound(ws.weights.begin(), ws.weights.end(), w);
  return std::size_t(ws.weights.end() - it);
}

double tail_weight_sum(const WeightSequence& ws, double w) {
  auto it = std::lower_bound(ws.weights.begin(), ws.weights.end(), w);
  double s = 0.0;
  for (; it != ws.weights.end(); ++it) s += *it;
  return s;
}

double size_biased_tail(const VariableDistribution& vd,
                        const WeightSequence& ws, double w) {
  return tail_weight_sum(ws, w) / vd.sumw;
}

static const char* kind_name(WeightKind k) {
  switch (k) {
    case WeightKind::Concrete: return "concrete";
    case WeightKind::UserSupplied: return "user";
    case WeightKind::Uniform: return "uniform";
  }
  return "?";
}

void write_plw(const WeightSequence& ws, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", ws.beta);
  out << "plw " << ws.n << ' ' << buf << ' ' << kind_name(ws.kind) << '\n';
  for (double w : ws.weights) {
    std::snprintf(buf, sizeof buf, "%.17g", w);
    out << buf << '\n';
  }
}

WeightSequence read_plw(std::istream& in) {
  std::string magic, kind;
  std::size_t n = 0;
  double beta = 0.0;
  if (!(in >> magic >> n >> beta >> kind) || magic != "plw")
    throw std::runtime_error("read_plw: bad header (want 'plw <n> <beta> <kind>')");
  WeightSequence ws;
  ws.n = n;
  ws.beta = beta;
  if (kind == "concrete")
    ws.kind = WeightKind::Concrete;
  else if (kind == "user")
    ws.kind = WeightKind::UserSupplied;
  else if (kind == "uniform")
    ws.kind = WeightKind::Uniform;
  else
    throw std::runtime_error("read_plw: unknown kind '" + kind + "'");
  ws.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> ws.weights[i]))
      throw std::runtime_error("read_plw: truncated weight list");
  }
  check_positive_nondecreasing(ws.weights);
  return ws;
}

void write_plw_file(const WeightSequence& ws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_plw(ws, out);
}

WeightSequence read_plw_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_plw(in);
}

}  // namespace plsat
