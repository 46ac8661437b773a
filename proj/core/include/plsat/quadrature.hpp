#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace plsat {

// Gauss-Kronrod 7-15 rule on [a, b]. Returns the K15 estimate, writes an
// error estimate to err.
template <class F>
double gk15(const F& f, double a, double b, double& err) {
  // abscissa, Gauss weight, Kronrod weight
  static const double nodes[8][3] = {
      {0.000000000000000, 0.417959183673469, 0.209482141084728},
      {0.405845151377397, 0.381830050505119, 0.190350578064785},
      {0.741531185599394, 0.279705391489277, 0.140653259715525},
      {0.949107912342759, 0.129484966168870, 0.063092092629979},
      {0.207784955007898, 0.0, 0.204432940075298},
      {0.586087235467691, 0.0, 0.169004726639267},
      {0.864864423359769, 0.0, 0.104790010322250},
      {0.991455371120813, 0.0, 0.022935322010529}};

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double y0 = f(mid);
  double g7 = nodes[0][1] * y0;
  double k15 = nodes[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    double dx = half * nodes[i][0];
    double yi = f(mid + dx) + f(mid - dx);
    g7 += nodes[i][1] * yi;
    k15 += nodes[i][2] * yi;
  }
  g7 *= half;
  k15 *= half;

  double d = std::fabs(k15 - g7);
  err = 200.0 * d * std::sqrt(200.0 * d);
  return k15;
}

struct QuadResult {
  double value;
  double err;        // sum of per-interval error estimates
  bool converged;    // false if the interval budget ran out
};

// Adaptive bisection driven by the GK15 error estimate. Absolute tolerance;
// each subinterval gets a tolerance share proportional to its length.
template <class F>
QuadResult integrate(const F& f, double a, double b, double abs_tol = 1e-9,
                     int max_intervals = 4000) {
  struct Seg {
    double a, b, tol;
  };
  std::vector<Seg> stack;
  stack.push_back({a, b, abs_tol});

  double sum = 0.0, err_sum = 0.0;
  int used = 0;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    if (++used > max_intervals) return {sum, err_sum, false};

    double err;
    double v = gk15(f, s.a, s.b, err);
    if (err < s.tol || (s.b - s.a) < 1e-14) {
      sum += v;
      err_sum += err;
      continue;
    }
    double mid = 0.5 * (s.a + s.b);
    stack.push_back({s.a, mid, 0.5 * s.tol});
    stack.push_back({mid, s.b, 0.5 * s.tol});
  }
  return {sum, err_sum, true};
}

}  // namespace plsat
