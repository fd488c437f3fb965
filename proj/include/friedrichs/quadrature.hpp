#pragma once

#include <functional>

#include "friedrichs/common.hpp"

namespace friedrichs {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// n in {8, 10, 16, 20, 30}
const GaussRule& gauss_rule(int n);

// Composite Gauss-Legendre over [a, b] split at the given points and into panels no wider than max_width.
double panel_integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> splits,
                       double max_width, int order = 16);

// Same panel layout, returned as explicit nodes and weights.
void panel_nodes(double a, double b, std::vector<double> splits, double max_width, int order,
                 std::vector<double>& nodes, std::vector<double>& weights);

// Adaptive Gauss-Kronrod (15/31 nested pair) with an absolute tolerance.
struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};
AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  int max_depth = 30);

// Integral of g over [t0, +inf) (dir = +1) or (-inf, t0] (dir = -1).
// The horizon doubles until a power-law fit of the last two blocks puts the remainder below tol / 2.
struct HalfLineResult {
  double value = 0.0;
  double tail = 0.0;      // estimated remainder beyond the horizon
  double exponent = 0.0;  // fitted decay exponent p of g ~ C |t|^-p (infinite if g vanishes)
  double horizon = 0.0;
  double quad_error = 0.0;
};
HalfLineResult integrate_half_line(const std::function<double(double)>& g, double t0, int dir,
                                   std::vector<double> kinks, double first_block, double tol,
                                   double max_horizon = 1e9);

}  // namespace friedrichs
