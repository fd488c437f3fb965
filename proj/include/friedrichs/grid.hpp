#pragma once

#include <functional>
#include <utility>

#include "friedrichs/common.hpp"

namespace friedrichs {

// Uniform periodic grid on [-L, L). Nodes x_j = -L + j h, momenta k_m = (m - M/2) pi / L.
struct GridSpec {
  double L = 1.0;
  int M = 4;
  double h = 0.5;

  double x(int j) const { return -L + j * h; }
  double k(int m) const { return (m - M / 2) * dk(); }
  double dk() const { return kPi / L; }
  double k_max() const { return kPi / h; }

  bool operator==(const GridSpec& o) const { return L == o.L && M == o.M; }
};

GridSpec make_grid(double L, int M);

enum class Representation { Position, Momentum };

struct GridFunction {
  GridSpec spec;
  Representation rep = Representation::Position;
  cvec samples;

  static GridFunction zeros(const GridSpec& spec, Representation rep = Representation::Position);
  static GridFunction sample(const GridSpec& spec, const std::function<cplx(double)>& fn,
                             Representation rep = Representation::Position);
};

GridFunction transform(const GridFunction& phi);
GridFunction to_position(const GridFunction& phi);
GridFunction to_momentum(const GridFunction& phi);

cplx inner_product(const GridFunction& phi, const GridFunction& psi);
double norm(const GridFunction& phi);
double sobolev_norm(const GridFunction& phi, double s, double t);

// n-th spectral derivative in position. Odd orders drop the Nyquist mode.
GridFunction derivative(const GridFunction& phi, int order);

// Band-limited interpolant of position samples, built once and evaluated many times.
class Interpolant {
 public:
  explicit Interpolant(const GridFunction& phi);
  cplx operator()(double tau) const;
  const GridSpec& spec() const { return spec_; }

 private:
  GridSpec spec_;
  cvec coef_;  // momentum samples times dk / sqrt(2 pi)
};

cplx evaluate_at(const GridFunction& phi, double tau);

// max |samples| over nodes with |x| >= L - margin
double boundary_magnitude(const GridFunction& phi, double margin);

struct CompactSupportCertificate {
  double a = 0.0;
  double b = 0.0;
  double s = 0.0;
  double sobolev = 0.0;
  std::vector<std::pair<double, double>> excluded;  // (eigenvalue, radius)
};

// Checks samples vanish (<= tol) outside [a,b] and [a,b] misses every fattened excluded point.
CompactSupportCertificate certify_support(const GridFunction& phi, double a, double b, double s,
                                          const std::vector<std::pair<double, double>>& excluded = {},
                                          double tol = 1e-14);

}  // namespace friedrichs
