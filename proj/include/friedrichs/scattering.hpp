#pragma once

#include "friedrichs/resolvent.hpp"

namespace friedrichs {

cplx s_matrix(const FiniteRankModel& model, double x);
cplx s_matrix_chain(const FiniteRankModel& model, double x);
cplx s_prime(const FiniteRankModel& model, double x);

// Everything at one energy from a single set of boundary values.
struct ScatteringPoint {
  double x = 0.0;
  cplx S = 1.0;
  cplx S_chain = 1.0;
  cplx Sp = 0.0;
  cplx delay = 0.0;     // -i conj(S) S'
  double xi_det = 0.0;  // (1/pi) d/dx arg D(x+i0)
  cplx D_plus = 1.0;
};
ScatteringPoint scattering_point(const FiniteRankModel& model, double x);

struct ScatteringCurve {
  std::vector<double> x;
  cvec S;
  cvec S_chain;
  cvec Sp;
  std::vector<double> delay;       // real part of -i conj(S) S'
  std::vector<double> delay_imag;  // its imaginary residue
  std::vector<double> xi_det;

  double max_unitarity_residual() const;
  double max_chain_residual() const;
  double max_reality_residual() const;
  double max_birman_krein_residual() const;  // |theta' + 2 pi xi'| with xi' from the determinant
};

std::vector<double> energy_grid(double lo, double hi, int count,
                                const std::vector<std::pair<double, double>>& exclusions = {});

ScatteringCurve make_curve(const FiniteRankModel& model, const std::vector<double>& energies);

// xi' = -theta' / (2 pi)
std::vector<double> spectral_shift_density(const ScatteringCurve& curve);

// Local Lagrange interpolation of a curve column at x.
cplx curve_value(const std::vector<double>& xs, const cvec& ys, double x);
double curve_value(const std::vector<double>& xs, const std::vector<double>& ys, double x);

double ew_time_delay(const ScatteringCurve& curve, const GridFunction& phi);
// -2 pi int |phi|^2 xi' with xi' taken from the determinant phase.
double spectral_shift_time_delay(const ScatteringCurve& curve, const GridFunction& phi);
GridFunction apply_scattering(const ScatteringCurve& curve, const GridFunction& phi);

}  // namespace friedrichs
