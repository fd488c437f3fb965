#pragma once

#include <functional>

#include "friedrichs/grid.hpp"
#include "friedrichs/localization.hpp"

namespace friedrichs {

// rho(k) = |phi_hat(k)|^2 as a function of continuous k.
//
// From a state: the discrete-time Fourier transform of the samples, an exact
// trigonometric polynomial on the momentum zone [-pi/h, pi/h] and zero outside.
// Indicator windows use its Fourier coefficients in closed form; other weights go
// through a zero-padded table with local Lagrange interpolation.
//
// From a function: an analytic density with known support and kinks.
class MomentumDensity {
 public:
  // pad = 0 skips the interpolation table (enough for indicator windows and integrals).
  static MomentumDensity from_state(const GridFunction& phi, int pad = 16);
  static MomentumDensity from_function(std::function<double(double)> rho, double lo, double hi,
                                       std::vector<double> breaks, double panel_width = 0.05);

  double operator()(double k) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& breaks() const { return breaks_; }

  double integral(double a, double b) const;
  double mass() const { return integral(lo_, hi_); }
  double first_moment() const;

  // int rho(k) f((k - s)/r) dk, i.e. <phi, e^{isQ} f(P/r) e^{-isQ} phi>
  double window(const LocalizationProfile& f, double r, double s) const;

  // int rho(k) w(k) dk over the support, panels split at `splits`
  cplx expectation(const std::function<cplx(double)>& w, std::vector<double> splits) const;
  cplx window_complex(const LocalizationProfile& f, double r, double s) const;

 private:
  template <class T>
  T integrate(const std::function<T(double)>& weight, double a, double b, std::vector<double> splits) const;
  double table_value(double k) const;

  bool trig_ = false;
  // trig polynomial: rho(k) = sum_d c_d e^{-i k d h}, d = -(M-1)..M-1
  cvec coef_;
  int M_ = 0;
  double h_ = 0.0;
  // interpolation table on the zone
  std::vector<double> table_;
  double t0_ = 0.0, dt_ = 0.0;
  // analytic
  std::function<double(double)> fn_;

  double lo_ = 0.0, hi_ = 0.0;
  double panel_ = 0.25;
  std::vector<double> breaks_;
};

}  // namespace friedrichs
