#pragma once

#include <functional>
#include <limits>

#include "friedrichs/common.hpp"

namespace friedrichs {

enum class ProfileKind { Indicator, SmoothBump, Ramp, User };

// Even profile, 1 on (-delta, delta), decaying at least like <x>^-rho.
//   Indicator:  chi_[-a, a]
//   SmoothBump: (1 + ((|x| - delta)/width)^2)^(-rho/2) beyond the plateau
//   Ramp:       linear from 1 at delta to 0 at delta + width
//   User:       arbitrary complex callable (propagation functional only)
class LocalizationProfile {
 public:
  ProfileKind kind() const { return kind_; }
  double delta() const { return delta_; }
  double width() const { return width_; }
  double rho() const { return rho_; }

  cplx operator()(double x) const;
  double real_value(double x) const { return (*this)(x).real(); }

  // Integral of f over [0, u] for u >= 0.
  cplx antiderivative(double u) const;
  double integral() const;
  double sup_abs() const;

  // Points (x >= 0) where f is not smooth; panels are split there.
  std::vector<double> breakpoints() const;
  // f vanishes for |x| beyond this (infinity when it never does).
  double support_halfwidth() const;
  bool real_nonnegative() const { return kind_ != ProfileKind::User; }

  friend LocalizationProfile make_indicator(double lo, double hi);
  friend LocalizationProfile make_smooth_bump(double delta, double width, double rho);
  friend LocalizationProfile make_ramp(double delta, double width);
  friend LocalizationProfile make_user_profile(std::function<cplx(double)> f, double delta, double rho,
                                               std::vector<double> breaks, double integral);

 private:
  ProfileKind kind_ = ProfileKind::Indicator;
  double delta_ = 1.0;
  double width_ = 0.0;
  double rho_ = std::numeric_limits<double>::infinity();
  std::function<cplx(double)> user_;
  std::vector<double> user_breaks_;
  double user_integral_ = 0.0;
};

LocalizationProfile make_indicator(double lo, double hi);
LocalizationProfile make_smooth_bump(double delta, double width, double rho);
LocalizationProfile make_ramp(double delta, double width);
LocalizationProfile make_user_profile(std::function<cplx(double)> f, double delta, double rho,
                                      std::vector<double> breaks, double integral);

double localization_integral(const LocalizationProfile& f);

}  // namespace friedrichs
