#include "friedrichs/localization.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "friedrichs/quadrature.hpp"

namespace friedrichs {

LocalizationProfile make_indicator(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi), "f.J must be bounded");
  require(std::abs(lo + hi) <= 1e-12 * std::max(1.0, std::abs(hi)), "f.J must be symmetric");
  require(hi > 0.0, "f.J must contain a neighbourhood of 0");
  LocalizationProfile f;
  f.kind_ = ProfileKind::Indicator;
  f.delta_ = hi;
  return f;
}

LocalizationProfile make_smooth_bump(double delta, double width, double rho) {
  require(delta > 0.0, "f.delta must be positive");
  require(width > 0.0, "f.width must be positive");
  require(rho > 1.0, "f.rho must exceed 1");
  LocalizationProfile f;
  f.kind_ = ProfileKind::SmoothBump;
  f.delta_ = delta;
  f.width_ = width;
  f.rho_ = rho;
  return f;
}

LocalizationProfile make_ramp(double delta, double width) {
  require(delta > 0.0, "f.delta must be positive");
  require(width > 0.0, "f.width must be positive");
  LocalizationProfile f;
  f.kind_ = ProfileKind::Ramp;
  f.delta_ = delta;
  f.width_ = width;
  return f;
}

LocalizationProfile make_user_profile(std::function<cplx(double)> fn, double delta, double rho,
                                      std::vector<double> breaks, double integral) {
  require(static_cast<bool>(fn), "user profile needs a callable");
  require(delta > 0.0, "f.delta must be positive");
  require(rho > 1.0, "f.rho must exceed 1");
  LocalizationProfile f;
  f.kind_ = ProfileKind::User;
  f.delta_ = delta;
  f.rho_ = rho;
  f.user_ = std::move(fn);
  f.user_breaks_ = std::move(breaks);
  f.user_integral_ = integral;
  return f;
}

cplx LocalizationProfile::operator()(double x) const {
  const double a = std::abs(x);
  switch (kind_) {
    case ProfileKind::Indicator:
      return a <= delta_ ? 1.0 : 0.0;
    case ProfileKind::SmoothBump: {
      if (a <= delta_) return 1.0;
      const double u = (a - delta_) / width_;
      return std::pow(1.0 + u * u, -0.5 * rho_);
    }
    case ProfileKind::Ramp:
      if (a <= delta_) return 1.0;
      if (a >= delta_ + width_) return 0.0;
      return 1.0 - (a - delta_) / width_;
    case ProfileKind::User:
      return user_(a);
  }
  return 0.0;
}

cplx LocalizationProfile::antiderivative(double u) const {
  require(u >= 0.0, "antiderivative: u must be nonnegative");
  switch (kind_) {
    case ProfileKind::Indicator:
      return std::min(u, delta_);
    case ProfileKind::SmoothBump: {
      if (u <= delta_) return u;
      // int_0^S (1+s^2)^(-rho/2) ds = B(S^2/(1+S^2); 1/2, (rho-1)/2) / 2
      const double S = (u - delta_) / width_;
      const double t = S * S / (1.0 + S * S);
      return delta_ + 0.5 * width_ * boost::math::beta(0.5, 0.5 * (rho_ - 1.0), t);
    }
    case ProfileKind::Ramp: {
      if (u <= delta_) return u;
      const double s = std::min(u - delta_, width_);
      return delta_ + s - 0.5 * s * s / width_;
    }
    case ProfileKind::User:
      break;
  }
  std::vector<double> x, w;
  std::vector<double> splits;
  for (double b : user_breaks_) splits.push_back(b);
  panel_nodes(0.0, u, splits, 0.05, 16, x, w);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * user_(x[i]);
  return acc;
}

double LocalizationProfile::integral() const {
  switch (kind_) {
    case ProfileKind::Indicator:
      return 2.0 * delta_;
    case ProfileKind::SmoothBump:
      return 2.0 * delta_ + width_ * boost::math::beta(0.5, 0.5 * (rho_ - 1.0));
    case ProfileKind::Ramp:
      return 2.0 * delta_ + width_;
    case ProfileKind::User:
      return user_integral_;
  }
  return 0.0;
}

double LocalizationProfile::sup_abs() const {
  if (kind_ != ProfileKind::User) return 1.0;
  double s = std::abs(user_(0.0));
  for (double x = 0.0; x < 100.0; x += 0.01) s = std::max(s, std::abs(user_(x)));
  return s;
}

std::vector<double> LocalizationProfile::breakpoints() const {
  switch (kind_) {
    case ProfileKind::Indicator:
    case ProfileKind::SmoothBump:
      return {delta_};
    case ProfileKind::Ramp:
      return {delta_, delta_ + width_};
    case ProfileKind::User:
      return user_breaks_;
  }
  return {};
}

double LocalizationProfile::support_halfwidth() const {
  switch (kind_) {
    case ProfileKind::Indicator:
      return delta_;
    case ProfileKind::Ramp:
      return delta_ + width_;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

double localization_integral(const LocalizationProfile& f) { return f.integral(); }

}  // namespace friedrichs
