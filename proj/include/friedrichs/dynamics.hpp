#pragma once

#include <Eigen/Dense>

#include "friedrichs/localization.hpp"
#include "friedrichs/momentum.hpp"
#include "friedrichs/resolvent.hpp"
#include "friedrichs/scattering.hpp"

namespace friedrichs {

// Discrete H = diag(x_i) + sum_j lambda_j (sqrt(h) v_j)(sqrt(h) v_j)^* in the coordinates
// c_i = sqrt(h) phi(x_i), diagonalized once. This is the Friedrichs model on a momentum
// circle of length 2 pi / h; it tracks the line model while packets stay inside the zone.
class Propagator {
 public:
  explicit Propagator(FiniteRankModel model);

  const FiniteRankModel& model() const { return model_; }
  const GridSpec& spec() const { return model_.spec; }
  const std::vector<double>& energies() const { return E_; }
  bool is_real() const { return real_; }
  bool is_free() const;

  Eigen::VectorXcd to_eigenbasis(const GridFunction& phi) const;
  GridFunction from_eigenbasis(const Eigen::VectorXcd& b) const;
  GridFunction eigenvector(int n) const;
  GridFunction apply_h(const GridFunction& phi) const;

  double hermiticity_residual() const { return herm_residual_; }
  // max ||H x - U E U^* x|| / ||x|| over a few fixed probe vectors
  double decomposition_residual() const;

 private:
  FiniteRankModel model_;
  bool real_ = true;
  std::vector<double> E_;
  Eigen::MatrixXd Ur_;
  Eigen::MatrixXcd Uc_;
  double herm_residual_ = 0.0;
};

enum class Evolution { Free, Full };
GridFunction evolve(const Propagator& prop, const GridFunction& phi, double t, Evolution which);

enum class WaveSign { Minus, Plus };
enum class WaveMethod { Dressing, Cook };

struct WaveOptions {
  double T0 = 150.0;         // Dressing base horizon; extrapolates over {T0, 2 T0}
  double richardson_p = 4.0; // assumed decay exponent zeta - 1 of W(T) - W
  double cook_horizon = 300.0;
  double cook_panel = 1.0;
  int cook_order = 16;
  double tol = 1e-4;
};

struct WaveResult {
  GridFunction state;
  double tail_estimate = 0.0;
};

WaveResult wave_operator(const Propagator& prop, const GridFunction& phi, WaveSign sign, WaveMethod method,
                         const WaveOptions& opts = {});

enum class SojournKind { FreeAnalytic, FreeNumeric, Full };

struct SojournOptions {
  double tol_rel = 1e-9;     // relative to r ||phi||^2 int f
  double core = 200.0;       // Full: exact propagation on [-core, core]
  double core_panel = 2.0;
  int core_order = 16;
  double max_horizon = 1e9;
};

struct SojournResult {
  double r = 0.0;
  double value = 0.0;
  double tail_estimate = 0.0;
  double decay_exponent = 0.0;  // fitted from the free tails
};

// For Full, `state` is W_- phi; otherwise it is phi.
SojournResult sojourn(const Propagator* prop, const GridFunction& state, const LocalizationProfile& f, double r,
                      SojournKind which, const SojournOptions& opts = {});
SojournResult sojourn_free_numeric(const MomentumDensity& rho, const LocalizationProfile& f, double r,
                                   const SojournOptions& opts = {});
std::vector<SojournResult> sojourn_full(const Propagator& prop, const GridFunction& w_minus_phi,
                                        const LocalizationProfile& f, const std::vector<double>& r_list,
                                        const SojournOptions& opts = {});

enum class PropagationMethod { ClosedForm, Direct };

cplx propagation_functional(const MomentumDensity& rho, const LocalizationProfile& f, double r,
                            PropagationMethod method, double tol = 1e-11);
cplx propagation_functional(const GridFunction& phi, const LocalizationProfile& f, double r,
                            PropagationMethod method, double tol = 1e-11);

struct SojournRecord {
  double r = 0.0;
  double T0 = 0.0;
  double T0_S = 0.0;
  double T = 0.0;
  double tau_in = 0.0;
  double tau_sym = 0.0;
  double tau_free = 0.0;
  double tail_estimate = 0.0;
};

struct PowerLawFit {
  double tau_inf = 0.0;
  double c = 0.0;
  double beta = 0.0;
  double residual = 0.0;
  int points = 0;
};

// tau_r = tau_inf + c r^-beta on the largest `count` r values; beta by grid search.
PowerLawFit fit_power_law(const std::vector<double>& r, const std::vector<double>& tau, int count);

struct SweepOptions {
  double support_lo = 0.0;  // D_s certificate interval; lo >= hi means detect from samples
  double support_hi = 0.0;
  double s = 3.0;
  std::vector<std::pair<double, double>> exclusions;
  WaveOptions wave;
  SojournOptions sojourn;
  int fit_count = 4;
  bool check_free_numeric = true;
};

struct SweepResult {
  std::vector<SojournRecord> records;
  PowerLawFit fit;
  double ew_value = 0.0;
  double rel_gap = 0.0;
  double wave_tail = 0.0;
  double norm_phi = 0.0;
  double norm_S_phi = 0.0;
  double isometry_residual = 0.0;  // | ||W_- phi|| - ||phi|| |
  double free_numeric_residual = 0.0;    // max relative |T0 numeric - analytic| over phi and S phi
  double decay_exponent = 0.0;     // smallest fitted exponent of the free tails of S phi
  CompactSupportCertificate certificate;
};

SweepResult time_delay_sweep(const Propagator& prop, const ScatteringCurve& curve, const GridFunction& phi,
                             const LocalizationProfile& f, const std::vector<double>& r_list,
                             const SweepOptions& opts = {});

}  // namespace friedrichs
