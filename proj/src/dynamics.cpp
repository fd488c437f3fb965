#include "friedrichs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "friedrichs/fft.hpp"
#include "friedrichs/quadrature.hpp"

namespace friedrichs {

// ---------------------------------------------------------------- propagator

Propagator::Propagator(FiniteRankModel model) : model_(std::move(model)) {
  const GridSpec& s = model_.spec;
  const int M = s.M;
  const int N = model_.rank();
  real_ = model_.all_real();
  E_.resize(M);
  if (is_free()) {
    for (int i = 0; i < M; ++i) E_[i] = s.x(i);
    Ur_ = Eigen::MatrixXd::Identity(M, M);
    real_ = true;
    return;
  }
  const double sh = std::sqrt(s.h);
  if (real_) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
    for (int j = 0; j < N; ++j) {
      Eigen::VectorXd w(M);
      for (int i = 0; i < M; ++i) w(i) = sh * model_.vectors[j].samples[i].real();
      A.noalias() += model_.lambdas[j] * w * w.transpose();
    }
    for (int i = 0; i < M; ++i) A(i, i) += s.x(i);
    herm_residual_ = (A - A.transpose()).norm() / A.norm();
    if (herm_residual_ > 1e-12) throw ToleranceError("discrete Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw ToleranceError("eigendecomposition did not converge");
    for (int i = 0; i < M; ++i) E_[i] = es.eigenvalues()(i);
    Ur_ = es.eigenvectors();
  } else {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(M, M);
    for (int j = 0; j < N; ++j) {
      Eigen::VectorXcd w(M);
      for (int i = 0; i < M; ++i) w(i) = sh * model_.vectors[j].samples[i];
      A.noalias() += model_.lambdas[j] * w * w.adjoint();
    }
    for (int i = 0; i < M; ++i) A(i, i) += s.x(i);
    herm_residual_ = (A - A.adjoint()).norm() / A.norm();
    if (herm_residual_ > 1e-12) throw ToleranceError("discrete Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() != Eigen::Success) throw ToleranceError("eigendecomposition did not converge");
    for (int i = 0; i < M; ++i) E_[i] = es.eigenvalues()(i);
    Uc_ = es.eigenvectors();
  }
}

bool Propagator::is_free() const {
  for (double l : model_.lambdas)
    if (l != 0.0) return false;
  return true;
}

Eigen::VectorXcd Propagator::to_eigenbasis(const GridFunction& phi_in) const {
  const GridFunction phi = to_position(phi_in);
  require(phi.spec == spec(), "propagator: grid mismatch");
  const int M = spec().M;
  const double sh = std::sqrt(spec().h);
  if (real_) {
    Eigen::VectorXd re(M), im(M);
    for (int i = 0; i < M; ++i) {
      re(i) = sh * phi.samples[i].real();
      im(i) = sh * phi.samples[i].imag();
    }
    const Eigen::VectorXd br = Ur_.transpose() * re;
    const Eigen::VectorXd bi = Ur_.transpose() * im;
    Eigen::VectorXcd b(M);
    for (int i = 0; i < M; ++i) b(i) = cplx(br(i), bi(i));
    return b;
  }
  Eigen::VectorXcd c(M);
  for (int i = 0; i < M; ++i) c(i) = sh * phi.samples[i];
  return Uc_.adjoint() * c;
}

GridFunction Propagator::from_eigenbasis(const Eigen::VectorXcd& b) const {
  const int M = spec().M;
  const double ish = 1.0 / std::sqrt(spec().h);
  GridFunction out = GridFunction::zeros(spec());
  if (real_) {
    const Eigen::VectorXd cr = Ur_ * b.real();
    const Eigen::VectorXd ci = Ur_ * b.imag();
    for (int i = 0; i < M; ++i) out.samples[i] = ish * cplx(cr(i), ci(i));
  } else {
    const Eigen::VectorXcd c = Uc_ * b;
    for (int i = 0; i < M; ++i) out.samples[i] = ish * c(i);
  }
  return out;
}

GridFunction Propagator::eigenvector(int n) const {
  require(n >= 0 && n < spec().M, "eigenvector index out of range");
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(spec().M);
  b(n) = 1.0;
  return from_eigenbasis(b);
}

GridFunction Propagator::apply_h(const GridFunction& phi_in) const {
  const GridFunction phi = to_position(phi_in);
  GridFunction out = phi;
  for (int i = 0; i < spec().M; ++i) out.samples[i] *= spec().x(i);
  for (int j = 0; j < model_.rank(); ++j) {
    const cplx p = inner_product(model_.vectors[j], phi);
    for (int i = 0; i < spec().M; ++i) out.samples[i] += model_.lambdas[j] * p * model_.vectors[j].samples[i];
  }
  return out;
}

double Propagator::decomposition_residual() const {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int probe = 0; probe < 3; ++probe) {
    GridFunction x = GridFunction::zeros(spec());
    for (cplx& z : x.samples) z = cplx(nd(rng), real_ ? 0.0 : nd(rng));
    Eigen::VectorXcd b = to_eigenbasis(x);
    for (int n = 0; n < spec().M; ++n) b(n) *= E_[n];
    const GridFunction hx = apply_h(x);
    GridFunction diff = from_eigenbasis(b);
    for (int i = 0; i < spec().M; ++i) diff.samples[i] -= hx.samples[i];
    worst = std::max(worst, norm(diff) / norm(x));
  }
  return worst;
}

GridFunction evolve(const Propagator& prop, const GridFunction& phi_in, double t, Evolution which) {
  const GridFunction phi = to_position(phi_in);
  require(phi.spec == prop.spec(), "evolve: grid mismatch");
  if (t == 0.0) return phi;
  if (which == Evolution::Free || prop.is_free()) {
    GridFunction out = phi;
    for (int i = 0; i < phi.spec.M; ++i) out.samples[i] *= std::polar(1.0, -t * phi.spec.x(i));
    return out;
  }
  Eigen::VectorXcd b = prop.to_eigenbasis(phi);
  const auto& E = prop.energies();
  for (int n = 0; n < b.size(); ++n) b(n) *= std::polar(1.0, -t * E[n]);
  return prop.from_eigenbasis(b);
}

// ---------------------------------------------------------------- wave operators

namespace {

// c_j(tau) = <w_j, e^{-i tau X} c>, w_j = sqrt(h) v_j, c = sqrt(h) phi
cvec coupling_amplitudes(const FiniteRankModel& m, const GridFunction& phi, double tau) {
  const GridSpec& s = m.spec;
  cvec out(m.rank(), 0.0);
  for (int j = 0; j < m.rank(); ++j) {
    cplx acc = 0.0;
    for (int i = 0; i < s.M; ++i)
      acc += std::conj(m.vectors[j].samples[i]) * std::polar(1.0, -tau * s.x(i)) * phi.samples[i];
    out[j] = acc * s.h;
  }
  return out;
}

// int_s0^smax ||V e^{-i dir s H0} psi|| ds with smax = pi / h. The amplitudes are the Fourier
// transforms of conj(v_j) psi; one padded FFT gives them on a fine s grid. Beyond pi / h the
// discrete circle starts aliasing, so the integral stops there.
double interaction_integral(const FiniteRankModel& m, const GridFunction& psi, int dir, double s0 = 0.0) {
  const GridSpec& s = m.spec;
  const int pad = 8, P = pad * s.M;
  const double ds = 2.0 * kPi / (P * s.h);
  std::vector<double> acc(P / 2 + 1, 0.0);
  for (int j = 0; j < m.rank(); ++j) {
    cvec q(P, 0.0);
    for (int i = 0; i < s.M; ++i) q[i] = std::conj(m.vectors[j].samples[i]) * psi.samples[i] * s.h;
    // e^{-i s x}: forward transform for s > 0, backward for s < 0
    fft_inplace(q, dir > 0 ? -1 : 1);
    for (int n = 0; n <= P / 2; ++n) acc[n] += m.lambdas[j] * m.lambdas[j] * std::norm(q[n]);
  }
  const int n0 = static_cast<int>(std::ceil(s0 / ds));
  if (n0 >= P / 2) return 0.0;
  double total = 0.0;
  for (int n = n0; n <= P / 2; ++n) total += (n == n0 || n == P / 2 ? 0.5 : 1.0) * std::sqrt(acc[n]);
  return total * ds;
}

double distance(const GridFunction& a, const GridFunction& b) {
  GridFunction d = a;
  for (std::size_t i = 0; i < d.samples.size(); ++i) d.samples[i] -= b.samples[i];
  return norm(d);
}

}  // namespace

WaveResult wave_operator(const Propagator& prop, const GridFunction& phi_in, WaveSign sign, WaveMethod method,
                         const WaveOptions& opts) {
  const GridFunction phi = to_position(phi_in);
  WaveResult res;
  if (prop.is_free()) {
    res.state = phi;
    return res;
  }
  const double dir = sign == WaveSign::Minus ? -1.0 : 1.0;
  if (method == WaveMethod::Dressing) {
    // W(T) = e^{itH} e^{-itH0} phi at t = dir * T
    auto dressed = [&](double T) {
      const double t = dir * T;
      return evolve(prop, evolve(prop, phi, t, Evolution::Free), -t, Evolution::Full);
    };
    const GridFunction w1 = dressed(opts.T0);
    const GridFunction w2 = dressed(2.0 * opts.T0);
    const double q = std::pow(2.0, opts.richardson_p);
    res.state = w2;
    for (std::size_t i = 0; i < w2.samples.size(); ++i)
      res.state.samples[i] = (q * w2.samples[i] - w1.samples[i]) / (q - 1.0);
    res.tail_estimate = distance(w2, w1) / (q - 1.0);
  } else {
    // W phi = phi + dir * i int_0^{dir inf} e^{itH} V e^{-itH0} phi dt, in the eigenbasis
    const FiniteRankModel& m = prop.model();
    const int N = m.rank(), M = prop.spec().M;
    const auto& E = prop.energies();
    const double T = opts.cook_horizon;
    std::vector<double> nodes, weights;
    panel_nodes(dir < 0 ? -T : 0.0, dir < 0 ? 0.0 : T, {}, opts.cook_panel, opts.cook_order, nodes, weights);
    std::vector<Eigen::VectorXcd> acc(N, Eigen::VectorXcd::Zero(M));
    for (std::size_t q = 0; q < nodes.size(); ++q) {
      const cvec c = coupling_amplitudes(m, phi, nodes[q]);
      for (int n = 0; n < M; ++n) {
        const cplx ph = weights[q] * std::polar(1.0, nodes[q] * E[n]);
        for (int j = 0; j < N; ++j) acc[j](n) += ph * c[j];
      }
    }
    Eigen::VectorXcd b = prop.to_eigenbasis(phi);
    const cplx pref(0.0, dir);
    for (int j = 0; j < N; ++j) {
      GridFunction vj = m.vectors[j];
      const Eigen::VectorXcd uv = prop.to_eigenbasis(vj);  // U^* sqrt(h) v_j
      b += pref * m.lambdas[j] * uv.cwiseProduct(acc[j]);
    }
    res.state = prop.from_eigenbasis(b);
    // Remainder beyond the horizon is bounded by the integral of ||V e^{-itH0} phi||.
    res.tail_estimate = interaction_integral(m, phi, dir < 0 ? -1 : 1, T);
  }
  if (res.tail_estimate > opts.tol)
    throw ToleranceError("increase horizon: wave-operator tail estimate " + std::to_string(res.tail_estimate) +
                         " exceeds " + std::to_string(opts.tol));
  return res;
}

// ---------------------------------------------------------------- sojourn times

namespace {

std::vector<double> window_kinks(const MomentumDensity& rho, const LocalizationProfile& f, double r) {
  std::vector<double> kinks;
  std::vector<double> kb = rho.breaks();
  for (double b : f.breakpoints())
    for (double k : kb) {
      kinks.push_back(k - r * b);
      kinks.push_back(k + r * b);
    }
  return kinks;
}

double first_block(const MomentumDensity& rho, const LocalizationProfile& f, double r) {
  const double sh = f.support_halfwidth();
  const double reach = std::isfinite(sh) ? sh : f.delta();
  return std::max(std::abs(rho.lo()), std::abs(rho.hi())) + r * reach + 1.0;
}

}  // namespace

SojournResult sojourn_free_numeric(const MomentumDensity& rho, const LocalizationProfile& f, double r,
                                   const SojournOptions& opts) {
  require(f.real_nonnegative(), "sojourn needs a real nonnegative profile");
  require(r > 0.0, "sojourn: r must be positive");
  SojournResult out;
  out.r = r;
  const double scale = r * rho.mass() * f.integral();
  if (scale <= 0.0) return out;
  const double tol = opts.tol_rel * scale;
  auto g = [&](double t) { return rho.window(f, r, t); };
  const auto kinks = window_kinks(rho, f, r);
  const double fb = first_block(rho, f, r);
  const auto right = integrate_half_line(g, 0.0, +1, kinks, fb, 0.5 * tol, opts.max_horizon);
  const auto left = integrate_half_line(g, 0.0, -1, kinks, fb, 0.5 * tol, opts.max_horizon);
  // the fitted power-law remainder is added; its size doubles as the error estimate
  out.value = right.value + left.value + right.tail + left.tail;
  out.tail_estimate = right.tail + left.tail + right.quad_error + left.quad_error;
  out.decay_exponent = std::min(right.exponent, left.exponent);
  return out;
}

SojournResult sojourn(const Propagator* prop, const GridFunction& state, const LocalizationProfile& f, double r,
                      SojournKind which, const SojournOptions& opts) {
  require(f.real_nonnegative(), "sojourn needs a real nonnegative profile");
  require(r > 0.0, "sojourn: r must be positive");
  switch (which) {
    case SojournKind::FreeAnalytic: {
      SojournResult out;
      out.r = r;
      const double n = norm(state);
      out.value = r * n * n * f.integral();
      return out;
    }
    case SojournKind::FreeNumeric:
      return sojourn_free_numeric(MomentumDensity::from_state(state), f, r, opts);
    case SojournKind::Full:
      require(prop != nullptr, "sojourn(Full) needs a propagator");
      return sojourn_full(*prop, state, f, {r}, opts).front();
  }
  return {};
}

std::vector<SojournResult> sojourn_full(const Propagator& prop, const GridFunction& psi_in,
                                        const LocalizationProfile& f, const std::vector<double>& r_list,
                                        const SojournOptions& opts) {
  require(f.real_nonnegative(), "sojourn needs a real nonnegative profile");
  const GridFunction psi = to_position(psi_in);
  std::vector<SojournResult> out(r_list.size());
  // Without interaction e^{-itH} = e^{-itH0}; the free machinery is then exact.
  if (prop.is_free()) {
    const MomentumDensity rho = MomentumDensity::from_state(psi);
    for (std::size_t i = 0; i < r_list.size(); ++i) out[i] = sojourn_free_numeric(rho, f, r_list[i], opts);
    return out;
  }
  const int pad = f.kind() == ProfileKind::Indicator ? 0 : 32;
  const double Tc = opts.core;
  const double n2 = std::pow(norm(psi), 2);
  std::vector<double> nodes, weights;
  panel_nodes(-Tc, Tc, {}, opts.core_panel, opts.core_order, nodes, weights);
  const Eigen::VectorXcd b = prop.to_eigenbasis(psi);
  const auto& E = prop.energies();
  std::vector<double> core(r_list.size(), 0.0);
  Eigen::VectorXcd bt(b.size());
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    for (int n = 0; n < b.size(); ++n) bt(n) = b(n) * std::polar(1.0, -nodes[q] * E[n]);
    const MomentumDensity rho = MomentumDensity::from_state(prop.from_eigenbasis(bt), pad);
    for (std::size_t i = 0; i < r_list.size(); ++i) core[i] += weights[q] * rho.window(f, r_list[i], 0.0);
  }
  // Beyond the core the interaction has died out: continue freely from psi(+-Tc).
  const GridFunction psi_p = evolve(prop, psi, Tc, Evolution::Full);
  const GridFunction psi_m = evolve(prop, psi, -Tc, Evolution::Full);
  const MomentumDensity rho_p = MomentumDensity::from_state(psi_p, pad);
  const MomentumDensity rho_m = MomentumDensity::from_state(psi_m, pad);
  // delta_+- = int_0^inf ||V e^{-+isH0} psi(+-Tc)|| ds bounds the free-continuation error.
  const FiniteRankModel& m = prop.model();
  const double dp = interaction_integral(m, psi_p, +1), dm = interaction_integral(m, psi_m, -1);
  const double nrm = std::sqrt(n2);
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    const double r = r_list[i];
    const double scale = r * n2 * f.integral();
    const double tol = std::max(opts.tol_rel * scale, 1e-300);
    const double fb = r * (std::isfinite(f.support_halfwidth()) ? f.support_halfwidth() : f.delta()) + 10.0;
    const auto right = integrate_half_line([&](double t) { return rho_p.window(f, r, t - Tc); }, Tc, +1, {}, fb,
                                           0.5 * tol, opts.max_horizon);
    const auto left = integrate_half_line([&](double t) { return rho_m.window(f, r, t + Tc); }, -Tc, -1, {}, fb,
                                          0.5 * tol, opts.max_horizon);
    out[i].r = r;
    out[i].value = core[i] + right.value + left.value + right.tail + left.tail;
    const double inter = n2 > 0.0 ? (2.0 * nrm * (dp + dm) + dp * dp + dm * dm) * r * f.integral() / n2 : 0.0;
    out[i].tail_estimate = right.tail + left.tail + right.quad_error + left.quad_error + inter;
    out[i].decay_exponent = std::min(right.exponent, left.exponent);
  }
  return out;
}

// ---------------------------------------------------------------- propagation functional

cplx propagation_functional(const MomentumDensity& rho, const LocalizationProfile& f, double r,
                            PropagationMethod method, double tol) {
  require(r > 0.0, "propagation functional: r must be positive");
  if (method == PropagationMethod::ClosedForm) {
    // I_r = 2 r int rho(k) sgn(k) F(|k|/r) dk,  F(u) = int_0^u f
    std::vector<double> splits{0.0};
    for (double b : f.breakpoints()) {
      splits.push_back(-r * b);
      splits.push_back(r * b);
    }
    return 2.0 * r * rho.expectation(
                         [&](double k) {
                           const double s = k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0);
                           return s * f.antiderivative(std::abs(k) / r);
                         },
                         splits);
  }
  // Direct: int_0^inf [g(t) - g(-t)] dt with g(t) = <phi, f((P - t)/r) phi>
  std::vector<double> kinks;
  for (double b : f.breakpoints())
    for (double k : rho.breaks()) {
      kinks.push_back(std::abs(k - r * b));
      kinks.push_back(std::abs(k + r * b));
    }
  const double fb = first_block(rho, f, r);
  const double scale = std::max(1.0, r * rho.mass());
  auto part = [&](bool imag) {
    auto h = [&](double t) {
      const cplx d = rho.window_complex(f, r, t) - rho.window_complex(f, r, -t);
      return imag ? d.imag() : d.real();
    };
    const auto r = integrate_half_line(h, 0.0, +1, kinks, fb, tol * scale);
    return r.value + r.tail;
  };
  const double re = part(false);
  const double im = f.real_nonnegative() ? 0.0 : part(true);
  return {re, im};
}

cplx propagation_functional(const GridFunction& phi, const LocalizationProfile& f, double r,
                            PropagationMethod method, double tol) {
  return propagation_functional(MomentumDensity::from_state(phi), f, r, method, tol);
}

// ---------------------------------------------------------------- sweep

PowerLawFit fit_power_law(const std::vector<double>& r, const std::vector<double>& tau, int count) {
  require(r.size() == tau.size() && !r.empty(), "fit_power_law: bad input");
  PowerLawFit best;
  const int n = std::min<int>(count, static_cast<int>(r.size()));
  best.points = n;
  const int off = static_cast<int>(r.size()) - n;
  if (n < 3) {
    best.tau_inf = tau.back();
    return best;
  }
  best.residual = std::numeric_limits<double>::infinity();
  for (double beta = 0.1; beta <= 8.0 + 1e-12; beta += 0.01) {
    // least squares for tau = a + c r^-beta
    double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (int i = off; i < off + n; ++i) {
      const double x = std::pow(r[i], -beta);
      s1 += 1;
      sx += x;
      sxx += x * x;
      sy += tau[i];
      sxy += x * tau[i];
    }
    const double det = s1 * sxx - sx * sx;
    if (std::abs(det) < 1e-300) continue;
    const double a = (sxx * sy - sx * sxy) / det;
    const double c = (s1 * sxy - sx * sy) / det;
    double ss = 0.0;
    for (int i = off; i < off + n; ++i) {
      const double e = tau[i] - a - c * std::pow(r[i], -beta);
      ss += e * e;
    }
    const double rms = std::sqrt(ss / n);
    if (rms < best.residual) {
      best.residual = rms;
      best.tau_inf = a;
      best.c = c;
      best.beta = beta;
    }
  }
  return best;
}

SweepResult time_delay_sweep(const Propagator& prop, const ScatteringCurve& curve, const GridFunction& phi_in,
                             const LocalizationProfile& f, const std::vector<double>& r_list,
                             const SweepOptions& opts) {
  require(f.real_nonnegative(), "sweep needs a real nonnegative profile");
  require(!r_list.empty(), "experiment.r_list must not be empty");
  for (double r : r_list) require(r > 0.0, "experiment.r_list entries must be positive");
  const GridFunction phi = to_position(phi_in);
  require(phi.spec == prop.spec(), "sweep: state and propagator grids differ");
  SweepResult res;

  double lo = opts.support_lo, hi = opts.support_hi;
  if (!(lo < hi)) {
    int first = -1, last = -1;
    for (int i = 0; i < phi.spec.M; ++i)
      if (std::abs(phi.samples[i]) > 1e-14) {
        if (first < 0) first = i;
        last = i;
      }
    require(first >= 0, "sweep: state is zero");
    lo = phi.spec.x(first) - phi.spec.h;
    hi = phi.spec.x(last) + phi.spec.h;
  }
  res.certificate = certify_support(phi, lo, hi, opts.s, opts.exclusions);

  const GridFunction Sphi = apply_scattering(curve, phi);
  res.norm_phi = norm(phi);
  res.norm_S_phi = norm(Sphi);
  GridFunction wphi = phi;
  if (!prop.is_free()) {
    const WaveResult w = wave_operator(prop, phi, WaveSign::Minus, WaveMethod::Dressing, opts.wave);
    wphi = w.state;
    res.wave_tail = w.tail_estimate;
  }
  res.isometry_residual = std::abs(norm(wphi) - res.norm_phi);

  // H = H0: the full sojourn is the free one, whose value is known in closed form.
  std::vector<SojournResult> full;
  if (!prop.is_free()) full = sojourn_full(prop, wphi, f, r_list, opts.sojourn);
  const double fint = f.integral();
  const MomentumDensity rho = MomentumDensity::from_state(phi);
  const MomentumDensity rho_s = MomentumDensity::from_state(Sphi);
  res.decay_exponent = std::numeric_limits<double>::infinity();
  std::vector<double> rs, taus;
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    const double r = r_list[i];
    SojournRecord rec;
    rec.r = r;
    rec.T0 = r * res.norm_phi * res.norm_phi * fint;
    rec.T0_S = r * res.norm_S_phi * res.norm_S_phi * fint;
    rec.T = prop.is_free() ? rec.T0 : full[i].value;
    rec.tau_in = rec.T - rec.T0;
    rec.tau_sym = rec.T - 0.5 * (rec.T0 + rec.T0_S);
    const cplx Is = propagation_functional(rho_s, f, r, PropagationMethod::ClosedForm);
    const cplx I0 = propagation_functional(rho, f, r, PropagationMethod::ClosedForm);
    rec.tau_free = 0.5 * (Is - I0).real();
    rec.tail_estimate = prop.is_free() ? 0.0 : full[i].tail_estimate;
    res.records.push_back(rec);
    rs.push_back(r);
    taus.push_back(rec.tau_in);
    if (opts.check_free_numeric) {
      const auto a = sojourn_free_numeric(rho, f, r, opts.sojourn);
      const auto b = sojourn_free_numeric(rho_s, f, r, opts.sojourn);
      res.free_numeric_residual = std::max({res.free_numeric_residual, std::abs(a.value - rec.T0) / rec.T0,
                                            std::abs(b.value - rec.T0_S) / rec.T0_S});
      res.decay_exponent = std::min(res.decay_exponent, b.decay_exponent);
    }
  }
  res.fit = fit_power_law(rs, taus, opts.fit_count);
  res.ew_value = ew_time_delay(curve, phi);
  const double denom = std::abs(res.ew_value);
  res.rel_gap = denom > 0.0 ? std::abs(res.fit.tau_inf - res.ew_value) / denom : std::abs(res.fit.tau_inf);
  return res;
}

}  // namespace friedrichs
