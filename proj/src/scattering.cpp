#include "friedrichs/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace friedrichs {

namespace {

constexpr double kProximity = 1e-8;

Eigen::MatrixXcd one_plus_r_lambda(const FiniteRankModel& m, const Eigen::MatrixXcd& r) {
  const int N = m.rank();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N);
  for (int k = 0; k < N; ++k) A.col(k) += r.col(k) * m.lambdas[k];
  return A;
}

void check_proximity(const cplx& D, double x) {
  if (std::abs(D) < kProximity)
    throw PreconditionError("point spectrum proximity at x = " + std::to_string(x));
}

}  // namespace

ScatteringPoint scattering_point(const FiniteRankModel& m, double x) {
  ScatteringPoint p;
  p.x = x;
  const int N = m.rank();
  if (N == 0) return p;
  const BoundaryData b1 = boundary_matrix(m, x, Side::Plus, 1);
  check_proximity(b1.det, x);
  const BoundaryData b2 = boundary_matrix(m, x, Side::Plus, 2);
  const Eigen::MatrixXcd A = one_plus_r_lambda(m, b1.r);
  const auto lu = A.partialPivLu();
  const Eigen::MatrixXcd X = lu.solve(b1.r);
  Eigen::MatrixXcd LX = X;
  for (int j = 0; j < N; ++j) LX.row(j) *= m.lambdas[j];
  const Eigen::MatrixXcd dX = lu.solve(b2.r * (Eigen::MatrixXcd::Identity(N, N) - LX));

  Eigen::VectorXcd v(N), dv(N);
  for (int j = 0; j < N; ++j) {
    v(j) = m.v(j, x, 0);
    dv(j) = m.v(j, x, 1);
  }
  // S = 1 - 2 pi i [ sum_j l_j |v_j|^2 - sum_jk l_j l_k v_j conj(v_k) X_jk ]
  cplx a = 0.0, da = 0.0;
  for (int j = 0; j < N; ++j) {
    a += m.lambdas[j] * std::norm(v(j));
    da += m.lambdas[j] * 2.0 * std::real(std::conj(v(j)) * dv(j));
    for (int k = 0; k < N; ++k) {
      const double ll = m.lambdas[j] * m.lambdas[k];
      const cplx vv = v(j) * std::conj(v(k));
      const cplx dvv = dv(j) * std::conj(v(k)) + v(j) * std::conj(dv(k));
      a -= ll * vv * X(j, k);
      da -= ll * (dvv * X(j, k) + vv * dX(j, k));
    }
  }
  const cplx two_pi_i(0.0, 2.0 * kPi);
  p.S = 1.0 - two_pi_i * a;
  p.Sp = -two_pi_i * da;
  p.delay = cplx(0.0, -1.0) * std::conj(p.S) * p.Sp;
  p.D_plus = b1.det;
  p.S_chain = std::conj(b1.det) / b1.det;
  // Jacobi: d/dx log D = tr(A^-1 r2 Lambda)
  Eigen::MatrixXcd r2L = b2.r;
  for (int k = 0; k < N; ++k) r2L.col(k) *= m.lambdas[k];
  p.xi_det = lu.solve(r2L).trace().imag() / kPi;
  return p;
}

cplx s_matrix(const FiniteRankModel& m, double x) { return scattering_point(m, x).S; }

cplx s_matrix_chain(const FiniteRankModel& m, double x) {
  if (m.rank() == 0) return 1.0;
  const cplx dp = perturbation_determinant(m, x, Side::Plus);
  check_proximity(dp, x);
  return perturbation_determinant(m, x, Side::Minus) / dp;
}

cplx s_prime(const FiniteRankModel& m, double x) { return scattering_point(m, x).Sp; }

std::vector<double> energy_grid(double lo, double hi, int count,
                                const std::vector<std::pair<double, double>>& exclusions) {
  require(count >= 2 && hi > lo, "energy grid needs lo < hi and at least 2 points");
  std::vector<double> xs;
  for (int i = 0; i < count; ++i) {
    const double x = lo + (hi - lo) * i / (count - 1);
    bool ok = true;
    for (const auto& [e, r] : exclusions)
      if (std::abs(x - e) <= r) ok = false;
    if (ok) xs.push_back(x);
  }
  return xs;
}

ScatteringCurve make_curve(const FiniteRankModel& m, const std::vector<double>& energies) {
  ScatteringCurve c;
  for (double x : energies) {
    const ScatteringPoint p = scattering_point(m, x);
    c.x.push_back(x);
    c.S.push_back(p.S);
    c.S_chain.push_back(p.S_chain);
    c.Sp.push_back(p.Sp);
    c.delay.push_back(p.delay.real());
    c.delay_imag.push_back(p.delay.imag());
    c.xi_det.push_back(p.xi_det);
  }
  return c;
}

double ScatteringCurve::max_unitarity_residual() const {
  double w = 0.0;
  for (const cplx& s : S) w = std::max(w, std::abs(std::abs(s) - 1.0));
  return w;
}

double ScatteringCurve::max_chain_residual() const {
  double w = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i) w = std::max(w, std::abs(S[i] - S_chain[i]));
  return w;
}

double ScatteringCurve::max_reality_residual() const {
  double w = 0.0;
  for (double v : delay_imag) w = std::max(w, std::abs(v));
  return w;
}

double ScatteringCurve::max_birman_krein_residual() const {
  double w = 0.0;
  for (std::size_t i = 0; i < delay.size(); ++i) w = std::max(w, std::abs(delay[i] + 2.0 * kPi * xi_det[i]));
  return w;
}

std::vector<double> spectral_shift_density(const ScatteringCurve& c) {
  std::vector<double> xi(c.delay.size());
  for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = -c.delay[i] / (2.0 * kPi);
  return xi;
}

namespace {

template <class T>
T lagrange_at(const std::vector<double>& xs, const std::vector<T>& ys, double x) {
  const int n = static_cast<int>(xs.size());
  require(n >= 1, "empty curve");
  require(x >= xs.front() - 1e-12 && x <= xs.back() + 1e-12, "point outside the energy grid");
  if (n == 1) return ys[0];
  const int p = std::min(n, 6);
  int i = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  int start = std::clamp(i - p / 2, 0, n - p);
  // interpolate the offsets from one node so constant data comes back bit-exact
  const T base = ys[std::clamp(i, start, start + p - 1)];
  T acc{};
  for (int a = start; a < start + p; ++a) {
    double w = 1.0;
    for (int b = start; b < start + p; ++b)
      if (b != a) w *= (x - xs[b]) / (xs[a] - xs[b]);
    acc += w * (ys[a] - base);
  }
  return base + acc;
}

template <class F>
double support_quadrature(const ScatteringCurve& c, const GridFunction& phi, F&& weight) {
  require(!c.x.empty(), "empty scattering curve");
  const GridFunction f = to_position(phi);
  double acc = 0.0;
  for (int i = 0; i < f.spec.M; ++i) {
    const double a = std::norm(f.samples[i]);
    if (a == 0.0) continue;
    const double x = f.spec.x(i);
    if (x < c.x.front() - 1e-12 || x > c.x.back() + 1e-12) {
      if (a > 1e-28) throw PreconditionError("state not in D_s: support leaves the energy grid");
      continue;
    }
    acc += a * weight(x);
  }
  return acc * f.spec.h;
}

}  // namespace

cplx curve_value(const std::vector<double>& xs, const cvec& ys, double x) { return lagrange_at(xs, ys, x); }
double curve_value(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  return lagrange_at(xs, ys, x);
}

double ew_time_delay(const ScatteringCurve& c, const GridFunction& phi) {
  return support_quadrature(c, phi, [&](double x) { return curve_value(c.x, c.delay, x); });
}

double spectral_shift_time_delay(const ScatteringCurve& c, const GridFunction& phi) {
  return -2.0 * kPi * support_quadrature(c, phi, [&](double x) { return curve_value(c.x, c.xi_det, x); });
}

GridFunction apply_scattering(const ScatteringCurve& c, const GridFunction& phi) {
  GridFunction f = to_position(phi);
  for (int i = 0; i < f.spec.M; ++i) {
    const double x = f.spec.x(i);
    if (x < c.x.front() - 1e-12 || x > c.x.back() + 1e-12) {
      if (std::abs(f.samples[i]) > 1e-14) throw PreconditionError("apply_scattering: state leaves the energy grid");
      continue;
    }
    f.samples[i] *= curve_value(c.x, c.S, x);
  }
  return f;
}

}  // namespace friedrichs
