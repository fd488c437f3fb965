#include "friedrichs/grid.hpp"

#include <algorithm>
#include <cmath>

#include "friedrichs/fft.hpp"

namespace friedrichs {

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

double sign_of_parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

GridSpec make_grid(double L, int M) {
  require(std::isfinite(L) && L > 0.0, "grid.L must be positive");
  require(M >= 4 && is_power_of_two(M), "grid.M must be a power of two >= 4");
  GridSpec g;
  g.L = L;
  g.M = M;
  g.h = 2.0 * L / M;
  return g;
}

GridFunction GridFunction::zeros(const GridSpec& spec, Representation rep) {
  GridFunction f;
  f.spec = spec;
  f.rep = rep;
  f.samples.assign(spec.M, cplx(0.0));
  return f;
}

GridFunction GridFunction::sample(const GridSpec& spec, const std::function<cplx(double)>& fn,
                                  Representation rep) {
  GridFunction f = zeros(spec, rep);
  for (int j = 0; j < spec.M; ++j)
    f.samples[j] = fn(rep == Representation::Position ? spec.x(j) : spec.k(j));
  return f;
}

GridFunction transform(const GridFunction& phi) {
  const GridSpec& g = phi.spec;
  const int M = g.M;
  GridFunction out = phi;
  cvec& a = out.samples;
  if (phi.rep == Representation::Position) {
    for (int j = 0; j < M; ++j) a[j] *= sign_of_parity(j);
    fft_inplace(a, -1);
    const double c = g.h * kInvSqrt2Pi;
    for (int m = 0; m < M; ++m) a[m] *= c * sign_of_parity(m - M / 2);
    out.rep = Representation::Momentum;
  } else {
    for (int m = 0; m < M; ++m) a[m] *= sign_of_parity(m - M / 2);
    fft_inplace(a, +1);
    const double c = g.dk() * kInvSqrt2Pi;
    for (int j = 0; j < M; ++j) a[j] *= c * sign_of_parity(j);
    out.rep = Representation::Position;
  }
  return out;
}

GridFunction to_position(const GridFunction& phi) {
  return phi.rep == Representation::Position ? phi : transform(phi);
}

GridFunction to_momentum(const GridFunction& phi) {
  return phi.rep == Representation::Momentum ? phi : transform(phi);
}

cplx inner_product(const GridFunction& phi, const GridFunction& psi) {
  require(phi.spec == psi.spec, "inner_product: grid mismatch");
  require(phi.rep == psi.rep, "inner_product: representation mismatch");
  cplx acc = 0.0;
  for (std::size_t j = 0; j < phi.samples.size(); ++j) acc += std::conj(phi.samples[j]) * psi.samples[j];
  return acc * (phi.rep == Representation::Position ? phi.spec.h : phi.spec.dk());
}

double norm(const GridFunction& phi) {
  double acc = 0.0;
  for (const cplx& z : phi.samples) acc += std::norm(z);
  return std::sqrt(acc * (phi.rep == Representation::Position ? phi.spec.h : phi.spec.dk()));
}

double sobolev_norm(const GridFunction& phi, double s, double t) {
  if (s == 0.0 && t == 0.0) return norm(phi);
  GridFunction f = to_position(phi);
  if (t != 0.0)
    for (int j = 0; j < f.spec.M; ++j) f.samples[j] *= std::pow(1.0 + f.spec.x(j) * f.spec.x(j), 0.5 * t);
  if (s == 0.0) return norm(f);
  GridFunction fh = transform(f);
  for (int m = 0; m < fh.spec.M; ++m) fh.samples[m] *= std::pow(1.0 + fh.spec.k(m) * fh.spec.k(m), 0.5 * s);
  return norm(fh);
}

GridFunction derivative(const GridFunction& phi, int order) {
  require(order >= 0, "derivative: negative order");
  if (order == 0) return to_position(phi);
  GridFunction fh = to_momentum(phi);
  const cplx ik(0.0, 1.0);
  for (int m = 0; m < fh.spec.M; ++m) fh.samples[m] *= std::pow(ik * fh.spec.k(m), order);
  if (order % 2 == 1) fh.samples[0] = 0.0;
  return transform(fh);
}

Interpolant::Interpolant(const GridFunction& phi) : spec_(phi.spec) {
  GridFunction fh = to_momentum(phi);
  coef_ = std::move(fh.samples);
  const double c = spec_.dk() * kInvSqrt2Pi;
  for (cplx& z : coef_) z *= c;
}

cplx Interpolant::operator()(double tau) const {
  const int M = spec_.M;
  // Nyquist mode as a cosine keeps real data real and stays exact at the nodes.
  cplx acc = coef_[0] * std::cos(spec_.k_max() * tau);
  const double dk = spec_.dk();
  // Rotating phasor, reseeded every 64 steps to bound drift.
  cplx rot = std::polar(1.0, dk * tau);
  cplx ph;
  for (int m = 1; m < M; ++m) {
    if ((m - 1) % 64 == 0)
      ph = std::polar(1.0, spec_.k(m) * tau);
    else
      ph *= rot;
    acc += coef_[m] * ph;
  }
  return acc;
}

cplx evaluate_at(const GridFunction& phi, double tau) {
  require(phi.rep == Representation::Position, "evaluate_at: position representation required");
  require(tau > -phi.spec.L && tau < phi.spec.L, "evaluate_at: point outside (-L, L)");
  // Exact at nodes.
  const double u = (tau + phi.spec.L) / phi.spec.h;
  const double j = std::round(u);
  if (std::abs(u - j) < 1e-13 && j >= 0 && j < phi.spec.M) return phi.samples[static_cast<int>(j)];
  return Interpolant(phi)(tau);
}

double boundary_magnitude(const GridFunction& phi, double margin) {
  GridFunction f = to_position(phi);
  double worst = 0.0;
  for (int j = 0; j < f.spec.M; ++j)
    if (std::abs(f.spec.x(j)) >= f.spec.L - margin) worst = std::max(worst, std::abs(f.samples[j]));
  return worst;
}

CompactSupportCertificate certify_support(const GridFunction& phi, double a, double b, double s,
                                          const std::vector<std::pair<double, double>>& excluded,
                                          double tol) {
  require(a < b, "support interval must satisfy a < b");
  GridFunction f = to_position(phi);
  require(a > -f.spec.L && b < f.spec.L, "support interval must lie inside (-L, L)");
  for (int j = 0; j < f.spec.M; ++j) {
    const double x = f.spec.x(j);
    if ((x < a || x > b) && std::abs(f.samples[j]) > tol)
      throw PreconditionError("state not in D_s: nonzero sample outside support at x = " + std::to_string(x));
  }
  for (const auto& [e, rad] : excluded)
    if (e + rad >= a && e - rad <= b)
      throw PreconditionError("state not in D_s: support meets point spectrum near " + std::to_string(e));
  CompactSupportCertificate c;
  c.a = a;
  c.b = b;
  c.s = s;
  c.sobolev = sobolev_norm(f, s, 0.0);
  if (!std::isfinite(c.sobolev)) throw PreconditionError("state not in D_s: Sobolev norm not finite");
  c.excluded = excluded;
  return c;
}

}  // namespace friedrichs
