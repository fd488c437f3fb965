#include "friedrichs/resolvent.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "friedrichs/dynamics.hpp"

namespace friedrichs {

namespace {

constexpr int kGOrders = kMaxBoundaryOrder + 2;  // Taylor fallback needs two extra derivatives
constexpr int kVOrders = 3;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// PV int_{-L}^{L} g(k)/(k-x) dk by singularity subtraction on the closed box.
cplx pv_core(const cvec& g, const GridSpec& s, double x, cplx gx, cplx g1, cplx g2) {
  const double h = s.h, L = s.L;
  const int M = s.M;
  cplx acc = 0.0;
  for (int j = 0; j <= M; ++j) {
    const double d = (-L + j * h) - x;
    const cplx gj = g[j % M];
    cplx G;
    if (std::abs(d) < 1e-3 * h)
      G = g1 + 0.5 * g2 * d;
    else
      G = (gj - gx) / d;
    acc += (j == 0 || j == M) ? 0.5 * G : G;
  }
  acc *= h;
  // Euler-Maclaurin end corrections; near the ends G ~ -g(x)/(k-x) because g has decayed.
  const double dp = L - x, dm = -L - x;
  auto d1 = [&](double d) { return gx / (d * d); };
  auto d3 = [&](double d) { return 6.0 * gx / std::pow(d, 4); };
  auto d5 = [&](double d) { return 120.0 * gx / std::pow(d, 6); };
  const double h2 = h * h;
  acc += -h2 / 12.0 * (d1(dp) - d1(dm)) + h2 * h2 / 720.0 * (d3(dp) - d3(dm)) -
         h2 * h2 * h2 / 30240.0 * (d5(dp) - d5(dm));
  acc += gx * std::log((L - x) / (L + x));
  return acc;
}

void check_inside(const GridSpec& s, double x) {
  if (!(std::abs(x) < s.L - 10.0 * s.h))
    throw PreconditionError("energy " + std::to_string(x) + " too close to the box boundary");
}

}  // namespace

struct ModelCache {
  int N = 0;
  std::vector<GridFunction> g;   // ((j*N+k)*kGOrders + d)
  std::vector<Interpolant> gi;
  std::vector<Interpolant> vi;   // (j*kVOrders + d)
};

bool FiniteRankModel::all_real() const {
  for (const auto& v : vectors)
    for (const cplx& z : v.samples)
      if (z.imag() != 0.0) return false;
  return true;
}

cplx FiniteRankModel::v(int j, double x, int order) const {
  require(order >= 0 && order < kVOrders, "vector derivative order out of range");
  return cache->vi[j * kVOrders + order](x);
}

cplx FiniteRankModel::g(int j, int k, double x, int order) const {
  require(order >= 0 && order < kGOrders, "g derivative order out of range");
  return cache->gi[(j * rank() + k) * kGOrders + order](x);
}

std::vector<GridFunction> orthonormalize(std::vector<GridFunction> vectors) {
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    vectors[j] = to_position(vectors[j]);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < j; ++i) {
        const cplx c = inner_product(vectors[i], vectors[j]);
        for (std::size_t m = 0; m < vectors[j].samples.size(); ++m) vectors[j].samples[m] -= c * vectors[i].samples[m];
      }
    const double n = norm(vectors[j]);
    require(n > 1e-12, "orthonormalize: vectors are linearly dependent");
    for (cplx& z : vectors[j].samples) z /= n;
  }
  return vectors;
}

FiniteRankModel make_model(const GridSpec& spec, std::vector<double> lambdas, std::vector<GridFunction> vectors,
                           double mu, double ortho_tol, double edge_tol) {
  require(lambdas.size() == vectors.size(), "model.lambdas and model.vectors must have length N");
  for (double l : lambdas) require(std::isfinite(l), "model.lambdas must be finite");
  FiniteRankModel m;
  m.spec = spec;
  m.lambdas = std::move(lambdas);
  m.mu = mu;
  for (auto& v : vectors) {
    require(v.spec == spec, "model.vectors must live on the model grid");
    m.vectors.push_back(to_position(v));
  }
  const int N = m.rank();
  for (int j = 0; j < N; ++j) {
    require(boundary_magnitude(m.vectors[j], 2.0 * spec.h) <= edge_tol,
            "model.vectors[" + std::to_string(j) + "] does not decay at the box boundary");
    for (int k = 0; k < N; ++k) {
      const cplx ip = inner_product(m.vectors[j], m.vectors[k]);
      require(std::abs(ip - (j == k ? 1.0 : 0.0)) <= ortho_tol, "model.vectors are not orthonormal");
    }
  }
  auto cache = std::make_shared<ModelCache>();
  cache->N = N;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      GridFunction g = GridFunction::zeros(spec);
      for (int i = 0; i < spec.M; ++i) g.samples[i] = std::conj(m.vectors[j].samples[i]) * m.vectors[k].samples[i];
      for (int d = 0; d < kGOrders; ++d) {
        GridFunction gd = derivative(g, d);
        cache->gi.emplace_back(gd);
        cache->g.push_back(std::move(gd));
      }
    }
  for (int j = 0; j < N; ++j)
    for (int d = 0; d < kVOrders; ++d) cache->vi.emplace_back(derivative(m.vectors[j], d));
  m.cache = cache;
  return m;
}

FiniteRankModel free_model(const GridSpec& spec) { return make_model(spec, {}, {}, 0.0); }

std::string smoothness_warning(const FiniteRankModel& model, int n) {
  if (model.rank() == 0 || model.mu >= n + 1) return {};
  std::ostringstream os;
  os << "warning: model.mu = " << model.mu << " is below " << n + 1 << " needed for derivative order " << n;
  return os.str();
}

cplx pv_integral(const GridFunction& g, double x) {
  require(g.rep == Representation::Position, "pv_integral: position representation required");
  check_inside(g.spec, x);
  const cplx gx = Interpolant(g)(x);
  const cplx g1 = Interpolant(derivative(g, 1))(x);
  const cplx g2 = Interpolant(derivative(g, 2))(x);
  return pv_core(g.samples, g.spec, x, gx, g1, g2);
}

BoundaryData boundary_matrix(const FiniteRankModel& model, double x, Side side, int n) {
  require(n >= 1 && n <= kMaxBoundaryOrder, "boundary_matrix: order must be in 1..4");
  check_inside(model.spec, x);
  const int N = model.rank();
  BoundaryData bd;
  bd.x = x;
  bd.side = side;
  bd.order = n;
  bd.r = Eigen::MatrixXcd::Zero(N, N);
  const double sgn = side == Side::Plus ? 1.0 : -1.0;
  const double inv_fact = 1.0 / factorial(n - 1);
  const ModelCache& c = *model.cache;
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      const int base = (j * N + k) * kGOrders + (n - 1);
      const cplx gx = c.gi[base](x);
      const cplx pv = pv_core(c.g[base].samples, model.spec, x, gx, c.gi[base + 1](x), c.gi[base + 2](x));
      bd.r(j, k) = inv_fact * (pv + sgn * cplx(0.0, kPi) * gx);
    }
  if (n == 1) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N);
    for (int k = 0; k < N; ++k) A.col(k) += bd.r.col(k) * model.lambdas[k];
    bd.det = N == 0 ? cplx(1.0) : A.determinant();
  }
  return bd;
}

Eigen::MatrixXcd resolvent_matrix(const FiniteRankModel& model, const BoundaryData& bd) {
  require(bd.order == 1, "resolvent_matrix needs order-1 boundary data");
  const int N = model.rank();
  if (N == 0) return Eigen::MatrixXcd(0, 0);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N);
  for (int k = 0; k < N; ++k) A.col(k) += bd.r.col(k) * model.lambdas[k];
  return A.partialPivLu().solve(bd.r);
}

cplx perturbation_determinant(const FiniteRankModel& model, double x, Side side) {
  return boundary_matrix(model, x, side, 1).det;
}

std::vector<std::pair<double, double>> PointSpectrum::exclusions() const {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) out.emplace_back(eigenvalues[i], radii[i]);
  return out;
}

namespace {

double coupling_at(const FiniteRankModel& m, double x) {
  double acc = 0.0;
  for (int j = 0; j < m.rank(); ++j) acc += m.lambdas[j] * m.lambdas[j] * std::norm(m.v(j, x));
  return acc;
}

// Residual ||(H - x0) psi|| / ||psi|| on the grid for psi = sum_j c_j v_j / (Q - x0), (I + Lambda r) c = 0.
double eigen_residual(const FiniteRankModel& m, double x0) {
  const int N = m.rank();
  const BoundaryData bd = boundary_matrix(m, x0, Side::Plus, 1);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(N, N);
  for (int j = 0; j < N; ++j) A.row(j) += m.lambdas[j] * bd.r.row(j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const Eigen::VectorXcd c = svd.matrixV().col(N - 1);
  const GridSpec& s = m.spec;
  GridFunction psi = GridFunction::zeros(s);
  for (int i = 0; i < s.M; ++i) {
    cplx acc = 0.0;
    for (int j = 0; j < N; ++j) acc += c(j) * m.vectors[j].samples[i];
    psi.samples[i] = acc / (s.x(i) - x0);
  }
  GridFunction res = psi;
  for (int i = 0; i < s.M; ++i) res.samples[i] *= (s.x(i) - x0);
  for (int j = 0; j < N; ++j) {
    const cplx p = inner_product(m.vectors[j], psi);
    for (int i = 0; i < s.M; ++i) res.samples[i] += m.lambdas[j] * p * m.vectors[j].samples[i];
  }
  return norm(res) / norm(psi);
}

}  // namespace

PointSpectrum point_spectrum(const FiniteRankModel& model, const std::vector<double>& scan,
                             const PointSpectrumOptions& opts, const Propagator* prop) {
  PointSpectrum out;
  if (model.rank() == 0 || scan.size() < 3) return out;
  std::vector<double> absd(scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) absd[i] = std::abs(perturbation_determinant(model, scan[i], Side::Plus));
  auto f = [&](double x) { return std::abs(perturbation_determinant(model, x, Side::Plus)); };
  for (std::size_t i = 1; i + 1 < scan.size(); ++i) {
    if (!(absd[i] <= absd[i - 1] && absd[i] <= absd[i + 1] && absd[i] < opts.candidate_threshold)) continue;
    // |D| touches zero without a sign change, so minimize instead of bisecting.
    const auto best = boost::math::tools::brent_find_minima(f, scan[i - 1], scan[i + 1], 50);
    const double x0 = best.first, d0 = best.second;
    const double cpl = coupling_at(model, x0);
    if (d0 >= opts.dip_threshold || cpl > opts.coupling_threshold) continue;
    if (!out.eigenvalues.empty() && std::abs(out.eigenvalues.back() - x0) < 1e-9) continue;
    out.eigenvalues.push_back(x0);
    out.radii.push_back(opts.exclusion_radius);
    out.abs_det.push_back(d0);
    out.coupling.push_back(cpl);
    out.residual.push_back(eigen_residual(model, x0));
    out.discrete_eigenvalue.push_back(std::numeric_limits<double>::quiet_NaN());
    out.localized_mass.push_back(std::numeric_limits<double>::quiet_NaN());
  }
  if (prop) {
    const GridSpec& s = model.spec;
    const double kw = opts.momentum_window > 0.0 ? opts.momentum_window : 0.25 * s.k_max();
    const auto& E = prop->energies();
    for (std::size_t e = 0; e < out.eigenvalues.size(); ++e) {
      const double x0 = out.eigenvalues[e];
      double best_mass = 0.0, best_E = std::numeric_limits<double>::quiet_NaN();
      for (std::size_t n = 0; n < E.size(); ++n) {
        if (std::abs(E[n] - x0) > out.radii[e]) continue;
        const GridFunction ph = transform(prop->eigenvector(static_cast<int>(n)));
        double in = 0.0, all = 0.0;
        for (int m = 0; m < s.M; ++m) {
          const double w = std::norm(ph.samples[m]);
          all += w;
          if (std::abs(s.k(m)) <= kw) in += w;
        }
        if (in / all > best_mass) {
          best_mass = in / all;
          best_E = E[n];
        }
      }
      out.localized_mass[e] = best_mass;
      out.discrete_eigenvalue[e] = best_E;
    }
  }
  // Keep only validated entries.
  PointSpectrum kept;
  for (std::size_t e = 0; e < out.eigenvalues.size(); ++e) {
    if (out.residual[e] > opts.residual_threshold) continue;
    if (prop && !(out.localized_mass[e] >= opts.localization &&
                  std::abs(out.discrete_eigenvalue[e] - out.eigenvalues[e]) <= opts.match_tolerance))
      continue;
    kept.eigenvalues.push_back(out.eigenvalues[e]);
    kept.radii.push_back(out.radii[e]);
    kept.abs_det.push_back(out.abs_det[e]);
    kept.coupling.push_back(out.coupling[e]);
    kept.residual.push_back(out.residual[e]);
    kept.discrete_eigenvalue.push_back(out.discrete_eigenvalue[e]);
    kept.localized_mass.push_back(out.localized_mass[e]);
  }
  return kept;
}

}  // namespace friedrichs
