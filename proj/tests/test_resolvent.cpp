#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "friedrichs/config.hpp"
#include "friedrichs/resolvent.hpp"
#include "oracles.hpp"

using namespace friedrichs;

namespace {

const GridSpec& g16() {
  static const GridSpec g = make_grid(16, 2048);
  return g;
}

FiniteRankModel gauss_model(double lam) { return make_model(g16(), {lam}, {gaussian_state(0, 1, 0, g16())}, 8.0); }

GridFunction density(const GridSpec& g) {
  return GridFunction::sample(g, [](double k) { return std::exp(-k * k) / std::sqrt(kPi); });
}

// Re <v, (Q - x - i eps)^-1 v> for the Gaussian density, by adaptive quadrature on the closed form.
// Folded onto u > 0 so the integrand stays bounded.
double smeared_real(double x, double eps) {
  auto g = [](double k) { return std::exp(-k * k) / std::sqrt(kPi); };
  auto f = [=](double u) { return (g(x + u) - g(x - u)) * u / (u * u + eps * eps); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double inf = std::numeric_limits<double>::infinity();
  return GK::integrate(f, 0.0, eps, 10, 1e-14) + GK::integrate(f, eps, 10 * eps, 10, 1e-14) +
         GK::integrate(f, 10 * eps, 1.0, 15, 1e-14) + GK::integrate(f, 1.0, inf, 15, 1e-14);
}

}  // namespace

TEST_CASE("principal value oracles") {
  const GridFunction d = density(g16());
  CHECK(std::abs(pv_integral(d, 0.0)) <= 1e-10);
  CHECK(std::abs(pv_integral(GridFunction::zeros(g16()), 0.7)) == 0.0);
  CHECK(std::abs(pv_integral(d, 0.5).real() - oracle::F_05_re) <= 1e-10);
  CHECK(std::abs(pv_integral(d, -1.3).real() - oracle::F_m13_re) <= 1e-10);
}

TEST_CASE("principal value against epsilon sweep") {
  // F(x + i eps) is analytic in eps, so every power appears; Richardson over halving eps.
  std::vector<double> eps{0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
  std::vector<double> t;
  for (double e : eps) t.push_back(smeared_real(1.0, e));
  const int n = static_cast<int>(t.size());
  for (int lvl = 1; lvl < n; ++lvl) {
    const double f = std::pow(2.0, lvl);
    for (int i = n - 1; i >= lvl; --i) t[i] = (f * t[i] - t[i - 1]) / (f - 1);
  }
  const double extrap = t[n - 1];
  CHECK(std::abs(extrap - oracle::F_1_re) <= 1e-8);
  CHECK(std::abs(pv_integral(density(g16()), 1.0).real() - extrap) <= 1e-8);
}

TEST_CASE("boundary values rank one") {
  const auto m = gauss_model(1.0);
  const auto p = boundary_matrix(m, 0.0, Side::Plus, 1);
  CHECK(std::abs(p.r(0, 0) - cplx(0, std::sqrt(kPi))) <= 1e-8);
  const auto q = boundary_matrix(m, 0.0, Side::Minus, 1);
  CHECK(std::abs(q.r(0, 0) - cplx(0, -std::sqrt(kPi))) <= 1e-8);
  const auto b = boundary_matrix(m, 0.5, Side::Plus, 1);
  CHECK(std::abs(b.r(0, 0) - cplx(oracle::F_05_re, oracle::F_05_im)) <= 1e-10);
  const auto b2 = boundary_matrix(m, 0.5, Side::Plus, 2);
  CHECK(std::abs(b2.r(0, 0) - cplx(oracle::dF_05_re, oracle::dF_05_im)) <= 1e-9);
}

TEST_CASE("higher orders against finite differences") {
  const auto m = gauss_model(1.0);
  const double step = 1e-3;
  for (double x : {-0.8, 0.2, 0.5, 1.4}) {
    for (int n = 2; n <= 3; ++n) {
      const cplx fd = (boundary_matrix(m, x + step, Side::Plus, n - 1).r(0, 0) -
                       boundary_matrix(m, x - step, Side::Plus, n - 1).r(0, 0)) /
                      (2 * step);
      // r^(n) carries 1/(n-1)!, r^(n-1) carries 1/(n-2)!
      const cplx an = boundary_matrix(m, x, Side::Plus, n).r(0, 0) * double(n - 1);
      CHECK(std::abs(an - fd) <= 1e-5 * std::abs(an));
    }
  }
  CHECK_THROWS_AS(boundary_matrix(m, 0.0, Side::Plus, kMaxBoundaryOrder + 1), PreconditionError);
}

TEST_CASE("plemelj jump and conjugation") {
  const auto v0 = gaussian_state(0, 1, 0, g16());
  const auto v1 = hermite_function(1, g16());
  const auto m = make_model(g16(), {0.7, -1.2}, {v0, v1}, 8.0);
  for (double x : {-1.1, 0.0, 0.37}) {
    const auto p = boundary_matrix(m, x, Side::Plus, 1), q = boundary_matrix(m, x, Side::Minus, 1);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const cplx jump = p.r(j, k) - q.r(j, k);
        CHECK(std::abs(jump - cplx(0, 2 * kPi) * m.v(j, x) * std::conj(m.v(k, x))) <= 1e-12);
        CHECK(std::abs(q.r(j, k) - std::conj(p.r(k, j))) <= 1e-12);
      }
  }
}

TEST_CASE("resolvent matrix") {
  for (double lam : {0.5, -2.0}) {
    const auto m = gauss_model(lam);
    const auto bd = boundary_matrix(m, 0.5, Side::Plus, 1);
    const auto X = resolvent_matrix(m, bd);
    const cplx F = bd.r(0, 0);
    CHECK(std::abs(X(0, 0) - F / (1.0 + lam * F)) <= 1e-13);
    CHECK(std::abs(bd.det - (1.0 + lam * F)) <= 1e-13);
  }
  const auto f = make_model(g16(), {0.0}, {gaussian_state(0, 1, 0, g16())}, 8.0);
  const auto bd = boundary_matrix(f, 0.3, Side::Plus, 1);
  CHECK(std::abs(resolvent_matrix(f, bd)(0, 0) - bd.r(0, 0)) == 0.0);
  CHECK(perturbation_determinant(free_model(g16()), 0.3, Side::Plus) == cplx(1.0));

  // block reduction: a second channel with zero coupling does not change the first
  const auto one = gauss_model(1.3);
  const auto two = make_model(g16(), {1.3, 0.0}, {gaussian_state(0, 1, 0, g16()), hermite_function(1, g16())}, 8.0);
  const auto X1 = resolvent_matrix(one, boundary_matrix(one, -0.4, Side::Plus, 1));
  const auto X2 = resolvent_matrix(two, boundary_matrix(two, -0.4, Side::Plus, 1));
  CHECK(std::abs(X2(0, 0) - X1(0, 0)) <= 1e-13);
}

TEST_CASE("determinant against direct expansion") {
  const auto m = make_model(g16(), {0.9, -0.6}, {gaussian_state(0, 1, 0, g16()), hermite_function(1, g16())}, 8.0);
  for (double x : {-0.5, 0.25}) {
    const auto bd = boundary_matrix(m, x, Side::Minus, 1);
    const cplx a = 1.0 + bd.r(0, 0) * 0.9, b = bd.r(0, 1) * -0.6, c = bd.r(1, 0) * 0.9, d = 1.0 + bd.r(1, 1) * -0.6;
    CHECK(std::abs(bd.det - (a * d - b * c)) <= 1e-14);
    CHECK(std::abs(perturbation_determinant(m, x, Side::Minus) - bd.det) <= 1e-14);
  }
}

TEST_CASE("model validation") {
  const auto v0 = gaussian_state(0, 1, 0, g16());
  CHECK_THROWS_AS(make_model(g16(), {1.0, 1.0}, {v0, v0}, 8.0), PreconditionError);
  CHECK_THROWS_AS(make_model(g16(), {1.0}, {v0, v0}, 8.0), PreconditionError);
  CHECK_THROWS_AS(make_model(g16(), {1.0}, {gaussian_state(14, 1, 0, g16())}, 8.0), PreconditionError);
  const auto ortho = orthonormalize({v0, gaussian_state(0.5, 1, 0, g16())});
  CHECK(std::abs(inner_product(ortho[0], ortho[1])) <= 1e-14);
  CHECK(smoothness_warning(make_model(g16(), {1.0}, {v0}, 2.0), 2).find("mu") != std::string::npos);
  CHECK(smoothness_warning(gauss_model(1.0), 2).empty());
}

TEST_CASE("point spectrum") {
  std::vector<double> scan;
  for (int i = 0; i <= 1000; ++i) scan.push_back(-5.0 + 0.01 * i);
  for (double lam : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) CHECK(point_spectrum(gauss_model(lam), scan).eigenvalues.empty());
  CHECK(point_spectrum(free_model(g16()), scan).eigenvalues.empty());

  const double x0 = oracle::embedded_x0;
  GridFunction v = GridFunction::sample(g16(), [=](double x) { return (x - x0) * std::exp(-0.5 * x * x); });
  const double n = norm(v);
  for (auto& s : v.samples) s /= n;
  const auto m = make_model(g16(), {oracle::embedded_lambda}, {v}, 8.0);
  const auto ps = point_spectrum(m, scan);
  REQUIRE(ps.eigenvalues.size() == 1);
  CHECK(std::abs(ps.eigenvalues[0] - x0) <= 1e-4);
  CHECK(ps.residual[0] <= 1e-6);
}
