#pragma once

#include <Eigen/Dense>
#include <memory>

#include "friedrichs/grid.hpp"

namespace friedrichs {

class Propagator;

// Precomputed interpolants of g_jk = conj(v_j) v_k and v_j with their spectral derivatives.
struct ModelCache;

struct FiniteRankModel {
  GridSpec spec;
  std::vector<double> lambdas;
  std::vector<GridFunction> vectors;  // position representation
  double mu = 0.0;                    // declared smoothness of the v_j
  std::shared_ptr<const ModelCache> cache;

  int rank() const { return static_cast<int>(lambdas.size()); }
  bool all_real() const;
  cplx v(int j, double x, int order = 0) const;
  cplx g(int j, int k, double x, int order = 0) const;
};

// Validates orthonormality (ortho_tol) and boundary decay (edge_tol).
FiniteRankModel make_model(const GridSpec& spec, std::vector<double> lambdas, std::vector<GridFunction> vectors,
                           double mu, double ortho_tol = 1e-10, double edge_tol = 1e-12);
FiniteRankModel free_model(const GridSpec& spec);

// Gram-Schmidt in the discrete L2 inner product.
std::vector<GridFunction> orthonormalize(std::vector<GridFunction> vectors);

enum class Side { Plus, Minus };

struct BoundaryData {
  double x = 0.0;
  Side side = Side::Plus;
  int order = 1;
  Eigen::MatrixXcd r;
  cplx det = 1.0;  // filled for order 1
};

cplx pv_integral(const GridFunction& g, double x);

// Highest order supported by the cached derivatives.
inline constexpr int kMaxBoundaryOrder = 4;

BoundaryData boundary_matrix(const FiniteRankModel& model, double x, Side side, int n);
Eigen::MatrixXcd resolvent_matrix(const FiniteRankModel& model, const BoundaryData& bd);
cplx perturbation_determinant(const FiniteRankModel& model, double x, Side side);

// Returns a message when mu is below what order n needs (empty when fine).
std::string smoothness_warning(const FiniteRankModel& model, int n);

struct PointSpectrumOptions {
  double dip_threshold = 1e-6;        // |D(x0+i0)| must fall below this
  double coupling_threshold = 1e-6;   // sum_j lambda_j^2 |v_j(x0)|^2 must fall below this
  double candidate_threshold = 0.1;   // scan minima above this are ignored
  double exclusion_radius = 0.05;
  double residual_threshold = 1e-6;   // eigenvector residual
  double localization = 0.99;         // momentum-mass fraction for the discrete cross-check
  double momentum_window = 0.0;       // |k| window; 0 means pi / (4 h)
  double match_tolerance = 1e-4;      // |E_discrete - x0|
};

struct PointSpectrum {
  std::vector<double> eigenvalues;
  std::vector<double> radii;
  std::vector<double> abs_det;
  std::vector<double> coupling;
  std::vector<double> residual;
  std::vector<double> discrete_eigenvalue;  // NaN when no cross-check was run
  std::vector<double> localized_mass;
  std::vector<std::pair<double, double>> exclusions() const;
};

PointSpectrum point_spectrum(const FiniteRankModel& model, const std::vector<double>& scan,
                             const PointSpectrumOptions& opts = {}, const Propagator* prop = nullptr);

}  // namespace friedrichs
