#include "friedrichs/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace friedrichs {

namespace {

template <int N>
GaussRule build_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  GaussRule r;
  // Boost stores the nonnegative half; mirror it.
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (ab[i] == 0.0) {
      r.x.push_back(0.0);
      r.w.push_back(wt[i]);
    } else {
      r.x.push_back(ab[i]);
      r.w.push_back(wt[i]);
      r.x.push_back(-ab[i]);
      r.w.push_back(wt[i]);
    }
  }
  return r;
}

std::vector<double> sorted_cuts(double a, double b, std::vector<double> splits) {
  std::vector<double> cuts{a};
  std::sort(splits.begin(), splits.end());
  for (double s : splits)
    if (s > a && s < b && s - cuts.back() > 1e-14 * std::max(1.0, std::abs(s))) cuts.push_back(s);
  if (b - cuts.back() <= 1e-14 * std::max(1.0, std::abs(b)) && cuts.size() > 1) cuts.back() = b;
  else cuts.push_back(b);
  return cuts;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  static const GaussRule r8 = build_rule<8>();
  static const GaussRule r10 = build_rule<10>();
  static const GaussRule r16 = build_rule<16>();
  static const GaussRule r20 = build_rule<20>();
  static const GaussRule r30 = build_rule<30>();
  switch (n) {
    case 8: return r8;
    case 10: return r10;
    case 16: return r16;
    case 20: return r20;
    case 30: return r30;
    default: throw PreconditionError("unsupported Gauss-Legendre order");
  }
}

void panel_nodes(double a, double b, std::vector<double> splits, double max_width, int order,
                 std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.clear();
  weights.clear();
  if (!(b > a)) return;
  const GaussRule& rule = gauss_rule(order);
  const auto cuts = sorted_cuts(a, b, std::move(splits));
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    const int np = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
    const double w = (hi - lo) / np;
    for (int p = 0; p < np; ++p) {
      const double mid = lo + (p + 0.5) * w;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        nodes.push_back(mid + 0.5 * w * rule.x[i]);
        weights.push_back(0.5 * w * rule.w[i]);
      }
    }
  }
}

double panel_integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> splits,
                       double max_width, int order) {
  std::vector<double> x, w;
  panel_nodes(a, b, std::move(splits), max_width, order, x, w);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(x[i]);
  return acc;
}

namespace {

struct GK {
  std::vector<double> xk, wk, wg;  // Kronrod nodes on [0,1], Kronrod weights, Gauss weights (0 if not Gauss node)
};

const GK& gk31() {
  static const GK rule = [] {
    using K = boost::math::quadrature::gauss_kronrod<double, 31>;
    using G = boost::math::quadrature::gauss<double, 15>;
    GK r;
    const auto& ax = K::abscissa();
    const auto& w = K::weights();
    const auto& gw = G::weights();
    for (std::size_t i = 0; i < ax.size(); ++i) {
      r.xk.push_back(ax[i]);
      r.wk.push_back(w[i]);
      // Gauss nodes sit at even positions in Boost's interleaved layout.
      r.wg.push_back(i % 2 == 0 ? gw[i / 2] : 0.0);
    }
    return r;
  }();
  return rule;
}

void gk_step(const std::function<double(double)>& f, double a, double b, double& value, double& err) {
  const GK& r = gk31();
  const double c = 0.5 * (a + b), s = 0.5 * (b - a);
  double k = 0.0, g = 0.0;
  for (std::size_t i = 0; i < r.xk.size(); ++i) {
    double fv = f(c + s * r.xk[i]);
    if (r.xk[i] != 0.0) fv += f(c - s * r.xk[i]);
    k += r.wk[i] * fv;
    g += r.wg[i] * fv;
  }
  value = s * k;
  err = std::abs(s * (k - g));
}

}  // namespace

AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                  int max_depth) {
  AdaptiveResult res;
  if (!(b > a)) return res;
  struct Piece {
    double a, b, v, e;
    int depth;
  };
  std::vector<Piece> todo;
  double v, e;
  gk_step(f, a, b, v, e);
  res.evaluations += 31;
  todo.push_back({a, b, v, e, 0});
  std::vector<Piece> done;
  while (!todo.empty()) {
    Piece p = todo.back();
    todo.pop_back();
    const double share = abs_tol * (p.b - p.a) / (b - a);
    if (p.e <= share || p.depth >= max_depth || p.e < 1e-15 * std::abs(p.v)) {
      done.push_back(p);
      continue;
    }
    const double m = 0.5 * (p.a + p.b);
    double v1, e1, v2, e2;
    gk_step(f, p.a, m, v1, e1);
    gk_step(f, m, p.b, v2, e2);
    res.evaluations += 62;
    todo.push_back({p.a, m, v1, e1, p.depth + 1});
    todo.push_back({m, p.b, v2, e2, p.depth + 1});
  }
  // Fixed summation order for reproducibility.
  std::sort(done.begin(), done.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (const Piece& p : done) {
    res.value += p.v;
    res.error += p.e;
  }
  return res;
}

HalfLineResult integrate_half_line(const std::function<double(double)>& g, double t0, int dir,
                                   std::vector<double> kinks, double first_block, double tol,
                                   double max_horizon) {
  require(dir == 1 || dir == -1, "integrate_half_line: dir must be +-1");
  require(first_block > 0.0, "integrate_half_line: first block must be positive");
  HalfLineResult out;
  auto piece = [&](double u0, double u1) {
    // u measured from t0 along dir; split at kinks in that range
    std::vector<double> cuts{u0};
    std::vector<double> ks;
    for (double k : kinks) {
      const double u = (k - t0) * dir;
      if (u > u0 && u < u1) ks.push_back(u);
    }
    std::sort(ks.begin(), ks.end());
    for (double u : ks) cuts.push_back(u);
    cuts.push_back(u1);
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      auto r = adaptive_integrate([&](double u) { return g(t0 + dir * u); }, cuts[i], cuts[i + 1],
                                  0.05 * tol * (cuts[i + 1] - cuts[i]) / u1);
      acc += r.value;
      out.quad_error += r.error;
    }
    return acc;
  };
  // Start past every kink so the power law is fitted on the smooth far field.
  double far = first_block;
  for (double k : kinks) far = std::max(far, 2.0 * (k - t0) * dir);
  out.value = piece(0.0, far);
  double T = far;
  // The core piece is not a doubling block; the tail fit needs two far-field blocks.
  double prior = std::numeric_limits<double>::quiet_NaN();
  while (true) {
    const double blk = piece(T, 2.0 * T);
    out.value += blk;
    T *= 2.0;
    const double ab = std::abs(blk), ap = std::abs(prior);
    prior = blk;
    if (ab <= 1e-300) {
      out.tail = 0.0;
      out.exponent = std::numeric_limits<double>::infinity();
      break;
    }
    const double q = std::isnan(ap) ? 1.0 : ab / std::max(ap, 1e-300);
    if (q < 0.8) {
      // blocks of a power law C t^-p shrink by q = 2^(1-p); the rest is a geometric series
      out.tail = ab * q / (1.0 - q);
      out.exponent = 1.0 - std::log2(q);
      if (out.tail <= 0.5 * tol) break;
    }
    if (T >= max_horizon) {
      out.horizon = T;
      throw ToleranceError("increase horizon: time-integral tail " + std::to_string(ab) +
                           " not below tolerance at T = " + std::to_string(T));
    }
  }
  out.horizon = T;
  return out;
}

}  // namespace friedrichs
