#include "friedrichs/momentum.hpp"

#include <algorithm>
#include <cmath>

#include "friedrichs/fft.hpp"
#include "friedrichs/quadrature.hpp"

namespace friedrichs {

namespace {

constexpr int kLagrange = 10;

// Barycentric weights (-1)^j C(9, j) for 10 equispaced nodes.
const double kBary[kLagrange] = {1, -9, 36, -84, 126, -126, 84, -36, 9, -1};

}  // namespace

MomentumDensity MomentumDensity::from_state(const GridFunction& phi_in, int pad) {
  require(pad == 0 || pad >= 2, "momentum density: pad factor must be 0 or >= 2");
  const GridFunction phi = to_position(phi_in);
  const GridSpec& s = phi.spec;
  const int M = s.M;
  MomentumDensity d;
  d.trig_ = true;
  d.M_ = M;
  d.h_ = s.h;
  const double scale = s.h * s.h / (2.0 * kPi);

  // Autocorrelation c_d = scale * sum_l phi_{l+d} conj(phi_l), zero-padded to avoid wraparound.
  cvec buf(2 * M, 0.0);
  std::copy(phi.samples.begin(), phi.samples.end(), buf.begin());
  fft_inplace(buf, -1);
  for (cplx& z : buf) z = std::norm(z);
  fft_inplace(buf, +1);
  d.coef_.resize(M);
  for (int k = 0; k < M; ++k) d.coef_[k] = buf[k] * (scale / (2.0 * M));

  d.lo_ = -s.k_max();
  d.hi_ = s.k_max();
  d.panel_ = 0.25;
  if (pad == 0) return d;

  // Fine table of rho on the zone.
  const int N = pad * M;
  cvec t(N, 0.0);
  for (int j = 0; j < M; ++j) t[j] = phi.samples[j] * ((j % 2 == 0) ? 1.0 : -1.0);
  fft_inplace(t, -1);
  d.table_.resize(N);
  double peak = 0.0;
  for (int m = 0; m < N; ++m) {
    d.table_[m] = scale * std::norm(t[m]);
    peak = std::max(peak, d.table_[m]);
  }
  d.t0_ = -s.k_max();
  d.dt_ = 2.0 * s.k_max() / N;

  // Effective support: where rho exceeds a tiny fraction of its peak.
  int first = N, last = -1;
  for (int m = 0; m < N; ++m)
    if (d.table_[m] > 1e-22 * peak) {
      first = std::min(first, m);
      last = std::max(last, m);
    }
  if (last < 0) {
    d.lo_ = d.hi_ = 0.0;
  } else {
    d.lo_ = std::max(-s.k_max(), d.t0_ + (first - 2) * d.dt_);
    d.hi_ = std::min(s.k_max(), d.t0_ + (last + 2) * d.dt_);
  }

  // Panel width from the position extent: rho carries frequencies up to that extent.
  double amax = 0.0;
  for (const cplx& z : phi.samples) amax = std::max(amax, std::abs(z));
  int jmin = M, jmax = -1;
  for (int j = 0; j < M; ++j)
    if (std::abs(phi.samples[j]) > 1e-14 * amax) {
      jmin = std::min(jmin, j);
      jmax = std::max(jmax, j);
    }
  const double extent = jmax >= jmin ? (jmax - jmin + 1) * s.h : s.h;
  d.panel_ = std::min(2.0, 6.0 / extent);
  return d;
}

MomentumDensity MomentumDensity::from_function(std::function<double(double)> rho, double lo, double hi,
                                               std::vector<double> breaks, double panel_width) {
  require(static_cast<bool>(rho), "momentum density needs a callable");
  require(hi > lo, "momentum density support must satisfy lo < hi");
  require(panel_width > 0.0, "panel width must be positive");
  MomentumDensity d;
  d.fn_ = std::move(rho);
  d.lo_ = lo;
  d.hi_ = hi;
  d.breaks_ = std::move(breaks);
  d.panel_ = panel_width;
  return d;
}

double MomentumDensity::table_value(double k) const {
  const int N = static_cast<int>(table_.size());
  const double u = (k - t0_) / dt_;
  const double fl = std::floor(u);
  const int i = static_cast<int>(fl);
  if (u == fl) return table_[((i % N) + N) % N];
  const int start = i - kLagrange / 2 + 1;
  double num = 0.0, den = 0.0;
  for (int j = 0; j < kLagrange; ++j) {
    const double w = kBary[j] / (u - (start + j));
    num += w * table_[(((start + j) % N) + N) % N];
    den += w;
  }
  return num / den;
}

double MomentumDensity::operator()(double k) const {
  if (k < lo_ || k > hi_) return 0.0;
  return trig_ ? table_value(k) : fn_(k);
}

template <class T>
T MomentumDensity::integrate(const std::function<T(double)>& weight, double a, double b,
                             std::vector<double> splits) const {
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  if (!(b > a)) return T{};
  for (double x : breaks_) splits.push_back(x);
  std::vector<double> x, w;
  panel_nodes(a, b, std::move(splits), panel_, 16, x, w);
  T acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * (*this)(x[i]) * weight(x[i]);
  return acc;
}

double MomentumDensity::integral(double a, double b) const {
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  if (!(b > a)) return 0.0;
  if (!trig_) return integrate<double>([](double) { return 1.0; }, a, b, {});
  // sum_d c_d int_a^b e^{-ikdh} dk, pairing d with -d (c_{-d} = conj(c_d))
  const double h = h_;
  cplx acc = 0.0;
  const cplx rb = std::polar(1.0, -b * h), ra = std::polar(1.0, -a * h);
  cplx eb, ea;
  for (int d = 1; d < M_; ++d) {
    if ((d - 1) % 64 == 0) {
      eb = std::polar(1.0, -b * d * h);
      ea = std::polar(1.0, -a * d * h);
    } else {
      eb *= rb;
      ea *= ra;
    }
    acc += coef_[d] * (eb - ea) / cplx(0.0, -d * h);
  }
  return coef_[0].real() * (b - a) + 2.0 * acc.real();
}

cplx MomentumDensity::expectation(const std::function<cplx(double)>& w, std::vector<double> splits) const {
  require(!trig_ || !table_.empty(), "momentum density built without a table");
  return integrate<cplx>(w, lo_, hi_, std::move(splits));
}

double MomentumDensity::first_moment() const {
  require(!trig_ || !table_.empty(), "momentum density built without a table");
  return integrate<double>([](double k) { return k; }, lo_, hi_, {0.0});
}

cplx MomentumDensity::window_complex(const LocalizationProfile& f, double r, double s) const {
  require(r > 0.0, "window: r must be positive");
  if (f.kind() == ProfileKind::Indicator) return window(f, r, s);
  require(!trig_ || !table_.empty(), "momentum density built without a table");
  const double sh = f.support_halfwidth();
  double a = lo_, b = hi_;
  if (std::isfinite(sh)) {
    a = std::max(a, s - r * sh);
    b = std::min(b, s + r * sh);
  }
  std::vector<double> splits{s};
  for (double bp : f.breakpoints()) {
    splits.push_back(s - r * bp);
    splits.push_back(s + r * bp);
  }
  return integrate<cplx>([&](double k) { return f((k - s) / r); }, a, b, splits);
}

double MomentumDensity::window(const LocalizationProfile& f, double r, double s) const {
  require(r > 0.0, "window: r must be positive");
  if (f.kind() == ProfileKind::Indicator) return integral(s - r * f.delta(), s + r * f.delta());
  require(f.real_nonnegative(), "window: profile must be real");
  require(!trig_ || !table_.empty(), "momentum density built without a table");
  const double sh = f.support_halfwidth();
  double a = lo_, b = hi_;
  if (std::isfinite(sh)) {
    a = std::max(a, s - r * sh);
    b = std::min(b, s + r * sh);
  }
  std::vector<double> splits{s};
  for (double bp : f.breakpoints()) {
    splits.push_back(s - r * bp);
    splits.push_back(s + r * bp);
  }
  return integrate<double>([&](double k) { return f.real_value((k - s) / r); }, a, b, splits);
}

}  // namespace friedrichs
