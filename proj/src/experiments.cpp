#include "friedrichs/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

namespace friedrichs {

namespace {

std::string num(double v, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

class Csv {
 public:
  Csv(const std::string& path, const std::vector<std::string>& columns, int precision)
      : out_(path), precision_(precision) {
    if (!out_) throw PreconditionError("output: cannot write " + path);
    out_ << "# schema-version: 1\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out_ << (i ? "," : "") << num(v[i], precision_);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
  int precision_;
};

// Collects invariant checks; any failure turns the exit code into 3.
class Summary {
 public:
  Summary(std::ostream& log, int precision) : log_(log), precision_(precision) {}
  void info(const std::string& line) { lines_.push_back(line); }
  void warn(const std::string& line) {
    if (line.empty()) return;
    lines_.push_back(line);
    log_ << line << '\n';
  }
  void check(const std::string& name, double value, double tol) {
    const bool ok = std::isfinite(value) && value <= tol;
    lines_.push_back("check " + name + " value=" + num(value, precision_) + " tol=" + num(tol, 3) +
                     (ok ? " PASS" : " FAIL"));
    if (!ok) {
      failed_ = true;
      log_ << "tolerance failure: " << name << " = " << value << " > " << tol << '\n';
    }
  }
  void flag(const std::string& name, bool ok, const std::string& detail) {
    lines_.push_back("check " + name + (detail.empty() ? "" : " " + detail) + (ok ? " PASS" : " FAIL"));
    if (!ok) {
      failed_ = true;
      log_ << "tolerance failure: " << name << " " << detail << '\n';
    }
  }
  int write(const std::string& path) const {
    std::ofstream out(path);
    for (const auto& l : lines_) out << l << '\n';
    return failed_ ? kExitTolerance : kExitOk;
  }

 private:
  std::ostream& log_;
  int precision_;
  std::vector<std::string> lines_;
  bool failed_ = false;
};

std::vector<double> energy_grid_from(const Config& c, double lo_default, double hi_default, bool have_default) {
  if (c.has("experiment.energy_grid")) {
    const auto e = c.get_list("experiment.energy_grid");
    if (e.size() != 3) throw PreconditionError("experiment.energy_grid must be lo, hi, count");
    return energy_grid(e[0], e[1], static_cast<int>(e[2]));
  }
  if (!have_default) throw PreconditionError("config: missing field experiment.energy_grid");
  return energy_grid(lo_default, hi_default, 1001);
}

struct StateSetup {
  GridFunction phi;
  double lo = 0.0, hi = 0.0;
};

StateSetup state_from_config(const Config& c, const GridSpec& spec) {
  StateSetup s;
  const auto params = c.get_list("state.params");
  s.phi = state_family(c.get("state.family"), params, spec);
  if (c.has("state.support")) {
    const auto sup = c.get_list("state.support");
    if (sup.size() != 2) throw PreconditionError("state.support must be [a, b]");
    s.lo = sup[0];
    s.hi = sup[1];
  } else if (c.get("state.family") == "bump") {
    s.lo = params[0];
    s.hi = params[1];
  } else {
    throw PreconditionError("config: missing field state.support");
  }
  require(s.lo > -spec.L && s.hi < spec.L, "state.support must lie inside (-L, L)");
  return s;
}

int run_smatrix(const Config& c, const std::string& out, bool check_only, Summary& sum, int prec) {
  const GridSpec spec = grid_from_config(c);
  const FiniteRankModel model = model_from_config(c, spec);
  const auto xs = energy_grid_from(c, 0, 0, false);
  sum.warn(smoothness_warning(model, 2));
  if (check_only) return kExitOk;
  const ScatteringCurve curve = make_curve(model, xs);
  const auto xi = spectral_shift_density(curve);
  Csv csv(out + "/smatrix.csv", {"x", "Re_S", "Im_S", "Re_Sprime", "Im_Sprime", "delay_density", "xi_prime"}, prec);
  for (std::size_t i = 0; i < xs.size(); ++i)
    csv.row({curve.x[i], curve.S[i].real(), curve.S[i].imag(), curve.Sp[i].real(), curve.Sp[i].imag(),
             curve.delay[i], xi[i]});
  sum.info("points " + std::to_string(xs.size()));
  sum.check("unitarity", curve.max_unitarity_residual(), c.get_double("tol.unitarity", 1e-8));
  sum.check("chain_formula", curve.max_chain_residual(), c.get_double("tol.chain", 1e-8));
  sum.check("delay_reality", curve.max_reality_residual(), c.get_double("tol.reality", 1e-8));
  sum.check("birman_krein", curve.max_birman_krein_residual(), c.get_double("tol.birman_krein", 1e-6));
  return kExitOk;
}

int run_spectral_shift(const Config& c, const std::string& out, bool check_only, Summary& sum, int prec) {
  const GridSpec spec = grid_from_config(c);
  const FiniteRankModel model = model_from_config(c, spec);
  const bool with_state = c.has("state.family");
  StateSetup st;
  if (with_state) st = state_from_config(c, spec);
  const auto xs = energy_grid_from(c, st.lo, st.hi, with_state);
  sum.warn(smoothness_warning(model, 2));
  if (with_state) certify_support(st.phi, st.lo, st.hi, c.get_double("state.s", 3.0));
  if (check_only) return kExitOk;
  const ScatteringCurve curve = make_curve(model, xs);
  const auto xi = spectral_shift_density(curve);
  Csv csv(out + "/spectral_shift.csv", {"x", "delay_density", "xi_prime", "xi_prime_det", "bk_residual"}, prec);
  for (std::size_t i = 0; i < xs.size(); ++i)
    csv.row({curve.x[i], curve.delay[i], xi[i], curve.xi_det[i], std::abs(curve.delay[i] + 2 * kPi * curve.xi_det[i])});
  sum.check("birman_krein", curve.max_birman_krein_residual(), c.get_double("tol.birman_krein", 1e-6));
  if (with_state) {
    const double ew = ew_time_delay(curve, st.phi);
    const double ss = spectral_shift_time_delay(curve, st.phi);
    sum.info("ew_time_delay " + num(ew, prec));
    sum.info("spectral_shift_time_delay " + num(ss, prec));
    sum.check("integral_identity", std::abs(ew - ss), c.get_double("tol.integral_identity", 1e-8));
  }
  return kExitOk;
}

int run_sweep(const Config& c, const std::string& out, bool check_only, Summary& sum, int prec) {
  const GridSpec spec = grid_from_config(c);
  const FiniteRankModel model = model_from_config(c, spec);
  const LocalizationProfile f = profile_from_config(c);
  const StateSetup st = state_from_config(c, spec);
  const auto r_list = c.get_list("experiment.r_list");
  if (r_list.empty()) throw PreconditionError("experiment.r_list must not be empty");
  const auto xs = energy_grid_from(c, st.lo, st.hi, true);
  SweepOptions opts;
  opts.support_lo = st.lo;
  opts.support_hi = st.hi;
  opts.s = c.get_double("state.s", 3.0);
  opts.wave.T0 = c.get_double("experiment.wave_T0", opts.wave.T0);
  opts.wave.richardson_p = c.get_double("experiment.zeta", opts.wave.richardson_p + 1.0) - 1.0;
  opts.wave.tol = c.get_double("tol.wave", opts.wave.tol);
  opts.sojourn.core = c.get_double("experiment.core", opts.sojourn.core);
  opts.sojourn.tol_rel = c.get_double("tol.sojourn_rel", opts.sojourn.tol_rel);
  opts.fit_count = c.get_int("experiment.fit_count", opts.fit_count);
  if (model.rank() > 0 && model.mu < 5.0)
    sum.warn("warning: model.mu = " + num(model.mu, 6) + " is below 5 required for the time-delay identity");
  if (opts.wave.richardson_p + 1.0 <= 2.0) sum.warn("warning: experiment.zeta <= 2, tail bounds are not integrable");
  certify_support(st.phi, st.lo, st.hi, opts.s);
  require(xs.front() <= st.lo && xs.back() >= st.hi, "experiment.energy_grid must cover state.support");
  if (check_only) return kExitOk;

  const ScatteringCurve curve = make_curve(model, xs);
  const Propagator prop(model);
  const SweepResult res = time_delay_sweep(prop, curve, st.phi, f, r_list, opts);
  Csv csv(out + "/sweep.csv", {"r", "T0", "T0_S", "T_full", "tau_in", "tau_sym", "tau_free", "tail_est"}, prec);
  for (const auto& r : res.records) csv.row({r.r, r.T0, r.T0_S, r.T, r.tau_in, r.tau_sym, r.tau_free, r.tail_estimate});
  Csv sc(out + "/sweep_summary.csv", {"tau_inf", "beta", "fit_residual", "ew_value", "rel_gap"}, prec);
  sc.row({res.fit.tau_inf, res.fit.beta, res.fit.residual, res.ew_value, res.rel_gap});

  sum.info("ew_time_delay " + num(res.ew_value, prec));
  sum.info("tau_inf " + num(res.fit.tau_inf, prec) + " beta " + num(res.fit.beta, 4) + " fit_residual " +
           num(res.fit.residual, 4));
  sum.info("wave_operator_tail " + num(res.wave_tail, 4));
  sum.info("free_tail_decay_exponent " + num(res.decay_exponent, 4));
  double id1 = 0.0, id2 = 0.0;
  for (const auto& r : res.records) {
    id1 = std::max(id1, std::abs(r.tau_in - r.tau_sym));
    id2 = std::max(id2, std::abs(r.T0_S - r.T0));
  }
  const double gap_tol = c.get_double("tol.rel_gap", 0.02);
  if (model.rank() == 0 || std::abs(res.ew_value) == 0.0)
    sum.check("tau_inf_abs", std::abs(res.fit.tau_inf), c.get_double("tol.zero_delay", 1e-8));
  else
    sum.check("rel_gap", res.rel_gap, gap_tol);
  sum.check("tau_in_minus_tau_sym", id1, c.get_double("tol.identity", 1e-6));
  sum.check("T0_S_minus_T0", id2, c.get_double("tol.identity", 1e-6));
  sum.check("free_sojourn_identity", res.free_numeric_residual, c.get_double("tol.free_sojourn", 1e-4));
  sum.check("isometry", res.isometry_residual, c.get_double("tol.wave", 1e-4));
  // The gap may stop shrinking once it reaches the quadrature floor of the record.
  bool decreasing = true;
  for (std::size_t i = 1; i < res.records.size(); ++i) {
    const double g0 = std::abs(res.records[i - 1].tau_in - res.ew_value);
    const double g1 = std::abs(res.records[i].tau_in - res.ew_value);
    const double floor = opts.sojourn.tol_rel * res.records[i].T0;
    if (!(g1 <= g0 || g1 <= floor)) decreasing = false;
  }
  double tails = 0.0;
  for (const auto& r : res.records) tails += r.tail_estimate;
  const auto& last = res.records.back();
  if (model.rank() > 0) sum.check("tau_free_minus_tau_in_last", std::abs(last.tau_free - last.tau_in), tails);
  sum.flag("gap_decreasing", decreasing || model.rank() == 0, "");
  return kExitOk;
}

int run_propagation(const Config& c, const std::string& out, bool check_only, Summary& sum, int prec) {
  const LocalizationProfile f = profile_from_config(c);
  const auto r_list = c.get_list("experiment.r_list");
  if (r_list.empty()) throw PreconditionError("experiment.r_list must not be empty");
  const std::string family = c.get("state.family");
  std::optional<MomentumDensity> rho;
  if (family == "momentum_indicator") {
    const auto p = c.get_list("state.params");
    if (p.size() != 2 || !(p[1] > p[0])) throw PreconditionError("state.params: momentum_indicator needs a < b");
    const double a = p[0], b = p[1];
    rho = MomentumDensity::from_function([a, b](double) { return 1.0 / (b - a); }, a, b, {a, b});
  } else {
    const GridSpec spec = grid_from_config(c);
    const GridFunction phi = state_family(family, c.get_list("state.params"), spec);
    require(boundary_magnitude(phi, 2 * spec.h) <= 1e-12, "state does not decay at the box boundary");
    rho = MomentumDensity::from_state(phi);
  }
  if (check_only) return kExitOk;
  const double twoP = 2.0 * rho->first_moment();
  Csv csv(out + "/propagation.csv", {"r", "I_closed", "I_direct", "two_P", "gap"}, prec);
  double worst = 0.0;
  for (double r : r_list) {
    const double ic = propagation_functional(*rho, f, r, PropagationMethod::ClosedForm).real();
    const double id = propagation_functional(*rho, f, r, PropagationMethod::Direct).real();
    csv.row({r, ic, id, twoP, std::abs(ic - twoP)});
    worst = std::max(worst, std::abs(ic - id));
  }
  sum.info("two_P " + num(twoP, prec));
  sum.check("closed_vs_direct", worst, c.get_double("tol.closed_direct", 1e-4));
  return kExitOk;
}

int run_point_spectrum(const Config& c, const std::string& out, bool check_only, Summary& sum, int prec) {
  const GridSpec spec = grid_from_config(c);
  const FiniteRankModel model = model_from_config(c, spec);
  const auto xs = energy_grid_from(c, 0, 0, false);
  PointSpectrumOptions o;
  o.dip_threshold = c.get_double("experiment.dip_threshold", o.dip_threshold);
  o.coupling_threshold = c.get_double("experiment.coupling_threshold", o.coupling_threshold);
  o.exclusion_radius = c.get_double("experiment.exclusion_radius", o.exclusion_radius);
  o.localization = c.get_double("experiment.localization", o.localization);
  o.momentum_window = c.get_double("experiment.momentum_window", o.momentum_window);
  if (check_only) return kExitOk;
  std::optional<Propagator> prop;
  if (c.get_bool("experiment.cross_check", true)) prop.emplace(model);
  const PointSpectrum ps = point_spectrum(model, xs, o, prop ? &*prop : nullptr);
  Csv csv(out + "/point_spectrum.csv",
          {"eigenvalue", "radius", "abs_D", "coupling", "residual", "discrete_eigenvalue", "localized_mass"}, prec);
  for (std::size_t i = 0; i < ps.eigenvalues.size(); ++i)
    csv.row({ps.eigenvalues[i], ps.radii[i], ps.abs_det[i], ps.coupling[i], ps.residual[i],
             ps.discrete_eigenvalue[i], ps.localized_mass[i]});
  sum.info("eigenvalues " + std::to_string(ps.eigenvalues.size()));
  if (c.has("experiment.expect_count"))
    sum.flag("expected_count", static_cast<int>(ps.eigenvalues.size()) == c.get_int("experiment.expect_count"),
             "found=" + std::to_string(ps.eigenvalues.size()));
  return kExitOk;
}

}  // namespace

int run_experiment(const std::string& name, const Config& cfg, const std::string& out_dir, bool check_only,
                   std::ostream& log) {
  const int prec = cfg.get_int("output.precision", 12);
  require(prec >= 6 && prec <= 17, "output.precision must be in 6..17");
  if (!check_only) std::filesystem::create_directories(out_dir);
  Summary sum(log, prec);
  sum.info("experiment " + name);
  int rc;
  if (name == "smatrix")
    rc = run_smatrix(cfg, out_dir, check_only, sum, prec);
  else if (name == "timedelay-sweep")
    rc = run_sweep(cfg, out_dir, check_only, sum, prec);
  else if (name == "propagation")
    rc = run_propagation(cfg, out_dir, check_only, sum, prec);
  else if (name == "spectral-shift")
    rc = run_spectral_shift(cfg, out_dir, check_only, sum, prec);
  else if (name == "point-spectrum")
    rc = run_point_spectrum(cfg, out_dir, check_only, sum, prec);
  else
    throw PreconditionError("unknown experiment '" + name + "'");
  if (check_only) {
    log << "config valid\n";
    return rc;
  }
  return std::max(rc, sum.write(out_dir + "/summary.txt"));
}

int run_experiment_guarded(const std::string& name, const std::string& config_path, const std::string& out_dir,
                           bool check_only, std::ostream& log) {
  try {
    return run_experiment(name, Config::load(config_path), out_dir, check_only, log);
  } catch (const PreconditionError& e) {
    log << "validation failure: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ToleranceError& e) {
    log << "tolerance failure: " << e.what() << '\n';
    return kExitTolerance;
  }
}

}  // namespace friedrichs
