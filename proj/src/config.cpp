#include "friedrichs/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace friedrichs {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(trim(text), &used);
  } catch (const std::exception&) {
    throw PreconditionError(key + ": expected a number, got '" + text + "'");
  }
  if (used != trim(text).size()) throw PreconditionError(key + ": expected a number, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Config c = parse(ss.str());
  c.kv_["__dir"] = std::filesystem::absolute(path).parent_path().string();
  return c;
}

Config Config::parse(const std::string& text) {
  // Strip '#' comments (the INI reader only knows ';').
  std::ostringstream clean;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    clean << line << '\n';
  }
  boost::property_tree::ptree tree;
  std::istringstream cs(clean.str());
  try {
    boost::property_tree::ini_parser::read_ini(cs, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw PreconditionError(std::string("config: ") + e.what());
  }
  Config c;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      c.kv_[name] = trim(node.data());
    } else {
      for (const auto& [sub, leaf] : node) c.kv_[name + "." + sub] = trim(leaf.data());
    }
  }
  return c;
}

std::string Config::get(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw PreconditionError("config: missing field " + key);
  return it->second;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

double Config::get_double(const std::string& key) const { return parse_number(key, get(key)); }
double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
  const double v = get_double(key);
  if (v != std::floor(v)) throw PreconditionError(key + ": expected an integer");
  return static_cast<int>(v);
}
int Config::get_int(const std::string& key, int fallback) const { return has(key) ? get_int(key) : fallback; }

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw PreconditionError(key + ": expected true/false");
}

std::vector<double> Config::get_list(const std::string& key) const {
  std::string v = get(key);
  if (!v.empty() && v.front() == '[') v = v.substr(1);
  if (!v.empty() && v.back() == ']') v.pop_back();
  std::vector<double> out;
  if (trim(v).empty()) return out;
  for (const auto& part : split(v, ',')) out.push_back(parse_number(key, part));
  return out;
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& kv : kv_) out.push_back(kv.first);
  return out;
}

GridSpec grid_from_config(const Config& c) { return make_grid(c.get_double("grid.L"), c.get_int("grid.M")); }

GridFunction hermite_function(int n, const GridSpec& grid) {
  require(n >= 0, "hermite(n): n must be nonnegative");
  return GridFunction::sample(grid, [n](double x) -> cplx {
    double p0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x), p1 = std::sqrt(2.0) * x * p0;
    if (n == 0) return p0;
    for (int k = 2; k <= n; ++k) {
      const double p2 = std::sqrt(2.0 / k) * x * p1 - std::sqrt((k - 1.0) / k) * p0;
      p0 = p1;
      p1 = p2;
    }
    return p1;
  });
}

GridFunction gaussian_state(double center, double width, double k0, const GridSpec& grid) {
  require(width > 0.0, "gaussian: width must be positive");
  return GridFunction::sample(grid, [=](double x) {
    const double u = (x - center) / width;
    return std::pow(kPi, -0.25) / std::sqrt(width) * std::exp(-0.5 * u * u) * std::polar(1.0, k0 * x);
  });
}

GridFunction bump_state(double a, double b, double beta, const GridSpec& grid) {
  require(b > a, "bump: need a < b");
  require(beta > 0.0, "bump: sharpness must be positive");
  GridFunction f = GridFunction::sample(grid, [=](double x) -> cplx {
    const double u = (2.0 * x - a - b) / (b - a);
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-beta / (1.0 - u * u));
  });
  const double n = norm(f);
  require(n > 0.0, "bump: support contains no grid point");
  for (cplx& z : f.samples) z /= n;
  return f;
}

namespace {

GridFunction normalized(GridFunction f) {
  const double n = norm(f);
  require(n > 0.0, "vector family produced the zero vector");
  for (cplx& z : f.samples) z /= n;
  return f;
}

GridFunction tabulated(const std::string& path, const GridSpec& grid) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("file(): cannot open " + path);
  std::vector<double> xs;
  cvec ys;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double x, re, im = 0.0;
    if (!(ls >> x >> re)) throw PreconditionError("file(): bad row '" + line + "'");
    ls >> im;
    xs.push_back(x);
    ys.emplace_back(re, im);
  }
  require(xs.size() >= 2, "file(): need at least two rows");
  for (std::size_t i = 1; i < xs.size(); ++i) require(xs[i] > xs[i - 1], "file(): x must increase");
  // Linear interpolation onto the grid, zero outside the table.
  return GridFunction::sample(grid, [&](double x) -> cplx {
    if (x < xs.front() || x > xs.back()) return 0.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = std::min<std::size_t>(it - xs.begin(), xs.size() - 1);
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - t) * ys[i - 1] + t * ys[i];
  });
}

}  // namespace

GridFunction vector_family(const std::string& text, const GridSpec& grid, const std::string& base_dir) {
  static const std::regex re(R"(^\s*([a-z_]+)\s*\(([^)]*)\)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw PreconditionError("model.vectors: cannot parse '" + text + "'");
  const std::string name = m[1];
  const std::string args = m[2];
  if (name == "file") {
    std::filesystem::path p(trim(args));
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return normalized(tabulated(p.string(), grid));
  }
  std::vector<double> a;
  for (const auto& part : split(args, ','))
    if (!part.empty()) a.push_back(parse_number("model.vectors", part));
  if (name == "gaussian") {
    require(a.size() == 2, "model.vectors: gaussian(center, width)");
    return normalized(gaussian_state(a[0], a[1], 0.0, grid));
  }
  if (name == "hermite") {
    require(a.size() == 1, "model.vectors: hermite(n)");
    return normalized(hermite_function(static_cast<int>(a[0]), grid));
  }
  if (name == "node") {
    require(a.size() == 1, "model.vectors: node(x0)");
    const double x0 = a[0];
    return normalized(GridFunction::sample(grid, [x0](double x) { return (x - x0) * std::exp(-0.5 * x * x); }));
  }
  throw PreconditionError("model.vectors: unknown family '" + name + "'");
}

FiniteRankModel model_from_config(const Config& c, const GridSpec& spec) {
  const int N = c.get_int("model.N");
  require(N >= 0, "model.N must be nonnegative");
  std::vector<double> lambdas = N > 0 ? c.get_list("model.lambdas") : std::vector<double>{};
  if (static_cast<int>(lambdas.size()) != N) throw PreconditionError("model.lambdas must have length model.N");
  std::vector<GridFunction> vecs;
  if (N > 0) {
    const auto parts = split(c.get("model.vectors"), ';');
    if (static_cast<int>(parts.size()) != N) throw PreconditionError("model.vectors must have length model.N");
    for (const auto& p : parts) vecs.push_back(vector_family(p, spec, c.get("__dir", ".")));
  }
  if (c.get_bool("model.orthonormalize", false)) vecs = orthonormalize(std::move(vecs));
  const double mu = c.get_double("model.mu", N > 0 ? 0.0 : 100.0);
  return make_model(spec, std::move(lambdas), std::move(vecs), mu);
}

LocalizationProfile profile_from_config(const Config& c) {
  const std::string kind = c.get("f.kind");
  if (kind == "indicator") {
    const auto J = c.get_list("f.J");
    if (J.size() != 2) throw PreconditionError("f.J must be [a, b]");
    return make_indicator(J[0], J[1]);
  }
  if (kind == "smooth_bump") return make_smooth_bump(c.get_double("f.delta"), c.get_double("f.width"), c.get_double("f.rho"));
  if (kind == "ramp") return make_ramp(c.get_double("f.delta"), c.get_double("f.width"));
  throw PreconditionError("f.kind: unknown profile '" + kind + "'");
}

GridFunction state_family(const std::string& family, const std::vector<double>& p, const GridSpec& grid) {
  if (family == "gaussian") {
    require(p.size() == 2 || p.size() == 3, "state.params: gaussian needs center, width[, k0]");
    return gaussian_state(p[0], p[1], p.size() == 3 ? p[2] : 0.0, grid);
  }
  if (family == "bump") {
    require(p.size() == 2 || p.size() == 3, "state.params: bump needs a, b[, beta]");
    return bump_state(p[0], p[1], p.size() == 3 ? p[2] : 8.0, grid);
  }
  throw PreconditionError("state.family: unknown family '" + family + "'");
}

}  // namespace friedrichs
