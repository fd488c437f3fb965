#pragma once

#include <map>
#include <optional>
#include <string>

#include "friedrichs/dynamics.hpp"

namespace friedrichs {

// Flat key/value config. `[sec]` + `key = v` and a top-level `sec.key = v` name the same entry.
// Lines starting with '#' or ';' are comments.
class Config {
 public:
  static Config load(const std::string& path);
  static Config parse(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // "a, b, c" or "[a, b]"
  std::vector<double> get_list(const std::string& key) const;
  std::vector<std::string> keys() const;
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

 private:
  std::map<std::string, std::string> kv_;
};

GridSpec grid_from_config(const Config& c);
FiniteRankModel model_from_config(const Config& c, const GridSpec& spec);
LocalizationProfile profile_from_config(const Config& c);

// Named vector families: gaussian(center, width), hermite(n), node(x0), file(path).
GridFunction vector_family(const std::string& spec_text, const GridSpec& grid, const std::string& base_dir = ".");

// State families: gaussian(center, width, k0), bump(a, b, beta).
GridFunction state_family(const std::string& family, const std::vector<double>& params, const GridSpec& grid);

GridFunction hermite_function(int n, const GridSpec& grid);
GridFunction bump_state(double a, double b, double beta, const GridSpec& grid);
GridFunction gaussian_state(double center, double width, double k0, const GridSpec& grid);

}  // namespace friedrichs
