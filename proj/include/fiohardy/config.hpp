#pragma once

#include <map>
#include <string>
#include <vector>

// Line-oriented "key = value" run configuration. Lists are comma separated.
// Unknown keys are rejected; geometric consistency (grid / ladder / direction
// constraints) is checked at load with a diagnostic naming the violated
// inequality. FIOHARDY_THREADS caps the worker count when set.

namespace fiohardy {

struct RunConfig {
  int grid_n = 256;
  double grid_l = 6.283185307179586;
  double band_lo = -1.0; // < 0: GridSpec default (1/2)
  double band_hi = -1.0; // < 0: GridSpec default (N/4 * 2pi/L)
  int directions = 128;
  int ladder_j = 4;
  double sigma_min = 0.015625;
  std::string profile = "standard"; // standard | tilde
  std::vector<double> apertures = {1.0, 2.0, 4.0};
  std::vector<double> p_list = {4.0 / 3.0, 2.0, 4.0};
  std::string suite = "default";
  int drift_n = 128; // grid for the refinement-stability study (0 disables)
  long long mc_samples = 200000;
  int threads = 0; // 0 = library default
  std::string out_json = "report.json";
  std::string out_csv_dir = "";
  std::map<std::string, double> tolerances; // tol_<name> overrides

  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::string& path);
  std::string serialize() const;
  // throws with the violated inequality spelled out
  void validate() const;
  double tol(const std::string& name, double fallback) const;
};

void apply_thread_config(const RunConfig& cfg); // honors FIOHARDY_THREADS

} // namespace fiohardy
