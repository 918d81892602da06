#include "fiohardy/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fiohardy/geometry.hpp"
#include "fiohardy/grid.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiohardy {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    // accept simple fractions like 4/3
    const auto slash = item.find('/');
    if (slash != std::string::npos)
      out.push_back(std::stod(item.substr(0, slash)) / std::stod(item.substr(slash + 1)));
    else
      out.push_back(std::stod(item));
  }
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

} // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config: expected key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "grid_n") cfg.grid_n = std::stoi(val);
    else if (key == "grid_l") cfg.grid_l = std::stod(val);
    else if (key == "band_lo") cfg.band_lo = std::stod(val);
    else if (key == "band_hi") cfg.band_hi = std::stod(val);
    else if (key == "directions") cfg.directions = std::stoi(val);
    else if (key == "ladder_j") cfg.ladder_j = std::stoi(val);
    else if (key == "sigma_min") cfg.sigma_min = std::stod(val);
    else if (key == "profile") cfg.profile = val;
    else if (key == "apertures") cfg.apertures = parse_list(val);
    else if (key == "p_list") cfg.p_list = parse_list(val);
    else if (key == "suite") cfg.suite = val;
    else if (key == "drift_n") cfg.drift_n = std::stoi(val);
    else if (key == "mc_samples") cfg.mc_samples = std::stoll(val);
    else if (key == "threads") cfg.threads = std::stoi(val);
    else if (key == "out_json") cfg.out_json = val;
    else if (key == "out_csv_dir") cfg.out_csv_dir = val;
    else if (key.rfind("tol_", 0) == 0) cfg.tolerances[key.substr(4)] = std::stod(val);
    else throw std::invalid_argument("config: unknown key " + key);
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return parse(os.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os.precision(17);
  os << "grid_n = " << grid_n << "\n";
  os << "grid_l = " << grid_l << "\n";
  if (band_lo >= 0.0) os << "band_lo = " << band_lo << "\n";
  if (band_hi >= 0.0) os << "band_hi = " << band_hi << "\n";
  os << "directions = " << directions << "\n";
  os << "ladder_j = " << ladder_j << "\n";
  os << "sigma_min = " << sigma_min << "\n";
  os << "profile = " << profile << "\n";
  os << "apertures = " << format_list(apertures) << "\n";
  os << "p_list = " << format_list(p_list) << "\n";
  os << "suite = " << suite << "\n";
  os << "drift_n = " << drift_n << "\n";
  os << "mc_samples = " << mc_samples << "\n";
  os << "threads = " << threads << "\n";
  os << "out_json = " << out_json << "\n";
  if (!out_csv_dir.empty()) os << "out_csv_dir = " << out_csv_dir << "\n";
  for (const auto& [k, v] : tolerances) os << "tol_" << k << " = " << v << "\n";
  return os.str();
}

void RunConfig::validate() const {
  if (grid_n < 32 || (grid_n & (grid_n - 1)) != 0)
    throw std::invalid_argument("config: violated N >= 32 and N a power of two");
  GridSpec g = band_hi > 0.0 ? GridSpec::make_banded(grid_n, grid_l, std::max(band_lo, 0.0), band_hi)
                             : GridSpec::make(grid_n, grid_l);
  if (!(sigma_min * g.band_hi >= 1.0 - 1e-12))
    throw std::invalid_argument("config: violated sigma_min >= 1/band_hi (finest packet support "
                                "2/sigma_min must stay within twice the resolved band)");
  const double kf = -ladder_j * std::log2(sigma_min);
  if (std::abs(kf - std::lround(kf)) > 1e-9)
    throw std::invalid_argument("config: violated sigma_min = 2^{-K/J} for integer K");
  const int m_min = static_cast<int>(std::ceil(2.0 * kPi / std::sqrt(sigma_min)));
  if (directions < m_min)
    throw std::invalid_argument("config: violated M >= ceil(2*pi/sqrt(sigma_min)) = " +
                                std::to_string(m_min));
  if (profile != "standard" && profile != "tilde")
    throw std::invalid_argument("config: profile must be standard or tilde");
  for (double p : p_list)
    if (!(p > 1.0) || !std::isfinite(p))
      throw std::invalid_argument("config: violated 1 < p < infinity");
  for (double l : apertures)
    if (!(l >= 1.0)) throw std::invalid_argument("config: violated aperture lambda >= 1");
  if (drift_n != 0 && (drift_n < 32 || (drift_n & (drift_n - 1)) != 0))
    throw std::invalid_argument("config: violated drift_n >= 32 and a power of two (or 0)");
  if (mc_samples < 1000) throw std::invalid_argument("config: violated mc_samples >= 1000");
}

double RunConfig::tol(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void apply_thread_config(const RunConfig& cfg) {
#ifdef _OPENMP
  int n = cfg.threads;
  if (const char* env = std::getenv("FIOHARDY_THREADS"); env && *env) n = std::atoi(env);
  if (n > 0) omp_set_num_threads(n);
#else
  (void)cfg;
#endif
}

} // namespace fiohardy
