#pragma once

#include <map>
#include <string>
#include <vector>

#include "fiohardy/suite.hpp"
#include "fiohardy/tent.hpp"

// The five equivalent norms on H^p_FIO and their comparison: hardy (tent norm
// of Wf), hardy via V, square-function, parabolic (the main characterization),
// maximal, and vertical, plus the plain L^p and low-frequency pieces. The
// engine computes all of them for every requested p in two channel sweeps
// per input field.

namespace fiohardy {

struct NormReport {
  std::string input_id;
  double p = 0.0;
  double hardy_tent = 0.0;      // ||Wf||_{T^p}
  double hardy_via_V = 0.0;     // ||Vf||_{T^p}
  double square_function = 0.0; // ||q(D)f||_p + ||S f||_{L^p(S*)}
  double parabolic = 0.0;       // ||q(D)f||_p + ((2pi/M) sum_m ||phi_w(D)f||_p^p)^{1/p}
  double maximal = 0.0;
  double vertical = 0.0;
  double lp = 0.0;
  double low_freq = 0.0;        // ||q(D)f||_p

  std::map<std::string, double> named() const;
};

// sup over this sigma set realizes the maximal function: the ladder, coarse
// dilations 2^j, and fine dilations sigma_min 2^{-j} (the sup stabilizes once
// Phi_sigma is essentially 1 on the band)
std::vector<double> maximal_sigma_set(const ScaleLadder& ladder, int coarse_levels = 6,
                                      int fine_levels = 6);

double hardy_norm(const PacketFamily& fam, const SpatialField& f, double p, Transform via);
double square_function_norm(const PacketFamily& fam, const SpatialField& f, double p);
double parabolic_norm(const PacketFamily& fam, const SpatialField& f, double p);
double maximal_norm(const PacketFamily& fam, const SpatialField& f, double p);
double vertical_norm(const PacketFamily& fam, const SpatialField& f, double p);

class NormEngine {
 public:
  struct ApertureRow {
    double lambda = 1.0;
    std::vector<double> tent_p; // tent norm of Wf per p in p_list order
  };

  NormEngine(const PacketFamily& fam, std::vector<double> p_list,
             std::vector<double> apertures = {1.0});
  std::vector<NormReport> evaluate(const SpatialField& f, const std::string& id);
  const std::vector<ApertureRow>& aperture_rows() const { return aperture_rows_; }
  const std::vector<double>& p_list() const { return p_list_; }

 private:
  const PacketFamily* fam_;
  std::vector<double> p_list_;
  std::vector<double> apertures_; // always contains 1 (first)
  std::vector<ApertureRow> aperture_rows_;
};

struct HalfWaveRow {
  double t = 0.0;
  double p = 0.0;
  double lp_ratio = 0.0;
  double parabolic_ratio = 0.0;
  double hardy_ratio = 0.0; // only when requested
};

std::vector<HalfWaveRow> half_wave_study(const PacketFamily& fam, const SpatialField& f,
                                         const std::vector<double>& t_list, double p,
                                         bool include_hardy = false);

} // namespace fiohardy
