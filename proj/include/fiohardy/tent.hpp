#pragma once

#include "fiohardy/transforms.hpp"

// Tent space functionals over S*(R^2). The conical functional A averages
// |F|^2 over anisotropic boxes comparable to metric balls of radius
// lambda*sqrt(sigma): a rotated rectangle with half-widths lambda^2*sigma
// along the direction and lambda*sqrt(sigma) across (FFT convolution with
// the periodized normalized indicator), and an angular window
// |omega - nu| <= lambda*sqrt(sigma) (circular prefix sums). The coarse
// channel enters with ball radius lambda and weight 1. A true metric-ball
// average is available for calibration at small N.

namespace fiohardy {

// nonnegative scalar field on (x_grid, omega_m)
struct CosphereScalarField {
  GridSpec grid;
  int M = 0;
  std::vector<double> data; // [m * N^2 + x]

  double& at(int m, int x) { return data[static_cast<std::size_t>(m) * grid.size() + x]; }
  double at(int m, int x) const { return data[static_cast<std::size_t>(m) * grid.size() + x]; }
};

// ((2pi/M)(L/N)^2 sum_{x,m} G^p)^{1/p}
double lp_cosphere(const CosphereScalarField& G, double p);

// Streaming accumulator for A^2: feed one scale at a time (all M channel
// planes of that scale), then the coarse plane; results are the A fields
// for each requested aperture. Scale order is the accumulation order.
class AFunctionalAccumulator {
 public:
  AFunctionalAccumulator(const PacketFamily& fam, std::vector<double> lambdas,
                         bool include_coarse = true);
  // channels[m] is the (m, k) channel plane; all M at once
  void add_scale(int k, const std::vector<SpatialField>& channels);
  void add_coarse(const SpatialField& coarse);
  // sqrt of the A^2 accumulated so far (the coarse term is additive, so a
  // snapshot before add_coarse is the fine-scales-only functional)
  CosphereScalarField snapshot(int lambda_index) const;
  // destructive variant of snapshot
  CosphereScalarField take(int lambda_index);
  const std::vector<double>& lambdas() const { return lambdas_; }

 private:
  const PacketFamily* fam_;
  std::vector<double> lambdas_;
  bool include_coarse_;
  std::vector<std::vector<double>> acc_; // per lambda, [m*N^2 + x]
};

CosphereScalarField A_functional(const PacketCoefficients& F, double lambda);
// sigma < 1 channels only (the S f of the square-function norm)
CosphereScalarField A_functional_fine(const PacketCoefficients& F, double lambda);
// direct metric-ball averaging (calibration; cost grows with N^2 per point)
CosphereScalarField A_functional_metric(const PacketCoefficients& F, double lambda);

double tent_norm(const PacketCoefficients& F, double p, double lambda);

// Carleson functional over a finite ball list; tents via the center-distance
// criterion with c_geo = 1
CosphereScalarField C_functional(const PacketCoefficients& F,
                                 const std::vector<AnisotropicBall>& balls);
// balls centered on a stride-N/16 sublattice with radii 2^{-j/2}
std::vector<AnisotropicBall> default_ball_list(const GridSpec& grid, const DirectionSet& dirs,
                                               const ScaleLadder& ladder);

} // namespace fiohardy
