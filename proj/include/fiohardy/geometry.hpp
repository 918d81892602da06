#pragma once

#include <cstdint>
#include <vector>

// The cosphere bundle S*(R^2) = R^2 x S^1 with the anisotropic metric
//   d((x,w),(y,v)) = (|x-y|^2 + |<w,x-y>| + |w-v|^2)^{1/2},
// adopted as the implemented metric (the contact-geometry infimum is out of
// scope). |x-y| is the shortest torus displacement when a period is supplied,
// |w-v| the chordal distance. Ball/slab volumes are free-plane Monte Carlo;
// small and large balls scale as tau^{2n} resp. tau^n.

namespace fiohardy {

struct CospherePoint {
  double x1 = 0.0, x2 = 0.0;
  double alpha = 0.0; // direction angle in [0, 2*pi)
};

struct DirectionSet {
  int M = 0;
  static DirectionSet make(int M, double sigma_min);
  double angle(int m) const { return 6.283185307179586 * m / M; }
  double weight() const { return 6.283185307179586 / M; }
};

struct GridSpec; // grid.hpp

struct ScaleLadder {
  int J = 0;              // samples per octave
  int K = 0;              // fine nodes k = 1..K, sigma_k = 2^{-k/J} < 1
  double sigma_min = 0.0; // 2^{-K/J}
  double coarse_weight = 1.0; // d sigma / sigma mass of [1, e]

  // sigma_min must satisfy sigma_min >= 1/band_hi so the finest packet
  // supports (|zeta| <= 2/sigma_min) fit on the lattice.
  static ScaleLadder make(int J, double sigma_min, double band_hi);
  double sigma(int k) const;          // k in 1..K
  double weight() const;              // ln2 / J per node
  double total_weight() const;        // K * ln2/J = ln(1/sigma_min)
};

struct AnisotropicBall {
  CospherePoint center;
  double radius = 0.0;
};

// chordal distance |w - v| between unit directions given by angles
double chord(double alpha, double beta);

// period <= 0 means free plane
double metric_d(const CospherePoint& p, const CospherePoint& q, double period = 0.0);

bool ball_membership(const AnisotropicBall& b, const CospherePoint& q, double period = 0.0);
// comparable box: |x-y| <= tau, |<w,x-y>| <= tau^2, |w-v| <= tau
bool box_ball_membership(const AnisotropicBall& b, const CospherePoint& q, double period = 0.0);

// |B_tau| in R^2 x S^1 by importance-sampled Monte Carlo over the enclosing
// box (center-independent); deterministic for fixed samples/seed, cached.
double ball_volume(double tau, std::int64_t mc_samples = 200000, std::uint64_t seed = 12345);

// |{z in R^2 : 2^{j-1} sigma < |z|^2 + |<w,z>| <= 2^j sigma}| (j = 0: no
// lower bound); direction enters only through rotation, volume is invariant.
double slab_volume(int j, double sigma, double omega_alpha,
                   std::int64_t mc_samples = 200000, std::uint64_t seed = 12345);

// tent over B at height sigma: q in B and d(q, center) <= tau - c_geo*sqrt(sigma)
bool tent_membership(const AnisotropicBall& b, const CospherePoint& q, double sigma,
                     double period = 0.0, double c_geo = 1.0);

} // namespace fiohardy
