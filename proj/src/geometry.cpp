#include "fiohardy/geometry.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "fiohardy/grid.hpp"

namespace fiohardy {

DirectionSet DirectionSet::make(int M, double sigma_min) {
  if (M < 4) throw std::invalid_argument("DirectionSet: M too small");
  const int m_min = static_cast<int>(std::ceil(kTwoPi / std::sqrt(sigma_min)));
  if (M < m_min)
    throw std::invalid_argument("DirectionSet: M < ceil(2*pi/sqrt(sigma_min)) = " + std::to_string(m_min));
  return DirectionSet{M};
}

ScaleLadder ScaleLadder::make(int J, double sigma_min, double band_hi) {
  if (J < 1) throw std::invalid_argument("ScaleLadder: J must be >= 1");
  if (!(sigma_min > 0.0 && sigma_min < 1.0)) throw std::invalid_argument("ScaleLadder: sigma_min in (0,1)");
  if (band_hi > 0.0 && sigma_min * band_hi < 1.0 - 1e-12)
    throw std::invalid_argument("ScaleLadder: sigma_min < 1/band_hi, finest packets exceed the lattice");
  const double kf = -J * std::log2(sigma_min);
  const int K = static_cast<int>(std::lround(kf));
  if (std::abs(kf - K) > 1e-9) throw std::invalid_argument("ScaleLadder: sigma_min must be 2^{-K/J}");
  ScaleLadder l;
  l.J = J;
  l.K = K;
  l.sigma_min = std::exp2(-static_cast<double>(K) / J);
  return l;
}

double ScaleLadder::sigma(int k) const {
  if (k < 1 || k > K) throw std::out_of_range("ScaleLadder::sigma");
  return std::exp2(-static_cast<double>(k) / J);
}

double ScaleLadder::weight() const { return std::log(2.0) / J; }
double ScaleLadder::total_weight() const { return K * weight(); }

double chord(double alpha, double beta) {
  return 2.0 * std::abs(std::sin(0.5 * (alpha - beta)));
}

static double wrap_disp(double d, double period) {
  if (period <= 0.0) return d;
  d = std::fmod(d, period);
  if (d > 0.5 * period) d -= period;
  if (d < -0.5 * period) d += period;
  return d;
}

double metric_d(const CospherePoint& p, const CospherePoint& q, double period) {
  const double d1 = wrap_disp(p.x1 - q.x1, period);
  const double d2 = wrap_disp(p.x2 - q.x2, period);
  const double axial = std::cos(p.alpha) * d1 + std::sin(p.alpha) * d2;
  const double c = chord(p.alpha, q.alpha);
  return std::sqrt(d1 * d1 + d2 * d2 + std::abs(axial) + c * c);
}

bool ball_membership(const AnisotropicBall& b, const CospherePoint& q, double period) {
  return metric_d(b.center, q, period) <= b.radius;
}

bool box_ball_membership(const AnisotropicBall& b, const CospherePoint& q, double period) {
  const double tau = b.radius;
  const double d1 = wrap_disp(b.center.x1 - q.x1, period);
  const double d2 = wrap_disp(b.center.x2 - q.x2, period);
  const double axial = std::cos(b.center.alpha) * d1 + std::sin(b.center.alpha) * d2;
  return d1 * d1 + d2 * d2 <= tau * tau && std::abs(axial) <= tau * tau &&
         chord(b.center.alpha, q.alpha) <= tau;
}

namespace {

std::mutex vol_mutex;
std::map<std::pair<double, std::int64_t>, double> vol_cache;

// hit-fraction MC over the enclosing box of the region
//   {(z, gamma): |z|^2 + |<e1,z>| + chord(gamma)^2 <= tau^2}
double ball_volume_mc(double tau, std::int64_t samples, std::uint64_t seed) {
  const double t2 = tau * tau;
  const double bx_perp = tau;                          // |z| <= tau
  const double bx_par = std::min(tau, t2);             // |<e1,z>| <= tau^2 and |z| <= tau
  const double gmax = tau < 2.0 ? 2.0 * std::asin(0.5 * tau) : kPi; // chord <= tau
  std::mt19937_64 rng(seed);
  auto unif = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    const double zpar = bx_par * (2.0 * unif() - 1.0);
    const double zperp = bx_perp * (2.0 * unif() - 1.0);
    const double g = gmax * (2.0 * unif() - 1.0);
    const double c = 2.0 * std::sin(0.5 * std::abs(g));
    if (zpar * zpar + zperp * zperp + std::abs(zpar) + c * c <= t2) ++hits;
  }
  const double box = (2.0 * bx_par) * (2.0 * bx_perp) * (2.0 * gmax);
  return box * static_cast<double>(hits) / static_cast<double>(samples);
}

} // namespace

double ball_volume(double tau, std::int64_t mc_samples, std::uint64_t seed) {
  if (!(tau > 0.0)) throw std::invalid_argument("ball_volume: tau must be positive");
  std::lock_guard<std::mutex> lock(vol_mutex);
  auto key = std::make_pair(tau, mc_samples);
  auto it = vol_cache.find(key);
  if (it != vol_cache.end()) return it->second;
  const double v = ball_volume_mc(tau, mc_samples, seed);
  vol_cache.emplace(key, v);
  return v;
}

double slab_volume(int j, double sigma, double omega_alpha,
                   std::int64_t mc_samples, std::uint64_t seed) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("slab_volume: sigma in (0,1)");
  if (j < 0) throw std::invalid_argument("slab_volume: j >= 0");
  const double hi = std::exp2(j) * sigma;
  const double lo = j == 0 ? 0.0 : 0.5 * hi;
  const double c = std::sqrt(hi);
  const double bx_par = std::min(c, hi); // |<w,z>| <= hi and |z| <= sqrt(hi)
  const double bx_perp = c;
  const double ca = std::cos(omega_alpha), sa = std::sin(omega_alpha);
  std::mt19937_64 rng(seed);
  auto unif = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < mc_samples; ++s) {
    const double zpar = bx_par * (2.0 * unif() - 1.0);
    const double zperp = bx_perp * (2.0 * unif() - 1.0);
    // rotate back to the ambient frame; the quadratic form only sees the
    // axial component, so this is exercise for the omega-independence test
    const double z1 = ca * zpar - sa * zperp;
    const double z2 = sa * zpar + ca * zperp;
    const double axial = ca * z1 + sa * z2;
    const double q = z1 * z1 + z2 * z2 + std::abs(axial);
    if (q > lo && q <= hi) ++hits;
  }
  const double box = (2.0 * bx_par) * (2.0 * bx_perp);
  return box * static_cast<double>(hits) / static_cast<double>(mc_samples);
}

bool tent_membership(const AnisotropicBall& b, const CospherePoint& q, double sigma,
                     double period, double c_geo) {
  if (!(sigma > 0.0)) throw std::invalid_argument("tent_membership: sigma must be positive");
  const double d = metric_d(b.center, q, period);
  return d <= b.radius && d <= b.radius - c_geo * std::sqrt(sigma);
}

} // namespace fiohardy
