#include "fiohardy/suite.hpp"

#include <cmath>
#include <stdexcept>

#include "fiohardy/profiles.hpp"

namespace fiohardy {

namespace {

// counter-based gaussian draw: a function of (seed, k1, k2), not of any
// draw order, so coarse and fine grids agree on shared lattice points
std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

cplx hash_gaussian(std::uint64_t seed, int k1, int k2) {
  const std::uint64_t key = splitmix(seed ^ splitmix((static_cast<std::uint64_t>(
                                         static_cast<std::uint32_t>(k1))
                                                      << 32) ^
                                                     static_cast<std::uint32_t>(k2)));
  const std::uint64_t a = splitmix(key), b = splitmix(key ^ 0xda3e39cb94b95bdbull);
  const double u1 = ((a >> 11) + 0.5) * 0x1.0p-53; // in (0,1)
  const double u2 = ((b >> 11) + 0.5) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

SpatialField normalize(SpectralField hat) {
  SpatialField f = to_spatial(hat);
  const double n = l2_norm(f);
  if (!(n > 0.0)) throw std::runtime_error("suite: zero field generated");
  for (auto& v : f.data) v /= n;
  return f;
}

double band_cap(const GridSpec& g) { return g.band_hi; }

} // namespace

SpatialField gen_gaussian(const GridSpec& g) {
  SpectralField hat = SpectralField::zero(g);
  const double s = 0.35; // spectral std 1/0.35: decayed below 1e-16 at the band edge
  for (int i = 0; i < g.size(); ++i) {
    const double r2 = g.zeta_mod2(i);
    if (r2 > band_cap(g) * band_cap(g)) continue;
    hat.data[i] = std::exp(-0.5 * s * s * r2);
  }
  return normalize(hat);
}

SpatialField gen_modulated_packet(const GridSpec& g, double zeta0_mod, double zeta0_alpha) {
  if (zeta0_mod + 14.0 > band_cap(g))
    throw std::invalid_argument("gen_modulated_packet: band violation");
  SpectralField hat = SpectralField::zero(g);
  const double a = 0.55;
  const double z01 = zeta0_mod * std::cos(zeta0_alpha), z02 = zeta0_mod * std::sin(zeta0_alpha);
  for (int i = 0; i < g.size(); ++i) {
    if (g.zeta_mod2(i) > band_cap(g) * band_cap(g)) continue;
    const auto z = g.zeta(i);
    const double d2 = (z[0] - z01) * (z[0] - z01) + (z[1] - z02) * (z[1] - z02);
    hat.data[i] = std::exp(-0.5 * a * a * d2);
  }
  return normalize(hat);
}

SpatialField gen_focused_annulus(const GridSpec& g, double R) {
  const double w = 4.0;
  if (R + w > band_cap(g)) throw std::invalid_argument("gen_focused_annulus: band violation");
  SpectralField hat = SpectralField::zero(g);
  for (int i = 0; i < g.size(); ++i) {
    const double rho = std::sqrt(g.zeta_mod2(i));
    const double bump = smoothstep(std::abs(rho - R) / w);
    if (bump <= 0.0) continue;
    hat.data[i] = bump * std::polar(1.0, -rho);
  }
  return normalize(hat);
}

SpatialField gen_random_bandlimited(const GridSpec& g, std::uint64_t seed,
                                    double band_lo, double band_hi) {
  if (band_hi > band_cap(g)) throw std::invalid_argument("gen_random_bandlimited: band violation");
  if (!(band_lo < band_hi)) throw std::invalid_argument("gen_random_bandlimited: empty band");
  const RadialProfile env = build_annular_profile(band_lo, band_hi, 0.5);
  SpectralField hat = SpectralField::zero(g);
  for (int i = 0; i < g.size(); ++i) {
    const double rho = std::sqrt(g.zeta_mod2(i));
    const double e = env(rho);
    if (e <= 0.0) continue;
    hat.data[i] = e * hash_gaussian(seed, g.signed_k(i / g.N), g.signed_k(i % g.N));
  }
  return normalize(hat);
}

SpatialField gen_directional_packet(const GridSpec& g, double omega_alpha, double sigma0) {
  if (1.25 / sigma0 > band_cap(g))
    throw std::invalid_argument("gen_directional_packet: band violation");
  const RadialProfile Psi = build_annular_profile(0.8, 1.25, 0.35);
  const RadialProfile ang = build_radial_cutoff(0.5, 1.0);
  SpectralField hat = SpectralField::zero(g);
  const double rs = std::sqrt(sigma0);
  for (int i = 0; i < g.size(); ++i) {
    const double rho = std::sqrt(g.zeta_mod2(i));
    const double rad = Psi(sigma0 * rho);
    if (rad <= 0.0 || rho <= 0.0) continue;
    const auto z = g.zeta(i);
    double beta = std::atan2(z[1], z[0]);
    const double cd = 2.0 * std::abs(std::sin(0.5 * (beta - omega_alpha)));
    const double an = ang(cd / rs);
    if (an <= 0.0) continue;
    hat.data[i] = rad * an;
  }
  return normalize(hat);
}

std::vector<TestFunction> generate_suite(const GridSpec& g, const std::string& selection) {
  std::vector<TestFunction> out;
  if (selection == "lowfreq") {
    SpectralField hat = SpectralField::zero(g);
    for (int i = 0; i < g.size(); ++i) {
      const double rho = std::sqrt(g.zeta_mod2(i));
      if (rho <= 1.0) hat.data[i] = std::exp(-rho * rho);
    }
    out.push_back({"lowfreq_bump", normalize(hat)});
    return out;
  }
  if (selection != "default") throw std::invalid_argument("generate_suite: unknown selection " + selection);
  out.push_back({"gaussian", gen_gaussian(g)});
  for (double z0 : {16.0, 48.0})
    if (z0 + 14.0 <= band_cap(g))
      out.push_back({"mod" + std::to_string(static_cast<int>(z0)), gen_modulated_packet(g, z0)});
  for (double R : {24.0, 56.0})
    if (R + 4.0 <= band_cap(g))
      out.push_back({"annulus" + std::to_string(static_cast<int>(R)), gen_focused_annulus(g, R)});
  for (std::uint64_t seed : {1ull, 2ull, 3ull})
    out.push_back({"rand" + std::to_string(seed), gen_random_bandlimited(g, seed, 1.0, 27.0)});
  out.push_back({"dir_packet", gen_directional_packet(g, 0.3, 0.125)});
  return out;
}

} // namespace fiohardy
