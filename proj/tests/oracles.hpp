#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "fiohardy/grid.hpp"

// Test-only reference implementations, kept independent of the library's
// FFT/geometry code paths.

namespace fiohardy::oracle {

// direct double-loop DFT with the continuum weights of to_spectral
inline SpectralField dft_direct(const SpatialField& f) {
  const GridSpec& g = f.grid;
  SpectralField out = SpectralField::zero(g);
  const double w = g.cell() * g.cell();
  for (int ki = 0; ki < g.size(); ++ki) {
    const auto z = g.zeta(ki);
    cplx acc{0.0, 0.0};
    for (int xi = 0; xi < g.size(); ++xi) {
      const auto x = g.x(xi);
      acc += f.data[xi] * std::polar(1.0, -(x[0] * z[0] + x[1] * z[1]));
    }
    out.data[ki] = w * acc;
  }
  return out;
}

inline SpatialField idft_direct(const SpectralField& fhat) {
  const GridSpec& g = fhat.grid;
  SpatialField out = SpatialField::zero(g);
  const double w = 1.0 / (g.L * g.L);
  for (int xi = 0; xi < g.size(); ++xi) {
    const auto x = g.x(xi);
    cplx acc{0.0, 0.0};
    for (int ki = 0; ki < g.size(); ++ki) {
      const auto z = g.zeta(ki);
      acc += fhat.data[ki] * std::polar(1.0, x[0] * z[0] + x[1] * z[1]);
    }
    out.data[xi] = w * acc;
  }
  return out;
}

inline double rel_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline double rel_err(const SpatialField& a, const SpatialField& b) { return rel_err(a.data, b.data); }
inline double rel_err(const SpectralField& a, const SpectralField& b) { return rel_err(a.data, b.data); }

// deterministic uniform in [-1, 1]
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  double operator()() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return 2.0 * ((s >> 11) * 0x1.0p-53) - 1.0;
  }
  cplx c() { return {(*this)(), (*this)()}; }
};

inline SpatialField random_field(const GridSpec& g, std::uint64_t seed) {
  SpatialField f = SpatialField::zero(g);
  Rng rng(seed);
  for (auto& v : f.data) v = rng.c();
  return f;
}

// random field with hard spectral band limitation
inline SpatialField random_bandlimited(const GridSpec& g, std::uint64_t seed,
                                       double lo, double hi) {
  SpectralField hat = SpectralField::zero(g);
  Rng rng(seed);
  for (int i = 0; i < g.size(); ++i) {
    const double rho = std::sqrt(g.zeta_mod2(i));
    const cplx v = rng.c();
    if (rho >= lo && rho <= hi) hat.data[i] = v;
  }
  SpatialField f = to_spatial(hat);
  const double n = l2_norm(f);
  for (auto& v : f.data) v /= n;
  return f;
}

} // namespace fiohardy::oracle
