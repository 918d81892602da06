#include "fiohardy/transforms.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiohardy {

static const double kCoarsePrefactor = 1.0 / std::sqrt(kTwoPi);

const Multiplier& channel_multiplier(const PacketFamily& fam, Transform which, int m, int k) {
  switch (which) {
    case Transform::W: return fam.psi_mk(m, k);
    case Transform::V: return fam.theta_mk(m, k);
    default: return fam.chi_mk(m, k);
  }
}

const Multiplier& coarse_multiplier(const PacketFamily& fam, Transform which) {
  switch (which) {
    case Transform::W: return fam.r;
    case Transform::V: return fam.s;
    default: return fam.h;
  }
}

SpatialField channel_field(const PacketFamily& fam, const SpectralField& fhat,
                           Transform which, int m, int k) {
  return to_spatial(apply_multiplier(channel_multiplier(fam, which, m, k), fhat));
}

SpatialField coarse_field(const PacketFamily& fam, const SpectralField& fhat, Transform which) {
  SpectralField g = apply_multiplier(coarse_multiplier(fam, which), fhat);
  for (auto& v : g.data) v *= kCoarsePrefactor;
  return to_spatial(g);
}

PacketCoefficients transform(const PacketFamily& fam, const SpatialField& f, Transform which) {
  if (!(f.grid == fam.grid)) throw std::invalid_argument("transform: grid mismatch");
  const SpectralField fhat = to_spectral(f);
  PacketCoefficients out;
  out.family = &fam;
  out.which = which;
  out.coeff.resize(static_cast<std::size_t>(fam.M()) * fam.K());
  const int M = fam.M(), K = fam.K();
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic)
#endif
  for (int m = 0; m < M; ++m)
    for (int k = 1; k <= K; ++k)
      out.coeff[fam.index(m, k)] = channel_field(fam, fhat, which, m, k);
  out.coarse = coarse_field(fam, fhat, which);
  return out;
}

static SpatialField adjoint_impl(const PacketFamily& fam, const PacketCoefficients& F,
                                 Transform which) {
  if (F.family != &fam) throw std::invalid_argument("adjoint: family mismatch");
  const int M = fam.M(), K = fam.K();
  SpectralField acc = SpectralField::zero(fam.grid);
  const double wm = fam.dirs.weight(), wk = fam.ladder.weight();
  // blocked channel FFTs, fixed (k, m) accumulation order for any thread count
  const int block = 16;
  std::vector<SpectralField> hats(block);
  for (int k = 1; k <= K; ++k)
    for (int m0 = 0; m0 < M; m0 += block) {
      const int mn = std::min(M, m0 + block);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (int m = m0; m < mn; ++m) hats[m - m0] = to_spectral(F.at(m, k));
      for (int m = m0; m < mn; ++m) {
        const Multiplier& mult = channel_multiplier(fam, which, m, k);
        const SpectralField& h = hats[m - m0];
        for (std::size_t e = 0; e < mult.idx.size(); ++e)
          acc.data[mult.idx[e]] += wm * wk * std::conj(mult.val[e]) * h.data[mult.idx[e]];
      }
    }
  const SpectralField ch = to_spectral(F.coarse);
  const Multiplier& cm = coarse_multiplier(fam, which);
  const double cw = std::sqrt(kTwoPi); // 2pi measure times the folded (2pi)^{-1/2}
  for (std::size_t e = 0; e < cm.idx.size(); ++e)
    acc.data[cm.idx[e]] += cw * std::conj(cm.val[e]) * ch.data[cm.idx[e]];
  return to_spatial(acc);
}

SpatialField adjoint_W(const PacketFamily& fam, const PacketCoefficients& F) {
  if (F.which != Transform::W) throw std::invalid_argument("adjoint_W expects W coefficients");
  return adjoint_impl(fam, F, Transform::W);
}

SpatialField adjoint_U(const PacketFamily& fam, const PacketCoefficients& F) {
  // U* applied to V (or U) coefficients; the channel multipliers are chi
  return adjoint_impl(fam, F, Transform::U);
}

cplx coeff_inner(const PacketCoefficients& A, const PacketCoefficients& B) {
  if (A.family != B.family) throw std::invalid_argument("coeff_inner: family mismatch");
  const PacketFamily& fam = *A.family;
  const double wm = fam.dirs.weight(), wk = fam.ladder.weight();
  cplx acc{0.0, 0.0};
  for (int m = 0; m < fam.M(); ++m)
    for (int k = 1; k <= fam.K(); ++k) acc += wm * wk * inner(A.at(m, k), B.at(m, k));
  acc += kTwoPi * inner(A.coarse, B.coarse);
  return acc;
}

double coeff_norm(const PacketCoefficients& F) {
  return std::sqrt(std::abs(coeff_inner(F, F).real()));
}

template <class PerChannel>
static void blocked_channels(const PacketFamily& fam, int block, PerChannel&& per_block) {
  const int M = fam.M(), K = fam.K();
  for (int k = 1; k <= K; ++k)
    for (int m0 = 0; m0 < M; m0 += block) {
      const int mn = std::min(M, m0 + block);
      per_block(k, m0, mn);
    }
}

static SpatialField reproduce_impl(const PacketFamily& fam, const SpatialField& f,
                                   Transform fwd, Transform adj) {
  const SpectralField fhat = to_spectral(f);
  SpectralField acc = SpectralField::zero(fam.grid);
  const double wm = fam.dirs.weight(), wk = fam.ladder.weight();
  const int block = 16;
  std::vector<SpatialField> ch(block);
  std::vector<SpectralField> back(block);
  blocked_channels(fam, block, [&](int k, int m0, int mn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int m = m0; m < mn; ++m) {
      ch[m - m0] = channel_field(fam, fhat, fwd, m, k); // spatial round trip
      back[m - m0] = to_spectral(ch[m - m0]);
    }
    for (int m = m0; m < mn; ++m) { // fixed-order reduction
      const Multiplier& mult = channel_multiplier(fam, adj, m, k);
      const SpectralField& h = back[m - m0];
      for (std::size_t e = 0; e < mult.idx.size(); ++e)
        acc.data[mult.idx[e]] += wm * wk * std::conj(mult.val[e]) * h.data[mult.idx[e]];
    }
  });
  const SpatialField cf = coarse_field(fam, fhat, fwd);
  const SpectralField chat = to_spectral(cf);
  const Multiplier& cm = coarse_multiplier(fam, adj);
  const double cw = std::sqrt(kTwoPi);
  for (std::size_t e = 0; e < cm.idx.size(); ++e)
    acc.data[cm.idx[e]] += cw * std::conj(cm.val[e]) * chat.data[cm.idx[e]];
  return to_spatial(acc);
}

SpatialField reproduce_WstarW(const PacketFamily& fam, const SpatialField& f) {
  return reproduce_impl(fam, f, Transform::W, Transform::W);
}

SpatialField reproduce_UstarV(const PacketFamily& fam, const SpatialField& f) {
  return reproduce_impl(fam, f, Transform::V, Transform::U);
}

SpatialField half_wave(const SpatialField& f, double t) {
  SpectralField fhat = to_spectral(f);
  for (int i = 0; i < fhat.grid.size(); ++i) {
    const double rho = std::sqrt(fhat.grid.zeta_mod2(i));
    fhat.data[i] *= std::polar(1.0, t * rho);
  }
  return to_spatial(fhat);
}

} // namespace fiohardy
