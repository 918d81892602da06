#pragma once

#include <functional>

#include "fiohardy/packets.hpp"

// Wave packet transforms W (psi channels, r coarse), V (theta, s) and
// U (chi, h), their adjoints, and the half-wave propagator. A coefficient
// set is one spatial field per (direction, scale) plus the coarse field,
// which carries the sigma in [1, e] slot with the |S^1|^{-1/2} = (2pi)^{-1/2}
// prefactor folded in; coefficient inner products weight the coarse term by
// |S^1| = 2pi so that W is an exact isometry and W* its exact adjoint.

namespace fiohardy {

enum class Transform { W, V, U };

struct PacketCoefficients {
  const PacketFamily* family = nullptr; // non-owning
  Transform which = Transform::W;
  std::vector<SpatialField> coeff; // [m*K + k-1], band-limited per channel
  SpatialField coarse;

  const SpatialField& at(int m, int k) const { return coeff[family->index(m, k)]; }
  SpatialField& at(int m, int k) { return coeff[family->index(m, k)]; }
};

const Multiplier& channel_multiplier(const PacketFamily& fam, Transform which, int m, int k);
const Multiplier& coarse_multiplier(const PacketFamily& fam, Transform which);

SpatialField channel_field(const PacketFamily& fam, const SpectralField& fhat,
                           Transform which, int m, int k);
SpatialField coarse_field(const PacketFamily& fam, const SpectralField& fhat, Transform which);

PacketCoefficients transform(const PacketFamily& fam, const SpatialField& f, Transform which);
SpatialField adjoint_W(const PacketFamily& fam, const PacketCoefficients& F);
SpatialField adjoint_U(const PacketFamily& fam, const PacketCoefficients& F);

cplx coeff_inner(const PacketCoefficients& A, const PacketCoefficients& B);
double coeff_norm(const PacketCoefficients& F); // discrete L^2(S*+) norm

// streaming adjoint-of-transform round trips (channel fields materialized
// one block at a time, spatial in both directions)
SpatialField reproduce_WstarW(const PacketFamily& fam, const SpatialField& f);
SpatialField reproduce_UstarV(const PacketFamily& fam, const SpatialField& f);

// e^{it sqrt(-Delta)}: spectral multiplication by e^{it|zeta|}, unitary on L^2
SpatialField half_wave(const SpatialField& f, double t);

} // namespace fiohardy
