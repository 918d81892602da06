#pragma once

#include <stdexcept>

// Smooth compactly supported radial profiles with exact (hard-zero) supports.
// Disk profiles are piecewise in r: amp on [0, inner], C^inf transition to 0
// at outer. Annular profiles are piecewise in u = log r: rise, plateau, fall.
// Transitions use the standard exp(-1/t) smoothstep, so every profile is
// C^inf with all derivatives vanishing at the support boundary.

namespace fiohardy {

double smoothstep(double t);       // 1 for t <= 0, 0 for t >= 1
double smoothstep_sq_integral();   // int_0^1 S(t)^2 dt

struct RadialProfile {
  enum class Kind { disk, annulus };
  Kind kind = Kind::disk;
  double inner = 0.0, outer = 0.0; // disk breakpoints (linear r)
  double la = 0.0, lb = 0.0, lc = 0.0, ld = 0.0; // annulus breakpoints (log r)
  double amp = 1.0;

  double operator()(double r) const;
  double support_inner() const;
  double support_outer() const;
  double plateau_inner() const;
  double plateau_outer() const;
};

enum class CutoffKind { plateau, bump };

// plateau: identically amp on [0, inner], transition to 0 at outer;
// bump: annular bump supported in [inner, outer], peak at the log-midpoint.
RadialProfile build_radial_cutoff(double inner, double outer,
                                  CutoffKind kind = CutoffKind::plateau);

// annulus in [r_in, r_out] with a plateau covering the middle plateau_frac of
// the log-width (0 gives a rise meeting the fall at the log-midpoint)
RadialProfile build_annular_profile(double r_in, double r_out, double plateau_frac);

// int_0^infty P(t)^2 dt/t by dense log-grid quadrature
double calderon_integral(const RadialProfile& p, int nodes = 1 << 16);

// scalar scaling so the Calderon integral is 1 (annulus profiles)
RadialProfile calderon_normalize_continuum(RadialProfile p);

// int_1^infty P(sigma*rho)^2 dsigma/sigma  (the coarse Calderon tail)
double calderon_tail(const RadialProfile& p, double rho, int nodes = 1 << 12);

// plateau 1 on [2/3, 3/2], support in [1/2, 2], Calderon integral exactly 1;
// feasible because the plateau carries log(9/4) < 1 of the integral, the
// remainder is placed in symmetric transitions of solved-for width.
RadialProfile make_tilde_psi();

} // namespace fiohardy
