#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiohardy/grid.hpp"

// Deterministic test-function generation. Every member is constructed in the
// spectral domain (exact band limitation to |zeta| <= band_hi) and normalized
// to unit L^2. Spectral values are functions of the integer lattice
// coordinates alone, so the same member on a finer grid is the same
// (periodized) function; random members use a counter-based hash so that this
// holds for them too.

namespace fiohardy {

struct TestFunction {
  std::string id;
  SpatialField field;
};

SpatialField gen_gaussian(const GridSpec& g);
SpatialField gen_modulated_packet(const GridSpec& g, double zeta0_mod, double zeta0_alpha = 0.3);
SpatialField gen_focused_annulus(const GridSpec& g, double R); // phase e^{-i|zeta|}
SpatialField gen_random_bandlimited(const GridSpec& g, std::uint64_t seed,
                                    double band_lo, double band_hi);
SpatialField gen_directional_packet(const GridSpec& g, double omega_alpha, double sigma0);

// "default": gaussian, modulated |zeta0| in {16,48}, focused annuli R in
// {24,56} , random seeds {1,2,3} on [1,27], directional packet; members whose
// spectral support does not fit the grid's band are omitted (band violation
// otherwise). "lowfreq": fields supported in |zeta| <= 1 for the
// low-frequency consistency checks.
std::vector<TestFunction> generate_suite(const GridSpec& g, const std::string& selection = "default");

} // namespace fiohardy
