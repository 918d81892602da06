#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "fiohardy/grid.hpp"
#include "oracles.hpp"

using namespace fiohardy;

TEST_CASE("grid validation") {
  CHECK_THROWS(GridSpec::make(48));
  CHECK_THROWS(GridSpec::make(16));
  const GridSpec g = GridSpec::make(64);
  CHECK(g.band_lo == doctest::Approx(0.5));
  CHECK(g.band_hi == doctest::Approx(16.0));
  CHECK(g.dk() == doctest::Approx(1.0));
  // lattice is the integer lattice at L = 2*pi
  CHECK(g.zeta(g.flat_of_k(3, -5))[0] == doctest::Approx(3.0));
  CHECK(g.zeta(g.flat_of_k(3, -5))[1] == doctest::Approx(-5.0));
}

TEST_CASE("constant field transforms to the zero bin") {
  const GridSpec g = GridSpec::make(32);
  SpatialField f = SpatialField::zero(g);
  for (auto& v : f.data) v = 1.0;
  const SpectralField hat = to_spectral(f);
  // mass entirely at zeta = 0: fhat(0) = L^2
  CHECK(std::abs(hat.data[g.flat_of_k(0, 0)] - cplx{g.L * g.L, 0.0}) < 1e-9);
  double off = 0.0;
  for (int i = 1; i < g.size(); ++i) off += std::abs(hat.data[i]);
  CHECK(off < 1e-8);
}

TEST_CASE("plane wave on the lattice hits a single bin") {
  const GridSpec g = GridSpec::make(32);
  SpatialField f = SpatialField::zero(g);
  const int k1 = 5, k2 = -7;
  for (int i = 0; i < g.size(); ++i) {
    const auto x = g.x(i);
    f.data[i] = std::polar(1.0, k1 * x[0] + k2 * x[1]);
  }
  const SpectralField hat = to_spectral(f);
  for (int i = 0; i < g.size(); ++i) {
    if (i == g.flat_of_k(k1, k2))
      CHECK(std::abs(hat.data[i] - cplx{g.L * g.L, 0.0}) < 1e-8);
    else
      CHECK(std::abs(hat.data[i]) < 1e-8);
  }
}

TEST_CASE("fft agrees with the direct DFT oracle at N = 32") {
  const GridSpec g = GridSpec::make(32);
  const SpatialField f = oracle::random_field(g, 7);
  const SpectralField fast = to_spectral(f);
  const SpectralField slow = oracle::dft_direct(f);
  CHECK(oracle::rel_err(fast, slow) < 1e-12);
  const SpatialField back = to_spatial(fast);
  CHECK(oracle::rel_err(back, f) < 1e-12);
}

TEST_CASE("parseval with continuum weights") {
  for (int N : {32, 64}) {
    const GridSpec g = GridSpec::make(N);
    const SpatialField f = oracle::random_field(g, 11 + N);
    const SpectralField hat = to_spectral(f);
    const double a = l2_norm(f), b = l2_norm(hat);
    CHECK(std::abs(a - b) / a < 1e-12);
  }
}

TEST_CASE("multiplier identity, zero, composition, commutativity") {
  const GridSpec g = GridSpec::make(32);
  const SpatialField f = oracle::random_field(g, 3);
  std::vector<cplx> ones(g.size(), cplx{1.0, 0.0});
  const Multiplier id = Multiplier::dense(g, ones);
  CHECK(oracle::rel_err(apply_multiplier(id, f), f) < 1e-13);

  const Multiplier zero{g, {}, {}};
  const SpatialField z = apply_multiplier(zero, f);
  for (const auto& v : z.data) CHECK(std::abs(v) == 0.0);

  oracle::Rng rng(99);
  std::vector<cplx> va(g.size()), vb(g.size());
  for (int i = 0; i < g.size(); ++i) {
    va[i] = rng.c();
    vb[i] = rng.c();
  }
  const Multiplier ma = Multiplier::dense(g, va), mb = Multiplier::dense(g, vb);
  const SpatialField ab = apply_multiplier(ma, apply_multiplier(mb, f));
  const SpatialField ba = apply_multiplier(mb, apply_multiplier(ma, f));
  const SpatialField prod = apply_multiplier(multiplier_product(ma, mb), f);
  CHECK(oracle::rel_err(ab, prod) < 1e-12);
  CHECK(oracle::rel_err(ab, ba) < 1e-12);
}

TEST_CASE("half-lattice indicator on plane waves (direct oracle)") {
  const GridSpec g = GridSpec::make(32);
  std::vector<cplx> ind(g.size());
  for (int i = 0; i < g.size(); ++i) ind[i] = g.zeta(i)[0] > 0 ? 1.0 : 0.0;
  const Multiplier m = Multiplier::dense(g, ind);
  for (int k1 : {4, -4}) {
    SpatialField f = SpatialField::zero(g);
    for (int i = 0; i < g.size(); ++i) f.data[i] = std::polar(1.0, k1 * g.x(i)[0]);
    const SpatialField out = apply_multiplier(m, f);
    const SpatialField ref = oracle::idft_direct(apply_multiplier(m, oracle::dft_direct(f)));
    double diff = 0.0;
    for (int i = 0; i < g.size(); ++i) diff = std::max(diff, std::abs(out.data[i] - ref.data[i]));
    CHECK(diff < 1e-12); // vs the direct-DFT oracle, normalized by |f| = 1
    const double mass = l2_norm(out);
    if (k1 > 0)
      CHECK(mass == doctest::Approx(l2_norm(f)).epsilon(1e-10));
    else
      CHECK(mass < 1e-10);
  }
}

TEST_CASE("hermitian symbols preserve real fields") {
  const GridSpec g = GridSpec::make(32);
  SpatialField f = SpatialField::zero(g);
  oracle::Rng rng(5);
  for (auto& v : f.data) v = rng(); // real field
  std::vector<cplx> sym(g.size());
  for (int i = 0; i < g.size(); ++i) {
    // the k = -N/2 rows pair with themselves on the lattice; keep them clear
    if (g.signed_k(i / g.N) == -g.N / 2 || g.signed_k(i % g.N) == -g.N / 2) continue;
    const auto z = g.zeta(i);
    sym[i] = cplx{std::cos(z[0]), std::sin(z[1])}; // m(-z) = conj(m(z))
  }
  const SpatialField out = apply_multiplier(Multiplier::dense(g, sym), f);
  double imag = 0.0;
  for (const auto& v : out.data) imag = std::max(imag, std::abs(v.imag()));
  CHECK(imag < 1e-12);
}

TEST_CASE("lp norm: constants, homogeneity, gaussian closed form") {
  const GridSpec g = GridSpec::make(64);
  SpatialField f = SpatialField::zero(g);
  for (auto& v : f.data) v = cplx{3.0, 4.0}; // |c| = 5
  for (double p : {1.5, 2.0, 4.0})
    CHECK(lp_norm(f, p) == doctest::Approx(5.0 * std::pow(kTwoPi, 2.0 / p)).epsilon(1e-12));
  CHECK_THROWS(lp_norm(f, 1.0));
  CHECK_THROWS(lp_norm(f, 0.5));
  CHECK_THROWS(lp_norm(f, std::numeric_limits<double>::infinity()));

  const SpatialField r = oracle::random_field(g, 21);
  SpatialField r2 = r;
  for (auto& v : r2.data) v *= -2.5;
  CHECK(lp_norm(r2, 3.0) == doctest::Approx(2.5 * lp_norm(r, 3.0)).epsilon(1e-12));

  // centered gaussian, ||f||_2 = sqrt(pi) * a against the analytic integral
  const double a = 0.25;
  SpatialField gs = SpatialField::zero(g);
  for (int i = 0; i < g.size(); ++i) {
    auto x = g.x(i);
    double x1 = x[0] - kPi, x2 = x[1] - kPi;
    gs.data[i] = std::exp(-(x1 * x1 + x2 * x2) / (2.0 * a * a));
  }
  CHECK(lp_norm(gs, 2.0) == doctest::Approx(std::sqrt(kPi) * a).epsilon(1e-6));
}

TEST_CASE("fld round trip") {
  const GridSpec g = GridSpec::make(32);
  const SpatialField f = oracle::random_field(g, 13);
  const std::string path = "test_roundtrip.fld";
  write_fld(path, f);
  const FldContent c = read_fld(path);
  CHECK_FALSE(c.spectral);
  CHECK(c.grid.N == 32);
  CHECK(oracle::rel_err(c.data, f.data) == 0.0);
  std::remove(path.c_str());
}
