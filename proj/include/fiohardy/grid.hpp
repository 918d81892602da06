#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

// Discretization of R^2 as a periodic grid with an integer-like frequency
// lattice. Fields live on the torus [0,L)^2 with N samples per axis; spectral
// data lives on the lattice {2*pi*k/L : k in [-N/2, N/2)^2}. All continuum
// normalizations follow the e^{-ix.zeta} forward convention, so that
// ||f||_2^2 = (2*pi)^{-2} ||fhat||_2^2 holds exactly on the grid.

namespace fiohardy {

using cplx = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct GridSpec {
  int n = 2;            // spatial dimension (fixed 2)
  int N = 0;            // samples per axis, power of two, >= 32
  double L = kTwoPi;    // period
  double band_lo = 0.5; // resolved band, frequency moduli
  double band_hi = 0.0; // default N/4 * (2*pi/L)

  static GridSpec make(int N, double L = kTwoPi);
  static GridSpec make_banded(int N, double L, double band_lo, double band_hi);

  int size() const { return N * N; }
  double cell() const { return L / N; }          // spatial sample spacing
  double dk() const { return kTwoPi / L; }       // lattice frequency spacing
  double nyquist() const { return dk() * N / 2.0; }

  // signed lattice coordinate of an FFT-ordered index along one axis
  int signed_k(int i) const { return i < N / 2 ? i : i - N; }
  int wrap(int k) const { int r = k % N; return r < 0 ? r + N : r; }
  int flat(int i1, int i2) const { return i1 * N + i2; }
  int flat_of_k(int k1, int k2) const { return flat(wrap(k1), wrap(k2)); }

  std::array<double, 2> zeta(int idx) const {
    return {dk() * signed_k(idx / N), dk() * signed_k(idx % N)};
  }
  double zeta_mod2(int idx) const {
    auto z = zeta(idx);
    return z[0] * z[0] + z[1] * z[1];
  }
  std::array<double, 2> x(int idx) const {
    return {cell() * (idx / N), cell() * (idx % N)};
  }

  bool operator==(const GridSpec&) const = default;
};

struct SpatialField {
  GridSpec grid;
  std::vector<cplx> data; // row-major, data[i1*N+i2] at x = (i1,i2)*L/N

  static SpatialField zero(const GridSpec& g) { return {g, std::vector<cplx>(g.size())}; }
};

struct SpectralField {
  GridSpec grid;
  std::vector<cplx> data; // FFT-ordered lattice samples of fhat

  static SpectralField zero(const GridSpec& g) { return {g, std::vector<cplx>(g.size())}; }
};

SpectralField to_spectral(const SpatialField& f);
SpatialField to_spatial(const SpectralField& fhat);

// Sparse Fourier multiplier: values are exactly zero off the stored support.
struct Multiplier {
  GridSpec grid;
  std::vector<std::uint32_t> idx; // sorted support indices
  std::vector<cplx> val;

  std::size_t nnz() const { return idx.size(); }
  void push(std::uint32_t i, cplx v) { idx.push_back(i); val.push_back(v); }
  cplx at(std::uint32_t i) const; // binary search; 0 off support
  static Multiplier dense(const GridSpec& g, const std::vector<cplx>& values,
                          double drop_tol = 0.0);
};

Multiplier multiplier_product(const Multiplier& a, const Multiplier& b);

SpectralField apply_multiplier(const Multiplier& m, const SpectralField& fhat);
SpatialField apply_multiplier(const Multiplier& m, const SpatialField& f);

// ((L/N)^2 sum |f|^p)^{1/p}; rejects p <= 1 and non-finite p.
double lp_norm(const SpatialField& f, double p);
double l2_norm(const SpatialField& f);
// (2*pi)^{-1} * ((2*pi/L)^2 sum |fhat|^2)^{1/2}, the continuum-normalized L2.
double l2_norm(const SpectralField& fhat);
cplx inner(const SpatialField& a, const SpatialField& b); // (L/N)^2 sum conj(a) b

// FLD1 binary field format:
//   ASCII header "FLD1 <N> <N> <L> <spatial|spectral>\n", then N^2
//   little-endian f64 (re, im) pairs, row-major.
void write_fld(const std::string& path, const SpatialField& f);
void write_fld(const std::string& path, const SpectralField& f);
// Either kind; returns true and fills the matching output.
struct FldContent {
  bool spectral = false;
  GridSpec grid;
  std::vector<cplx> data;
};
FldContent read_fld(const std::string& path);

} // namespace fiohardy
