#include "fiohardy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"

namespace fiohardy {

static bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridSpec GridSpec::make(int N, double L) {
  GridSpec g;
  g.N = N;
  g.L = L;
  if (!power_of_two(N) || N < 32) throw std::invalid_argument("GridSpec: N must be a power of two >= 32");
  if (!(L > 0)) throw std::invalid_argument("GridSpec: L must be positive");
  g.band_lo = 0.5;
  g.band_hi = g.dk() * N / 4.0; // factor-2 headroom below Nyquist
  return g;
}

GridSpec GridSpec::make_banded(int N, double L, double lo, double hi) {
  GridSpec g = make(N, L);
  if (!(0 <= lo && lo < hi)) throw std::invalid_argument("GridSpec: bad resolved band");
  if (hi > g.nyquist()) throw std::invalid_argument("GridSpec: band exceeds Nyquist");
  g.band_lo = lo;
  g.band_hi = hi;
  return g;
}

SpectralField to_spectral(const SpatialField& f) {
  SpectralField out{f.grid, std::vector<cplx>(f.grid.size())};
  dft2d(f.grid.N, f.data.data(), out.data.data(), -1);
  const double w = f.grid.cell() * f.grid.cell();
  for (auto& v : out.data) v *= w;
  return out;
}

SpatialField to_spatial(const SpectralField& fhat) {
  SpatialField out{fhat.grid, std::vector<cplx>(fhat.grid.size())};
  dft2d(fhat.grid.N, fhat.data.data(), out.data.data(), +1);
  const double w = 1.0 / (fhat.grid.L * fhat.grid.L);
  for (auto& v : out.data) v *= w;
  return out;
}

cplx Multiplier::at(std::uint32_t i) const {
  auto it = std::lower_bound(idx.begin(), idx.end(), i);
  if (it == idx.end() || *it != i) return {0.0, 0.0};
  return val[static_cast<std::size_t>(it - idx.begin())];
}

Multiplier Multiplier::dense(const GridSpec& g, const std::vector<cplx>& values, double drop_tol) {
  if (static_cast<int>(values.size()) != g.size()) throw std::invalid_argument("Multiplier::dense: size mismatch");
  Multiplier m{g, {}, {}};
  for (int i = 0; i < g.size(); ++i)
    if (std::abs(values[i]) > drop_tol) m.push(static_cast<std::uint32_t>(i), values[i]);
  return m;
}

Multiplier multiplier_product(const Multiplier& a, const Multiplier& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("multiplier_product: grid mismatch");
  Multiplier out{a.grid, {}, {}};
  std::size_t i = 0, j = 0;
  while (i < a.idx.size() && j < b.idx.size()) {
    if (a.idx[i] < b.idx[j]) ++i;
    else if (b.idx[j] < a.idx[i]) ++j;
    else { out.push(a.idx[i], a.val[i] * b.val[j]); ++i; ++j; }
  }
  return out;
}

SpectralField apply_multiplier(const Multiplier& m, const SpectralField& fhat) {
  if (!(m.grid == fhat.grid)) throw std::invalid_argument("apply_multiplier: grid mismatch");
  SpectralField out = SpectralField::zero(fhat.grid);
  for (std::size_t i = 0; i < m.idx.size(); ++i)
    out.data[m.idx[i]] = m.val[i] * fhat.data[m.idx[i]];
  return out;
}

SpatialField apply_multiplier(const Multiplier& m, const SpatialField& f) {
  return to_spatial(apply_multiplier(m, to_spectral(f)));
}

double lp_norm(const SpatialField& f, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm: p must be finite and > 1");
  double acc = 0.0;
  for (const auto& v : f.data) acc += std::pow(std::abs(v), p);
  const double w = f.grid.cell() * f.grid.cell();
  return std::pow(w * acc, 1.0 / p);
}

double l2_norm(const SpatialField& f) {
  double acc = 0.0;
  for (const auto& v : f.data) acc += std::norm(v);
  const double w = f.grid.cell() * f.grid.cell();
  return std::sqrt(w * acc);
}

double l2_norm(const SpectralField& fhat) {
  double acc = 0.0;
  for (const auto& v : fhat.data) acc += std::norm(v);
  const double dk = fhat.grid.dk();
  return std::sqrt(dk * dk * acc) / kTwoPi;
}

cplx inner(const SpatialField& a, const SpatialField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner: grid mismatch");
  cplx acc{0.0, 0.0};
  for (int i = 0; i < a.grid.size(); ++i) acc += std::conj(a.data[i]) * b.data[i];
  return acc * (a.grid.cell() * a.grid.cell());
}

static void write_fld_impl(const std::string& path, const GridSpec& g,
                           const std::vector<cplx>& data, bool spectral) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  std::ostringstream header;
  header.precision(17);
  header << "FLD1 " << g.N << " " << g.N << " " << g.L
         << (spectral ? " spectral\n" : " spatial\n");
  os << header.str();
  static_assert(sizeof(cplx) == 16);
  os.write(reinterpret_cast<const char*>(data.data()),
           static_cast<std::streamsize>(data.size() * sizeof(cplx)));
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_fld(const std::string& path, const SpatialField& f) {
  write_fld_impl(path, f.grid, f.data, false);
}
void write_fld(const std::string& path, const SpectralField& f) {
  write_fld_impl(path, f.grid, f.data, true);
}

FldContent read_fld(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::getline(is, line);
  std::istringstream hs(line);
  std::string magic, kind;
  int n1 = 0, n2 = 0;
  double L = 0.0;
  hs >> magic >> n1 >> n2 >> L >> kind;
  if (magic != "FLD1" || n1 != n2 || !(kind == "spatial" || kind == "spectral"))
    throw std::runtime_error("bad FLD1 header in " + path);
  FldContent out;
  out.spectral = (kind == "spectral");
  out.grid = GridSpec::make(n1, L);
  out.data.resize(static_cast<std::size_t>(n1) * n2);
  is.read(reinterpret_cast<char*>(out.data.data()),
          static_cast<std::streamsize>(out.data.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("truncated FLD1 payload in " + path);
  return out;
}

} // namespace fiohardy
