#include "fiohardy/packets.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiohardy {

CutoffBank CutoffBank::make() {
  CutoffBank c;
  c.phi = build_radial_cutoff(5.0 / 32.0, 0.25);
  c.Psi = calderon_normalize_continuum(build_annular_profile(0.8, 1.25, 0.35));
  c.tilde_phi = build_radial_cutoff(0.75, 1.0);
  c.tilde_Psi = make_tilde_psi();
  c.q = build_radial_cutoff(2.0, 4.0);
  c.h = build_radial_cutoff(1.5, 3.0); // supp(s) is inside {|zeta| <= 5/4}
  return c;
}

double CutoffBank::Phi_max(double r) { return std::exp(-r * r); }

double c_sigma(const RadialProfile& phi, double sigma, int nodes) {
  if (!(sigma > 0.0)) throw std::invalid_argument("c_sigma: sigma must be positive");
  const double rs = std::sqrt(sigma);
  // integrand support: 2|sin(a/2)| <= outer*sqrt(sigma)
  const double cmax = phi.support_outer() * rs;
  const double amax = cmax >= 2.0 ? kPi : 2.0 * std::asin(0.5 * cmax);
  const double h = 2.0 * amax / nodes;
  double acc = 0.0;
  int live = 0;
  for (int i = 0; i <= nodes; ++i) {
    const double a = -amax + i * h;
    const double v = phi(2.0 * std::abs(std::sin(0.5 * a)) / rs);
    if (v > 0.0) ++live;
    acc += (i == 0 || i == nodes) ? 0.5 * v * v : v * v;
  }
  if (live < 8) throw std::runtime_error("c_sigma: quadrature does not resolve the integrand");
  acc *= h;
  if (!(acc > 0.0)) throw std::runtime_error("c_sigma: quadrature underflow");
  return 1.0 / std::sqrt(acc);
}

CSigmaTable::CSigmaTable(const RadialProfile& phi, double tau_lo, double tau_hi, int nodes) {
  lo_ = std::log(tau_lo);
  h_ = (std::log(tau_hi) - lo_) / (nodes - 1);
  logc_.resize(nodes);
  for (int i = 0; i < nodes; ++i)
    logc_[i] = std::log(c_sigma(phi, std::exp(lo_ + i * h_)));
}

static double catmull_rom(const std::vector<double>& y, double lo, double h, double x) {
  const int n = static_cast<int>(y.size());
  double t = (x - lo) / h;
  int i = static_cast<int>(std::floor(t));
  i = std::clamp(i, 0, n - 2);
  t -= i;
  const double y0 = y[std::max(i - 1, 0)], y1 = y[i], y2 = y[i + 1], y3 = y[std::min(i + 2, n - 1)];
  const double a = y1, b = 0.5 * (y2 - y0);
  const double c2 = y0 - 2.5 * y1 + 2.0 * y2 - 0.5 * y3;
  const double c3 = 0.5 * (y3 - y0) + 1.5 * (y1 - y2);
  return a + t * (b + t * (c2 + t * c3));
}

double CSigmaTable::operator()(double tau) const {
  return std::exp(catmull_rom(logc_, lo_, h_, std::log(tau)));
}

double phi_omega_value(const RadialProfile& phi, const RadialProfile& Psi,
                       const CSigmaTable& ctab, double rho, double chord_dist, int nodes) {
  if (!(rho > 0.0)) return 0.0;
  // Psi(tau*rho) != 0 only for tau*rho in supp Psi; the paper's definition
  // caps tau at 4
  const double tlo = Psi.support_inner() / rho;
  const double thi = std::min(4.0, Psi.support_outer() / rho);
  if (!(tlo < thi)) return 0.0;
  const double ulo = std::log(tlo), uhi = std::log(thi), h = (uhi - ulo) / nodes;
  double acc = 0.0;
  for (int i = 0; i <= nodes; ++i) {
    const double tau = std::exp(ulo + i * h);
    const double v = Psi(tau * rho) * ctab(tau) * phi(chord_dist / std::sqrt(tau));
    acc += (i == 0 || i == nodes) ? 0.5 * v : v;
  }
  return acc * h;
}

LogRadialTable::LogRadialTable(double rho_lo, double rho_hi, std::vector<double> y)
    : lo_(std::log(rho_lo)), y_(std::move(y)) {
  h_ = (std::log(rho_hi) - lo_) / (static_cast<int>(y_.size()) - 1);
}

double LogRadialTable::operator()(double rho) const {
  if (y_.empty()) throw std::logic_error("LogRadialTable: empty");
  if (!(rho > 0.0)) return 0.0;
  const double u = std::log(rho);
  if (u <= lo_) return y_.front();
  if (u >= lo_ + h_ * (static_cast<int>(y_.size()) - 1)) return y_.back();
  return catmull_rom(y_, lo_, h_, u);
}

double LogRadialTable::rho_hi() const {
  return std::exp(lo_ + h_ * (static_cast<int>(y_.size()) - 1));
}

double angular_energy_direct(const RadialProfile& phi, const RadialProfile& Psi,
                             const CSigmaTable& ctab, double rho, int ang_nodes) {
  if (!(rho > 0.0)) return 0.0;
  // phi_nu(zeta) != 0 needs chord <= outer_phi * sqrt(tau_max)
  const double tmax = std::min(4.0, Psi.support_outer() / rho);
  if (!(Psi.support_inner() / rho < tmax)) return 0.0;
  const double cmax = phi.support_outer() * std::sqrt(tmax);
  const double amax = cmax >= 2.0 ? kPi : 2.0 * std::asin(0.5 * cmax);
  const double h = 2.0 * amax / ang_nodes;
  double acc = 0.0;
  for (int i = 0; i <= ang_nodes; ++i) {
    const double a = -amax + i * h;
    const double v = phi_omega_value(phi, Psi, ctab, rho, 2.0 * std::abs(std::sin(0.5 * a)));
    acc += (i == 0 || i == ang_nodes) ? 0.5 * v * v : v * v;
  }
  return acc * h;
}

LogRadialTable build_angular_energy_table(const RadialProfile& phi, const RadialProfile& Psi,
                                          const CSigmaTable& ctab, double rho_lo, double rho_hi,
                                          int rho_nodes, int ang_nodes) {
  std::vector<double> y(rho_nodes);
  const double lo = std::log(rho_lo), h = (std::log(rho_hi) - lo) / (rho_nodes - 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < rho_nodes; ++i)
    y[i] = angular_energy_direct(phi, Psi, ctab, std::exp(lo + i * h), ang_nodes);
  return LogRadialTable(rho_lo, rho_hi, std::move(y));
}

double radial_coverage(const RadialProfile& Psi, const ScaleLadder& ladder, double rho) {
  double fine = 0.0;
  for (int k = 1; k <= ladder.K; ++k) {
    const double v = Psi(ladder.sigma(k) * rho);
    fine += v * v;
  }
  return fine * ladder.weight() + calderon_tail(Psi, rho);
}

namespace {

struct AnnulusPoint {
  std::uint32_t idx;
  double rho, alpha; // modulus and angle of zeta
  double psival;     // Psi(sigma_k rho), un-renormalized
};

// directions m with chord(angle(m), beta) <= cmax, as a wrapped range
struct MWindow {
  int first, count;
};

MWindow direction_window(const DirectionSet& dirs, double beta, double cmax) {
  if (cmax >= 2.0) return {0, dirs.M};
  const double amax = 2.0 * std::asin(0.5 * cmax);
  const double da = kTwoPi / dirs.M;
  const int lo = static_cast<int>(std::ceil((beta - amax) / da - 1e-12));
  const int hi = static_cast<int>(std::floor((beta + amax) / da + 1e-12));
  if (hi < lo) return {0, 0};
  return {lo, std::min(hi - lo + 1, dirs.M)};
}

} // namespace

PacketFamily build_family(const GridSpec& grid, int M, int J, double sigma_min,
                          Profile profile, FamilyOptions opts) {
  PacketFamily fam;
  fam.grid = grid;
  fam.dirs = DirectionSet::make(M, sigma_min);
  fam.ladder = ScaleLadder::make(J, sigma_min, grid.band_hi);
  fam.profile = profile;
  fam.cut = CutoffBank::make();
  fam.opts = opts;

  const RadialProfile& phi = fam.cut.phi_for(profile);
  const RadialProfile& Psi = fam.cut.Psi_for(profile);
  const int K = fam.ladder.K;
  const int NN = grid.size();
  const double wk = fam.ladder.weight();
  const double wm = fam.dirs.weight();

  // maximum lattice modulus (corner)
  const double rho_max = grid.dk() * grid.N * 0.5 * std::sqrt(2.0) * 1.0001;
  fam.ctab = CSigmaTable(phi, 0.5 * Psi.support_inner() / rho_max, 4.0);
  fam.csig.resize(K);
  for (int k = 1; k <= K; ++k) fam.csig[k - 1] = c_sigma(phi, fam.ladder.sigma(k));

  // lattice geometry
  std::vector<double> rho(NN), alpha(NN);
  for (int i = 0; i < NN; ++i) {
    auto z = grid.zeta(i);
    rho[i] = std::hypot(z[0], z[1]);
    alpha[i] = std::atan2(z[1], z[0]);
    if (alpha[i] < 0) alpha[i] += kTwoPi;
  }

  // ---- phi_omega bank -------------------------------------------------
  fam.phi_omega.assign(M, Multiplier{grid, {}, {}});
  const double phiw_cmax0 = phi.support_outer(); // chord <= outer*sqrt(tau), tau <= 4 -> *2
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int m = 0; m < M; ++m) {
    const double am = fam.dirs.angle(m);
    Multiplier& bank = fam.phi_omega[m];
    bank.grid = grid;
    for (int i = 0; i < NN; ++i) {
      if (rho[i] <= 0.0) continue;
      const double tmax = std::min(4.0, Psi.support_outer() / rho[i]);
      if (Psi.support_inner() / rho[i] >= tmax) continue;
      const double cmax = phiw_cmax0 * std::sqrt(tmax);
      const double cd = chord(alpha[i], am);
      if (cd >= cmax) continue;
      const double v = phi_omega_value(phi, Psi, fam.ctab, rho[i], cd);
      if (v > 0.0) bank.push(static_cast<std::uint32_t>(i), v);
    }
  }

  // M-point angular energy (chi denominator; exact partition partner)
  fam.a_m.assign(NN, 0.0);
  for (int m = 0; m < M; ++m) {
    const Multiplier& bank = fam.phi_omega[m];
    for (std::size_t e = 0; e < bank.idx.size(); ++e)
      fam.a_m[bank.idx[e]] += wm * std::norm(bank.val[e]);
  }

  // dense angular-energy table (radial by construction)
  {
    const double lo = std::max(0.5 * Psi.support_inner() / 4.0, 0.05);
    fam.angular_energy = build_angular_energy_table(phi, Psi, fam.ctab, lo, rho_max);
  }

  // ---- radial renormalization ----------------------------------------
  fam.beta.assign(NN, 1.0);
  fam.covered.assign(NN, 0);
  {
    std::map<double, std::pair<double, std::uint8_t>> cache;
    double minT = 1e300, maxT = 0.0;
    for (int i = 0; i < NN; ++i) {
      auto it = cache.find(rho[i]);
      if (it == cache.end()) {
        const double T = rho[i] == 0.0 ? 1.0 : radial_coverage(Psi, fam.ladder, rho[i]);
        std::uint8_t cov = T >= opts.tau_rad ? 1 : 0;
        double b = 1.0;
        if (opts.renormalize && cov) b = 1.0 / std::sqrt(T);
        it = cache.emplace(rho[i], std::make_pair(b, cov)).first;
        if (rho[i] > grid.band_lo && rho[i] <= grid.band_hi) {
          minT = std::min(minT, T);
          maxT = std::max(maxT, T);
        }
      }
      fam.beta[i] = it->second.first;
      fam.covered[i] = it->second.second;
    }
    fam.diag.min_radial_T = minT;
    fam.diag.max_radial_T = maxT;
    if (opts.check_band_coverage && minT < opts.tau_rad)
      throw std::runtime_error("build_family: resolved band not radially covered (min T = " +
                               std::to_string(minT) + ")");
  }

  // ---- r from the sigma >= 1 Calderon tail ----------------------------
  fam.r.grid = grid;
  {
    std::map<double, double> tails;
    for (int i = 0; i < NN; ++i) {
      if (rho[i] > 1.0001 * Psi.support_outer() && rho[i] != 0.0) continue;
      auto it = tails.find(rho[i]);
      if (it == tails.end()) it = tails.emplace(rho[i], calderon_tail(Psi, rho[i])).first;
      const double v = fam.beta[i] * std::sqrt(std::max(0.0, it->second));
      if (v > 0.0) fam.r.push(static_cast<std::uint32_t>(i), v);
    }
  }

  // ---- psi bank --------------------------------------------------------
  fam.psi.assign(static_cast<std::size_t>(M) * K, Multiplier{grid, {}, {}});
  std::vector<std::vector<AnnulusPoint>> annulus(K + 1);
  for (int k = 1; k <= K; ++k) {
    const double sk = fam.ladder.sigma(k);
    auto& pts = annulus[k];
    for (int i = 0; i < NN; ++i) {
      const double v = Psi(sk * rho[i]);
      if (v > 0.0) pts.push_back({static_cast<std::uint32_t>(i), rho[i], alpha[i], v});
    }
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int k = 1; k <= K; ++k) {
    const double sk = fam.ladder.sigma(k);
    const double rs = std::sqrt(sk);
    const double ck = fam.csig[k - 1];
    const double cmax = phi.support_outer() * rs;
    for (const auto& pt : annulus[k]) {
      const MWindow win = direction_window(fam.dirs, pt.alpha, cmax);
      for (int j = 0; j < win.count; ++j) {
        const int m = ((win.first + j) % fam.dirs.M + fam.dirs.M) % fam.dirs.M;
        const double cd = chord(pt.alpha, fam.dirs.angle(m));
        const double pv = phi(cd / rs);
        if (pv <= 0.0) continue;
        fam.psi[fam.index(m, k)].push(pt.idx, fam.beta[pt.idx] * pt.psival * ck * pv);
      }
    }
  }

  // ---- angular tightening of the psi bank ------------------------------
  {
    std::vector<double> s_psi(NN, 0.0);
    for (int m = 0; m < M; ++m)
      for (int k = 1; k <= K; ++k) {
        const Multiplier& b = fam.psi[fam.index(m, k)];
        for (std::size_t e = 0; e < b.idx.size(); ++e)
          s_psi[b.idx[e]] += wm * wk * std::norm(b.val[e]);
      }
    std::vector<double> target(NN, 1.0);
    for (std::size_t e = 0; e < fam.r.idx.size(); ++e)
      target[fam.r.idx[e]] -= std::norm(fam.r.val[e]);
    std::vector<double> g(NN, 1.0);
    double min_ratio = 1e300, min_g = 1.0, max_g = 1.0;
    for (int i = 0; i < NN; ++i) {
      if (!fam.covered[i] || target[i] <= 1e-14) continue;
      const double ratio = s_psi[i] / target[i];
      const bool in_band = rho[i] > grid.band_lo && rho[i] <= grid.band_hi;
      if (in_band) min_ratio = std::min(min_ratio, ratio);
      if (opts.renormalize && ratio >= opts.tau_ang) {
        g[i] = 1.0 / std::sqrt(ratio);
        if (in_band) {
          min_g = std::min(min_g, g[i]);
          max_g = std::max(max_g, g[i]);
        }
      }
    }
    fam.diag.min_angular_ratio = min_ratio;
    fam.diag.min_tighten = min_g;
    fam.diag.max_tighten = max_g;
    if (opts.check_band_coverage && min_ratio < opts.tau_ang)
      throw std::runtime_error("build_family: angular gap inside the resolved band (min ratio = " +
                               std::to_string(min_ratio) + ")");
    if (opts.renormalize)
      for (auto& b : fam.psi)
        for (std::size_t e = 0; e < b.idx.size(); ++e) b.val[e] *= g[b.idx[e]];
  }

  // ---- theta and chi ----------------------------------------------------
  fam.theta.assign(static_cast<std::size_t>(M) * K, Multiplier{grid, {}, {}});
  fam.chi.assign(static_cast<std::size_t>(M) * K, Multiplier{grid, {}, {}});
  bool am_underflow = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int k = 1; k <= K; ++k) {
    for (const auto& pt : annulus[k]) {
      const double tmax = std::min(4.0, Psi.support_outer() / pt.rho);
      const double cmax = phi.support_outer() * std::sqrt(tmax);
      const MWindow win = direction_window(fam.dirs, pt.alpha, cmax);
      for (int j = 0; j < win.count; ++j) {
        const int m = ((win.first + j) % fam.dirs.M + fam.dirs.M) % fam.dirs.M;
        const cplx pw = fam.phi_omega[m].at(pt.idx);
        if (pw.real() <= 0.0) continue;
        const double tv = fam.beta[pt.idx] * pt.psival * pw.real();
        const double am = fam.a_m[pt.idx];
        if (am < 1e-8) {
          am_underflow = true;
          continue;
        }
        fam.theta[fam.index(m, k)].push(pt.idx, tv);
        fam.chi[fam.index(m, k)].push(pt.idx, tv / am);
      }
    }
  }
  if (am_underflow)
    throw std::runtime_error("build_family: angular energy below 1e-8 on supp theta");

  // ---- s as the exact partition complement on covered shells -----------
  fam.s.grid = grid;
  {
    std::vector<double> acc(NN, 0.0);
    for (int m = 0; m < M; ++m)
      for (int k = 1; k <= K; ++k) {
        const Multiplier& t = fam.theta[fam.index(m, k)];
        const Multiplier& c = fam.chi[fam.index(m, k)];
        for (std::size_t e = 0; e < t.idx.size(); ++e)
          acc[t.idx[e]] += wm * wk * t.val[e].real() * c.val[e].real();
      }
    for (int i = 0; i < NN; ++i) {
      if (!fam.covered[i]) continue;
      const double v = 1.0 - acc[i];
      if (std::abs(v) > 5e-13) fam.s.push(static_cast<std::uint32_t>(i), v);
    }
  }

  // ---- q and h ----------------------------------------------------------
  fam.q.grid = grid;
  fam.h.grid = grid;
  for (int i = 0; i < NN; ++i) {
    const double qv = fam.cut.q(rho[i]);
    if (qv > 0.0) fam.q.push(static_cast<std::uint32_t>(i), qv);
    const double hv = fam.cut.h(rho[i]);
    if (hv > 0.0) fam.h.push(static_cast<std::uint32_t>(i), hv);
  }

  return fam;
}

Multiplier packet_change_ratio(const PacketFamily& fam, int m, int k, double nu_alpha) {
  if (fam.profile != Profile::standard)
    throw std::invalid_argument("packet_change_ratio: standard-profile family required");
  const double sigma = fam.ladder.sigma(k);
  const double wa = fam.dirs.angle(m);
  if (chord(wa, nu_alpha) > std::sqrt(sigma) / 16.0 + 1e-15)
    throw std::invalid_argument("packet_change_ratio: |omega - nu| > sqrt(sigma)/16");
  const RadialProfile& tphi = fam.cut.tilde_phi;
  const RadialProfile& tPsi = fam.cut.tilde_Psi;
  const double rho_max = fam.grid.dk() * fam.grid.N * 0.75;
  const CSigmaTable tilde_tab(tphi, 0.25 * tPsi.support_inner() / rho_max, 4.0);
  const Multiplier& th = fam.theta_mk(m, k);
  Multiplier eta{fam.grid, {}, {}};
  for (std::size_t e = 0; e < th.idx.size(); ++e) {
    const auto z = fam.grid.zeta(th.idx[e]);
    const double rho = std::hypot(z[0], z[1]);
    double beta_ang = std::atan2(z[1], z[0]);
    const double cd = chord(beta_ang, nu_alpha);
    const double denom = tPsi(sigma * rho) *
                         phi_omega_value(tphi, tPsi, tilde_tab, rho, cd);
    if (denom < 1e-8)
      throw std::runtime_error("packet_change_ratio: tilde denominator below 1e-8 on supp theta");
    eta.push(th.idx[e], th.val[e] / denom);
  }
  return eta;
}

double change_ratio_denominator_min(const PacketFamily& fam, int m, int k, double nu_alpha) {
  const double sigma = fam.ladder.sigma(k);
  const RadialProfile& tphi = fam.cut.tilde_phi;
  const RadialProfile& tPsi = fam.cut.tilde_Psi;
  const double rho_max = fam.grid.dk() * fam.grid.N * 0.75;
  const CSigmaTable tab(tphi, 0.25 * tPsi.support_inner() / rho_max, 4.0);
  const Multiplier& th = fam.theta_mk(m, k);
  double mn = 1e300;
  for (std::size_t e = 0; e < th.idx.size(); ++e) {
    const auto z = fam.grid.zeta(th.idx[e]);
    const double rho = std::hypot(z[0], z[1]);
    const double cd = chord(std::atan2(z[1], z[0]), nu_alpha);
    mn = std::min(mn, tPsi(sigma * rho) * phi_omega_value(tphi, tPsi, tab, rho, cd));
  }
  return mn;
}

DecayReport packet_decay_profile(const Multiplier& eta, double omega_alpha, double sigma,
                                 double fit_lo, double fit_hi) {
  const GridSpec& g = eta.grid;
  SpectralField hat = SpectralField::zero(g);
  for (std::size_t e = 0; e < eta.idx.size(); ++e) hat.data[eta.idx[e]] = eta.val[e];
  const SpatialField ker = to_spatial(hat);

  const double ca = std::cos(omega_alpha), sa = std::sin(omega_alpha);
  const double cell2 = g.cell() * g.cell();
  DecayReport rep;
  // torus displacement rho(x); log bins
  double rho_torus_max = 0.0;
  std::vector<double> rho_x(g.size());
  for (int i = 0; i < g.size(); ++i) {
    auto xv = g.x(i);
    double x1 = xv[0], x2 = xv[1];
    if (x1 > 0.5 * g.L) x1 -= g.L;
    if (x2 > 0.5 * g.L) x2 -= g.L;
    const double ax = ca * x1 + sa * x2;
    rho_x[i] = (x1 * x1 + x2 * x2) / sigma + ax * ax / (sigma * sigma);
    rho_torus_max = std::max(rho_torus_max, rho_x[i]);
    const double a = std::abs(ker.data[i]);
    rep.peak = std::max(rep.peak, a);
    rep.l1_mass += a * cell2;
  }
  const int nbins = 48;
  const double blo = std::log(1.0), bhi = std::log(rho_torus_max * 1.0001);
  std::vector<double> sup(nbins, 0.0);
  for (int i = 0; i < g.size(); ++i) {
    if (rho_x[i] < 1.0) continue;
    int b = static_cast<int>((std::log(rho_x[i]) - blo) / (bhi - blo) * nbins);
    b = std::clamp(b, 0, nbins - 1);
    sup[b] = std::max(sup[b], std::abs(ker.data[i]));
  }
  rep.fit_lo = fit_lo;
  rep.fit_hi = std::min(fit_hi, 0.6 * rho_torus_max);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int b = 0; b < nbins; ++b) {
    const double c = std::exp(blo + (b + 0.5) * (bhi - blo) / nbins);
    if (sup[b] <= 0.0 || c < rep.fit_lo || c > rep.fit_hi) continue;
    rep.bin_rho.push_back(c);
    rep.bin_sup.push_back(sup[b]);
    const double lx = std::log(c), ly = std::log(sup[b]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    ++n;
  }
  rep.fit_bins = n;
  rep.tail_slope = n >= 3 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// family serialization: header line + sparse multiplier records

namespace {

void put_mult(std::ofstream& os, const Multiplier& m) {
  const std::uint64_t n = m.idx.size();
  os.write(reinterpret_cast<const char*>(&n), 8);
  os.write(reinterpret_cast<const char*>(m.idx.data()), static_cast<std::streamsize>(n * 4));
  os.write(reinterpret_cast<const char*>(m.val.data()), static_cast<std::streamsize>(n * 16));
}

Multiplier get_mult(std::ifstream& is, const GridSpec& g) {
  std::uint64_t n = 0;
  is.read(reinterpret_cast<char*>(&n), 8);
  Multiplier m{g, std::vector<std::uint32_t>(n), std::vector<cplx>(n)};
  is.read(reinterpret_cast<char*>(m.idx.data()), static_cast<std::streamsize>(n * 4));
  is.read(reinterpret_cast<char*>(m.val.data()), static_cast<std::streamsize>(n * 16));
  return m;
}

template <class T>
void put_vec(std::ofstream& os, const std::vector<T>& v) {
  const std::uint64_t n = v.size();
  os.write(reinterpret_cast<const char*>(&n), 8);
  os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
}

template <class T>
std::vector<T> get_vec(std::ifstream& is) {
  std::uint64_t n = 0;
  is.read(reinterpret_cast<char*>(&n), 8);
  std::vector<T> v(n);
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
  return v;
}

} // namespace

void save_family(const PacketFamily& fam, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  os.precision(17);
  os << "FIOFAM1 " << fam.grid.N << " " << fam.grid.L << " " << fam.grid.band_lo << " "
     << fam.grid.band_hi << " " << fam.M() << " " << fam.ladder.J << " " << fam.ladder.sigma_min
     << " " << (fam.profile == Profile::standard ? "standard" : "tilde") << "\n";
  for (const auto& m : fam.psi) put_mult(os, m);
  for (const auto& m : fam.theta) put_mult(os, m);
  for (const auto& m : fam.chi) put_mult(os, m);
  for (const auto& m : fam.phi_omega) put_mult(os, m);
  put_mult(os, fam.r);
  put_mult(os, fam.s);
  put_mult(os, fam.q);
  put_mult(os, fam.h);
  put_vec(os, fam.csig);
  put_vec(os, fam.a_m);
  put_vec(os, fam.beta);
  put_vec(os, fam.covered);
  if (!os) throw std::runtime_error("write failed: " + path);
}

PacketFamily load_family(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  std::string magic, prof;
  int N = 0, M = 0, J = 0;
  double L = 0, blo = 0, bhi = 0, smin = 0;
  is >> magic >> N >> L >> blo >> bhi >> M >> J >> smin >> prof;
  is.ignore(1); // newline
  if (magic != "FIOFAM1") throw std::runtime_error("bad family file: " + path);
  // rebuild from parameters, then overwrite the banks with the stored ones
  // (identical by determinism, but load must not depend on that)
  PacketFamily fam;
  fam.grid = GridSpec::make_banded(N, L, blo, bhi);
  fam.dirs = DirectionSet::make(M, smin);
  fam.ladder = ScaleLadder::make(J, smin, fam.grid.band_hi);
  fam.profile = prof == "tilde" ? Profile::tilde : Profile::standard;
  fam.cut = CutoffBank::make();
  const RadialProfile& phi = fam.cut.phi_for(fam.profile);
  const double rho_max = fam.grid.dk() * fam.grid.N * 0.5 * std::sqrt(2.0) * 1.0001;
  fam.ctab = CSigmaTable(phi, 0.5 * fam.cut.Psi_for(fam.profile).support_inner() / rho_max, 4.0);
  const int MK = M * fam.ladder.K;
  fam.psi.resize(MK);
  fam.theta.resize(MK);
  fam.chi.resize(MK);
  fam.phi_omega.resize(M);
  for (auto& m : fam.psi) m = get_mult(is, fam.grid);
  for (auto& m : fam.theta) m = get_mult(is, fam.grid);
  for (auto& m : fam.chi) m = get_mult(is, fam.grid);
  for (auto& m : fam.phi_omega) m = get_mult(is, fam.grid);
  fam.r = get_mult(is, fam.grid);
  fam.s = get_mult(is, fam.grid);
  fam.q = get_mult(is, fam.grid);
  fam.h = get_mult(is, fam.grid);
  fam.csig = get_vec<double>(is);
  fam.a_m = get_vec<double>(is);
  fam.beta = get_vec<double>(is);
  fam.covered = get_vec<std::uint8_t>(is);
  if (!is) throw std::runtime_error("truncated family file: " + path);
  return fam;
}

} // namespace fiohardy
