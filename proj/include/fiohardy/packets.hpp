#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fiohardy/geometry.hpp"
#include "fiohardy/grid.hpp"
#include "fiohardy/profiles.hpp"

// Construction of the dyadic-parabolic multiplier banks over
// (direction, scale): psi/theta/chi channels, the direction packets
// phi_omega, the low-frequency cutoffs r, s, q, h, and the tilde family
// used for changes of packets.
//
// Discrete renormalization (on by default) makes the reconstruction
// identities exact on the resolved band: a radial factor enforces the
// discrete Calderon identity sum_k w_k Psi_k(z)^2 + r(z)^2 = 1, and a
// pointwise factor on the psi bank enforces
// sum_{m,k} (2pi/M) w_k psi_mk(z)^2 = 1 - r(z)^2, absorbing the M-point
// angular quadrature error. chi divides theta by the M-point angular
// energy, so U*V = Id and s = r^2 hold pointwise without any tightening.

namespace fiohardy {

enum class Profile { standard, tilde };

struct CutoffBank {
  RadialProfile phi;       // angular bump, == 1 near 0, zero past 1/4
  RadialProfile Psi;       // Calderon-normalized annulus on [4/5, 5/4]
  RadialProfile tilde_phi; // == 1 on [0, 3/4], zero past 1
  RadialProfile tilde_Psi; // == 1 on [2/3, 3/2], supported in [1/2, 2]
  RadialProfile q;         // == 1 on [0, 2], zero past 4
  RadialProfile h;         // == 1 on supp(s)
  static CutoffBank make();
  const RadialProfile& phi_for(Profile p) const { return p == Profile::standard ? phi : tilde_phi; }
  const RadialProfile& Psi_for(Profile p) const { return p == Profile::standard ? Psi : tilde_Psi; }
  static double Phi_max(double r); // Gaussian maximal-function profile, Phi(0) = 1
};

// c_sigma by dense circle quadrature with |e1 - nu| = 2|sin(alpha/2)|;
// M-independent, so rotation invariance is exact. Throws if the integrand
// support is unresolved by the rule.
double c_sigma(const RadialProfile& phi, double sigma, int nodes = 4096);

// cubic-interpolated log-log table of c_tau for the phi_omega quadrature
class CSigmaTable {
 public:
  CSigmaTable() = default;
  CSigmaTable(const RadialProfile& phi, double tau_lo, double tau_hi, int nodes = 2048);
  double operator()(double tau) const;

 private:
  double lo_ = 0.0, h_ = 0.0;
  std::vector<double> logc_;
};

// phi_omega(zeta) for |zeta| = rho and |zetahat - omega| = chord_dist, by
// log-spaced tau quadrature over the support of Psi(tau*rho), tau <= 4.
double phi_omega_value(const RadialProfile& phi, const RadialProfile& Psi,
                       const CSigmaTable& ctab, double rho, double chord_dist,
                       int nodes = 96);

// radial table y(log rho), cubic interpolation
class LogRadialTable {
 public:
  LogRadialTable() = default;
  LogRadialTable(double rho_lo, double rho_hi, std::vector<double> y);
  double operator()(double rho) const;
  double rho_lo() const { return std::exp(lo_); }
  double rho_hi() const;

 private:
  double lo_ = 0.0, h_ = 0.0;
  std::vector<double> y_;
};

// dense angular energy int phi_nu(zeta)^2 dnu as a radial table (radial by
// construction; the M-point table used inside chi lives in the family)
LogRadialTable build_angular_energy_table(const RadialProfile& phi, const RadialProfile& Psi,
                                          const CSigmaTable& ctab, double rho_lo, double rho_hi,
                                          int rho_nodes = 2048, int ang_nodes = 512);
double angular_energy_direct(const RadialProfile& phi, const RadialProfile& Psi,
                             const CSigmaTable& ctab, double rho, int ang_nodes = 2048);

struct FamilyOptions {
  bool renormalize = true;
  double tau_rad = 0.25;  // radial coverage floor
  double tau_ang = 0.02;  // angular coverage floor (fraction of 1 - r^2)
  bool check_band_coverage = true;
};

struct FamilyDiagnostics {
  double min_radial_T = 0.0, max_radial_T = 0.0; // over the resolved band
  double min_angular_ratio = 1.0;                // min S_psi / (1 - r^2)
  double max_tighten = 1.0, min_tighten = 1.0;   // pointwise psi factors
};

struct PacketFamily {
  GridSpec grid;
  DirectionSet dirs;
  ScaleLadder ladder;
  Profile profile = Profile::standard;
  CutoffBank cut;
  FamilyOptions opts;

  std::vector<double> csig;           // c_sigma per fine node, [k-1]
  CSigmaTable ctab;                   // c_tau for phi_omega quadrature
  std::vector<Multiplier> psi;        // [m*K + k-1], renormalized W bank
  std::vector<Multiplier> theta, chi; // V / U banks
  std::vector<Multiplier> phi_omega;  // [m]
  Multiplier r, s, q, h;
  std::vector<double> a_m;            // M-point angular energy per lattice point
  std::vector<double> beta;           // radial renormalization per lattice point
  std::vector<std::uint8_t> covered;  // radial coverage flags
  LogRadialTable angular_energy;      // dense (radial) table
  FamilyDiagnostics diag;

  int M() const { return dirs.M; }
  int K() const { return ladder.K; }
  int index(int m, int k) const { return m * ladder.K + (k - 1); }
  const Multiplier& psi_mk(int m, int k) const { return psi[index(m, k)]; }
  const Multiplier& theta_mk(int m, int k) const { return theta[index(m, k)]; }
  const Multiplier& chi_mk(int m, int k) const { return chi[index(m, k)]; }
};

PacketFamily build_family(const GridSpec& grid, int M, int J, double sigma_min,
                          Profile profile = Profile::standard, FamilyOptions opts = {});

// eta_{w,nu,sigma} = theta_{w,sigma} / tilde_theta_{nu,sigma} on supp theta,
// for |w - nu| <= sqrt(sigma)/16; throws if the denominator drops below 1e-8
// on the support. The standard-family theta comes from the built bank; the
// tilde denominator is evaluated pointwise at the exact direction nu.
Multiplier packet_change_ratio(const PacketFamily& fam, int m, int k, double nu_alpha);

// minimum of tilde_theta_{nu,sigma} over supp theta_{m,k} (Lemma lower bound)
double change_ratio_denominator_min(const PacketFamily& fam, int m, int k, double nu_alpha);

struct DecayReport {
  double peak = 0.0;    // sup |F^{-1} eta| over the grid
  double l1_mass = 0.0; // (L/N)^2 sum |F^{-1} eta|
  std::vector<double> bin_rho, bin_sup;
  double tail_slope = 0.0; // LSQ slope of log sup vs log rho over the fit range
  double fit_lo = 0.0, fit_hi = 0.0;
  int fit_bins = 0;
};

// inverse-transforms eta and bins |F^{-1}eta(x)| by
// rho(x) = sigma^{-1}|x|^2 + sigma^{-2} <omega, x>^2 (torus displacement)
DecayReport packet_decay_profile(const Multiplier& eta, double omega_alpha, double sigma,
                                 double fit_lo = 10.0, double fit_hi = 1000.0);

// radial coverage T(rho) = sum_k w_k Psi(sigma_k rho)^2 + tail(rho); the
// discrete renormalization scales by T^{-1/2} on covered shells
double radial_coverage(const RadialProfile& Psi, const ScaleLadder& ladder, double rho);

void save_family(const PacketFamily& fam, const std::string& path);
PacketFamily load_family(const std::string& path);

} // namespace fiohardy
