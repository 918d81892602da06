#include "fiohardy/profiles.hpp"

#include <cmath>

namespace fiohardy {

static double expm(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smoothstep(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = expm(1.0 - t), b = expm(t);
  return a / (a + b);
}

double smoothstep_sq_integral() {
  static const double value = [] {
    const int n = 1 << 16;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double s = smoothstep(static_cast<double>(i) / n);
      acc += (i == 0 || i == n) ? 0.5 * s * s : s * s;
    }
    return acc / n;
  }();
  return value;
}

double RadialProfile::operator()(double r) const {
  if (r < 0.0) r = -r;
  if (kind == Kind::disk) {
    if (r <= inner) return amp;
    if (r >= outer) return 0.0;
    return amp * smoothstep((r - inner) / (outer - inner));
  }
  if (r <= 0.0) return 0.0;
  const double u = std::log(r);
  if (u <= la || u >= ld) return 0.0;
  if (u < lb) return amp * smoothstep((lb - u) / (lb - la));
  if (u <= lc) return amp;
  return amp * smoothstep((u - lc) / (ld - lc));
}

double RadialProfile::support_inner() const {
  return kind == Kind::disk ? 0.0 : std::exp(la);
}
double RadialProfile::support_outer() const {
  return kind == Kind::disk ? outer : std::exp(ld);
}
double RadialProfile::plateau_inner() const {
  return kind == Kind::disk ? 0.0 : std::exp(lb);
}
double RadialProfile::plateau_outer() const {
  return kind == Kind::disk ? inner : std::exp(lc);
}

RadialProfile build_radial_cutoff(double inner, double outer, CutoffKind kind) {
  if (!(0.0 <= inner && inner < outer)) throw std::invalid_argument("build_radial_cutoff: need 0 <= inner < outer");
  if (kind == CutoffKind::bump) {
    if (!(inner > 0.0)) throw std::invalid_argument("build_radial_cutoff: bump needs inner > 0");
    return build_annular_profile(inner, outer, 0.0);
  }
  RadialProfile p;
  p.kind = RadialProfile::Kind::disk;
  p.inner = inner;
  p.outer = outer;
  return p;
}

RadialProfile build_annular_profile(double r_in, double r_out, double plateau_frac) {
  if (!(0.0 < r_in && r_in < r_out)) throw std::invalid_argument("build_annular_profile: need 0 < r_in < r_out");
  if (!(0.0 <= plateau_frac && plateau_frac < 1.0))
    throw std::invalid_argument("build_annular_profile: plateau_frac in [0,1)");
  RadialProfile p;
  p.kind = RadialProfile::Kind::annulus;
  p.la = std::log(r_in);
  p.ld = std::log(r_out);
  const double mid = 0.5 * (p.la + p.ld), half = 0.5 * (p.ld - p.la) * plateau_frac;
  p.lb = mid - half;
  p.lc = mid + half;
  return p;
}

double calderon_integral(const RadialProfile& p, int nodes) {
  if (p.kind == RadialProfile::Kind::disk)
    throw std::invalid_argument("calderon_integral: divergent for disk profiles");
  const double lo = p.la, hi = p.ld, h = (hi - lo) / nodes;
  double acc = 0.0;
  for (int i = 0; i <= nodes; ++i) { // integrand vanishes at both ends
    const double g = p(std::exp(lo + i * h));
    acc += (i == 0 || i == nodes) ? 0.5 * g * g : g * g;
  }
  return acc * h;
}

RadialProfile calderon_normalize_continuum(RadialProfile p) {
  const double I = calderon_integral(p);
  if (!(I > 0.0)) throw std::invalid_argument("calderon_normalize: zero profile");
  p.amp /= std::sqrt(I);
  return p;
}

double calderon_tail(const RadialProfile& p, double rho, int nodes) {
  // substitute u = sigma*rho: integral over u >= rho of P(u)^2 du/u;
  // rho = 0 gives the full Calderon integral, so r(0) = 1 falls out
  const double lo = rho > 0.0 ? std::max(std::log(rho), p.la) : p.la;
  const double hi = p.ld;
  if (lo >= hi) return 0.0;
  const double h = (hi - lo) / nodes;
  double acc = 0.0;
  for (int i = 0; i <= nodes; ++i) {
    const double g = p(std::exp(lo + i * h));
    acc += (i == 0 || i == nodes) ? 0.5 * g * g : g * g;
  }
  return acc * h;
}

RadialProfile make_tilde_psi() {
  RadialProfile p;
  p.kind = RadialProfile::Kind::annulus;
  p.lb = std::log(2.0 / 3.0);
  p.lc = std::log(1.5);
  const double plateau_mass = p.lc - p.lb; // log(9/4) < 1
  const double delta = (1.0 - plateau_mass) / (2.0 * smoothstep_sq_integral());
  const double max_delta = std::log(4.0 / 3.0); // keeps support within [1/2, 2]
  if (delta > max_delta) throw std::logic_error("make_tilde_psi: transitions do not fit");
  p.la = p.lb - delta;
  p.ld = p.lc + delta;
  return p;
}

} // namespace fiohardy
