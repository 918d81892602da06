#include "fiohardy/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiohardy {

std::map<std::string, double> NormReport::named() const {
  return {{"hardy_tent", hardy_tent},   {"hardy_via_V", hardy_via_V},
          {"square_function", square_function}, {"parabolic", parabolic},
          {"maximal", maximal},         {"vertical", vertical},
          {"lp", lp},                   {"low_freq", low_freq}};
}

std::vector<double> maximal_sigma_set(const ScaleLadder& ladder, int coarse_levels,
                                      int fine_levels) {
  std::vector<double> s;
  for (int j = coarse_levels; j >= 1; --j) s.push_back(std::exp2(j));
  for (int k = 1; k <= ladder.K; ++k) s.push_back(ladder.sigma(k));
  for (int j = 1; j <= fine_levels; ++j) s.push_back(ladder.sigma_min * std::exp2(-j));
  return s;
}

namespace {

double low_freq_term(const PacketFamily& fam, const SpectralField& fhat, double p) {
  return lp_norm(to_spatial(apply_multiplier(fam.q, fhat)), p);
}

// (2pi/M sum_m ||g_m||_p^p)^{1/p} from per-direction p-th power masses
double angular_lp(const std::vector<double>& mass_p, double p, int M) {
  double acc = 0.0;
  for (double v : mass_p) acc += v;
  return std::pow(kTwoPi / M * acc, 1.0 / p);
}

} // namespace

double hardy_norm(const PacketFamily& fam, const SpatialField& f, double p, Transform via) {
  if (via == Transform::U) throw std::invalid_argument("hardy_norm: via must be W or V");
  return tent_norm(transform(fam, f, via), p, 1.0);
}

double square_function_norm(const PacketFamily& fam, const SpatialField& f, double p) {
  const SpectralField fhat = to_spectral(f);
  PacketCoefficients V = transform(fam, f, Transform::V);
  return low_freq_term(fam, fhat, p) + lp_cosphere(A_functional_fine(V, 1.0), p);
}

double parabolic_norm(const PacketFamily& fam, const SpatialField& f, double p) {
  const SpectralField fhat = to_spectral(f);
  const int M = fam.M();
  std::vector<double> mass(M);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int m = 0; m < M; ++m)
    mass[m] = std::pow(lp_norm(to_spatial(apply_multiplier(fam.phi_omega[m], fhat)), p), p);
  return low_freq_term(fam, fhat, p) + angular_lp(mass, p, M);
}

double maximal_norm(const PacketFamily& fam, const SpatialField& f, double p) {
  const SpectralField fhat = to_spectral(f);
  const int M = fam.M(), NN = fam.grid.size();
  const std::vector<double> sigmas = maximal_sigma_set(fam.ladder);
  std::vector<double> mass(M);
  const double cell2 = fam.grid.cell() * fam.grid.cell();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int m = 0; m < M; ++m) {
    std::vector<double> sup(NN, 0.0);
    for (double s : sigmas) {
      SpectralField g = apply_multiplier(fam.phi_omega[m], fhat);
      for (std::size_t e = 0; e < fam.phi_omega[m].idx.size(); ++e) {
        const auto i = fam.phi_omega[m].idx[e];
        g.data[i] *= CutoffBank::Phi_max(s * std::sqrt(fam.grid.zeta_mod2(i)));
      }
      const SpatialField ch = to_spatial(g);
      for (int i = 0; i < NN; ++i) sup[i] = std::max(sup[i], std::abs(ch.data[i]));
    }
    double acc = 0.0;
    for (int i = 0; i < NN; ++i) acc += std::pow(sup[i], p);
    mass[m] = cell2 * acc;
  }
  return low_freq_term(fam, fhat, p) + angular_lp(mass, p, M);
}

double vertical_norm(const PacketFamily& fam, const SpatialField& f, double p) {
  const SpectralField fhat = to_spectral(f);
  const int M = fam.M(), NN = fam.grid.size();
  const double wk = fam.ladder.weight();
  CosphereScalarField vert{fam.grid, M, std::vector<double>(static_cast<std::size_t>(M) * NN, 0.0)};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int m = 0; m < M; ++m)
    for (int k = 1; k <= fam.K(); ++k) {
      const SpatialField ch = channel_field(fam, fhat, Transform::V, m, k);
      for (int i = 0; i < NN; ++i)
        vert.data[static_cast<std::size_t>(m) * NN + i] += wk * std::norm(ch.data[i]);
    }
  for (double& v : vert.data) v = std::sqrt(v);
  return low_freq_term(fam, fhat, p) + lp_cosphere(vert, p);
}

NormEngine::NormEngine(const PacketFamily& fam, std::vector<double> p_list,
                       std::vector<double> apertures)
    : fam_(&fam), p_list_(std::move(p_list)) {
  apertures_.push_back(1.0);
  for (double l : apertures)
    if (std::abs(l - 1.0) > 1e-12) apertures_.push_back(l);
  for (double p : p_list_)
    if (!(p > 1.0) || !std::isfinite(p))
      throw std::invalid_argument("NormEngine: p must be finite and > 1");
}

std::vector<NormReport> NormEngine::evaluate(const SpatialField& f, const std::string& id) {
  const PacketFamily& fam = *fam_;
  if (!(f.grid == fam.grid)) throw std::invalid_argument("NormEngine: grid mismatch");
  const SpectralField fhat = to_spectral(f);
  const int M = fam.M(), K = fam.K(), NN = fam.grid.size();
  const int P = static_cast<int>(p_list_.size());
  const double cell2 = fam.grid.cell() * fam.grid.cell();

  std::vector<NormReport> reports(P);
  for (int pi = 0; pi < P; ++pi) {
    reports[pi].input_id = id;
    reports[pi].p = p_list_[pi];
    reports[pi].lp = lp_norm(f, p_list_[pi]);
    reports[pi].low_freq = low_freq_term(fam, fhat, p_list_[pi]);
  }

  // parabolic: one phi_omega channel per direction
  {
    std::vector<std::vector<double>> mass(P, std::vector<double>(M));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int m = 0; m < M; ++m) {
      const SpatialField ch = to_spatial(apply_multiplier(fam.phi_omega[m], fhat));
      for (int pi = 0; pi < P; ++pi)
        mass[pi][m] = std::pow(lp_norm(ch, p_list_[pi]), p_list_[pi]);
    }
    for (int pi = 0; pi < P; ++pi)
      reports[pi].parabolic = reports[pi].low_freq + angular_lp(mass[pi], p_list_[pi], M);
  }

  // maximal: sup over the extended sigma set per direction
  {
    const std::vector<double> sigmas = maximal_sigma_set(fam.ladder);
    std::vector<std::vector<double>> mass(P, std::vector<double>(M));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int m = 0; m < M; ++m) {
      std::vector<double> sup(NN, 0.0);
      const Multiplier& pw = fam.phi_omega[m];
      for (double s : sigmas) {
        SpectralField g = SpectralField::zero(fam.grid);
        for (std::size_t e = 0; e < pw.idx.size(); ++e) {
          const auto i = pw.idx[e];
          g.data[i] = pw.val[e] * fhat.data[i] *
                      CutoffBank::Phi_max(s * std::sqrt(fam.grid.zeta_mod2(i)));
        }
        const SpatialField ch = to_spatial(g);
        for (int i = 0; i < NN; ++i) sup[i] = std::max(sup[i], std::abs(ch.data[i]));
      }
      for (int pi = 0; pi < P; ++pi) {
        double acc = 0.0;
        for (int i = 0; i < NN; ++i) acc += std::pow(sup[i], p_list_[pi]);
        mass[pi][m] = cell2 * acc;
      }
    }
    for (int pi = 0; pi < P; ++pi)
      reports[pi].maximal = reports[pi].low_freq + angular_lp(mass[pi], p_list_[pi], M);
  }

  // W sweep: tent norms at every aperture
  {
    AFunctionalAccumulator acc(fam, apertures_, true);
    std::vector<SpatialField> chans(M);
    for (int k = 1; k <= K; ++k) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (int m = 0; m < M; ++m) chans[m] = channel_field(fam, fhat, Transform::W, m, k);
      acc.add_scale(k, chans);
    }
    acc.add_coarse(coarse_field(fam, fhat, Transform::W));
    aperture_rows_.clear();
    for (std::size_t li = 0; li < apertures_.size(); ++li) {
      const CosphereScalarField A = acc.take(static_cast<int>(li));
      ApertureRow row;
      row.lambda = apertures_[li];
      for (int pi = 0; pi < P; ++pi) row.tent_p.push_back(lp_cosphere(A, p_list_[pi]));
      aperture_rows_.push_back(std::move(row));
      if (li == 0)
        for (int pi = 0; pi < P; ++pi) reports[pi].hardy_tent = aperture_rows_[0].tent_p[pi];
    }
  }

  // V sweep: hardy via V, square function (fine-only snapshot), vertical
  {
    AFunctionalAccumulator acc(fam, {1.0}, true);
    CosphereScalarField vert{fam.grid, M, std::vector<double>(static_cast<std::size_t>(M) * NN, 0.0)};
    const double wk = fam.ladder.weight();
    std::vector<SpatialField> chans(M);
    for (int k = 1; k <= K; ++k) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (int m = 0; m < M; ++m) chans[m] = channel_field(fam, fhat, Transform::V, m, k);
      acc.add_scale(k, chans);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
      for (int m = 0; m < M; ++m)
        for (int i = 0; i < NN; ++i)
          vert.data[static_cast<std::size_t>(m) * NN + i] += wk * std::norm(chans[m].data[i]);
    }
    const CosphereScalarField S = acc.snapshot(0);
    acc.add_coarse(coarse_field(fam, fhat, Transform::V));
    const CosphereScalarField AV = acc.take(0);
    for (double& v : vert.data) v = std::sqrt(v);
    for (int pi = 0; pi < P; ++pi) {
      reports[pi].hardy_via_V = lp_cosphere(AV, p_list_[pi]);
      reports[pi].square_function = reports[pi].low_freq + lp_cosphere(S, p_list_[pi]);
      reports[pi].vertical = reports[pi].low_freq + lp_cosphere(vert, p_list_[pi]);
    }
  }

  return reports;
}

std::vector<HalfWaveRow> half_wave_study(const PacketFamily& fam, const SpatialField& f,
                                         const std::vector<double>& t_list, double p,
                                         bool include_hardy) {
  std::vector<HalfWaveRow> rows;
  const double lp0 = lp_norm(f, p);
  const double para0 = parabolic_norm(fam, f, p);
  const double hardy0 = include_hardy ? hardy_norm(fam, f, p, Transform::W) : 1.0;
  for (double t : t_list) {
    const SpatialField g = half_wave(f, t);
    HalfWaveRow row;
    row.t = t;
    row.p = p;
    row.lp_ratio = lp_norm(g, p) / lp0;
    row.parabolic_ratio = parabolic_norm(fam, g, p) / para0;
    row.hardy_ratio = include_hardy ? hardy_norm(fam, g, p, Transform::W) / hardy0 : 0.0;
    rows.push_back(row);
  }
  return rows;
}

} // namespace fiohardy
