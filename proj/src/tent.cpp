#include "fiohardy/tent.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiohardy {

double lp_cosphere(const CosphereScalarField& G, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_cosphere: p must be finite and > 1");
  double acc = 0.0;
  for (double v : G.data) acc += std::pow(v, p);
  const double w = (kTwoPi / G.M) * G.grid.cell() * G.grid.cell();
  return std::pow(w * acc, 1.0 / p);
}

namespace {

double sinc(double t) { return std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t; }

// periodized normalized rotated-rectangle average of a nonnegative plane
std::vector<double> rect_average(const GridSpec& g, const std::vector<double>& plane,
                                 double alpha, double half_par, double half_perp) {
  const int NN = g.size();
  std::vector<cplx> buf(NN);
  for (int i = 0; i < NN; ++i) buf[i] = plane[i];
  SpectralField hat = to_spectral(SpatialField{g, std::move(buf)});
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  for (int i = 0; i < NN; ++i) {
    const auto z = g.zeta(i);
    const double zpar = ca * z[0] + sa * z[1];
    const double zperp = -sa * z[0] + ca * z[1];
    hat.data[i] *= sinc(half_par * zpar) * sinc(half_perp * zperp);
  }
  SpatialField out = to_spatial(hat);
  std::vector<double> res(NN);
  // band-limited kernel edges can ring slightly negative
  for (int i = 0; i < NN; ++i) res[i] = std::max(0.0, out.data[i].real());
  return res;
}

int angular_halfwindow(const GridSpec&, int M, double chord_max) {
  if (chord_max >= 2.0) return M; // clamped to the full circle by caller
  const double amax = 2.0 * std::asin(0.5 * chord_max);
  return static_cast<int>(std::floor(amax / (kTwoPi / M) + 1e-12));
}

} // namespace

AFunctionalAccumulator::AFunctionalAccumulator(const PacketFamily& fam,
                                               std::vector<double> lambdas, bool include_coarse)
    : fam_(&fam), lambdas_(std::move(lambdas)), include_coarse_(include_coarse) {
  for (double l : lambdas_)
    if (!(l >= 1.0)) throw std::invalid_argument("A functional: aperture lambda must be >= 1");
  for (double l : lambdas_)
    if (l * std::sqrt(fam.ladder.sigma_min) < fam.grid.cell())
      throw std::invalid_argument("A functional: averaging box below one grid cell at the finest scale");
  acc_.assign(lambdas_.size(),
              std::vector<double>(static_cast<std::size_t>(fam.M()) * fam.grid.size(), 0.0));
}

void AFunctionalAccumulator::add_scale(int k, const std::vector<SpatialField>& channels) {
  const PacketFamily& fam = *fam_;
  const int M = fam.M(), NN = fam.grid.size();
  if (static_cast<int>(channels.size()) != M)
    throw std::invalid_argument("add_scale: need all M channel planes");
  const double sigma = fam.ladder.sigma(k);
  const double wk = fam.ladder.weight();
  const double half_l = fam.grid.L / 2.0;

  std::vector<std::vector<double>> sq(M, std::vector<double>(NN));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int m = 0; m < M; ++m)
    for (int i = 0; i < NN; ++i) sq[m][i] = std::norm(channels[m].data[i]);

  for (std::size_t li = 0; li < lambdas_.size(); ++li) {
    const double lam = lambdas_[li];
    const double hp = std::min(lam * lam * sigma, half_l);
    const double hq = std::min(lam * std::sqrt(sigma), half_l);
    std::vector<std::vector<double>> P(M);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int m = 0; m < M; ++m)
      P[m] = rect_average(fam.grid, sq[m], fam.dirs.angle(m), hp, hq);

    const int hw = std::min(angular_halfwindow(fam.grid, M, lam * std::sqrt(sigma)), M / 2);
    const int count = std::min(2 * hw + 1, M);
    auto& acc = acc_[li];
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < NN; ++i) {
      // circular windowed mean over directions at fixed x
      double window = 0.0;
      for (int j = -hw; j <= hw; ++j) window += P[((j % M) + M) % M][i];
      if (count >= M) {
        double full = 0.0;
        for (int m = 0; m < M; ++m) full += P[m][i];
        for (int m = 0; m < M; ++m)
          acc[static_cast<std::size_t>(m) * NN + i] += wk * full / M;
      } else {
        for (int m = 0; m < M; ++m) {
          acc[static_cast<std::size_t>(m) * NN + i] += wk * window / count;
          // slide the window to be centered at m+1
          window -= P[((m - hw) % M + M) % M][i];
          window += P[((m + 1 + hw) % M + M) % M][i];
        }
      }
    }
  }
}

void AFunctionalAccumulator::add_coarse(const SpatialField& coarse) {
  if (!include_coarse_) return;
  const PacketFamily& fam = *fam_;
  const int M = fam.M(), NN = fam.grid.size();
  const double half_l = fam.grid.L / 2.0;
  std::vector<double> sq(NN);
  for (int i = 0; i < NN; ++i) sq[i] = std::norm(coarse.data[i]);
  for (std::size_t li = 0; li < lambdas_.size(); ++li) {
    const double lam = lambdas_[li];
    // coarse slot: ball radius lambda * 1, weight 1; the channel is
    // direction-independent so the angular mean is the value itself
    const std::vector<double> P =
        rect_average(fam.grid, sq, 0.0, std::min(lam * lam, half_l), std::min(lam, half_l));
    auto& acc = acc_[li];
    for (int m = 0; m < M; ++m)
      for (int i = 0; i < NN; ++i) acc[static_cast<std::size_t>(m) * NN + i] += P[i];
  }
}

CosphereScalarField AFunctionalAccumulator::snapshot(int lambda_index) const {
  CosphereScalarField out{fam_->grid, fam_->M(), acc_[lambda_index]};
  for (double& v : out.data) v = std::sqrt(std::max(0.0, v));
  return out;
}

CosphereScalarField AFunctionalAccumulator::take(int lambda_index) {
  CosphereScalarField out{fam_->grid, fam_->M(), std::move(acc_[lambda_index])};
  for (double& v : out.data) v = std::sqrt(std::max(0.0, v));
  return out;
}

static CosphereScalarField a_functional_impl(const PacketCoefficients& F, double lambda,
                                             bool include_coarse) {
  const PacketFamily& fam = *F.family;
  AFunctionalAccumulator acc(fam, {lambda}, include_coarse);
  std::vector<SpatialField> chans(fam.M());
  for (int k = 1; k <= fam.K(); ++k) {
    for (int m = 0; m < fam.M(); ++m) chans[m] = F.at(m, k);
    acc.add_scale(k, chans);
  }
  acc.add_coarse(F.coarse);
  return acc.take(0);
}

CosphereScalarField A_functional(const PacketCoefficients& F, double lambda) {
  return a_functional_impl(F, lambda, true);
}

CosphereScalarField A_functional_fine(const PacketCoefficients& F, double lambda) {
  return a_functional_impl(F, lambda, false);
}

CosphereScalarField A_functional_metric(const PacketCoefficients& F, double lambda) {
  const PacketFamily& fam = *F.family;
  const GridSpec& g = fam.grid;
  const int M = fam.M(), N = g.N, NN = g.size();
  CosphereScalarField out{g, M, std::vector<double>(static_cast<std::size_t>(M) * NN, 0.0)};
  const double wk = fam.ladder.weight();
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic)
#endif
  for (int m = 0; m < M; ++m)
    for (int i = 0; i < NN; ++i) {
      const CospherePoint c{g.x(i)[0], g.x(i)[1], fam.dirs.angle(m)};
      double total = 0.0;
      for (int k = 1; k <= fam.K(); ++k) {
        const double tau = lambda * std::sqrt(fam.ladder.sigma(k));
        const AnisotropicBall ball{c, tau};
        const int reach = std::min(N / 2, static_cast<int>(std::ceil(tau / g.cell())) + 1);
        double sum = 0.0;
        std::int64_t cnt = 0;
        for (int m2 = 0; m2 < M; ++m2) {
          if (chord(fam.dirs.angle(m2), c.alpha) > tau) continue;
          for (int d1 = -reach; d1 <= reach; ++d1)
            for (int d2 = -reach; d2 <= reach; ++d2) {
              const int j = g.flat(g.wrap(i / N + d1), g.wrap(i % N + d2));
              const CospherePoint q{g.x(j)[0], g.x(j)[1], fam.dirs.angle(m2)};
              if (!ball_membership(ball, q, g.L)) continue;
              sum += std::norm(F.at(m2, k).data[j]);
              ++cnt;
            }
        }
        if (cnt > 0) total += wk * sum / static_cast<double>(cnt);
      }
      // coarse: ball radius lambda
      {
        const AnisotropicBall ball{c, lambda};
        const int reach = std::min(N / 2, static_cast<int>(std::ceil(lambda / g.cell())) + 1);
        double sum = 0.0;
        std::int64_t cnt = 0;
        for (int d1 = -reach; d1 <= reach; ++d1)
          for (int d2 = -reach; d2 <= reach; ++d2) {
            const int j = g.flat(g.wrap(i / N + d1), g.wrap(i % N + d2));
            const CospherePoint q{g.x(j)[0], g.x(j)[1], c.alpha};
            if (!ball_membership(ball, q, g.L)) continue;
            sum += std::norm(F.coarse.data[j]);
            ++cnt;
          }
        if (cnt > 0) total += sum / static_cast<double>(cnt);
      }
      out.at(m, i) = std::sqrt(total);
    }
  return out;
}

double tent_norm(const PacketCoefficients& F, double p, double lambda) {
  return lp_cosphere(A_functional(F, lambda), p);
}

std::vector<AnisotropicBall> default_ball_list(const GridSpec& grid, const DirectionSet& dirs,
                                               const ScaleLadder& ladder) {
  std::vector<AnisotropicBall> balls;
  const int stride = std::max(1, grid.N / 16);
  const int radii = std::max(1, ladder.K / ladder.J);
  for (int i1 = 0; i1 < grid.N; i1 += stride)
    for (int i2 = 0; i2 < grid.N; i2 += stride)
      for (int md = 0; md < dirs.M; md += std::max(1, dirs.M / 8))
        for (int j = 0; j <= radii; ++j)
          balls.push_back({{grid.cell() * i1, grid.cell() * i2, dirs.angle(md)},
                           std::exp2(-0.5 * j)});
  return balls;
}

CosphereScalarField C_functional(const PacketCoefficients& F,
                                 const std::vector<AnisotropicBall>& balls) {
  if (balls.empty()) throw std::invalid_argument("C_functional: empty ball list");
  const PacketFamily& fam = *F.family;
  const GridSpec& g = fam.grid;
  const int M = fam.M(), N = g.N, NN = g.size();
  const double wk = fam.ladder.weight(), wm = fam.dirs.weight();
  const double cell2 = g.cell() * g.cell();
  CosphereScalarField out{g, M, std::vector<double>(static_cast<std::size_t>(M) * NN, 0.0)};

  std::vector<double> energy(balls.size(), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t b = 0; b < balls.size(); ++b) {
    const AnisotropicBall& B = balls[b];
    double e = 0.0;
    const int reach = std::min(N / 2, static_cast<int>(std::ceil(B.radius / g.cell())) + 1);
    const int ci1 = g.wrap(static_cast<int>(std::lround(B.center.x1 / g.cell())));
    const int ci2 = g.wrap(static_cast<int>(std::lround(B.center.x2 / g.cell())));
    for (int k = 1; k <= fam.K(); ++k) {
      const double sigma = fam.ladder.sigma(k);
      if (std::sqrt(sigma) > B.radius) continue; // tent height <= radius^2
      for (int m = 0; m < M; ++m) {
        if (chord(fam.dirs.angle(m), B.center.alpha) > B.radius) continue;
        for (int d1 = -reach; d1 <= reach; ++d1)
          for (int d2 = -reach; d2 <= reach; ++d2) {
            const int j = g.flat(g.wrap(ci1 + d1), g.wrap(ci2 + d2));
            const CospherePoint q{g.x(j)[0], g.x(j)[1], fam.dirs.angle(m)};
            if (!tent_membership(B, q, sigma, g.L)) continue;
            e += wk * wm * cell2 * std::norm(F.at(m, k).data[j]);
          }
      }
    }
    energy[b] = e / ball_volume(B.radius);
  }

  for (std::size_t b = 0; b < balls.size(); ++b) {
    const AnisotropicBall& B = balls[b];
    const double val = std::sqrt(energy[b]);
    if (val <= 0.0) continue;
    const int reach = std::min(N / 2, static_cast<int>(std::ceil(B.radius / g.cell())) + 1);
    const int ci1 = g.wrap(static_cast<int>(std::lround(B.center.x1 / g.cell())));
    const int ci2 = g.wrap(static_cast<int>(std::lround(B.center.x2 / g.cell())));
    for (int m = 0; m < M; ++m) {
      if (chord(fam.dirs.angle(m), B.center.alpha) > B.radius) continue;
      for (int d1 = -reach; d1 <= reach; ++d1)
        for (int d2 = -reach; d2 <= reach; ++d2) {
          const int j = g.flat(g.wrap(ci1 + d1), g.wrap(ci2 + d2));
          const CospherePoint q{g.x(j)[0], g.x(j)[1], fam.dirs.angle(m)};
          if (!ball_membership(B, q, g.L)) continue;
          auto& cur = out.at(m, j);
          cur = std::max(cur, val);
        }
    }
  }
  return out;
}

} // namespace fiohardy
