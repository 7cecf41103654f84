#include "fracq/stochastic.hpp"

#include "fracq/diffusion.hpp"
#include "fracq/errors.hpp"
#include "fracq/fourier.hpp"
#include "fracq/random.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace fracq {

using detail::require;

namespace {

constexpr std::size_t kStableChunk = 4096;

template <class F>
void dispatch(Execution exec, F&& f) {
  if (exec == Execution::serial) {
    f.template operator()<Execution::serial>();
  } else {
    f.template operator()<Execution::parallel>();
  }
}

// Autocovariance of unit-step fractional Gaussian noise at integer lag.
double fgn_autocovariance(double hurst, std::size_t lag) {
  const double h2 = 2.0 * hurst;
  const auto k = static_cast<double>(lag);
  return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2));
}

}  // namespace

StableParams::StableParams(double mu, double gamma) : mu_stability(mu), gamma_scale(gamma) {
  require(mu > 0.0 && mu <= 2.0, "stability index must lie in (0, 2]");
  require(std::isfinite(gamma) && gamma > 0.0, "stable scale gamma must be positive");
}

FbmParams::FbmParams(double h, std::size_t steps, double step) : hurst(h), n_steps(steps), dt(step) {
  require(hurst > 0.0 && hurst < 1.0, "Hurst exponent must lie in (0, 1)");
  require(n_steps >= 1, "fBm needs at least one step");
  require(std::isfinite(dt) && dt > 0.0, "fBm time step must be positive");
}

FbmParams FbmParams::from_eta(double eta, std::size_t n_steps, double dt) {
  require(eta > 0.0 && eta < 2.0, "eta must lie in (0, 2) for the fBm mapping");
  return FbmParams(0.5 * eta, n_steps, dt);
}

std::string to_string(EnsembleKind kind) {
  return kind == EnsembleKind::levy_flight ? "levy" : "fbm";
}

EnsembleKind ensemble_kind_from_string(const std::string& name) {
  if (name == "levy" || name == "levy_flight") return EnsembleKind::levy_flight;
  if (name == "fbm") return EnsembleKind::fbm;
  throw ValidationError("unknown ensemble kind '" + name + "'");
}

std::vector<double> TrajectoryEnsemble::column(std::size_t time_index) const {
  std::vector<double> out(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) out[p] = position(p, time_index);
  return out;
}

std::vector<double> sample_stable(const StableParams& params, std::size_t n, std::uint64_t seed,
                                  Execution exec) {
  std::vector<double> out(n);
  const double alpha = params.mu_stability;
  const double sigma = std::pow(params.gamma_scale, 1.0 / alpha);
  const auto chunks = static_cast<std::ptrdiff_t>((n + kStableChunk - 1) / kStableChunk);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    RandomStream rng(seed, static_cast<std::uint64_t>(c));
    const std::size_t begin = static_cast<std::size_t>(c) * kStableChunk;
    const std::size_t end = std::min(n, begin + kStableChunk);
    for (std::size_t i = begin; i < end; ++i) out[i] = sigma * standard_stable(alpha, rng);
  }
  return out;
}

TrajectoryEnsemble levy_flight_ensemble(const StableParams& params, std::size_t n_paths,
                                        std::size_t n_steps, double dt, std::uint64_t seed,
                                        Execution exec) {
  require(n_paths >= 1, "ensemble needs at least one path");
  require(std::isfinite(dt) && dt > 0.0, "time step must be positive");
  TrajectoryEnsemble ens;
  ens.kind = EnsembleKind::levy_flight;
  ens.n_paths = n_paths;
  ens.seed = seed;
  ens.times.resize(n_steps + 1);
  for (std::size_t s = 0; s <= n_steps; ++s) ens.times[s] = dt * static_cast<double>(s);
  ens.positions.resize(n_paths * (n_steps + 1));
  const double scale = params.gamma_scale * dt;
  dispatch(exec, [&]<Execution E>() {
    kernels::stable_walks<E>(params.mu_stability, scale, n_steps, seed, 0, n_paths, ens.positions);
  });
  return ens;
}

double fbm_covariance(double hurst, double t, double s) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
}

TrajectoryEnsemble fbm_paths(const FbmParams& params, std::size_t n_paths, std::uint64_t seed,
                             FbmMethod method, Execution exec) {
  require(n_paths >= 1, "ensemble needs at least one path");
  const std::size_t n = params.n_steps;
  const double step_scale = std::pow(params.dt, params.hurst);

  TrajectoryEnsemble ens;
  ens.kind = EnsembleKind::fbm;
  ens.n_paths = n_paths;
  ens.seed = seed;
  ens.times.resize(n + 1);
  for (std::size_t s = 0; s <= n; ++s) ens.times[s] = params.dt * static_cast<double>(s);
  ens.positions.assign(n_paths * (n + 1), 0.0);
  const std::size_t width = n + 1;

  // Circulant embedding of the noise covariance on m = 2^ceil(log2(2n)) points.
  const std::size_t m = std::bit_ceil(2 * n);
  std::vector<double> sqrt_eig;
  if (method == FbmMethod::circulant) {
    std::vector<cplx> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = fgn_autocovariance(params.hurst, j <= m / 2 ? j : m - j);
    fourier::forward_inplace(row);
    double peak = 0.0;
    double lowest = 0.0;
    for (const auto& v : row) {
      peak = std::max(peak, v.real());
      lowest = std::min(lowest, v.real());
    }
    if (lowest < -1e-10 * peak) {
      std::ostringstream msg;
      msg << "circulant embedding has a negative eigenvalue (" << lowest
          << "); fell back to Cholesky synthesis";
      ens.notes.push_back(msg.str());
      method = FbmMethod::cholesky;
    } else {
      sqrt_eig.resize(m);
      for (std::size_t j = 0; j < m; ++j) {
        sqrt_eig[j] = std::sqrt(std::max(row[j].real(), 0.0) / static_cast<double>(m));
      }
    }
  }

  const auto np = static_cast<std::ptrdiff_t>(n_paths);
  if (method == FbmMethod::circulant) {
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::ptrdiff_t p = 0; p < np; ++p) {
      RandomStream rng(seed, static_cast<std::uint64_t>(p));
      std::vector<cplx> w(m);
      for (std::size_t j = 0; j < m; ++j) {
        const double re = rng.normal();
        const double im = rng.normal();
        w[j] = sqrt_eig[j] * cplx(re, im);
      }
      fourier::forward_inplace(w);
      double* out = ens.positions.data() + static_cast<std::size_t>(p) * width;
      for (std::size_t j = 0; j < n; ++j) out[j + 1] = out[j] + step_scale * w[j].real();
    }
  } else {
    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        cov(i, j) = fgn_autocovariance(params.hurst, i > j ? i - j : j - i);
      }
    }
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    require(llt.info() == Eigen::Success, "fBm covariance is not positive definite");
    const Eigen::MatrixXd lower = llt.matrixL();
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::ptrdiff_t p = 0; p < np; ++p) {
      RandomStream rng(seed, static_cast<std::uint64_t>(p));
      Eigen::VectorXd z(n);
      for (std::size_t j = 0; j < n; ++j) z[j] = rng.normal();
      const Eigen::VectorXd noise = lower * z;
      double* out = ens.positions.data() + static_cast<std::size_t>(p) * width;
      for (std::size_t j = 0; j < n; ++j) out[j + 1] = out[j] + step_scale * noise[j];
    }
  }
  return ens;
}

namespace {

// Log-spaced subset of the positive-time columns, at most `count` distinct.
std::vector<std::size_t> log_spaced_columns(const std::vector<double>& times, std::size_t count) {
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > 0.0) positive.push_back(i);
  }
  if (positive.size() <= count) return positive;
  const double lo = std::log(times[positive.front()]);
  const double hi = std::log(times[positive.back()]);
  std::vector<std::size_t> out;
  std::size_t cursor = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double target = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    while (cursor + 1 < positive.size() &&
           std::abs(std::log(times[positive[cursor + 1]]) - target) <=
               std::abs(std::log(times[positive[cursor]]) - target)) {
      ++cursor;
    }
    if (out.empty() || out.back() != positive[cursor]) out.push_back(positive[cursor]);
  }
  return out;
}

stats::LinearFit moment_slope(const TrajectoryEnsemble& ens, const std::vector<std::size_t>& cols,
                              double delta) {
  std::vector<double> moments(ens.n_times());
  kernels::abs_moments<Execution::parallel>(ens.positions, ens.n_paths, ens.n_times(), delta, moments);
  std::vector<double> lx;
  std::vector<double> ly;
  for (const std::size_t c : cols) {
    if (!(moments[c] > 0.0)) throw ValidationError("ensemble has zero variance at t > 0");
    lx.push_back(std::log(ens.times[c]));
    ly.push_back(std::log(moments[c]));
  }
  return stats::linear_regression(lx, ly);
}

}  // namespace

IndexEstimate estimate_indices(const TrajectoryEnsemble& ens, double mu_prior) {
  require(ens.n_paths >= 100, "index estimation needs at least 100 paths");
  require(ens.n_times() >= 8, "index estimation needs at least 8 time points");
  require(ens.positions.size() == ens.n_paths * ens.n_times(), "ensemble positions are inconsistent");
  require(mu_prior > 0.0 && mu_prior <= 2.0, "mu prior must lie in (0, 2]");

  const auto cols = log_spaced_columns(ens.times, 40);
  require(cols.size() >= 8, "index estimation needs at least 8 positive time points");
  require(ens.times[cols.back()] >= 100.0 * ens.times[cols.front()],
          "index estimation needs two decades of time");

  IndexEstimate est;
  est.kind = ens.kind;
  if (ens.kind == EnsembleKind::fbm) {
    est.moment_order = 2.0;
    est.fit = moment_slope(ens, cols, 2.0);
    est.value = 0.5 * est.fit.slope;
    est.half_width = 0.5 * est.fit.slope_half_width;
    return est;
  }

  double delta = 0.5 * mu_prior;
  stats::LinearFit fit = moment_slope(ens, cols, delta);
  require(fit.slope > 0.0, "fractional moments do not grow; cannot estimate mu");
  const double mu_first = std::clamp(delta / fit.slope, 1e-3, 2.0);
  delta = 0.5 * mu_first;
  fit = moment_slope(ens, cols, delta);
  require(fit.slope > 0.0, "fractional moments do not grow; cannot estimate mu");
  est.moment_order = delta;
  est.fit = fit;
  est.value = delta / fit.slope;
  est.half_width = delta * fit.slope_half_width / (fit.slope * fit.slope);
  return est;
}

stats::TabulatedCdf spectral_marginal_cdf(const StableParams& params, double t, const GridSpec& grid) {
  require(std::isfinite(t) && t > 0.0, "marginal time must be positive");
  const std::size_t centre = grid.n() / 2;
  DiffusionProblem problem(FractionalOrders(1.0, params.mu_stability), params.gamma_scale,
                           ComplexField::point_mass(grid, centre));
  const DiffusionSolution sol = solve_mode_exact(problem, {t});
  const ComplexField& density = sol.snapshots.back();
  const double h = grid.spacing();

  // Cell sums on [x_j - h/2, x_j + h/2], accumulated from the left edge.
  std::vector<double> edges(grid.n() + 1);
  std::vector<double> cdf(grid.n() + 1);
  edges[0] = grid.node(0) - 0.5 * h;
  cdf[0] = 0.0;
  for (std::size_t j = 0; j < grid.n(); ++j) {
    edges[j + 1] = grid.node(j) + 0.5 * h;
    cdf[j + 1] = cdf[j] + density[j].real() * h;
  }
  const double total = cdf.back();
  for (auto& v : cdf) v /= total;
  // Tiny negative densities (periodic ringing) must not break monotonicity.
  for (std::size_t j = 1; j < cdf.size(); ++j) cdf[j] = std::max(cdf[j], cdf[j - 1]);
  return stats::TabulatedCdf(std::move(edges), std::move(cdf));
}

}  // namespace fracq
