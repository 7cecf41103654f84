#pragma once

// Monte Carlo realisations of the two anomalous-diffusion paradigms: Levy
// flights (superdiffusion, eta = 1, mu < 2) and fractional Brownian motion
// (subdiffusion, eta < 1, mu = 2), plus index estimation from ensembles.

#include "fracq/fracops.hpp"
#include "fracq/kernels.hpp"
#include "fracq/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fracq {

/// Symmetric stable law with characteristic function exp(-gamma_scale |k|^mu_stability).
struct StableParams {
  StableParams(double mu_stability, double gamma_scale);

  double mu_stability;
  double gamma_scale;
};

struct FbmParams {
  FbmParams(double hurst, std::size_t n_steps, double dt);
  /// Subdiffusive mapping H = eta / 2, so that the MSD grows like t^eta.
  static FbmParams from_eta(double eta, std::size_t n_steps, double dt);

  double hurst;
  std::size_t n_steps;
  double dt;
};

enum class EnsembleKind { levy_flight, fbm };

std::string to_string(EnsembleKind kind);
EnsembleKind ensemble_kind_from_string(const std::string& name);

struct TrajectoryEnsemble {
  EnsembleKind kind = EnsembleKind::levy_flight;
  std::size_t n_paths = 0;
  std::vector<double> times;
  /// Row-major n_paths x times.size(); column 0 is the origin.
  std::vector<double> positions;
  std::uint64_t seed = 0;
  /// Generator diagnostics (e.g. embedding fallback).
  std::vector<std::string> notes;

  std::size_t n_times() const { return times.size(); }
  double position(std::size_t path, std::size_t time_index) const {
    return positions[path * times.size() + time_index];
  }
  std::vector<double> column(std::size_t time_index) const;
};

/// n independent draws via Chambers-Mallows-Stuck, scale gamma_scale^{1/mu}.
/// Draw i comes from stream (seed, i / 4096), so output does not depend on threads.
std::vector<double> sample_stable(const StableParams& params, std::size_t n, std::uint64_t seed,
                                  Execution exec = Execution::parallel);

/// Cumulative sums of stable increments with per-step scale gamma_scale * dt,
/// so the time-t marginal has characteristic function exp(-gamma |k|^mu t).
TrajectoryEnsemble levy_flight_ensemble(const StableParams& params, std::size_t n_paths,
                                        std::size_t n_steps, double dt, std::uint64_t seed,
                                        Execution exec = Execution::parallel);

enum class FbmMethod { circulant, cholesky };

/// Exact-covariance fBm on t_j = j dt. Circulant embedding (Davies-Harte) is
/// used unless requested otherwise or the embedding has negative eigenvalues,
/// in which case the Cholesky factor of the Toeplitz covariance is used and a
/// note is recorded on the ensemble.
TrajectoryEnsemble fbm_paths(const FbmParams& params, std::size_t n_paths, std::uint64_t seed,
                             FbmMethod method = FbmMethod::circulant,
                             Execution exec = Execution::parallel);

/// fBm covariance 0.5 (t^{2H} + s^{2H} - |t - s|^{2H}).
double fbm_covariance(double hurst, double t, double s);

struct IndexEstimate {
  EnsembleKind kind = EnsembleKind::levy_flight;
  /// mu-hat for flights, H-hat for fBm.
  double value = 0.0;
  /// 95% half-width from the log-log regression.
  double half_width = 0.0;
  /// Moment order used in the final regression.
  double moment_order = 0.0;
  stats::LinearFit fit;
};

/// Flights: mu from <|x|^delta> ~ t^{delta/mu} with delta = mu_prior / 2,
/// refined once with delta = mu_hat / 2. fBm: H from the MSD slope / 2.
/// Needs >= 100 paths, >= 8 time points and two decades of positive times.
IndexEstimate estimate_indices(const TrajectoryEnsemble& ensemble, double mu_prior = 1.0);

/// CDF at time t of the eta = 1 spectral solution started from a centred point
/// mass on `grid` (origin should be -length/2), tabulated on cell edges.
stats::TabulatedCdf spectral_marginal_cdf(const StableParams& params, double t, const GridSpec& grid);

}  // namespace fracq
