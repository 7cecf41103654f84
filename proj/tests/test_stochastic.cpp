#include "doctest.h"

#include "fracq/errors.hpp"
#include "fracq/stats.hpp"
#include "fracq/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

using namespace fracq;

TEST_SUITE("stochastic") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(StableParams(0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(StableParams(2.1, 1.0), ValidationError);
  CHECK_THROWS_AS(StableParams(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(FbmParams(1.0, 10, 1.0), ValidationError);
  CHECK(FbmParams::from_eta(0.6, 10, 1.0).hurst == doctest::Approx(0.3));
  CHECK(ensemble_kind_from_string(to_string(EnsembleKind::fbm)) == EnsembleKind::fbm);
}

TEST_CASE("gaussian limit of the stable sampler") {
  const auto x = sample_stable(StableParams(2.0, 0.5), 1'000'000, 1);
  double s = 0.0;
  double s2 = 0.0;
  for (const double v : x) {
    s += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(x.size());
  const double var = s2 / n - (s / n) * (s / n);
  CHECK(var >= 0.995);
  CHECK(var <= 1.005);
}

TEST_CASE("cauchy limit of the stable sampler") {
  auto x = sample_stable(StableParams(1.0, 2.0), 1'000'000, 2);
  for (auto& v : x) v = std::abs(v);
  std::nth_element(x.begin(), x.begin() + x.size() / 2, x.end());
  CHECK(x[x.size() / 2] == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("empirical characteristic function") {
  const auto x = sample_stable(StableParams(1.5, 1.0), 400'000, 3);
  const double n = static_cast<double>(x.size());
  for (const double k : {0.5, 1.0, 2.0}) {
    std::complex<double> phi = 0.0;
    for (const double v : x) phi += std::exp(std::complex<double>(0.0, k * v));
    phi /= n;
    CHECK(std::abs(phi - std::exp(-std::pow(k, 1.5))) <= 3.0 / std::sqrt(n));
  }
}

TEST_CASE("stable self-similarity") {
  for (const double mu : {1.0, 1.5, 2.0}) {
    const std::size_t n = 100'000;
    const std::size_t m = 4;
    const auto single = sample_stable(StableParams(mu, 1.0), n, 10);
    const auto pool = sample_stable(StableParams(mu, 1.0), n * m, 11);
    std::vector<double> sums(n, 0.0);
    for (std::size_t i = 0; i < n * m; ++i) sums[i / m] += pool[i];
    for (auto& v : sums) v *= std::pow(static_cast<double>(m), -1.0 / mu);
    CAPTURE(mu);
    CHECK(stats::ks_two_sample(single, sums) < stats::ks_two_sample_critical(0.01, n, n));
  }
}

TEST_CASE("seed determinism and thread independence") {
  const StableParams p(1.3, 0.7);
  CHECK(sample_stable(p, 10000, 5, Execution::serial) == sample_stable(p, 10000, 5, Execution::parallel));
  const auto a = levy_flight_ensemble(p, 200, 30, 0.1, 8, Execution::serial);
  const auto b = levy_flight_ensemble(p, 200, 30, 0.1, 8, Execution::parallel);
  CHECK(a.positions == b.positions);
  CHECK(a.positions != levy_flight_ensemble(p, 200, 30, 0.1, 9).positions);
  const auto f1 = fbm_paths(FbmParams(0.3, 64, 0.5), 50, 4, FbmMethod::circulant, Execution::serial);
  const auto f2 = fbm_paths(FbmParams(0.3, 64, 0.5), 50, 4, FbmMethod::circulant, Execution::parallel);
  CHECK(f1.positions == f2.positions);
}

TEST_CASE("flight ensembles") {
  const auto ens = levy_flight_ensemble(StableParams(2.0, 0.3), 200'000, 1, 0.5, 12);
  CHECK(ens.times == std::vector<double>{0.0, 0.5});
  double s2 = 0.0;
  for (std::size_t p = 0; p < ens.n_paths; ++p) {
    CHECK(ens.position(p, 0) == 0.0);
    s2 += ens.position(p, 1) * ens.position(p, 1);
  }
  CHECK(s2 / static_cast<double>(ens.n_paths) == doctest::Approx(2.0 * 0.3 * 0.5).epsilon(0.01));
}

TEST_CASE("fbm covariance matches on a 16 point grid") {
  for (const auto method : {FbmMethod::circulant, FbmMethod::cholesky}) {
    const std::size_t paths = 20'000;
    const auto ens = fbm_paths(FbmParams(0.3, 16, 0.25), paths, 21, method);
    CHECK(ens.notes.empty());
    // Largest standardised deviation; the sampling s.d. of a Gaussian
    // second moment is sqrt((C_ii C_jj + C_ij^2) / n).
    double worst = 0.0;
    for (std::size_t i = 1; i <= 16; ++i) {
      for (std::size_t j = 1; j <= 16; ++j) {
        double c = 0.0;
        for (std::size_t p = 0; p < paths; ++p) c += ens.position(p, i) * ens.position(p, j);
        c /= static_cast<double>(paths);
        const double cij = fbm_covariance(0.3, ens.times[i], ens.times[j]);
        const double sd = std::sqrt((fbm_covariance(0.3, ens.times[i], ens.times[i]) *
                                         fbm_covariance(0.3, ens.times[j], ens.times[j]) +
                                     cij * cij) /
                                    static_cast<double>(paths));
        worst = std::max(worst, std::abs(c - cij) / sd);
      }
    }
    CHECK(worst <= 5.0);
  }
}

TEST_CASE("brownian increments are uncorrelated") {
  const auto ens = fbm_paths(FbmParams(0.5, 64, 1.0), 10'000, 22);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t p = 0; p < ens.n_paths; ++p) {
    for (std::size_t t = 1; t + 1 < ens.n_times(); ++t) {
      const double d0 = ens.position(p, t) - ens.position(p, t - 1);
      const double d1 = ens.position(p, t + 1) - ens.position(p, t);
      num += d0 * d1;
      den += d0 * d0;
    }
  }
  CHECK(std::abs(num / den) <= 0.02);
}

TEST_CASE("index estimation") {
  const auto flights = levy_flight_ensemble(StableParams(1.5, 1.0), 10'000, 1000, 1.0, 31);
  const auto mu = estimate_indices(flights, 1.0);
  CHECK(mu.value >= 1.45);
  CHECK(mu.value <= 1.55);
  CHECK(mu.half_width > 0.0);
  CHECK(mu.moment_order == doctest::Approx(0.5 * (0.5 / mu.fit.slope)).epsilon(0.2));

  const auto bm = fbm_paths(FbmParams(0.5, 1000, 1.0), 2000, 32);
  const auto h = estimate_indices(bm);
  CHECK(h.kind == EnsembleKind::fbm);
  CHECK(h.value >= 0.475);
  CHECK(h.value <= 0.525);

  TrajectoryEnsemble flat;
  flat.kind = EnsembleKind::fbm;
  flat.n_paths = 200;
  for (int i = 0; i <= 200; ++i) flat.times.push_back(i);
  flat.positions.assign(flat.n_paths * flat.times.size(), 0.0);
  CHECK_THROWS_AS(estimate_indices(flat), ValidationError);

  const auto short_run = levy_flight_ensemble(StableParams(1.5, 1.0), 200, 5, 1.0, 3);
  CHECK_THROWS_AS(estimate_indices(short_run), ValidationError);
}

TEST_CASE("spectral marginal CDF") {
  const GridSpec g(1u << 14, 400.0, -200.0);
  const auto cdf = spectral_marginal_cdf(StableParams(2.0, 1.0), 1.0, g);
  // mu = 2, gamma = 1: N(0, 2), up to cell-average and interpolation error.
  for (const double x : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    CHECK(std::abs(cdf(x) - 0.5 * std::erfc(-x / 2.0)) <= 1e-5);
  }
  CHECK(cdf(-1e9) == 0.0);
  CHECK(cdf(1e9) == 1.0);
}

}  // TEST_SUITE
