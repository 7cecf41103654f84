#include "fracq/statmech.hpp"

#include "fracq/errors.hpp"
#include "fracq/random.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracq {

using detail::require;

namespace {

constexpr std::size_t kChunk = 4096;
// Above this envelope constant rejection is slower than inversion.
constexpr double kMaxEnvelope = 64.0;

}  // namespace

EnsembleParams::EnsembleParams(double b, double mu_c) : beta(b), chemical_potential(mu_c) {
  require(std::isfinite(beta) && beta > 0.0, "beta must be positive");
  require(std::isfinite(chemical_potential), "chemical potential must be finite");
}

double mb_energy_pdf(double energy, const EnsembleParams& params, const FractionalOrders& orders) {
  require(std::isfinite(energy) && energy >= 0.0, "energy must be nonnegative");
  const double shape = 1.0 / orders.mu();
  const double x = params.beta * energy;
  if (x == 0.0) {
    // Integrable singularity for mu > 1, finite limit at mu = 1, zero below.
    if (shape < 1.0) return std::numeric_limits<double>::infinity();
    return shape == 1.0 ? params.beta : 0.0;
  }
  return params.beta * std::exp((shape - 1.0) * std::log(x) - x - std::lgamma(shape));
}

double mb_energy_cdf(double energy, const EnsembleParams& params, const FractionalOrders& orders) {
  require(std::isfinite(energy) && energy >= 0.0, "energy must be nonnegative");
  return boost::math::gamma_p(1.0 / orders.mu(), params.beta * energy);
}

double mb_mean_energy(const EnsembleParams& params, const FractionalOrders& orders) {
  return 1.0 / (orders.mu() * params.beta);
}

double occupancy(double energy, const EnsembleParams& params, Statistics statistics) {
  require(std::isfinite(energy), "energy must be finite");
  const double x = params.beta * (energy - params.chemical_potential);
  if (statistics == Statistics::fermi) {
    // Split by sign so neither branch overflows.
    if (x >= 0.0) {
      const double e = std::exp(-x);
      return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
  }
  require(energy > params.chemical_potential, "Bose occupancy needs energy above the chemical potential");
  return 1.0 / std::expm1(x);
}

double occupancy_of_wavenumber(double k, const EnsembleParams& params, const PhysicalConstants& c,
                               const FractionalOrders& orders, Statistics statistics) {
  return occupancy(dispersion_energy(k, c, orders), params, statistics);
}

std::vector<double> sample_boltzmann_wavenumbers(const EnsembleParams& params, const PhysicalConstants& c,
                                                 const FractionalOrders& orders, std::size_t n,
                                                 std::uint64_t seed, Execution exec) {
  const double mu = orders.mu();
  const double a = params.beta * c.d_mu() * std::pow(c.hbar(), mu);
  // In u = a^{1/mu} k the target is exp(-|u|^mu); (1 + u^2) exp(-|u|^mu) <= envelope.
  const double scale = std::pow(a, -1.0 / mu);
  const double envelope = 1.0 + std::pow(2.0 / mu, 2.0 / mu) * std::exp(-2.0 / mu);
  const bool use_rejection = envelope <= kMaxEnvelope;
  const double shape = 1.0 / mu;

  std::vector<double> out(n);
  const auto chunks = static_cast<std::ptrdiff_t>((n + kChunk - 1) / kChunk);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (std::ptrdiff_t ch = 0; ch < chunks; ++ch) {
    RandomStream rng(seed, static_cast<std::uint64_t>(ch));
    const std::size_t begin = static_cast<std::size_t>(ch) * kChunk;
    const std::size_t end = std::min(n, begin + kChunk);
    for (std::size_t i = begin; i < end; ++i) {
      if (use_rejection) {
        for (;;) {
          const double u = std::tan(std::numbers::pi * (rng.uniform() - 0.5));
          const double accept = (1.0 + u * u) * std::exp(-std::pow(std::abs(u), mu)) / envelope;
          if (rng.uniform() < accept) {
            out[i] = scale * u;
            break;
          }
        }
      } else {
        const double g = boost::math::gamma_p_inv(shape, rng.uniform());
        const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        out[i] = sign * scale * std::pow(g, 1.0 / mu);
      }
    }
  }
  return out;
}

}  // namespace fracq
