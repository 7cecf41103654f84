#pragma once

// Boltzmann, Bose-Einstein and Fermi-Dirac laws over the fractional
// dispersion E = D_mu hbar^mu |k|^mu in one dimension.

#include "fracq/fracops.hpp"
#include "fracq/kernels.hpp"
#include "fracq/quantum.hpp"

#include <cstdint>
#include <vector>

namespace fracq {

struct EnsembleParams {
  explicit EnsembleParams(double beta, double chemical_potential = 0.0);

  double beta;
  double chemical_potential;
};

/// Normalized energy density g(E) e^{-beta E} / Z with g(E) ~ E^{1/mu - 1},
/// i.e. the Gamma(1/mu, rate beta) law. Mean 1/(mu beta).
double mb_energy_pdf(double energy, const EnsembleParams& params, const FractionalOrders& orders);

/// Regularized lower incomplete gamma P(1/mu, beta E).
double mb_energy_cdf(double energy, const EnsembleParams& params, const FractionalOrders& orders);

/// Closed-form mean 1/(mu beta).
double mb_mean_energy(const EnsembleParams& params, const FractionalOrders& orders);

enum class Statistics { bose, fermi };

/// 1 / (e^{beta (E - mu_c)} -+ 1). Bose requires E > mu_c.
double occupancy(double energy, const EnsembleParams& params, Statistics statistics);

/// occupancy() composed with E(k) = D_mu hbar^mu |k|^mu.
double occupancy_of_wavenumber(double k, const EnsembleParams& params, const PhysicalConstants& c,
                               const FractionalOrders& orders, Statistics statistics);

/// Wavenumbers drawn from the momentum-space Boltzmann weight e^{-beta D_mu hbar^mu |k|^mu}.
/// Rejection sampling against a Cauchy proposal; very small mu (where the
/// acceptance rate collapses) inverts the |k|^mu ~ Gamma law instead.
/// Sample i comes from stream (seed, i / 4096).
std::vector<double> sample_boltzmann_wavenumbers(const EnsembleParams& params, const PhysicalConstants& c,
                                                 const FractionalOrders& orders, std::size_t n,
                                                 std::uint64_t seed, Execution exec = Execution::parallel);

}  // namespace fracq
