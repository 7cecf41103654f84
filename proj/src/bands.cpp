#include "fracq/errors.hpp"
#include "fracq/quantum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fracq {

using detail::require;

namespace {

// Lowest n_bands eigenvalues of the plane-wave Hamiltonian at Bloch phase q
// with basis m = -half..half. V is real and even, so H is real symmetric.
std::vector<double> bands_at(double q, const PotentialSpec& potential, double kinetic_prefactor,
                             double mu, long half, std::size_t n_bands) {
  const long size = 2 * half + 1;
  const double g0 = 2.0 * std::numbers::pi / potential.period;
  Eigen::MatrixXd h(size, size);
  for (long r = 0; r < size; ++r) {
    for (long c = 0; c < size; ++c) h(r, c) = potential.fourier_coefficient(r - c);
    const double kq = std::abs(q + g0 * static_cast<double>(r - half));
    h(r, r) += kinetic_prefactor * (kq == 0.0 ? 0.0 : std::pow(kq, mu));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + n_bands);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<double> brillouin_zone(double period, std::size_t n_q) {
  require(std::isfinite(period) && period > 0.0, "period must be positive");
  require(n_q >= 1, "need at least one Bloch phase");
  const double edge = std::numbers::pi / period;
  std::vector<double> q(n_q);
  for (std::size_t i = 0; i < n_q; ++i) {
    q[i] = -edge + 2.0 * edge * static_cast<double>(i) / static_cast<double>(n_q);
  }
  return q;
}

BandStructure band_structure(const PotentialSpec& potential, const PhysicalConstants& c,
                             const FractionalOrders& orders, std::size_t n_bands,
                             std::size_t n_plane_waves, const std::vector<double>& q_values,
                             const BandOptions& options) {
  require(n_bands >= 1, "need at least one band");
  require(n_plane_waves >= 2 * n_bands + 5, "n_plane_waves must be at least 2 * n_bands + 5");
  const double edge = std::numbers::pi / potential.period;
  for (const double q : q_values) {
    require(std::isfinite(q) && std::abs(q) <= edge * (1.0 + 1e-12),
            "Bloch phases must lie in the first Brillouin zone");
  }

  const double mu = orders.mu();
  const double prefactor = c.d_mu() * std::pow(c.hbar(), mu);
  const auto half = static_cast<long>(n_plane_waves / 2);
  const long half_refined = 2 * half + 1;

  BandStructure out{q_values, std::vector<std::vector<double>>(q_values.size()), orders,
                    static_cast<std::size_t>(2 * half + 1), 0.0};
  std::vector<double> shifts(q_values.size(), 0.0);
  // Relative shifts are measured against max(|E|, zone-edge free energy) so
  // bands passing through zero do not divide by zero.
  const double energy_scale = prefactor * std::pow(edge, mu);

  const auto nq = static_cast<std::ptrdiff_t>(q_values.size());
#pragma omp parallel for schedule(dynamic) if (options.exec == Execution::parallel)
  for (std::ptrdiff_t i = 0; i < nq; ++i) {
    out.bands[i] = bands_at(q_values[i], potential, prefactor, mu, half, n_bands);
    if (options.self_check) {
      const auto refined = bands_at(q_values[i], potential, prefactor, mu, half_refined, n_bands);
      double worst = 0.0;
      for (std::size_t b = 0; b < n_bands; ++b) {
        const double denom = std::max(std::abs(refined[b]), energy_scale);
        worst = std::max(worst, std::abs(out.bands[i][b] - refined[b]) / denom);
      }
      shifts[i] = worst;
    }
  }

  if (options.self_check && !shifts.empty()) {
    out.truncation_shift = *std::max_element(shifts.begin(), shifts.end());
    if (out.truncation_shift > options.convergence_tolerance) {
      std::ostringstream msg;
      msg << "band structure not converged: doubling the plane-wave basis shifts a band by "
          << out.truncation_shift << " (relative), above " << options.convergence_tolerance;
      throw AccuracyLoss(msg.str());
    }
  }
  return out;
}

}  // namespace fracq
