#pragma once

// Fractional quantum relations, Schroedinger evolution and Bloch bands.
//
// Throughout, the fundamental dispersion is E(k) = D_mu hbar^mu |k|^mu and the
// fractional momentum is p = h_mu |k|^{mu/2} with h_mu = sqrt(2 m D_mu hbar^mu),
// so that |p|^2 / 2m reproduces E(k).

#include "fracq/fracops.hpp"
#include "fracq/kernels.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fracq {

class PhysicalConstants {
public:
  PhysicalConstants(double mass, double hbar, double d_mu, double h_eta);

  /// D_mu = 1/(2m) and h_eta = hbar: the choice that reduces to textbook
  /// quantum mechanics at mu = 2, eta = 1.
  static PhysicalConstants classical(double mass = 1.0, double hbar = 1.0);

  double mass() const { return mass_; }
  double hbar() const { return hbar_; }
  double d_mu() const { return d_mu_; }
  double h_eta() const { return h_eta_; }
  /// sqrt(2 m D_mu hbar^mu), recomputed on each call.
  double h_mu(double mu) const;

private:
  double mass_;
  double hbar_;
  double d_mu_;
  double h_eta_;
};

enum class MomentumBranch {
  odd,   ///< p = h_mu sign(k) |k|^{mu/2}
  even,  ///< p = h_mu |k|^{mu/2}
};

struct QuantumNumbers {
  double k = 0.0;
  double p = 0.0;
  double nu = 0.0;
  double energy = 0.0;
  double kinetic = 0.0;
};

/// E_k = D_mu |p|^mu.
double kinetic_energy(double p, const PhysicalConstants& c, const FractionalOrders& orders);

/// |p|^2 / 2m, the kinetic energy the fractional momentum relation preserves.
double quadratic_kinetic_energy(double p, const PhysicalConstants& c);

/// D_mu hbar^mu |k|^mu.
double dispersion_energy(double k, const PhysicalConstants& c, const FractionalOrders& orders);

double momentum_from_wavenumber(double k, const PhysicalConstants& c, const FractionalOrders& orders,
                                MomentumBranch branch = MomentumBranch::odd);

/// E = h_eta nu^eta.
double planck_energy(double nu, const PhysicalConstants& c, double eta);

/// Inverse of planck_energy for E >= 0.
double frequency_from_energy(double energy, const PhysicalConstants& c, double eta);

/// k, p(k), E(k), kinetic = |p|^2/2m and nu with h_eta nu^eta = E(k).
QuantumNumbers quantum_numbers(double k, const PhysicalConstants& c, const FractionalOrders& orders,
                               MomentumBranch branch = MomentumBranch::odd);

/// (kappa = E^{1/mu} as used for the published band plots, p = h_mu k^{mu/2}
/// with k solving D_mu hbar^mu k^mu = E).
std::pair<double, double> corrected_momentum_energy_check(double energy, const PhysicalConstants& c,
                                                          const FractionalOrders& orders);

// --- periodic potentials -----------------------------------------------------

enum class PotentialKind { cosine, square, barrier, well };

std::string to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(const std::string& name);

/// Even, period-`period` potentials centred on x = 0:
///   cosine   V0 cos(2 pi x / a)
///   square   V0 sign(cos(2 pi x / a))
///   barrier  V0 on |x| < w a / 2 within each cell, 0 elsewhere
///   well    -V0 on |x| < w a / 2 within each cell, 0 elsewhere
struct PotentialSpec {
  PotentialSpec(PotentialKind kind, double amplitude, double period, double feature_width = 0.5);

  double value(double x) const;
  /// Exact Fourier coefficient V_m = (1/a) int_cell V(x) e^{-2 pi i m x / a} dx (real: V is even).
  double fourier_coefficient(long m) const;
  /// Throws unless the grid length is an integer number of periods.
  void check_commensurate(const GridSpec& grid) const;

  PotentialKind kind;
  double amplitude;
  double period;
  double feature_width;
};

// --- dynamics ------------------------------------------------------------------

/// Strang split-step propagation of i hbar dPsi/dt = D_mu hbar^mu (-Delta)^{mu/2} Psi + V Psi.
/// Requires eta == 1.
ComplexField split_step_evolve(const ComplexField& psi, const PotentialSpec& potential,
                               const PhysicalConstants& c, const FractionalOrders& orders, double dt,
                               std::size_t steps, Execution exec = Execution::parallel);

/// Phase factor multiplying h_eta d^eta Psi / dt^eta in the time-fractional equation.
enum class FractionalPhase {
  imaginary_unit,  ///< i: dissipative for eta < 1 (default)
  eta_power,       ///< e^{i pi eta / 2} = i^eta as printed; |Psi| grows for eta < 1
};

/// Mode-exact free evolution Psi_k(t) = E_eta(z_k) Psi_k(0), with A_k = D_mu hbar^mu |k|^mu and
/// z_k = -i A_k t^eta / h_eta (imaginary_unit) or A_k e^{-i pi eta/2} t^eta / h_eta (eta_power).
ComplexField evolve_free_fractional(const ComplexField& psi, const PhysicalConstants& c,
                                    const FractionalOrders& orders, double t,
                                    FractionalPhase phase = FractionalPhase::imaginary_unit,
                                    Execution exec = Execution::parallel);

/// The complex Mittag-Leffler argument used by evolve_free_fractional for one mode.
cplx free_evolution_argument(double a_over_h, double t, double eta, FractionalPhase phase);

// --- band structure -------------------------------------------------------------

struct BandStructure {
  std::vector<double> q_values;
  /// bands[iq][n] = E_n(q_values[iq]), ascending in n.
  std::vector<std::vector<double>> bands;
  FractionalOrders orders;
  /// Number of plane waves actually used (always odd: m = -M..M).
  std::size_t basis_size = 0;
  /// Largest relative band shift under basis doubling, when self-checked.
  double truncation_shift = 0.0;
};

struct BandOptions {
  bool self_check = false;
  double convergence_tolerance = 1e-8;
  Execution exec = Execution::parallel;
};

/// Plane-wave Bloch bands. n_plane_waves is rounded up to the next odd number
/// so the basis is symmetric under G -> -G. Throws AccuracyLoss in self-check
/// mode when doubling the basis moves a requested band by more than the
/// tolerance (relative).
BandStructure band_structure(const PotentialSpec& potential, const PhysicalConstants& c,
                             const FractionalOrders& orders, std::size_t n_bands,
                             std::size_t n_plane_waves, const std::vector<double>& q_values,
                             const BandOptions& options = {});

/// n_q evenly spaced Bloch phases covering [-pi/a, pi/a).
std::vector<double> brillouin_zone(double period, std::size_t n_q);

}  // namespace fracq
