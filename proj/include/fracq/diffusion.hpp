#pragma once

// Space-time fractional diffusion  d^eta s/dt^eta + gamma (-Delta)^{mu/2} s = 0
// on a periodic grid (Caputo time derivative).

#include "fracq/fracops.hpp"
#include "fracq/kernels.hpp"

#include <string>
#include <vector>

namespace fracq {

struct DiffusionProblem {
  DiffusionProblem(FractionalOrders orders, double gamma, ComplexField initial);

  const GridSpec& grid() const { return initial.grid(); }

  FractionalOrders orders;
  double gamma;
  ComplexField initial;
};

struct DiffusionSolution {
  FractionalOrders orders;
  double gamma;
  std::vector<double> times;
  std::vector<ComplexField> snapshots;
};

/// Mode-exact evolution T_k(t) = E_eta(-gamma |k|^mu t^eta) T_k(0).
/// `times` must be nonnegative and strictly increasing.
DiffusionSolution solve_mode_exact(const DiffusionProblem& problem, const std::vector<double>& times,
                                   Execution exec = Execution::parallel);

/// Caputo L1 stepping on a uniform mesh t_m = m dt with implicit spectral
/// treatment of the fractional Laplacian. Every `record_every`-th step and the
/// final step are kept (t = 0 always is).
DiffusionSolution solve_l1_stepping(const DiffusionProblem& problem, double dt, std::size_t steps,
                                    std::size_t record_every = 1,
                                    Execution exec = Execution::parallel);

/// L1 stepping on an arbitrary mesh 0 = t_0 < t_1 < ... < t_N.
DiffusionSolution solve_l1_mesh(const DiffusionProblem& problem, const std::vector<double>& mesh,
                                std::size_t record_every = 1, Execution exec = Execution::parallel);

/// Graded mesh t_j = horizon (j / steps)^grading.
std::vector<double> graded_mesh(double horizon, std::size_t steps, double grading);

/// Grading exponent (2 - eta) / eta that restores the O(N^{eta-2}) L1 rate for
/// solutions with the usual t^eta start-up singularity.
double optimal_grading(double eta);

/// Fractional absolute moments <|x - x0|^delta>(t) of each snapshot.
struct MomentSeries {
  std::vector<double> times;
  std::vector<double> values;
  /// Per snapshot: fraction of mass with minimal-image distance <= length/4 from x0.
  std::vector<double> confined_mass;
  std::vector<std::string> warnings;
};

inline constexpr double kConfinementThreshold = 0.99;

/// Requires 0 < delta < mu for mu < 2, and 0 < delta <= 2 for mu = 2.
/// Snapshots are read as densities: real parts, normalised to unit mass.
/// x0 is the centroid of the first snapshot.
MomentSeries fractional_msd(const DiffusionSolution& solution, double delta);

/// Default moment order 0.9 mu.
inline double default_moment_order(const FractionalOrders& orders) { return 0.9 * orders.mu(); }

}  // namespace fracq
