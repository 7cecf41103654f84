#pragma once

// Data-parallel inner loops. Each kernel is specialised twice:
// Execution::serial is the plain reference loop and Execution::parallel the
// OpenMP version. Both must agree bit-for-bit (no cross-thread reductions);
// the kernel parity tests check this and bench/ times them against each other.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fracq {

enum class Execution { serial, parallel };

namespace kernels {

using cplx = std::complex<double>;

/// Increment history for the L1 scheme, stored mode-major:
/// increments[m * capacity + s] = T_m^{s+1} - T_m^{s}.
struct L1History {
  L1History(std::span<const cplx> initial, std::size_t capacity);

  std::size_t modes() const { return current.size(); }

  std::size_t capacity;
  std::size_t filled = 0;
  std::vector<cplx> current;
  std::vector<cplx> increments;
};

/// values[j] *= factors[j]
template <Execution E>
void scale_modes(std::span<cplx> values, std::span<const double> factors);

/// values[j] *= factors[j]
template <Execution E>
void multiply_pointwise(std::span<cplx> values, std::span<const cplx> factors);

/// out[j] = E_eta(args[j]); rethrows the first AccuracyLoss after the loop.
template <Execution E>
void mittag_leffler_map(double eta, std::span<const cplx> args, std::span<cplx> out);

/// One L1 step for every mode. weights[j] multiplies the increment j steps back
/// (weights[0] the newest) and diagonal[m] = weights[0] + c * lambda_m.
template <Execution E>
void l1_step(L1History& history, std::span<const double> weights, std::span<const double> diagonal);

/// out[t] = mean over paths of |positions[p * n_times + t]|^delta, summed in path order.
template <Execution E>
void abs_moments(std::span<const double> positions, std::size_t n_paths, std::size_t n_times,
                 double delta, std::span<double> out);

/// Symmetric stable random walks written row-major into positions
/// (n_paths x (n_steps + 1)). Column 0 is zero; each step adds a draw whose
/// characteristic function is exp(-scale_per_step * |k|^alpha). Path p reads
/// random stream (seed, first_path + p), so output is independent of threads.
template <Execution E>
void stable_walks(double alpha, double scale_per_step, std::size_t n_steps, std::uint64_t seed,
                  std::size_t first_path, std::size_t n_paths, std::span<double> positions);

}  // namespace kernels
}  // namespace fracq
