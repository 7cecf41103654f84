#include "fracq/kernels.hpp"

#include "fracq/errors.hpp"
#include "fracq/mittag_leffler.hpp"
#include "fracq/random.hpp"

#include <cmath>
#include <exception>

namespace fracq::kernels {
namespace {

// Exceptions may not leave an OpenMP region; the first one is parked here and
// rethrown once the team has joined.
class ExceptionSlot {
public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(fracq_exception_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

private:
  std::exception_ptr error_;
};

}  // namespace

template <>
void scale_modes<Execution::parallel>(std::span<cplx> values, std::span<const double> factors) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) values[j] *= factors[j];
}

template <>
void multiply_pointwise<Execution::parallel>(std::span<cplx> values, std::span<const cplx> factors) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < n; ++j) values[j] *= factors[j];
}

template <>
void mittag_leffler_map<Execution::parallel>(double eta, std::span<const cplx> args,
                                             std::span<cplx> out) {
  const auto n = static_cast<std::ptrdiff_t>(args.size());
  ExceptionSlot slot;
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    slot.run([&] { out[j] = mittag_leffler(eta, args[j]); });
  }
  slot.rethrow();
}

template <>
void l1_step<Execution::parallel>(L1History& h, std::span<const double> weights,
                                  std::span<const double> diagonal) {
  detail::require(h.filled < h.capacity, "L1 history is full");
  const std::size_t n = h.filled;
  const auto modes = static_cast<std::ptrdiff_t>(h.modes());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < modes; ++m) {
    const cplx* inc = h.increments.data() + m * h.capacity;
    cplx history = 0.0;
    for (std::size_t j = 1; j <= n; ++j) history += weights[j] * inc[n - j];
    const cplx next = (weights[0] * h.current[m] - history) / diagonal[m];
    h.increments[m * h.capacity + n] = next - h.current[m];
    h.current[m] = next;
  }
  ++h.filled;
}

template <>
void abs_moments<Execution::parallel>(std::span<const double> positions, std::size_t n_paths,
                                      std::size_t n_times, double delta, std::span<double> out) {
  // Parallel over time columns; each column is summed in path order so the
  // result matches the serial kernel exactly.
  const auto nt = static_cast<std::ptrdiff_t>(n_times);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < nt; ++t) {
    double s = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) s += std::pow(std::abs(positions[p * n_times + t]), delta);
    out[t] = s / static_cast<double>(n_paths);
  }
}

template <>
void stable_walks<Execution::parallel>(double alpha, double scale_per_step, std::size_t n_steps,
                                       std::uint64_t seed, std::size_t first_path,
                                       std::size_t n_paths, std::span<double> positions) {
  const double sigma = std::pow(scale_per_step, 1.0 / alpha);
  const std::size_t width = n_steps + 1;
  const auto np = static_cast<std::ptrdiff_t>(n_paths);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < np; ++p) {
    RandomStream rng(seed, first_path + static_cast<std::size_t>(p));
    double* row = positions.data() + p * width;
    row[0] = 0.0;
    for (std::size_t s = 1; s <= n_steps; ++s) row[s] = row[s - 1] + sigma * standard_stable(alpha, rng);
  }
}

}  // namespace fracq::kernels
