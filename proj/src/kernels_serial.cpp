// Reference implementations. These stay deliberately plain: they define the
// expected output of the OpenMP kernels in kernels_omp.cpp.

#include "fracq/kernels.hpp"

#include "fracq/errors.hpp"
#include "fracq/mittag_leffler.hpp"
#include "fracq/random.hpp"

#include <cmath>

namespace fracq::kernels {

L1History::L1History(std::span<const cplx> initial, std::size_t capacity_)
    : capacity(capacity_),
      current(initial.begin(), initial.end()),
      increments(initial.size() * capacity_, cplx(0.0)) {}

template <>
void scale_modes<Execution::serial>(std::span<cplx> values, std::span<const double> factors) {
  for (std::size_t j = 0; j < values.size(); ++j) values[j] *= factors[j];
}

template <>
void multiply_pointwise<Execution::serial>(std::span<cplx> values, std::span<const cplx> factors) {
  for (std::size_t j = 0; j < values.size(); ++j) values[j] *= factors[j];
}

template <>
void mittag_leffler_map<Execution::serial>(double eta, std::span<const cplx> args,
                                           std::span<cplx> out) {
  for (std::size_t j = 0; j < args.size(); ++j) out[j] = mittag_leffler(eta, args[j]);
}

template <>
void l1_step<Execution::serial>(L1History& h, std::span<const double> weights,
                                std::span<const double> diagonal) {
  detail::require(h.filled < h.capacity, "L1 history is full");
  const std::size_t n = h.filled;
  for (std::size_t m = 0; m < h.modes(); ++m) {
    const cplx* inc = h.increments.data() + m * h.capacity;
    cplx history = 0.0;
    // weights[j] pairs with the increment j steps before the one being formed.
    for (std::size_t j = 1; j <= n; ++j) history += weights[j] * inc[n - j];
    const cplx next = (weights[0] * h.current[m] - history) / diagonal[m];
    h.increments[m * h.capacity + n] = next - h.current[m];
    h.current[m] = next;
  }
  ++h.filled;
}

template <>
void abs_moments<Execution::serial>(std::span<const double> positions, std::size_t n_paths,
                                    std::size_t n_times, double delta, std::span<double> out) {
  for (std::size_t t = 0; t < n_times; ++t) {
    double s = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) s += std::pow(std::abs(positions[p * n_times + t]), delta);
    out[t] = s / static_cast<double>(n_paths);
  }
}

template <>
void stable_walks<Execution::serial>(double alpha, double scale_per_step, std::size_t n_steps,
                                     std::uint64_t seed, std::size_t first_path,
                                     std::size_t n_paths, std::span<double> positions) {
  const double sigma = std::pow(scale_per_step, 1.0 / alpha);
  const std::size_t width = n_steps + 1;
  for (std::size_t p = 0; p < n_paths; ++p) {
    RandomStream rng(seed, first_path + p);
    double* row = positions.data() + p * width;
    row[0] = 0.0;
    for (std::size_t s = 1; s <= n_steps; ++s) row[s] = row[s - 1] + sigma * standard_stable(alpha, rng);
  }
}

}  // namespace fracq::kernels
