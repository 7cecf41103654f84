#include "fracq/diffusion.hpp"

#include "fracq/errors.hpp"
#include "fracq/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fracq {

using detail::require;

namespace {

// x^e with 0^e taken as 0 (e >= 0); the eta = 1 limit of the L1 weights needs it.
double pow_zero_base(double x, double e) { return x == 0.0 ? 0.0 : std::pow(x, e); }

// Clears imaginary round-off when the exact answer is known to be real.
ComplexField to_field(const GridSpec& grid, std::vector<cplx> values, bool real) {
  if (real) {
    double peak = 0.0;
    for (const auto& v : values) peak = std::max(peak, std::abs(v));
    for (auto& v : values) {
      if (std::abs(v.imag()) <= 1e-12 * peak) v.imag(0.0);
    }
  }
  return ComplexField(grid, std::move(values));
}

template <class F>
void dispatch(Execution exec, F&& f) {
  if (exec == Execution::serial) {
    f.template operator()<Execution::serial>();
  } else {
    f.template operator()<Execution::parallel>();
  }
}

void check_times(const std::vector<double>& times, const char* what) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]) && times[i] >= 0.0, std::string(what) + " must be nonnegative");
    if (i > 0) require(times[i] > times[i - 1], std::string(what) + " must be strictly increasing");
  }
}

}  // namespace

DiffusionProblem::DiffusionProblem(FractionalOrders orders_, double gamma_, ComplexField initial_)
    : orders(orders_), gamma(gamma_), initial(std::move(initial_)) {
  require(std::isfinite(gamma) && gamma > 0.0, "diffusion coefficient gamma must be positive");
}

DiffusionSolution solve_mode_exact(const DiffusionProblem& problem, const std::vector<double>& times,
                                   Execution exec) {
  check_times(times, "snapshot times");
  const GridSpec& grid = problem.grid();
  const std::size_t n = grid.n();
  const double eta = problem.orders.eta();
  const ModeSpectrum spec = riesz_multiplier(grid, problem.orders);
  const std::vector<cplx> modes0 = fourier::forward(problem.initial.values());
  const bool real = problem.initial.is_real();

  DiffusionSolution sol{problem.orders, problem.gamma, times, {}};
  sol.snapshots.reserve(times.size());

  // Modes j and n - j share |k|, so only the first half is evaluated.
  const std::size_t half = n / 2 + 1;
  std::vector<cplx> args(half);
  std::vector<cplx> ml(half);
  std::vector<double> factors(n);
  for (const double t : times) {
    if (t == 0.0) {
      sol.snapshots.push_back(problem.initial);
      continue;
    }
    const double t_eta = std::pow(t, eta);
    for (std::size_t j = 0; j < half; ++j) args[j] = -problem.gamma * spec.eigenvalues[j] * t_eta;
    dispatch(exec, [&]<Execution E>() { kernels::mittag_leffler_map<E>(eta, args, ml); });
    for (std::size_t j = 0; j < half; ++j) factors[j] = ml[j].real();
    for (std::size_t j = half; j < n; ++j) factors[j] = factors[n - j];

    std::vector<cplx> modes = modes0;
    dispatch(exec, [&]<Execution E>() { kernels::scale_modes<E>(modes, factors); });
    fourier::inverse_inplace(modes);
    sol.snapshots.push_back(to_field(grid, std::move(modes), real));
  }
  return sol;
}

namespace {

// Shared L1 driver. `row(step, weights)` fills weights[0..step-1] for the step
// forming T^step and returns the implicit coefficient c with
// (weights[0] + c lambda) T^step = weights[0] T^{step-1} - sum_{j>=1} weights[j] dT^{step-j}.
template <class RowFn>
DiffusionSolution run_l1(const DiffusionProblem& problem, const std::vector<double>& mesh,
                         std::size_t record_every, Execution exec, RowFn&& row) {
  require(record_every >= 1, "record_every must be at least 1");
  const GridSpec& grid = problem.grid();
  const std::size_t steps = mesh.size() - 1;
  const ModeSpectrum spec = riesz_multiplier(grid, problem.orders);
  const bool real = problem.initial.is_real();

  DiffusionSolution sol{problem.orders, problem.gamma, {0.0}, {problem.initial}};
  const std::vector<cplx> modes0 = fourier::forward(problem.initial.values());
  kernels::L1History history(modes0, steps);
  std::vector<double> weights(steps + 1, 0.0);
  std::vector<double> diagonal(grid.n());

  for (std::size_t step = 1; step <= steps; ++step) {
    const double c = row(step, weights);
    for (std::size_t m = 0; m < grid.n(); ++m) diagonal[m] = weights[0] + c * spec.eigenvalues[m];
    dispatch(exec, [&]<Execution E>() { kernels::l1_step<E>(history, weights, diagonal); });
    if (step % record_every == 0 || step == steps) {
      std::vector<cplx> values = history.current;
      fourier::inverse_inplace(values);
      sol.times.push_back(mesh[step]);
      sol.snapshots.push_back(to_field(grid, std::move(values), real));
    }
  }
  return sol;
}

}  // namespace

DiffusionSolution solve_l1_stepping(const DiffusionProblem& problem, double dt, std::size_t steps,
                                    std::size_t record_every, Execution exec) {
  require(std::isfinite(dt) && dt > 0.0, "time step dt must be positive");
  const double eta = problem.orders.eta();
  const std::vector<double> b = caputo_l1_weights(eta, steps);
  std::vector<double> mesh(steps + 1);
  for (std::size_t m = 0; m <= steps; ++m) mesh[m] = dt * static_cast<double>(m);
  const double c = problem.gamma * std::pow(dt, eta) * std::tgamma(2.0 - eta);
  return run_l1(problem, mesh, record_every, exec, [&](std::size_t step, std::vector<double>& w) {
    std::copy_n(b.begin(), step, w.begin());
    return c;
  });
}

DiffusionSolution solve_l1_mesh(const DiffusionProblem& problem, const std::vector<double>& mesh,
                                std::size_t record_every, Execution exec) {
  require(!mesh.empty() && mesh.front() == 0.0, "L1 mesh must start at t = 0");
  check_times(mesh, "L1 mesh");
  const double eta = problem.orders.eta();
  const double e = 1.0 - eta;
  const double g = std::tgamma(2.0 - eta);
  return run_l1(problem, mesh, record_every, exec, [&](std::size_t step, std::vector<double>& w) {
    // Caputo L1 on cell k: [(t_n - t_{k-1})^{1-eta} - (t_n - t_k)^{1-eta}] / (tau_k Gamma(2-eta)),
    // rescaled by Gamma(2-eta) tau_n^eta so the uniform case reproduces b_j.
    const double tn = mesh[step];
    const double scale = std::pow(mesh[step] - mesh[step - 1], eta);
    for (std::size_t k = 1; k <= step; ++k) {
      const double tau = mesh[k] - mesh[k - 1];
      w[step - k] = (pow_zero_base(tn - mesh[k - 1], e) - pow_zero_base(tn - mesh[k], e)) / tau * scale;
    }
    return problem.gamma * g * scale;
  });
}

std::vector<double> graded_mesh(double horizon, std::size_t steps, double grading) {
  require(std::isfinite(horizon) && horizon > 0.0, "horizon must be positive");
  require(steps >= 1, "graded mesh needs at least one step");
  require(std::isfinite(grading) && grading >= 1.0, "grading exponent must be >= 1");
  std::vector<double> mesh(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) {
    mesh[j] = horizon * std::pow(static_cast<double>(j) / static_cast<double>(steps), grading);
  }
  mesh.back() = horizon;
  return mesh;
}

double optimal_grading(double eta) {
  require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
  return (2.0 - eta) / eta;
}

MomentSeries fractional_msd(const DiffusionSolution& solution, double delta) {
  const double mu = solution.orders.mu();
  require(std::isfinite(delta) && delta > 0.0, "moment order delta must be positive");
  if (mu < 2.0) {
    require(delta < mu, "moment order delta must be below mu: the Levy moment diverges otherwise");
  } else {
    require(delta <= 2.0, "moment order delta must not exceed 2");
  }
  require(!solution.snapshots.empty(), "solution has no snapshots");

  const GridSpec& grid = solution.snapshots.front().grid();
  const double h = grid.spacing();
  const double length = grid.length();
  const double two_pi = 2.0 * std::numbers::pi;

  // Circular mean of the first snapshot.
  cplx phase_sum = 0.0;
  for (std::size_t j = 0; j < grid.n(); ++j) {
    phase_sum += solution.snapshots.front()[j].real() *
                 std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(grid.n()));
  }
  double frac = std::arg(phase_sum) / two_pi;
  if (frac < 0.0) frac += 1.0;
  const double x0 = grid.origin() + frac * length;

  MomentSeries out;
  out.times = solution.times;
  for (std::size_t s = 0; s < solution.snapshots.size(); ++s) {
    const ComplexField& snap = solution.snapshots[s];
    double mass = 0.0;
    for (std::size_t j = 0; j < grid.n(); ++j) mass += snap[j].real();
    mass *= h;
    require(mass > 0.0, "snapshot has no positive mass to normalise");

    double moment = 0.0;
    double confined = 0.0;
    for (std::size_t j = 0; j < grid.n(); ++j) {
      double d = grid.node(j) - x0;
      d -= length * std::round(d / length);
      const double w = snap[j].real() * h / mass;
      if (w == 0.0) continue;
      moment += std::pow(std::abs(d), delta) * w;
      if (std::abs(d) <= 0.25 * length) confined += w;
    }
    out.values.push_back(moment);
    out.confined_mass.push_back(confined);
    if (confined < kConfinementThreshold) {
      std::ostringstream msg;
      msg << "t=" << solution.times[s] << ": only " << confined * 100.0
          << "% of the mass lies within a quarter domain of x0; periodic wraparound contaminates the moment";
      out.warnings.push_back(msg.str());
    }
  }
  return out;
}

}  // namespace fracq
