#include "fracq/quantum.hpp"

#include "fracq/errors.hpp"
#include "fracq/fourier.hpp"
#include "fracq/mittag_leffler.hpp"

#include <cmath>
#include <numbers>

namespace fracq {

using detail::require;

namespace {

template <class F>
void dispatch(Execution exec, F&& f) {
  if (exec == Execution::serial) {
    f.template operator()<Execution::serial>();
  } else {
    f.template operator()<Execution::parallel>();
  }
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

PhysicalConstants::PhysicalConstants(double mass, double hbar, double d_mu, double h_eta)
    : mass_(mass), hbar_(hbar), d_mu_(d_mu), h_eta_(h_eta) {
  require(positive_finite(mass), "mass must be positive");
  require(positive_finite(hbar), "hbar must be positive");
  require(positive_finite(d_mu), "D_mu must be positive");
  require(positive_finite(h_eta), "h_eta must be positive");
}

PhysicalConstants PhysicalConstants::classical(double mass, double hbar) {
  return PhysicalConstants(mass, hbar, 1.0 / (2.0 * mass), hbar);
}

double PhysicalConstants::h_mu(double mu) const {
  return std::sqrt(2.0 * mass_ * d_mu_ * std::pow(hbar_, mu));
}

double kinetic_energy(double p, const PhysicalConstants& c, const FractionalOrders& orders) {
  return c.d_mu() * std::pow(std::abs(p), orders.mu());
}

double quadratic_kinetic_energy(double p, const PhysicalConstants& c) {
  return p * p / (2.0 * c.mass());
}

double dispersion_energy(double k, const PhysicalConstants& c, const FractionalOrders& orders) {
  const double mu = orders.mu();
  return c.d_mu() * std::pow(c.hbar(), mu) * std::pow(std::abs(k), mu);
}

double momentum_from_wavenumber(double k, const PhysicalConstants& c, const FractionalOrders& orders,
                                MomentumBranch branch) {
  const double mu = orders.mu();
  const double magnitude = c.h_mu(mu) * std::pow(std::abs(k), 0.5 * mu);
  if (branch == MomentumBranch::odd && k < 0.0) return -magnitude;
  return magnitude;
}

double planck_energy(double nu, const PhysicalConstants& c, double eta) {
  require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
  require(std::isfinite(nu) && nu >= 0.0, "frequency must be nonnegative");
  return c.h_eta() * std::pow(nu, eta);
}

double frequency_from_energy(double energy, const PhysicalConstants& c, double eta) {
  require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
  require(std::isfinite(energy) && energy >= 0.0, "energy must be nonnegative");
  return std::pow(energy / c.h_eta(), 1.0 / eta);
}

QuantumNumbers quantum_numbers(double k, const PhysicalConstants& c, const FractionalOrders& orders,
                               MomentumBranch branch) {
  QuantumNumbers q;
  q.k = k;
  q.p = momentum_from_wavenumber(k, c, orders, branch);
  q.energy = dispersion_energy(k, c, orders);
  q.kinetic = quadratic_kinetic_energy(q.p, c);
  q.nu = frequency_from_energy(q.energy, c, orders.eta());
  return q;
}

std::pair<double, double> corrected_momentum_energy_check(double energy, const PhysicalConstants& c,
                                                          const FractionalOrders& orders) {
  require(std::isfinite(energy) && energy > 0.0, "energy must be positive");
  const double mu = orders.mu();
  const double kappa = std::pow(energy, 1.0 / mu);
  const double k = std::pow(energy / (c.d_mu() * std::pow(c.hbar(), mu)), 1.0 / mu);
  return {kappa, momentum_from_wavenumber(k, c, orders)};
}

// --- potentials ---------------------------------------------------------------

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::cosine: return "cosine";
    case PotentialKind::square: return "square";
    case PotentialKind::barrier: return "barrier";
    case PotentialKind::well: return "well";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(const std::string& name) {
  if (name == "cosine") return PotentialKind::cosine;
  if (name == "square") return PotentialKind::square;
  if (name == "barrier") return PotentialKind::barrier;
  if (name == "well") return PotentialKind::well;
  throw ValidationError("unknown potential kind '" + name + "'");
}

PotentialSpec::PotentialSpec(PotentialKind kind_, double amplitude_, double period_,
                             double feature_width_)
    : kind(kind_), amplitude(amplitude_), period(period_), feature_width(feature_width_) {
  require(std::isfinite(amplitude), "potential amplitude must be finite");
  require(positive_finite(period), "potential period must be positive");
  if (kind == PotentialKind::barrier || kind == PotentialKind::well) {
    require(feature_width > 0.0 && feature_width < 1.0,
            "barrier/well width must be a fraction of the period in (0, 1)");
  }
}

double PotentialSpec::value(double x) const {
  const double cell = x - period * std::round(x / period);  // in [-a/2, a/2]
  switch (kind) {
    case PotentialKind::cosine:
      return amplitude * std::cos(2.0 * std::numbers::pi * x / period);
    case PotentialKind::square: {
      const double c = std::cos(2.0 * std::numbers::pi * x / period);
      return c > 0.0 ? amplitude : (c < 0.0 ? -amplitude : 0.0);
    }
    case PotentialKind::barrier:
      return std::abs(cell) < 0.5 * feature_width * period ? amplitude : 0.0;
    case PotentialKind::well:
      return std::abs(cell) < 0.5 * feature_width * period ? -amplitude : 0.0;
  }
  return 0.0;
}

double PotentialSpec::fourier_coefficient(long m) const {
  const double pi = std::numbers::pi;
  const auto md = static_cast<double>(m);
  switch (kind) {
    case PotentialKind::cosine:
      return (m == 1 || m == -1) ? 0.5 * amplitude : 0.0;
    case PotentialKind::square:
      if (m % 2 == 0) return 0.0;
      return amplitude * 2.0 * std::sin(0.5 * pi * md) / (pi * md);
    case PotentialKind::barrier:
    case PotentialKind::well: {
      const double sign = kind == PotentialKind::barrier ? 1.0 : -1.0;
      if (m == 0) return sign * amplitude * feature_width;
      return sign * amplitude * std::sin(pi * md * feature_width) / (pi * md);
    }
  }
  return 0.0;
}

void PotentialSpec::check_commensurate(const GridSpec& grid) const {
  const double cells = grid.length() / period;
  require(std::abs(cells - std::round(cells)) <= 1e-9 * cells && std::round(cells) >= 1.0,
          "potential period must divide the grid length an integer number of times");
}

// --- dynamics -------------------------------------------------------------------

ComplexField split_step_evolve(const ComplexField& psi, const PotentialSpec& potential,
                               const PhysicalConstants& c, const FractionalOrders& orders, double dt,
                               std::size_t steps, Execution exec) {
  require(orders.eta() == 1.0, "split-step evolution requires eta = 1; use evolve_free_fractional");
  require(std::isfinite(dt) && dt > 0.0, "time step dt must be positive");
  const GridSpec& grid = psi.grid();
  potential.check_commensurate(grid);
  const std::size_t n = grid.n();
  const double mu = orders.mu();

  std::vector<cplx> half_potential(n);
  for (std::size_t j = 0; j < n; ++j) {
    half_potential[j] = std::polar(1.0, -potential.value(grid.node(j)) * dt / (2.0 * c.hbar()));
  }
  const ModeSpectrum spec = riesz_multiplier(grid, orders);
  const double kinetic_rate = c.d_mu() * std::pow(c.hbar(), mu - 1.0);
  std::vector<cplx> kinetic(n);
  for (std::size_t j = 0; j < n; ++j) kinetic[j] = std::polar(1.0, -kinetic_rate * spec.eigenvalues[j] * dt);

  std::vector<cplx> v(psi.values().begin(), psi.values().end());
  dispatch(exec, [&]<Execution E>() {
    for (std::size_t s = 0; s < steps; ++s) {
      kernels::multiply_pointwise<E>(v, half_potential);
      fourier::forward_inplace(v);
      kernels::multiply_pointwise<E>(v, kinetic);
      fourier::inverse_inplace(v);
      kernels::multiply_pointwise<E>(v, half_potential);
    }
  });
  return ComplexField(grid, std::move(v));
}

cplx free_evolution_argument(double a_over_h, double t, double eta, FractionalPhase phase) {
  const double t_eta = std::pow(t, eta);
  if (phase == FractionalPhase::imaginary_unit) return cplx(0.0, -a_over_h * t_eta);
  return a_over_h * t_eta * std::polar(1.0, -0.5 * std::numbers::pi * eta);
}

ComplexField evolve_free_fractional(const ComplexField& psi, const PhysicalConstants& c,
                                    const FractionalOrders& orders, double t, FractionalPhase phase,
                                    Execution exec) {
  require(std::isfinite(t) && t >= 0.0, "evolution time must be nonnegative");
  if (t == 0.0) return psi;
  const GridSpec& grid = psi.grid();
  const std::size_t n = grid.n();
  const double eta = orders.eta();
  const ModeSpectrum spec = riesz_multiplier(grid, orders);
  // A_k = (h_mu^2 / 2m) |k|^mu = D_mu hbar^mu |k|^mu.
  const double a_scale = c.h_mu(orders.mu()) * c.h_mu(orders.mu()) / (2.0 * c.mass()) / c.h_eta();

  const std::size_t half = n / 2 + 1;
  std::vector<cplx> args(half);
  std::vector<cplx> ml(half);
  for (std::size_t j = 0; j < half; ++j) {
    args[j] = free_evolution_argument(a_scale * spec.eigenvalues[j], t, eta, phase);
  }
  dispatch(exec, [&]<Execution E>() { kernels::mittag_leffler_map<E>(eta, args, ml); });
  std::vector<cplx> factors(n);
  for (std::size_t j = 0; j < half; ++j) factors[j] = ml[j];
  for (std::size_t j = half; j < n; ++j) factors[j] = factors[n - j];

  std::vector<cplx> modes = fourier::forward(psi.values());
  dispatch(exec, [&]<Execution E>() { kernels::multiply_pointwise<E>(modes, factors); });
  fourier::inverse_inplace(modes);
  return ComplexField(grid, std::move(modes));
}

}  // namespace fracq
