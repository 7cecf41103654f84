#include "fracq/fracops.hpp"

#include "fracq/errors.hpp"
#include "fracq/fourier.hpp"
#include "fracq/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fracq {

using detail::require;

FractionalOrders::FractionalOrders(double eta, double mu) : eta_(eta), mu_(mu) {
  require(eta > 0.0 && eta <= 1.0, "time-fractional order eta must lie in (0, 1]");
  require(mu > 0.0 && mu <= 2.0, "space-fractional order mu must lie in (0, 2]");
}

GridSpec::GridSpec(std::size_t n, double length, double origin)
    : n_(n), length_(length), origin_(origin) {
  require(n >= 4 && std::has_single_bit(n), "grid size must be a power of two >= 4");
  require(std::isfinite(length) && length > 0.0, "grid length must be positive");
  require(std::isfinite(origin), "grid origin must be finite");
}

long GridSpec::signed_index(std::size_t j) const {
  const auto half = static_cast<long>(n_ / 2);
  const auto sj = static_cast<long>(j);
  return sj < half ? sj : sj - static_cast<long>(n_);
}

double GridSpec::wavenumber(std::size_t j) const {
  return 2.0 * std::numbers::pi * static_cast<double>(signed_index(j)) / length_;
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

std::vector<double> GridSpec::wavenumbers() const {
  std::vector<double> k(n_);
  for (std::size_t j = 0; j < n_; ++j) k[j] = wavenumber(j);
  return k;
}

ComplexField::ComplexField(GridSpec grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n()) {
    std::ostringstream msg;
    msg << "field has " << values_.size() << " values for a grid of " << grid_.n();
    throw ValidationError(msg.str());
  }
  for (const auto& v : values_) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), "field values must be finite");
  }
}

ComplexField ComplexField::zeros(const GridSpec& grid) {
  return ComplexField(grid, std::vector<cplx>(grid.n(), 0.0));
}

ComplexField ComplexField::sample(const GridSpec& grid, const std::function<cplx(double)>& f) {
  std::vector<cplx> v(grid.n());
  for (std::size_t j = 0; j < grid.n(); ++j) v[j] = f(grid.node(j));
  return ComplexField(grid, std::move(v));
}

ComplexField ComplexField::point_mass(const GridSpec& grid, std::size_t index) {
  require(index < grid.n(), "point-mass index outside the grid");
  std::vector<cplx> v(grid.n(), 0.0);
  v[index] = 1.0 / grid.spacing();
  return ComplexField(grid, std::move(v));
}

bool ComplexField::is_real() const {
  return std::all_of(values_.begin(), values_.end(), [](const cplx& v) { return v.imag() == 0.0; });
}

double ComplexField::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values_) s += std::norm(v);
  return std::sqrt(s * grid_.spacing());
}

cplx ComplexField::integral() const {
  cplx s = 0.0;
  for (const auto& v : values_) s += v;
  return s * grid_.spacing();
}

ModeSpectrum riesz_multiplier(const GridSpec& grid, const FractionalOrders& orders) {
  ModeSpectrum spec;
  spec.wavenumbers = grid.wavenumbers();
  spec.eigenvalues.resize(grid.n());
  const double mu = orders.mu();
  for (std::size_t j = 0; j < grid.n(); ++j) {
    const double k = std::abs(spec.wavenumbers[j]);
    spec.eigenvalues[j] = k == 0.0 ? 0.0 : std::pow(k, mu);
  }
  return spec;
}

ComplexField apply_fractional_laplacian(const ComplexField& field, const FractionalOrders& orders) {
  const ModeSpectrum spec = riesz_multiplier(field.grid(), orders);
  std::vector<cplx> modes = fourier::forward(field.values());
  kernels::scale_modes<Execution::parallel>(modes, spec.eigenvalues);
  fourier::inverse_inplace(modes);

  if (field.is_real()) {
    double peak = 0.0;
    for (const auto& v : modes) peak = std::max(peak, std::abs(v));
    for (auto& v : modes) {
      if (std::abs(v.imag()) <= 1e-12 * peak) v.imag(0.0);
    }
  }
  return ComplexField(field.grid(), std::move(modes));
}

std::vector<double> caputo_l1_weights(double eta, std::size_t steps) {
  require(eta > 0.0 && eta <= 1.0, "Caputo order eta must lie in (0, 1]");
  std::vector<double> b(steps);
  if (steps == 0) return b;
  const double e = 1.0 - eta;
  b[0] = 1.0;
  // pow(j, 0) is 1 for j > 0, so eta = 1 gives b_j = 0 for j >= 1 as required.
  double prev = 1.0;
  for (std::size_t j = 1; j < steps; ++j) {
    const double next = std::pow(static_cast<double>(j + 1), e);
    b[j] = next - prev;
    prev = next;
  }
  return b;
}

}  // namespace fracq
