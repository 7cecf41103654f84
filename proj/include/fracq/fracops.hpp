#pragma once

// Fractional-calculus primitives on a periodic 1-D grid: the Riesz fractional
// Laplacian as a Fourier multiplier, Caputo L1 weights, and the grid/field
// value types every other module builds on.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracq {

using cplx = std::complex<double>;

/// The (eta, mu) pair: time-fractional order 0 < eta <= 1 and space-fractional
/// order 0 < mu <= 2.
class FractionalOrders {
public:
  FractionalOrders(double eta, double mu);

  double eta() const { return eta_; }
  double mu() const { return mu_; }

  bool operator==(const FractionalOrders&) const = default;

private:
  double eta_;
  double mu_;
};

/// Uniform periodic grid x_j = origin + j * spacing, j = 0..n-1, with the
/// signed wavenumber lattice k_j = 2*pi*jt/length, jt in [-n/2, n/2).
///
/// Modes are stored in transform order: index j holds signed index j for
/// j < n/2 and j - n otherwise, so the Nyquist entry carries -n/2.
class GridSpec {
public:
  GridSpec(std::size_t n, double length, double origin = 0.0);

  std::size_t n() const { return n_; }
  double length() const { return length_; }
  double origin() const { return origin_; }
  double spacing() const { return length_ / static_cast<double>(n_); }

  double node(std::size_t j) const { return origin_ + spacing() * static_cast<double>(j); }
  long signed_index(std::size_t j) const;
  double wavenumber(std::size_t j) const;

  std::vector<double> nodes() const;
  std::vector<double> wavenumbers() const;

  bool operator==(const GridSpec&) const = default;

private:
  std::size_t n_;
  double length_;
  double origin_;
};

/// Sampled complex field on a GridSpec. Values are finite by construction.
class ComplexField {
public:
  ComplexField(GridSpec grid, std::vector<cplx> values);

  static ComplexField zeros(const GridSpec& grid);
  static ComplexField sample(const GridSpec& grid, const std::function<cplx(double)>& f);
  /// Discrete delta of unit mass: 1/spacing at node `index`, zero elsewhere.
  static ComplexField point_mass(const GridSpec& grid, std::size_t index);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const cplx& operator[](std::size_t j) const { return values_[j]; }

  bool is_real() const;
  /// Discrete L2 norm sqrt(sum |v_j|^2 * spacing).
  double l2_norm() const;
  /// Discrete integral sum v_j * spacing.
  cplx integral() const;

private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

/// Wavenumbers and Riesz eigenvalues |k|^mu in transform order.
struct ModeSpectrum {
  std::vector<double> wavenumbers;
  std::vector<double> eigenvalues;
};

ModeSpectrum riesz_multiplier(const GridSpec& grid, const FractionalOrders& orders);

/// (-Delta)^{mu/2} applied spectrally. Real input yields real output: imaginary
/// round-off below 1e-12 of the peak magnitude is truncated.
ComplexField apply_fractional_laplacian(const ComplexField& field, const FractionalOrders& orders);

/// L1 weights b_j = (j+1)^{1-eta} - j^{1-eta}, j = 0..steps-1, with b_0 = 1.
std::vector<double> caputo_l1_weights(double eta, std::size_t steps);

}  // namespace fracq
