#pragma once

#include <complex>

namespace fracq {

/// A Mittag-Leffler value with its estimated absolute error.
struct MittagLefflerValue {
  std::complex<double> value;
  double error_estimate = 0.0;

  bool certified(double rel_tol) const {
    return error_estimate <= rel_tol * std::abs(value);
  }
};

inline constexpr double kMittagLefflerTolerance = 1e-10;

/// E_eta(z) = sum_n z^n / Gamma(eta n + 1) for 0 < eta <= 1.
///
/// Small arguments use the power series whenever its round-off bound meets the
/// tolerance; everything else goes through the Laplace-inversion integral on a
/// two-ray Hankel contour plus the residue of the single principal-sheet pole.
/// Throws AccuracyLoss when neither regime can certify `rel_tol`.
std::complex<double> mittag_leffler(double eta, std::complex<double> z,
                                    double rel_tol = kMittagLefflerTolerance);

/// As mittag_leffler but returns the error estimate instead of throwing.
MittagLefflerValue mittag_leffler_checked(double eta, std::complex<double> z,
                                          double rel_tol = kMittagLefflerTolerance);

namespace ml_detail {
// The two regimes, exposed for the overlap tests.
MittagLefflerValue series(double eta, std::complex<double> z);
MittagLefflerValue contour(double eta, std::complex<double> z);
}  // namespace ml_detail

}  // namespace fracq
