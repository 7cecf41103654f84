#include "fracq/mittag_leffler.hpp"

#include "fracq/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fracq {
namespace {

using cplx = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

// The series is only attempted inside this radius, and only while the largest
// term (roughly exp(|z|^{1/eta})) stays representable without wiping out the
// sum; certification against the round-off bound decides the rest.
constexpr double kSeriesRadius = 5.0;
constexpr double kSeriesMaxLogTerm = 40.0;
constexpr int kSeriesMaxTerms = 5000;

// Ray angles for the Hankel contour; the one farther from the pole is used.
constexpr double kRayLow = 0.60 * kPi;
constexpr double kRayHigh = 0.95 * kPi;

}  // namespace

namespace ml_detail {

MittagLefflerValue series(double eta, cplx z) {
  const double r = std::abs(z);
  if (r == 0.0) return {1.0, 0.0};
  const double log_r = std::log(r);
  const double theta = std::arg(z);

  cplx sum = 0.0;
  double roundoff = 0.0;
  for (int n = 0; n < kSeriesMaxTerms; ++n) {
    const double lg = std::lgamma(eta * n + 1.0);
    const double log_mag = n * log_r - lg;
    const double mag = std::exp(log_mag);
    sum += std::polar(mag, n * theta);
    roundoff += mag * kEps * (4.0 + std::abs(n * log_r) + std::abs(lg) + std::abs(n * theta));

    const double log_ratio = log_r + lg - std::lgamma(eta * (n + 1) + 1.0);
    if (log_ratio < 0.0) {
      // Term ratios decrease monotonically from here on, so the tail is
      // bounded by a geometric series.
      const double ratio = std::exp(log_ratio);
      const double tail = mag * ratio / (1.0 - ratio);
      if (tail <= 0.25 * kEps * std::abs(sum) || tail < std::numeric_limits<double>::min()) {
        return {sum, roundoff + tail};
      }
    }
  }
  return {sum, std::numeric_limits<double>::infinity()};
}

MittagLefflerValue contour(double eta, cplx z) {
  const double r = std::abs(z);
  if (r == 0.0) return {1.0, 0.0};
  const double arg_z = std::arg(z);
  // Magnitude of the argument of the pole s0 = z^{1/eta}; it lies on the
  // principal sheet only when this is below pi.
  const double pole_angle = std::abs(arg_z) / eta;
  const double theta = pole_angle < 0.5 * (kRayLow + kRayHigh) ? kRayHigh : kRayLow;

  cplx residue = 0.0;
  double residue_err = 0.0;
  if (pole_angle < theta) {
    const cplx s0 = std::polar(std::pow(r, 1.0 / eta), arg_z / eta);
    residue = std::exp(s0) / eta;
    residue_err = std::abs(residue) * kEps * (4.0 + std::abs(s0));
  }

  // Along s = rho e^{+-i theta} with rho = u^{1/eta}, the measure
  // s^{eta-1} ds / (s^eta - z) becomes e^{+-i theta eta} du / (eta (u e^{+-i theta eta} - z)).
  const cplx ray_up = std::polar(1.0, theta);
  const cplx ray_dn = std::conj(ray_up);
  const cplx rot_up = std::polar(1.0, theta * eta);
  const cplx rot_dn = std::conj(rot_up);
  const cplx scale = 1.0 / (2.0 * kPi * cplx(0.0, 1.0) * eta);
  auto integrand = [&](double u) -> cplx {
    const double rho = std::pow(u, 1.0 / eta);
    const cplx up = std::exp(rho * ray_up) * rot_up / (u * rot_up - z);
    const cplx dn = std::exp(rho * ray_dn) * rot_dn / (u * rot_dn - z);
    return scale * (up - dn);
  };

  // exp(rho cos(theta)) < e^{-60} beyond this point.
  const double upper = std::pow(60.0 / std::abs(std::cos(theta)), eta);
  // The integrand carries u^{1/eta - 1} behaviour at u = 0, which tanh-sinh
  // absorbs without the endless bisection Gauss-Kronrod needs there.
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  double quad_err = 0.0;
  double l1 = 0.0;
  const cplx integral = integrator.integrate(integrand, 0.0, upper, 1e-13, &quad_err, &l1);

  const cplx value = residue + integral;
  double err = residue_err + quad_err + 64.0 * kEps * l1;
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    err = std::numeric_limits<double>::infinity();
  }
  return {value, err};
}

}  // namespace ml_detail

MittagLefflerValue mittag_leffler_checked(double eta, cplx z, double rel_tol) {
  detail::require(eta > 0.0 && eta <= 1.0, "Mittag-Leffler order must lie in (0, 1]");
  detail::require(std::isfinite(z.real()) && std::isfinite(z.imag()),
                  "Mittag-Leffler argument must be finite");
  if (eta == 1.0) {
    const cplx v = std::exp(z);
    return {v, std::abs(v) * kEps * (2.0 + std::abs(z))};
  }
  if (z == cplx(0.0)) return {1.0, 0.0};

  const double r = std::abs(z);
  MittagLefflerValue best{0.0, std::numeric_limits<double>::infinity()};
  if (r <= kSeriesRadius && std::pow(r, 1.0 / eta) <= kSeriesMaxLogTerm) {
    best = ml_detail::series(eta, z);
    if (best.certified(rel_tol)) return best;
  }
  const MittagLefflerValue c = ml_detail::contour(eta, z);
  if (c.certified(rel_tol)) return c;
  const auto rel = [](const MittagLefflerValue& v) { return v.error_estimate / std::abs(v.value); };
  return (std::isfinite(rel(best)) && rel(best) < rel(c)) ? best : c;
}

cplx mittag_leffler(double eta, cplx z, double rel_tol) {
  const MittagLefflerValue v = mittag_leffler_checked(eta, z, rel_tol);
  if (!v.certified(rel_tol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Mittag-Leffler E_" << eta << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
        << "i) not certified to relative tolerance " << rel_tol << " (error estimate "
        << v.error_estimate << ", |value| " << std::abs(v.value) << ")";
    throw AccuracyLoss(msg.str());
  }
  return v.value;
}

}  // namespace fracq
