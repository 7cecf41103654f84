#include "fracq/stats.hpp"

#include "fracq/errors.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>

namespace fracq::stats {

using detail::require;

double student_t_quantile(double confidence, double dof) {
  require(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
  require(dof > 0.0, "degrees of freedom must be positive");
  const boost::math::students_t dist(dof);
  return boost::math::quantile(boost::math::complement(dist, 0.5 * (1.0 - confidence)));
}

LinearFit linear_regression(std::span<const double> x, std::span<const double> y, double confidence) {
  require(x.size() == y.size(), "regression inputs differ in length");
  const std::size_t n = x.size();
  require(n >= 3, "regression needs at least three points");

  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  require(sxx > 0.0, "regression needs at least two distinct abscissae");

  LinearFit fit;
  fit.n = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  const double dof = static_cast<double>(n - 2);
  fit.slope_stderr = std::sqrt(sse / dof / sxx);
  fit.slope_half_width = student_t_quantile(confidence, dof) * fit.slope_stderr;
  return fit;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  require(!samples.empty(), "KS distance needs samples");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), "KS two-sample test needs samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  const auto dn = static_cast<double>(n);
  const auto dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

TabulatedCdf::TabulatedCdf(std::vector<double> x, std::vector<double> cdf) {
  require(x.size() == cdf.size() && x.size() >= 4, "tabulated CDF needs at least four points");
  for (std::size_t i = 1; i < x.size(); ++i) {
    require(x[i] > x[i - 1], "tabulated CDF abscissae must increase");
    require(cdf[i] >= cdf[i - 1], "tabulated CDF values must be nondecreasing");
  }
  lower_ = x.front();
  upper_ = x.back();
  boost::math::interpolators::pchip<std::vector<double>> spline(std::move(x), std::move(cdf));
  interp_ = [spline = std::move(spline)](double v) { return spline(v); };
}

double TabulatedCdf::operator()(double x) const {
  if (x <= lower_) return 0.0;
  if (x >= upper_) return 1.0;
  return std::clamp(interp_(x), 0.0, 1.0);
}

}  // namespace fracq::stats
