#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracq::stats {

/// Ordinary least squares y = intercept + slope x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_stderr = 0.0;
  /// Half-width of the two-sided confidence interval on the slope (Student t, n - 2 dof).
  double slope_half_width = 0.0;
  std::size_t n = 0;
};

/// Needs at least three points and two distinct abscissae.
LinearFit linear_regression(std::span<const double> x, std::span<const double> y,
                            double confidence = 0.95);

/// Two-sided Student-t quantile t_{1-(1-confidence)/2, dof}.
double student_t_quantile(double confidence, double dof);

/// One-sample Kolmogorov-Smirnov distance sup |F_n - F|. Sorts a copy of the samples.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic two-sample rejection threshold c(alpha) sqrt((n + m) / (n m)).
double ks_two_sample_critical(double alpha, std::size_t n, std::size_t m);

/// Monotone (PCHIP) interpolant of a tabulated CDF, clamped to [0, 1] outside the table.
class TabulatedCdf {
public:
  TabulatedCdf(std::vector<double> x, std::vector<double> cdf);
  double operator()(double x) const;

  double lower() const { return lower_; }
  double upper() const { return upper_; }

private:
  double lower_;
  double upper_;
  std::function<double(double)> interp_;
};

}  // namespace fracq::stats
