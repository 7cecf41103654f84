#pragma once

// Frequency power laws alpha(omega) = alpha0 |omega|^mu fitted in log-log space.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracq {

struct AttenuationRow {
  double omega;
  double alpha;
  std::string label;
};

struct AttenuationDataset {
  /// Validates positivity and at least three distinct frequencies.
  explicit AttenuationDataset(std::vector<AttenuationRow> rows, std::string frequency_unit = "",
                              std::string attenuation_unit = "");

  std::vector<AttenuationRow> rows;
  std::string frequency_unit;
  std::string attenuation_unit;
};

struct FrequencyRange {
  double lo;
  double hi;
};

/// Parses "lo:hi".
FrequencyRange parse_frequency_range(const std::string& text);

struct PowerLawFit {
  double alpha0 = 0.0;
  double mu_exp = 0.0;
  double r_squared = 0.0;
  /// 95% Student-t half-width on mu_exp.
  double ci_halfwidth = 0.0;
  double decades_spanned = 0.0;
  double intercept = 0.0;
  std::size_t n = 0;
  std::optional<FrequencyRange> range;
};

/// OLS on (ln omega, ln alpha), optionally restricted to lo <= omega <= hi.
PowerLawFit fit_power_law(const AttenuationDataset& data, std::optional<FrequencyRange> range = std::nullopt);

std::vector<double> predict_attenuation(const PowerLawFit& fit, const std::vector<double>& omegas);

/// Header "omega,alpha" or "omega,alpha,label". Errors cite line and column.
AttenuationDataset ingest_csv(std::istream& in);
AttenuationDataset ingest_csv(const std::string& path);

/// {alpha0, mu, r2, ci, n, range, decades}.
std::string fit_report_json(const PowerLawFit& fit);

}  // namespace fracq
