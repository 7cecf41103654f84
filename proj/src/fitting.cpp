#include "fracq/fitting.hpp"

#include "fracq/errors.hpp"
#include "fracq/stats.hpp"
#include "fracq/table_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace fracq {

using detail::require;

AttenuationDataset::AttenuationDataset(std::vector<AttenuationRow> r, std::string fu, std::string au)
    : rows(std::move(r)), frequency_unit(std::move(fu)), attenuation_unit(std::move(au)) {
  require(!rows.empty(), "attenuation dataset is empty");
  std::set<double> distinct;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(std::isfinite(rows[i].omega) && rows[i].omega > 0.0,
            "row " + std::to_string(i + 1) + ": omega must be positive");
    require(std::isfinite(rows[i].alpha) && rows[i].alpha > 0.0,
            "row " + std::to_string(i + 1) + ": alpha must be positive");
    distinct.insert(rows[i].omega);
  }
  require(distinct.size() >= 3, "attenuation dataset needs at least three distinct frequencies");
}

FrequencyRange parse_frequency_range(const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos, "frequency range must look like lo:hi");
  const double lo = io::parse_double(text.substr(0, colon), 1, 1);
  const double hi = io::parse_double(text.substr(colon + 1), 1, colon + 2);
  require(lo > 0.0 && hi > lo, "frequency range needs 0 < lo < hi");
  return {lo, hi};
}

PowerLawFit fit_power_law(const AttenuationDataset& data, std::optional<FrequencyRange> range) {
  if (range) require(range->lo > 0.0 && range->hi > range->lo, "frequency range needs 0 < lo < hi");
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& r : data.rows) {
    if (range && (r.omega < range->lo || r.omega > range->hi)) continue;
    lx.push_back(std::log(r.omega));
    ly.push_back(std::log(r.alpha));
  }
  require(lx.size() >= 3, "fewer than three points remain after range filtering");
  const auto [lo, hi] = std::minmax_element(lx.begin(), lx.end());
  require(*hi > *lo, "fewer than two distinct frequencies remain after range filtering");

  const stats::LinearFit ols = stats::linear_regression(lx, ly, 0.95);
  PowerLawFit fit;
  fit.mu_exp = ols.slope;
  fit.intercept = ols.intercept;
  fit.alpha0 = std::exp(ols.intercept);
  fit.r_squared = ols.r_squared;
  fit.ci_halfwidth = ols.slope_half_width;
  fit.decades_spanned = (*hi - *lo) / std::log(10.0);
  fit.n = ols.n;
  fit.range = range;
  return fit;
}

std::vector<double> predict_attenuation(const PowerLawFit& fit, const std::vector<double>& omegas) {
  require(std::isfinite(fit.alpha0) && fit.alpha0 > 0.0 && std::isfinite(fit.mu_exp), "invalid power-law fit");
  std::vector<double> out;
  out.reserve(omegas.size());
  for (const double w : omegas) {
    require(std::isfinite(w) && w > 0.0, "frequencies must be positive");
    out.push_back(fit.alpha0 * std::pow(w, fit.mu_exp));
  }
  return out;
}

AttenuationDataset ingest_csv(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    header = io::split_csv_line(line, n);
  }
  require(!header.empty(), "empty CSV file");
  for (auto& h : header) {
    h.erase(0, h.find_first_not_of(' '));
    h.erase(h.find_last_not_of(' ') + 1);
  }
  const bool labelled = header.size() == 3 && header[2] == "label";
  if (!(header.size() >= 2 && header[0] == "omega" && header[1] == "alpha" && (header.size() == 2 || labelled))) {
    throw ValidationError("line " + std::to_string(n) + ": header must be omega,alpha[,label]");
  }

  std::vector<AttenuationRow> rows;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = io::split_csv_line(line, n);
    if (f.size() != header.size() && !(labelled && f.size() == 2)) {
      throw ValidationError("line " + std::to_string(n) + ": expected " + std::to_string(header.size()) +
                            " fields, found " + std::to_string(f.size()));
    }
    AttenuationRow row{io::parse_double(f[0], n, 1), io::parse_double(f[1], n, 2), f.size() > 2 ? f[2] : ""};
    if (!(row.omega > 0.0) || !std::isfinite(row.omega)) {
      throw ValidationError("line " + std::to_string(n) + ", column 1: omega must be positive");
    }
    if (!(row.alpha > 0.0) || !std::isfinite(row.alpha)) {
      throw ValidationError("line " + std::to_string(n) + ", column 2: alpha must be positive");
    }
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "CSV file has a header but no data rows");
  return AttenuationDataset(std::move(rows));
}

AttenuationDataset ingest_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot open '" + path + "'");
  return ingest_csv(in);
}

std::string fit_report_json(const PowerLawFit& fit) {
  nlohmann::ordered_json j;
  j["alpha0"] = fit.alpha0;
  j["mu"] = fit.mu_exp;
  j["r2"] = fit.r_squared;
  j["ci"] = fit.ci_halfwidth;
  j["n"] = fit.n;
  j["range"] = fit.range ? nlohmann::ordered_json::array({fit.range->lo, fit.range->hi}) : nlohmann::ordered_json();
  j["decades"] = fit.decades_spanned;
  return j.dump(2);
}

}  // namespace fracq
