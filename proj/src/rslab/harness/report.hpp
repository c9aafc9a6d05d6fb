#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace rslab {

struct ReportRow {
  std::uint64_t n = 0;
  std::size_t trials = 0;
  double mean = 0, min = 0, max = 0, stddev = 0;
  double freq = 0;
  double seconds = 0;
  bool capped = false;
};

/// Ordinary least squares of ln(y) against ln(x) over the points with y > 0.
struct SlopeFit {
  bool valid = false;  // needs at least two usable points
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  std::size_t points = 0;
};

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct ExperimentReport {
  std::string name;
  nlohmann::ordered_json config;
  std::vector<ReportRow> rows;
  /// Which column the slope is fitted on: "mean" or "freq".
  std::string slope_of = "mean";
  SlopeFit fit;
  bool capped = false;
  bool inconclusive = false;
  /// Experiment-specific values (expected slope, agreement counts, ...).
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  /// Refits `fit` from the rows.
  void refit();
};

/// Per-row "seconds" are omitted unless include_timing is set, so that equal
/// configurations give byte-identical output.
nlohmann::ordered_json report_to_json(const ExperimentReport& r, bool include_timing = false);
/// Columns n,trials,mean,min,max,stddev,freq,seconds.
std::string report_to_csv(const ExperimentReport& r, bool include_timing = false);

}  // namespace rslab
