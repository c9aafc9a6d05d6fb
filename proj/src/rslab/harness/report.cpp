#include "rslab/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rslab {

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0 && y[i] > 0 && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  SlopeFit fit;
  fit.points = lx.size();
  if (lx.size() < 2) return fit;
  const double k = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) return fit;
  fit.valid = true;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / k);
  return fit;
}

void ExperimentReport::refit() {
  std::vector<double> x, y;
  for (const auto& row : rows) {
    x.push_back(static_cast<double>(row.n));
    y.push_back(slope_of == "freq" ? row.freq : row.mean);
  }
  fit = fit_loglog(x, y);
}

namespace {

nlohmann::ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

nlohmann::ordered_json report_to_json(const ExperimentReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["experiment"] = r.name;
  j["config"] = r.config;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["n"] = row.n;
    o["trials"] = row.trials;
    o["mean"] = number_or_null(row.mean);
    o["min"] = number_or_null(row.min);
    o["max"] = number_or_null(row.max);
    o["stddev"] = number_or_null(row.stddev);
    o["freq"] = number_or_null(row.freq);
    if (include_timing) o["seconds"] = row.seconds;
    o["capped"] = row.capped;
    rows.push_back(o);
  }
  j["rows"] = rows;
  nlohmann::ordered_json fit;
  fit["of"] = r.slope_of;
  fit["valid"] = r.fit.valid;
  fit["slope"] = number_or_null(r.fit.slope);
  fit["intercept"] = number_or_null(r.fit.intercept);
  fit["residual_rms"] = number_or_null(r.fit.residual_rms);
  fit["points"] = r.fit.points;
  j["fit"] = fit;
  j["capped"] = r.capped;
  j["inconclusive"] = r.inconclusive;
  j["extra"] = r.extra;
  return j;
}

std::string report_to_csv(const ExperimentReport& r, bool include_timing) {
  std::ostringstream out;
  out << "n,trials,mean,min,max,stddev,freq,seconds\n";
  for (const auto& row : r.rows) {
    out << row.n << ',' << row.trials << ',' << fmt(row.mean) << ',' << fmt(row.min) << ',' << fmt(row.max) << ','
        << fmt(row.stddev) << ',' << fmt(row.freq) << ',' << (include_timing ? fmt(row.seconds) : std::string("0"))
        << '\n';
  }
  return out.str();
}

}  // namespace rslab
