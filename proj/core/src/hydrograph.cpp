#include "hydrofv/hydrograph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hydrofv/errors.hpp"

namespace hydrofv {

void HydrographSeries::push(double time, double discharge) {
  if (!t.empty() && time <= t.back())
    throw ConfigError("hydrograph times must be strictly increasing");
  t.push_back(time);
  q.push_back(discharge);
}

namespace {

double interpolate(const HydrographSeries& s, double time) {
  const auto it = std::lower_bound(s.t.begin(), s.t.end(), time);
  if (it == s.t.begin()) return s.q.front();
  if (it == s.t.end()) {
    if (time == s.t.back()) return s.q.back();
    throw ConfigError("observed time outside the simulated range");
  }
  const std::size_t i = static_cast<std::size_t>(it - s.t.begin());
  const double t0 = s.t[i - 1], t1 = s.t[i];
  const double f = (time - t0) / (t1 - t0);
  return s.q[i - 1] + f * (s.q[i] - s.q[i - 1]);
}

}  // namespace

double rmse(const HydrographSeries& simulated, const HydrographSeries& observed) {
  if (observed.size() == 0) throw ConfigError("rmse: empty observed series");
  if (simulated.size() == 0) throw ConfigError("rmse: empty simulated series");
  for (double t : observed.t)
    if (t < simulated.t.front() || t > simulated.t.back())
      throw ConfigError("rmse: observed time " + std::to_string(t) +
                        " outside the simulated range");
  double sum = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double d = interpolate(simulated, observed.t[k]) - observed.q[k];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(observed.size()));
}

std::string write_hydrograph_csv(const HydrographSeries& series) {
  std::string out = "t_s,Q_m3s\n";
  char buf[64];
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.10e,%.10e\n", series.t[k], series.q[k]);
    out += buf;
  }
  return out;
}

HydrographSeries read_hydrograph_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("hydrograph csv: empty input");
  if (line.find("t_s") == std::string::npos)
    throw ConfigError("hydrograph csv: missing \"t_s,Q_m3s\" header");
  HydrographSeries s;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    double t, q;
    if (std::sscanf(line.c_str(), "%lf,%lf", &t, &q) != 2)
      throw ConfigError("hydrograph csv line " + std::to_string(line_no) + ": expected \"t,Q\"");
    s.push(t, q);
  }
  return s;
}

}  // namespace hydrofv
