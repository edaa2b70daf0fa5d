#pragma once

// Independent reference arithmetic for the tests: plain loops over years
// with std::pow, no Eigen, no library helpers.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "levelcost/finance.hpp"
#include "levelcost/timeseries.hpp"

namespace oracle {

/// Sum of v[t] / (1+r)^t for t = first..n.
inline double ledger_pv(const std::vector<double>& v, double r, int first) {
  double total = 0;
  for (std::size_t t = static_cast<std::size_t>(first); t < v.size(); ++t)
    total += v[t] / std::pow(1.0 + r, static_cast<double>(t));
  return total;
}

inline double ledger_annuity(double r, int n) {
  if (r == 0) return 1.0 / n;
  return r / (1.0 - std::pow(1.0 + r, -n));
}

/// annual * (1-d)^t for t = 0..n.
inline std::vector<double> ledger_degraded(double annual, double d, int n) {
  std::vector<double> out;
  for (int t = 0; t <= n; ++t) out.push_back(annual * std::pow(1.0 - d, t));
  return out;
}

inline std::vector<double> ledger_constant(double value, int n, int first = 0) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  for (int t = first; t <= n; ++t) out[static_cast<std::size_t>(t)] = value;
  return out;
}

inline bool rel_close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace oracle

namespace fixture {

inline levelcost::YearSeriesd series(const std::vector<double>& v, levelcost::UnitTag unit) {
  levelcost::YearSeriesd s;
  s.values = Eigen::Map<const Eigen::ArrayXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  s.unit = unit;
  return s;
}

inline levelcost::FinancialAssumptionsd finance(double r, int n,
                                                levelcost::StartConvention c =
                                                    levelcost::StartConvention::ExcludeYearZero) {
  levelcost::FinancialAssumptionsd fin;
  fin.discount_rate = r;
  fin.horizon_years = n;
  fin.start_convention = c;
  return fin;
}

inline levelcost::PowerTimeSeries constant_power(double mw, int samples,
                                                 std::chrono::seconds step = std::chrono::minutes(30)) {
  levelcost::PowerTimeSeries s;
  s.step = step;
  s.kind = levelcost::SeriesKind::Power;
  s.samples = Eigen::ArrayXd::Constant(samples, mw);
  return s;
}

inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("levelcost-test-" + tag + "-" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path source_dir() { return LEVELCOST_SOURCE_DIR; }

}  // namespace fixture
