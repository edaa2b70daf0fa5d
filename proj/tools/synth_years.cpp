// Writes the synthetic irradiance years and the one-day load shape used by
// scenarios/table6to9-template.json.
//
//   levelcost-synth <data-dir>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

#include "levelcost/dispatch.hpp"

namespace {

using namespace std::chrono;
using levelcost::PowerTimeSeries;

constexpr double kBasePeak = 850.0;        // W/m^2, annual mean of the daily peak
constexpr double kSeasonalSwing = 50.0;    // W/m^2
constexpr double kDaylightMeanH = 12.2;
constexpr double kDaylightSwingH = 1.7;
constexpr int kMidsummerDoy = 355;         // southern hemisphere

PowerTimeSeries year_of_irradiance(int year, double scale) {
  const sys_days first{std::chrono::year{year} / January / 1};
  const sys_days next{std::chrono::year{year + 1} / January / 1};
  const int days = (next - first).count();
  PowerTimeSeries out;
  out.start = first;
  out.step = minutes(30);
  out.kind = levelcost::SeriesKind::Irradiance;
  out.samples.resize(days * 48);
  for (int d = 0; d < days; ++d) {
    const double season = std::cos(2 * std::numbers::pi * (d - kMidsummerDoy) / 365.0);
    const double peak = scale * (kBasePeak + kSeasonalSwing * season);
    const auto half = seconds(std::llround((kDaylightMeanH + kDaylightSwingH * season) * 1800));
    const auto day = levelcost::clear_sky_profile(peak, hours(12) - half, hours(12) + half,
                                                  minutes(30), first + std::chrono::days(d));
    out.samples.segment(d * 48, 48) = day.samples;
  }
  return out;
}

void write(const std::filesystem::path& path, const PowerTimeSeries& s) {
  std::ofstream f(path, std::ios::binary);
  levelcost::write_series_csv(f, s);
  std::cout << "wrote " << path.string() << " (" << s.size() << " samples)\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: levelcost-synth <data-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const struct {
    int year;
    double scale;
  } years[] = {{2009, 1.00}, {2011, 1.05}, {2012, 1.10}};
  for (const auto& y : years)
    write(dir / ("irradiance_" + std::to_string(y.year) + ".csv"),
          year_of_irradiance(y.year, y.scale));
  write(dir / "load_day.csv",
        levelcost::synthetic_load_profile(1.3, 2.0, hours(20) + minutes(30), minutes(30)));
  return 0;
}
