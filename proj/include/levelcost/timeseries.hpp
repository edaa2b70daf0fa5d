#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace levelcost {

using Timestamp = std::chrono::sys_seconds;

enum class SeriesKind { Irradiance, Power };

/// Uniformly sampled trace. Samples are W/m^2 for irradiance and MW for
/// power; sample i covers [start + i*step, start + (i+1)*step).
struct PowerTimeSeries {
  Timestamp start{};
  std::chrono::seconds step{1800};
  Eigen::ArrayXd samples;
  SeriesKind kind = SeriesKind::Power;

  Eigen::Index size() const { return samples.size(); }
  double step_hours() const { return step.count() / 3600.0; }
  Timestamp time_at(Eigen::Index i) const {
    return start + step * static_cast<long long>(i);
  }
  /// Left-rectangle integral: MWh for power, Wh/m^2 for irradiance.
  double integral() const { return samples.sum() * step_hours(); }

  void validate() const;
};

bool aligned(const PowerTimeSeries& a, const PowerTimeSeries& b);

/// Accepts YYYY-MM-DD[T ]HH:MM[:SS] with optional Z or +-HH:MM offset.
/// Throws std::invalid_argument on malformed input.
Timestamp parse_iso8601(std::string_view text);
std::string format_iso8601(Timestamp t);

enum class GapPolicy { Fail, Interpolate };

struct CsvReadOptions {
  SeriesKind kind = SeriesKind::Power;
  GapPolicy gaps = GapPolicy::Fail;
  /// Longest run of missing samples the interpolating policy will fill.
  int max_gap_steps = 2;
};

/// Two-column `timestamp,value` CSV. An optional header row is skipped, as
/// are blank lines and lines starting with '#'. The step is taken from the
/// first two rows and every later row must stay on that grid. Errors are
/// reported as InputError carrying `source_name` and the offending line.
PowerTimeSeries parse_series_csv(std::istream& in,
                                 const std::string& source_name,
                                 const CsvReadOptions& options = {});
PowerTimeSeries read_series_csv(const std::filesystem::path& path,
                                const CsvReadOptions& options = {});
void write_series_csv(std::ostream& out, const PowerTimeSeries& series);

}  // namespace levelcost
