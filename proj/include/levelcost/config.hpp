#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "levelcost/scenarios.hpp"

namespace levelcost {

enum class ScenarioKind { Levelize, CaseSweep, CaseStudy };

enum class LevelizeMethod { Discounting, Annuitizing, NetLcos };

/// A user-supplied cost/energy pair for `levelcost levelize`.
struct LevelizeItem {
  std::string name;
  LevelizeMethod method = LevelizeMethod::Discounting;
  double capital = 0;
  YearSeriesd costs;   // $ per year, t = 0..n
  YearSeriesd energy;  // kWh per year, t = 0..n
  // NetLcos only
  double lcoe = 0;
  double charging_price = 0;
  double efficiency = 1;
};

/// Anchors the canned sweep profiles were solved against. Informational:
/// the engine never reads them while evaluating.
struct CalibrationRecord {
  double anchor_rate = 0;
  double anchor_basecase_lcoe = 0;
  double target_daily_surplus_mwh = 0;
  double case1_daily_direct_mwh = 0;
};

struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::CaseSweep;
  std::vector<double> rates;
  FinancialAssumptionsd finance;  // rate ignored by sweeps

  std::vector<LevelizeItem> levelize;
  std::optional<CaseSweepScenario> sweep;
  std::optional<CaseStudyInputs> study;
  std::optional<CalibrationRecord> calibration;

  /// Canonical dump of the parsed file, used for report fingerprints.
  std::string canonical_json;
};

/// LEVELCOST_PRESET_DIR if set, otherwise the scenarios/ directory of the
/// source tree.
std::filesystem::path preset_dir();

/// A path that exists is returned unchanged; otherwise `name` (with or
/// without .json) is looked up in preset_dir().
std::filesystem::path resolve_scenario(const std::string& name_or_path);

/// Canned scenario names found in preset_dir(), sorted.
std::vector<std::string> canned_scenarios();

/// Parses a scenario file; relative data paths resolve against its folder.
/// Malformed content throws InputError naming the file (and line, where the
/// JSON parser reports one).
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::istream& in, const std::string& source_name,
                        const std::filesystem::path& base_dir);

/// `year,value` CSV with an optional header; unlisted years are zero.
YearSeriesd read_year_series_csv(const std::filesystem::path& path, int horizon_years,
                                 UnitTag unit);
YearSeriesd parse_year_series_csv(std::istream& in, const std::string& source_name,
                                  int horizon_years, UnitTag unit);

}  // namespace levelcost
