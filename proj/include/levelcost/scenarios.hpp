#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levelcost/components.hpp"
#include "levelcost/dispatch.hpp"
#include "levelcost/metrics.hpp"
#include "levelcost/timeseries.hpp"

namespace levelcost {

enum class CaseId { Case1, Case2, Case3 };

// Case 1: PV sized so its peak meets the load. Case 2: more panels, the
// surplus is curtailed. Case 3: Case 2 plus storage for the surplus.
struct CaseDefinition {
  CaseId id = CaseId::Case1;
  double panel_count = 0;
  std::optional<StorageSpec> storage;
  PowerTimeSeries load;        // MW
  PowerTimeSeries pv_profile;  // irradiance, W/m^2

  void validate() const;
};

struct CaseTotals {
  double total_cost = 0;    // $ PrV
  double total_energy = 0;  // kWh PrV, delivered to the load
  SystemCostEnergy breakdown;
  DispatchResult daily;     // representative day, MWh
  double round_trip_efficiency = 1;

  double lcoe() const;
};

/// Dispatches the case against its load, builds yearly schedules and
/// discounts them. Only energy that reaches the load counts, so Case 2's
/// curtailed surplus is dropped. PV cost is split between the direct and
/// surplus paths in proportion to the energy each path takes from the array.
CaseTotals evaluate_case(const CaseDefinition& def, const PvArraySpec& pv_spec,
                         const FinancialAssumptionsd& fin);

/// (b.cost - a.cost) / (b.energy - a.energy), sign preserved.
double marginal_lcoe(const CaseTotals& a, const CaseTotals& b);

/// Settings for the three-case comparison swept over discount rate.
struct CaseSweepScenario {
  std::string name;
  PvArraySpec pv;
  StorageSpec storage;
  double case1_panels = 20000;
  double case2_factor = 1.5;
  PowerTimeSeries irradiance;
  /// Flat load at the Case 1 PV peak when unset.
  std::optional<PowerTimeSeries> load;
  /// Defaults to the storage lifetime.
  std::optional<int> horizon_years;
  StartConvention start_convention = StartConvention::ExcludeYearZero;

  int horizon() const { return horizon_years.value_or(storage.lifetime_years); }
  FinancialAssumptionsd finance(double rate) const;
  std::vector<CaseDefinition> cases() const;
};

struct SweepRow {
  double rate = 0;
  double basecase = 0;
  double marginal_12 = 0;
  double marginal_23 = 0;
  double marginal_13 = 0;
  double lcod = 0;
  double lcoe_system = 0;
  std::string error;  // non-empty when the row failed

  bool ok() const { return error.empty(); }
};

SweepRow evaluate_rate(const CaseSweepScenario& scenario, double rate);
/// One row per rate, in input order. Bad rates yield an error row and the
/// sweep carries on.
std::vector<SweepRow> rate_sweep(const CaseSweepScenario& scenario,
                                 const std::vector<double>& rates);

// Profile calibration for the canned sweep scenarios.

struct CalibrationTargets {
  double case1_daily_direct_mwh = 0;
  double case3_daily_surplus_mwh = 0;
};

struct ClearSkyCalibration {
  double peak_w_per_m2 = 0;
  ClockTime sunrise{};
  ClockTime sunset{};
  /// Engine values reached with the solved profile.
  double case1_daily_direct_mwh = 0;
  double case3_daily_surplus_mwh = 0;
};

/// Daily Case 1 energy that makes the basecase LCOE equal `lcoe` at `rate`.
double daily_energy_for_basecase(const CaseSweepScenario& scenario, double rate,
                                 double lcoe);

/// Solves a half-sine day, centred on noon, for the two targets. The
/// surplus-to-direct ratio is set by how hard the panels clip (peak
/// irradiance), the energy level by the daylight length. Uses the scenario's
/// panel counts, sampling step and a flat load at the Case 1 peak.
ClearSkyCalibration calibrate_clear_sky(const CaseSweepScenario& scenario,
                                        const CalibrationTargets& targets,
                                        std::chrono::seconds step);

// Multi-year case study.

struct StorageOption {
  std::string technology;
  std::string bound;
  StorageSpec spec;
};

struct CaseStudyInputs {
  std::map<int, PowerTimeSeries> irradiance_by_year;
  /// One day (tiled over each year) or a trace aligned with every year.
  PowerTimeSeries load;
  PvArraySpec pv;
  double farm_panels = 20000;
  std::vector<StorageOption> storages;
  std::optional<int> horizon_years;
  StartConvention start_convention = StartConvention::ExcludeYearZero;
};

struct CaseStudyRow {
  int year = 0;
  double rate = 0;
  std::string technology;
  std::string bound;
  double lcod = 0;
  double lcoe_system = 0;
  PanelAllocation panels;
  std::string error;

  bool ok() const { return error.empty(); }
};

struct CaseStudyResult {
  std::vector<CaseStudyRow> rows;  // by storage option, then year, then rate
  std::vector<std::string> warnings;
};

CaseStudyResult multi_year_case_study(const CaseStudyInputs& inputs,
                                      const std::vector<double>& rates);

/// Rates between which `a - b` changes sign, as closed intervals. A rate
/// where the two are exactly equal is returned as a degenerate interval.
std::vector<std::pair<double, double>> crossover_brackets(
    const std::vector<double>& rates, const std::vector<double>& a,
    const std::vector<double>& b);

}  // namespace levelcost
