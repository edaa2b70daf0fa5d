#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levelcost/finance.hpp"

namespace levelcost {

/// Per-panel cost and technical parameters of a PV array.
struct PvArraySpec {
  double capital_per_unit = 0;   // $/panel
  double install_per_unit = 0;   // $/panel
  double om_per_unit_year = 0;   // $/panel/yr
  double rated_power_w = 0;      // W/panel
  double efficiency = 0;         // fraction
  double panel_area_m2 = 0;      // m^2
  double degradation = 0;        // per-year fraction

  void validate() const;
};

/// Grid-scale storage. A zero energy capacity is accepted and models
/// "no storage" in the schedule builders.
struct StorageSpec {
  double capital_per_kwh = 0;     // $/kWh of capacity
  double om_per_kwh_year = 0;     // $/kWh of capacity per year
  double power_rating_mw = 0;
  double energy_capacity_mwh = 0;
  double round_trip_efficiency = 1;
  double degradation = 0;         // per-year fraction
  int lifetime_years = 20;

  double energy_capacity_kwh() const { return energy_capacity_mwh * 1000.0; }
  void validate() const;
};

/// Panel counts are continuous; rounding is left to the caller.
struct PanelAllocation {
  double n_direct = 0;
  double n_surplus = 0;

  double total() const { return n_direct + n_surplus; }
};

/// Undiscounted t = 0 capital plus a recurring yearly stream.
struct CostSchedule {
  double capital = 0;
  YearSeriesd yearly;
};

CostSchedule ess_cost_schedule(const StorageSpec& spec,
                               const FinancialAssumptionsd& fin);

/// eta * daily * 365 * (1 - D)^t in kWh for every t = 0..n. Discounting is
/// applied later by present_value.
YearSeriesd ess_energy_schedule(double daily_surplus_mwh,
                                const StorageSpec& spec,
                                const FinancialAssumptionsd& fin);

CostSchedule pv_cost_schedule(const PvArraySpec& spec, double count,
                              const FinancialAssumptionsd& fin);

/// daily * 365 * (1 - D_pv)^t in kWh for every t = 0..n.
YearSeriesd pv_direct_energy_schedule(double daily_direct_mwh,
                                      const PvArraySpec& spec,
                                      const FinancialAssumptionsd& fin);

/// Panels needed to yield a given annual energy from an annual insolation:
/// E / (efficiency * area * insolation). Energies in MWh, insolation in Wh/m^2.
PanelAllocation panel_counts(double direct_energy_year_mwh,
                             double surplus_energy_year_mwh,
                             double insolation_year_wh_per_m2,
                             const PvArraySpec& spec);

/// Discounted cost of a schedule: capital + PrV(yearly).
double present_cost(const CostSchedule& schedule,
                    const FinancialAssumptionsd& fin);

// Named component sets shipped with the library.
namespace presets {

PvArraySpec sharp_nd250();
StorageSpec vrb_lower();
StorageSpec vrb_upper();
StorageSpec liion_lower();
StorageSpec liion_upper();

std::optional<PvArraySpec> find_pv(std::string_view name);
std::optional<StorageSpec> find_storage(std::string_view name);
std::vector<std::string> names();

}  // namespace presets

}  // namespace levelcost
