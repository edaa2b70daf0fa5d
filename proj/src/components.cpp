#include "levelcost/components.hpp"

#include <cmath>

namespace levelcost {

namespace {

constexpr double kDaysPerYear = 365.0;
constexpr double kKwhPerMwh = 1000.0;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

YearSeriesd degraded_yearly_kwh(double annual_kwh, double degradation,
                                const FinancialAssumptionsd& fin) {
  fin.validate();
  return {annual_kwh * degradation_factors(degradation, fin.horizon_years),
          UnitTag::Energy};
}

}  // namespace

void PvArraySpec::validate() const {
  require(efficiency > 0 && efficiency < 1, "pv efficiency must lie in (0, 1)");
  require(degradation >= 0 && degradation < 1,
          "pv degradation must lie in [0, 1)");
  require(capital_per_unit >= 0 && install_per_unit >= 0 &&
              om_per_unit_year >= 0,
          "pv costs must be non-negative");
  require(panel_area_m2 > 0, "panel area must be positive");
  require(rated_power_w > 0, "rated power must be positive");
}

void StorageSpec::validate() const {
  require(round_trip_efficiency > 0 && round_trip_efficiency <= 1,
          "round-trip efficiency must lie in (0, 1]");
  require(energy_capacity_mwh >= 0, "energy capacity must be non-negative");
  require(power_rating_mw > 0, "power rating must be positive");
  require(degradation >= 0 && degradation < 1,
          "storage degradation must lie in [0, 1)");
  require(capital_per_kwh >= 0 && om_per_kwh_year >= 0,
          "storage costs must be non-negative");
  require(lifetime_years >= 1, "storage lifetime must be at least one year");
}

CostSchedule ess_cost_schedule(const StorageSpec& spec,
                               const FinancialAssumptionsd& fin) {
  spec.validate();
  fin.validate();
  const double kwh = spec.energy_capacity_kwh();
  return {spec.capital_per_kwh * kwh,
          YearSeriesd::constant(fin.horizon_years, spec.om_per_kwh_year * kwh,
                                UnitTag::Money, 0)};
}

YearSeriesd ess_energy_schedule(double daily_surplus_mwh,
                                const StorageSpec& spec,
                                const FinancialAssumptionsd& fin) {
  spec.validate();
  require(daily_surplus_mwh >= 0, "daily surplus must be non-negative");
  const double annual_kwh = spec.round_trip_efficiency * daily_surplus_mwh *
                            kDaysPerYear * kKwhPerMwh;
  return degraded_yearly_kwh(annual_kwh, spec.degradation, fin);
}

CostSchedule pv_cost_schedule(const PvArraySpec& spec, double count,
                              const FinancialAssumptionsd& fin) {
  spec.validate();
  fin.validate();
  require(count >= 0, "panel count must be non-negative");
  return {(spec.capital_per_unit + spec.install_per_unit) * count,
          YearSeriesd::constant(fin.horizon_years,
                                spec.om_per_unit_year * count, UnitTag::Money,
                                0)};
}

YearSeriesd pv_direct_energy_schedule(double daily_direct_mwh,
                                      const PvArraySpec& spec,
                                      const FinancialAssumptionsd& fin) {
  spec.validate();
  require(daily_direct_mwh >= 0, "daily direct energy must be non-negative");
  return degraded_yearly_kwh(daily_direct_mwh * kDaysPerYear * kKwhPerMwh,
                             spec.degradation, fin);
}

PanelAllocation panel_counts(double direct_energy_year_mwh,
                             double surplus_energy_year_mwh,
                             double insolation_year_wh_per_m2,
                             const PvArraySpec& spec) {
  spec.validate();
  require(insolation_year_wh_per_m2 > 0, "insolation must be positive");
  require(direct_energy_year_mwh >= 0 && surplus_energy_year_mwh >= 0,
          "energies must be non-negative");
  // Wh a single panel collects over the year.
  const double per_panel_wh =
      spec.efficiency * spec.panel_area_m2 * insolation_year_wh_per_m2;
  constexpr double kWhPerMwh = 1e6;
  return {direct_energy_year_mwh * kWhPerMwh / per_panel_wh,
          surplus_energy_year_mwh * kWhPerMwh / per_panel_wh};
}

double present_cost(const CostSchedule& schedule,
                    const FinancialAssumptionsd& fin) {
  return schedule.capital + present_value(schedule.yearly, fin);
}

namespace presets {

// Table values: Sharp ND-R250A5 panel, VRB and Li-ion cost bounds. Storage
// presets carry the 2 MW / 4 MWh sizing; scenario files override capacity.

PvArraySpec sharp_nd250() {
  PvArraySpec s;
  s.capital_per_unit = 120;
  s.install_per_unit = 108;
  s.om_per_unit_year = 6;
  s.rated_power_w = 250;
  s.efficiency = 0.153;
  s.panel_area_m2 = 1.64;
  s.degradation = 0.005;
  return s;
}

namespace {

StorageSpec storage(double capital, double om, double eta, int lifetime) {
  StorageSpec s;
  s.capital_per_kwh = capital;
  s.om_per_kwh_year = om;
  s.power_rating_mw = 2;
  s.energy_capacity_mwh = 4;
  s.round_trip_efficiency = eta;
  s.degradation = 0.01;
  s.lifetime_years = lifetime;
  return s;
}

}  // namespace

StorageSpec vrb_lower() { return storage(760, 100, 0.7, 20); }
StorageSpec vrb_upper() { return storage(1600, 140, 0.7, 20); }
StorageSpec liion_lower() { return storage(715, 80, 0.9, 15); }
StorageSpec liion_upper() { return storage(1640, 95, 0.9, 15); }

std::optional<PvArraySpec> find_pv(std::string_view name) {
  if (name == "sharp-nd250") return sharp_nd250();
  return std::nullopt;
}

std::optional<StorageSpec> find_storage(std::string_view name) {
  if (name == "vrb-lower") return vrb_lower();
  if (name == "vrb-upper") return vrb_upper();
  if (name == "liion-lower") return liion_lower();
  if (name == "liion-upper") return liion_upper();
  return std::nullopt;
}

std::vector<std::string> names() {
  return {"sharp-nd250", "vrb-lower", "vrb-upper", "liion-lower",
          "liion-upper"};
}

}  // namespace presets

}  // namespace levelcost
