#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "levelcost/components.hpp"
#include "levelcost/timeseries.hpp"

namespace levelcost {

/// Energy flows of one accounting period, all in MWh.
struct DispatchResult {
  double e_direct = 0;
  double e_surplus_stored = 0;
  double e_curtailed = 0;
  double e_unserved = 0;
  std::chrono::seconds period{0};

  double pv_total() const { return e_direct + e_surplus_stored + e_curtailed; }
};

struct DispatchOptions {
  /// Daily storage intake limit. nullopt stores all residual PV, 0 stores none.
  std::optional<double> storage_cap_mwh_per_day;
  /// Instantaneous charge limit in MW. Off unless set.
  std::optional<double> charge_power_limit_mw;
};

/// Splits PV output against a load trace, step by step: the part of PV at
/// or below load serves the load directly; the residual fills a per-day
/// storage accumulator and anything beyond its cap is curtailed. Storage
/// discharge is not scheduled, so `e_unserved` is the raw load shortfall.
/// Requires aligned series whose step divides 24 h.
std::vector<DispatchResult> split_energy_daily(const PowerTimeSeries& pv,
                                               const PowerTimeSeries& load,
                                               const DispatchOptions& options);

/// Whole-trace totals of split_energy_daily.
DispatchResult split_energy(const PowerTimeSeries& pv,
                            const PowerTimeSeries& load,
                            std::optional<double> storage_cap_mwh_per_day);
DispatchResult split_energy(const PowerTimeSeries& pv,
                            const PowerTimeSeries& load,
                            const DispatchOptions& options);

DispatchResult sum_periods(const std::vector<DispatchResult>& days);
/// Mean day of a multi-day run (period = 24 h).
DispatchResult representative_day(const std::vector<DispatchResult>& days);

using ClockTime = std::chrono::seconds;  // offset from local midnight

constexpr ClockTime clock_time(int hours, int minutes = 0) {
  return std::chrono::hours(hours) + std::chrono::minutes(minutes);
}

/// One day of half-sine irradiance, peak at solar noon, zero outside the
/// daylight window. Samples start at midnight of `day`.
PowerTimeSeries clear_sky_profile(double peak_w_per_m2, ClockTime sunrise,
                                  ClockTime sunset,
                                  std::chrono::seconds step = std::chrono::minutes(30),
                                  std::chrono::sys_days day = std::chrono::sys_days{});

/// Panel output in MW, clipped at the rated power of each panel.
PowerTimeSeries pv_power_from_irradiance(const PowerTimeSeries& irradiance,
                                         const PvArraySpec& spec, double count);

/// One day of load in MW: a base plateau, a shallow trough near 05:00 and a
/// Gaussian evening peak centred on `peak_time`.
PowerTimeSeries synthetic_load_profile(double base_mw, double evening_peak_mw,
                                       ClockTime peak_time,
                                       std::chrono::seconds step = std::chrono::minutes(30),
                                       std::chrono::sys_days day = std::chrono::sys_days{});

/// Concatenates `days` copies of a one-day profile.
PowerTimeSeries repeat_days(const PowerTimeSeries& one_day, int days);

}  // namespace levelcost
