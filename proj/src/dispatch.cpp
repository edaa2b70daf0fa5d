#include "levelcost/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levelcost/errors.hpp"

namespace levelcost {

namespace {

using std::chrono::seconds;

constexpr seconds kDay{86400};

void check_pair(const PowerTimeSeries& pv, const PowerTimeSeries& load) {
  pv.validate();
  load.validate();
  if (!aligned(pv, load))
    throw ContractViolation("pv and load series are not aligned");
  if (pv.kind != SeriesKind::Power || load.kind != SeriesKind::Power)
    throw ContractViolation("dispatch expects power series");
  if (kDay % pv.step != seconds{0})
    throw ContractViolation("series step must divide 24 h");
}

/// Hours since midnight, in [0, 24).
double clock_hours(Timestamp t) {
  const auto since_midnight = t - std::chrono::floor<std::chrono::days>(t);
  return since_midnight.count() / 3600.0;
}

double circular_hours(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 24.0 - d);
}

PowerTimeSeries one_day_grid(seconds step, std::chrono::sys_days day,
                             SeriesKind kind) {
  if (step.count() <= 0 || kDay % step != seconds{0})
    throw DomainError("step must be positive and divide 24 h");
  PowerTimeSeries s;
  s.start = Timestamp{day};
  s.step = step;
  s.kind = kind;
  s.samples = Eigen::ArrayXd::Zero(kDay / step);
  return s;
}

}  // namespace

std::vector<DispatchResult> split_energy_daily(const PowerTimeSeries& pv,
                                               const PowerTimeSeries& load,
                                               const DispatchOptions& options) {
  check_pair(pv, load);
  if (options.storage_cap_mwh_per_day && *options.storage_cap_mwh_per_day < 0)
    throw DomainError("storage cap must be non-negative");
  if (options.charge_power_limit_mw && *options.charge_power_limit_mw < 0)
    throw DomainError("charge power limit must be non-negative");

  const double dt = pv.step_hours();
  std::vector<DispatchResult> days;
  auto current_day = std::chrono::floor<std::chrono::days>(pv.start);
  DispatchResult today;
  double stored_today = 0;

  for (Eigen::Index i = 0; i < pv.size(); ++i) {
    const auto day = std::chrono::floor<std::chrono::days>(pv.time_at(i));
    if (day != current_day) {
      days.push_back(today);
      today = {};
      stored_today = 0;
      current_day = day;
    }
    const double p = pv.samples(i);
    const double l = load.samples(i);
    today.period += pv.step;
    today.e_direct += std::min(p, l) * dt;
    today.e_unserved += std::max(l - p, 0.0) * dt;

    const double residual = std::max(p - l, 0.0) * dt;
    double storable = residual;
    if (options.charge_power_limit_mw)
      storable = std::min(storable, *options.charge_power_limit_mw * dt);
    if (options.storage_cap_mwh_per_day)
      storable = std::min(storable, *options.storage_cap_mwh_per_day - stored_today);
    storable = std::max(storable, 0.0);
    stored_today += storable;
    today.e_surplus_stored += storable;
    today.e_curtailed += residual - storable;
  }
  days.push_back(today);
  return days;
}

DispatchResult split_energy(const PowerTimeSeries& pv,
                            const PowerTimeSeries& load,
                            const DispatchOptions& options) {
  return sum_periods(split_energy_daily(pv, load, options));
}

DispatchResult split_energy(const PowerTimeSeries& pv,
                            const PowerTimeSeries& load,
                            std::optional<double> storage_cap_mwh_per_day) {
  return split_energy(pv, load, DispatchOptions{storage_cap_mwh_per_day, std::nullopt});
}

DispatchResult sum_periods(const std::vector<DispatchResult>& days) {
  DispatchResult total;
  for (const auto& d : days) {
    total.e_direct += d.e_direct;
    total.e_surplus_stored += d.e_surplus_stored;
    total.e_curtailed += d.e_curtailed;
    total.e_unserved += d.e_unserved;
    total.period += d.period;
  }
  return total;
}

DispatchResult representative_day(const std::vector<DispatchResult>& days) {
  if (days.empty()) throw ContractViolation("no days to average");
  DispatchResult mean = sum_periods(days);
  const double n = static_cast<double>(days.size());
  mean.e_direct /= n;
  mean.e_surplus_stored /= n;
  mean.e_curtailed /= n;
  mean.e_unserved /= n;
  mean.period = kDay;
  return mean;
}

PowerTimeSeries clear_sky_profile(double peak_w_per_m2, ClockTime sunrise,
                                  ClockTime sunset, std::chrono::seconds step,
                                  std::chrono::sys_days day) {
  if (!(peak_w_per_m2 > 0)) throw DomainError("peak irradiance must be positive");
  if (sunrise < seconds{0} || sunset > kDay || !(sunset > sunrise))
    throw DomainError("daylight window must satisfy 0 <= sunrise < sunset <= 24 h");
  PowerTimeSeries s = one_day_grid(step, day, SeriesKind::Irradiance);
  const double rise = sunrise.count();
  const double length = (sunset - sunrise).count();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double t = static_cast<double>((step * i).count());
    if (t < rise || t > rise + length) continue;
    s.samples(i) = std::max(0.0, peak_w_per_m2 * std::sin(std::numbers::pi * (t - rise) / length));
  }
  return s;
}

PowerTimeSeries pv_power_from_irradiance(const PowerTimeSeries& irradiance,
                                         const PvArraySpec& spec, double count) {
  if (irradiance.kind != SeriesKind::Irradiance)
    throw ContractViolation("pv_power_from_irradiance expects an irradiance series");
  irradiance.validate();
  spec.validate();
  if (count < 0) throw DomainError("panel count must be non-negative");
  PowerTimeSeries power = irradiance;
  power.kind = SeriesKind::Power;
  constexpr double kWattsPerMegawatt = 1e6;
  power.samples = (irradiance.samples * (spec.efficiency * spec.panel_area_m2))
                      .min(spec.rated_power_w) *
                  (count / kWattsPerMegawatt);
  return power;
}

PowerTimeSeries synthetic_load_profile(double base_mw, double evening_peak_mw,
                                       ClockTime peak_time, std::chrono::seconds step,
                                       std::chrono::sys_days day) {
  if (!(base_mw > 0) || evening_peak_mw < base_mw)
    throw DomainError("load profile needs evening_peak >= base > 0");
  PowerTimeSeries s = one_day_grid(step, day, SeriesKind::Power);
  constexpr double kPeakWidthH = 0.8;
  constexpr double kTroughCentreH = 5.0;
  constexpr double kTroughHalfWidthH = 4.0;
  const double rise = evening_peak_mw - base_mw;
  // Trough depth follows the evening swing but never drives load below half base.
  const double trough_depth = std::min(0.4 * rise, 0.5 * base_mw);
  const double peak_h = peak_time.count() / 3600.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double h = clock_hours(s.time_at(i));
    const double dp = circular_hours(h, peak_h);
    const double dt = circular_hours(h, kTroughCentreH);
    const double peak = std::exp(-dp * dp / (2 * kPeakWidthH * kPeakWidthH));
    const double trough =
        dt < kTroughHalfWidthH ? 0.5 * (1 + std::cos(std::numbers::pi * dt / kTroughHalfWidthH)) : 0.0;
    s.samples(i) = base_mw + rise * peak - trough_depth * trough;
  }
  return s;
}

PowerTimeSeries repeat_days(const PowerTimeSeries& one_day, int days) {
  one_day.validate();
  if (one_day.step * one_day.size() != kDay)
    throw ContractViolation("repeat_days expects exactly one day of samples");
  if (days < 1) throw DomainError("day count must be positive");
  PowerTimeSeries out = one_day;
  out.samples = one_day.samples.replicate(days, 1);
  return out;
}

}  // namespace levelcost
