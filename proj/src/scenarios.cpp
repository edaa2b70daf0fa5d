#include "levelcost/scenarios.hpp"

#include <cmath>
#include <exception>

#include "levelcost/errors.hpp"

namespace levelcost {

namespace {

constexpr double kDaysPerYear = 365.0;
constexpr std::chrono::seconds kDay{86400};

PowerTimeSeries flat_like(const PowerTimeSeries& shape, double value) {
  PowerTimeSeries s = shape;
  s.kind = SeriesKind::Power;
  s.samples = Eigen::ArrayXd::Constant(shape.size(), value);
  return s;
}

StorageSpec lossless(StorageSpec spec) {
  spec.round_trip_efficiency = 1.0;
  return spec;
}

template <typename F>
double bisect(F&& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations && hi - lo > 1e-14 * std::fabs(hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if ((fmid < 0) == (flo < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void CaseDefinition::validate() const {
  if (panel_count < 0) throw DomainError("panel count must be non-negative");
  const bool wants_storage = id == CaseId::Case3;
  if (storage.has_value() != wants_storage)
    throw ContractViolation(wants_storage ? "Case 3 needs a storage spec"
                                          : "Cases 1 and 2 carry no storage");
  if (pv_profile.kind != SeriesKind::Irradiance)
    throw ContractViolation("case pv_profile must be an irradiance series");
  if (storage) storage->validate();
}

double CaseTotals::lcoe() const {
  return make_metric("case_lcoe", total_cost, total_energy).value;
}

CaseTotals evaluate_case(const CaseDefinition& def, const PvArraySpec& pv_spec,
                         const FinancialAssumptionsd& fin) {
  def.validate();
  fin.validate();
  const PowerTimeSeries pv = pv_power_from_irradiance(def.pv_profile, pv_spec, def.panel_count);
  DispatchOptions options;
  options.storage_cap_mwh_per_day = def.storage ? def.storage->energy_capacity_mwh : 0.0;

  CaseTotals out;
  out.daily = representative_day(split_energy_daily(pv, def.load, options));

  const double pv_cost = present_cost(pv_cost_schedule(pv_spec, def.panel_count, fin), fin);
  const double pv_total = out.daily.pv_total();
  const double surplus_share = pv_total > 0 ? out.daily.e_surplus_stored / pv_total : 0.0;

  SystemCostEnergy& sce = out.breakdown;
  sce.cost_pv_surplus = pv_cost * surplus_share;
  sce.cost_pv_direct = pv_cost - sce.cost_pv_surplus;
  sce.energy_pv_direct =
      present_value(pv_direct_energy_schedule(out.daily.e_direct, pv_spec, fin), fin);
  if (def.storage) {
    const StorageSpec& ess = *def.storage;
    out.round_trip_efficiency = ess.round_trip_efficiency;
    sce.cost_ess = present_cost(ess_cost_schedule(ess, fin), fin);
    sce.energy_ess =
        present_value(ess_energy_schedule(out.daily.e_surplus_stored, ess, fin), fin);
    sce.energy_surplus_in = present_value(
        ess_energy_schedule(out.daily.e_surplus_stored, lossless(ess), fin), fin);
  }
  out.total_cost = sce.cost_pv_direct + sce.cost_pv_surplus + sce.cost_ess;
  out.total_energy = sce.energy_pv_direct + sce.energy_ess;
  return out;
}

double marginal_lcoe(const CaseTotals& a, const CaseTotals& b) {
  const double d_energy = b.total_energy - a.total_energy;
  if (d_energy == 0 || !std::isfinite(d_energy))
    throw DegenerateDenominator("marginal LCOE: cases deliver the same energy");
  return (b.total_cost - a.total_cost) / d_energy;
}

FinancialAssumptionsd CaseSweepScenario::finance(double rate) const {
  FinancialAssumptionsd fin;
  fin.discount_rate = rate;
  fin.horizon_years = horizon();
  fin.start_convention = start_convention;
  return fin;
}

std::vector<CaseDefinition> CaseSweepScenario::cases() const {
  if (case1_panels <= 0 || case2_factor < 1)
    throw DomainError("need case1_panels > 0 and case2_factor >= 1");
  PowerTimeSeries case_load;
  if (load) {
    case_load = *load;
  } else {
    const PowerTimeSeries pv1 = pv_power_from_irradiance(irradiance, pv, case1_panels);
    case_load = flat_like(pv1, pv1.samples.maxCoeff());
  }
  const double case2_panels = case1_panels * case2_factor;
  return {
      {CaseId::Case1, case1_panels, std::nullopt, case_load, irradiance},
      {CaseId::Case2, case2_panels, std::nullopt, case_load, irradiance},
      {CaseId::Case3, case2_panels, storage, case_load, irradiance},
  };
}

SweepRow evaluate_rate(const CaseSweepScenario& scenario, double rate) {
  SweepRow row;
  row.rate = rate;
  try {
    const FinancialAssumptionsd fin = scenario.finance(rate);
    const auto defs = scenario.cases();
    const CaseTotals c1 = evaluate_case(defs[0], scenario.pv, fin);
    const CaseTotals c2 = evaluate_case(defs[1], scenario.pv, fin);
    const CaseTotals c3 = evaluate_case(defs[2], scenario.pv, fin);
    row.basecase = c1.lcoe();
    row.marginal_12 = marginal_lcoe(c1, c2);
    row.marginal_23 = marginal_lcoe(c2, c3);
    row.marginal_13 = marginal_lcoe(c1, c3);
    row.lcod = lcod(c3.breakdown, c3.round_trip_efficiency).value;
    row.lcoe_system = lcoe_system(c3.breakdown).value;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> rate_sweep(const CaseSweepScenario& scenario,
                                 const std::vector<double>& rates) {
  std::vector<SweepRow> rows;
  rows.reserve(rates.size());
  for (double r : rates) rows.push_back(evaluate_rate(scenario, r));
  return rows;
}

double daily_energy_for_basecase(const CaseSweepScenario& scenario, double rate,
                                 double lcoe) {
  if (!(lcoe > 0)) throw DomainError("anchor LCOE must be positive");
  const FinancialAssumptionsd fin = scenario.finance(rate);
  fin.validate();
  const double cost =
      present_cost(pv_cost_schedule(scenario.pv, scenario.case1_panels, fin), fin);
  const double energy_per_daily_mwh =
      present_value(pv_direct_energy_schedule(1.0, scenario.pv, fin), fin);
  return cost / (lcoe * energy_per_daily_mwh);
}

ClearSkyCalibration calibrate_clear_sky(const CaseSweepScenario& scenario,
                                        const CalibrationTargets& targets,
                                        std::chrono::seconds step) {
  using std::chrono::seconds;
  if (!(targets.case1_daily_direct_mwh > 0) || !(targets.case3_daily_surplus_mwh > 0))
    throw DomainError("calibration targets must be positive");
  scenario.pv.validate();
  const double clip_w_per_m2 =
      scenario.pv.rated_power_w / (scenario.pv.efficiency * scenario.pv.panel_area_m2);
  const seconds noon{kDay / 2};

  struct Energies {
    double direct, surplus;
  };
  auto run = [&](double peak, double daylight_s) {
    const seconds length{static_cast<long long>(std::llround(daylight_s))};
    const seconds rise = noon - length / 2;
    CaseSweepScenario probe = scenario;
    probe.load.reset();
    probe.irradiance = clear_sky_profile(peak, rise, rise + length, step);
    const auto defs = probe.cases();
    DispatchOptions options;
    options.storage_cap_mwh_per_day = scenario.storage.energy_capacity_mwh;
    const auto pv1 = pv_power_from_irradiance(probe.irradiance, probe.pv, defs[0].panel_count);
    const auto pv3 = pv_power_from_irradiance(probe.irradiance, probe.pv, defs[2].panel_count);
    const DispatchResult d1 = split_energy(pv1, defs[0].load, options);
    const DispatchResult d3 = split_energy(pv3, defs[2].load, options);
    return Energies{d1.e_direct, d3.e_surplus_stored};
  };

  const double target_ratio = targets.case3_daily_surplus_mwh / targets.case1_daily_direct_mwh;
  const double min_daylight = 2.0 * static_cast<double>(step.count());
  const double max_daylight = static_cast<double>(kDay.count());
  // Daylight length that gives the Case 1 target at a given peak.
  auto daylight_for = [&](double peak) {
    return bisect(
        [&](double len) { return run(peak, len).direct - targets.case1_daily_direct_mwh; },
        min_daylight, max_daylight);
  };
  auto ratio_at = [&](double peak) {
    const Energies e = run(peak, daylight_for(peak));
    return e.surplus / e.direct - target_ratio;
  };
  if (ratio_at(clip_w_per_m2) > 0)
    throw DomainError("calibration: surplus/direct ratio is below the unclipped half-sine's");
  const double peak = bisect(ratio_at, clip_w_per_m2, 100 * clip_w_per_m2, 100);
  const double daylight = daylight_for(peak);
  const seconds length{static_cast<long long>(std::llround(daylight))};
  ClearSkyCalibration cal;
  cal.peak_w_per_m2 = peak;
  cal.sunrise = noon - length / 2;
  cal.sunset = cal.sunrise + length;
  const Energies e = run(peak, daylight);
  cal.case1_daily_direct_mwh = e.direct;
  cal.case3_daily_surplus_mwh = e.surplus;
  return cal;
}

namespace {

PowerTimeSeries load_for(const PowerTimeSeries& load, const PowerTimeSeries& irradiance) {
  if (aligned(load, irradiance)) return load;
  const bool one_day = load.step * load.size() == kDay;
  const auto span = irradiance.step * irradiance.size();
  if (!one_day || load.step != irradiance.step || span % kDay != std::chrono::seconds{0} ||
      irradiance.start != std::chrono::floor<std::chrono::days>(irradiance.start))
    throw ContractViolation(
        "load must be one day at the irradiance step or aligned with the year");
  PowerTimeSeries tiled = repeat_days(load, static_cast<int>(span / kDay));
  tiled.start = irradiance.start;
  return tiled;
}

}  // namespace

CaseStudyResult multi_year_case_study(const CaseStudyInputs& inputs,
                                      const std::vector<double>& rates) {
  if (inputs.irradiance_by_year.empty())
    throw ContractViolation("case study needs at least one year of irradiance");
  inputs.pv.validate();
  CaseStudyResult result;

  for (const auto& option : inputs.storages) {
    for (const auto& [year, irradiance] : inputs.irradiance_by_year) {
      if (irradiance.size() == 0) {
        result.warnings.push_back("year " + std::to_string(year) +
                                  " has no samples; skipped");
        continue;
      }
      CaseStudyRow base;
      base.year = year;
      base.technology = option.technology;
      base.bound = option.bound;

      DispatchResult day;
      double insolation_year = 0;
      try {
        option.spec.validate();
        const PowerTimeSeries load = load_for(inputs.load, irradiance);
        const PowerTimeSeries pv =
            pv_power_from_irradiance(irradiance, inputs.pv, inputs.farm_panels);
        DispatchOptions options;
        options.storage_cap_mwh_per_day = option.spec.energy_capacity_mwh;
        const auto days = split_energy_daily(pv, load, options);
        day = representative_day(days);
        insolation_year = irradiance.integral() / static_cast<double>(days.size()) * kDaysPerYear;
        base.panels = panel_counts(day.e_direct * kDaysPerYear,
                                   day.e_surplus_stored * kDaysPerYear, insolation_year,
                                   inputs.pv);
      } catch (const std::exception& e) {
        for (double r : rates) {
          CaseStudyRow row = base;
          row.rate = r;
          row.error = e.what();
          result.rows.push_back(row);
        }
        continue;
      }

      for (double r : rates) {
        CaseStudyRow row = base;
        row.rate = r;
        try {
          FinancialAssumptionsd fin;
          fin.discount_rate = r;
          fin.horizon_years = inputs.horizon_years.value_or(option.spec.lifetime_years);
          fin.start_convention = inputs.start_convention;
          fin.validate();
          SystemCostEnergy sce;
          sce.cost_pv_direct =
              present_cost(pv_cost_schedule(inputs.pv, row.panels.n_direct, fin), fin);
          sce.cost_pv_surplus =
              present_cost(pv_cost_schedule(inputs.pv, row.panels.n_surplus, fin), fin);
          sce.cost_ess = present_cost(ess_cost_schedule(option.spec, fin), fin);
          sce.energy_pv_direct =
              present_value(pv_direct_energy_schedule(day.e_direct, inputs.pv, fin), fin);
          sce.energy_ess =
              present_value(ess_energy_schedule(day.e_surplus_stored, option.spec, fin), fin);
          sce.energy_surplus_in = present_value(
              ess_energy_schedule(day.e_surplus_stored, lossless(option.spec), fin), fin);
          row.lcod = lcod(sce, option.spec.round_trip_efficiency).value;
          row.lcoe_system = lcoe_system(sce).value;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        result.rows.push_back(row);
      }
    }
  }
  return result;
}

std::vector<std::pair<double, double>> crossover_brackets(
    const std::vector<double>& rates, const std::vector<double>& a,
    const std::vector<double>& b) {
  if (rates.size() != a.size() || rates.size() != b.size())
    throw ContractViolation("crossover: rates and value lists differ in length");
  std::vector<std::pair<double, double>> brackets;
  double prev_diff = 0;
  bool have_prev = false;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const double diff = a[i] - b[i];
    if (std::isnan(diff)) {
      have_prev = false;
      continue;
    }
    if (diff == 0) {
      brackets.emplace_back(rates[i], rates[i]);
    } else if (have_prev && prev_diff != 0 && (diff < 0) != (prev_diff < 0)) {
      brackets.emplace_back(rates[i - 1], rates[i]);
    }
    prev_diff = diff;
    have_prev = true;
  }
  return brackets;
}

}  // namespace levelcost
