#pragma once

// Present-value and levelization arithmetic over per-year cash and energy
// streams. Everything here is templated on the scalar type and expressed as
// Eigen array expressions so that a series, its discount factors and its
// degradation factors compose without explicit loops.

#include <cmath>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "levelcost/errors.hpp"

namespace levelcost {

/// Whether year t = 0 takes part in a discounted sum. Capital is always an
/// undiscounted lump outside the sum; this flag only governs recurring
/// entries (O&M, energy).
enum class StartConvention { IncludeYearZero, ExcludeYearZero };

enum class UnitTag { Money, Energy };

template <typename Scalar>
struct FinancialAssumptions {
  Scalar discount_rate{0};
  int horizon_years{20};
  StartConvention start_convention{StartConvention::ExcludeYearZero};

  int first_year() const {
    return start_convention == StartConvention::IncludeYearZero ? 0 : 1;
  }

  void validate() const {
    if (!(discount_rate > Scalar(-1)))
      throw DomainError("discount rate must exceed -1");
    if (horizon_years < 1)
      throw DomainError("horizon must be at least one year");
  }
};

/// One value per year index t = 0..n.
template <typename Scalar>
struct YearSeries {
  using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  Values values;
  UnitTag unit{UnitTag::Money};

  static YearSeries zeros(int horizon_years, UnitTag unit) {
    return {Values::Zero(horizon_years + 1), unit};
  }

  /// `value` in every year from `first_year` to the horizon, zero before.
  static YearSeries constant(int horizon_years, Scalar value, UnitTag unit,
                             int first_year = 1) {
    YearSeries s = zeros(horizon_years, unit);
    for (int t = first_year; t <= horizon_years; ++t) s.values(t) = value;
    return s;
  }

  Eigen::Index size() const { return values.size(); }
  int horizon_years() const { return static_cast<int>(values.size()) - 1; }
};

template <typename Scalar>
struct LevelizedMetric {
  std::string name;
  Scalar pv_cost{0};
  Scalar pv_energy{0};
  Scalar value{0};
};

/// Builds a metric from its discounted numerator and denominator. The
/// denominator must be strictly positive.
template <typename Scalar>
LevelizedMetric<Scalar> make_metric(std::string name, Scalar pv_cost,
                                    Scalar pv_energy) {
  using std::isfinite;
  if (!(pv_energy > Scalar(0)) || !isfinite(pv_energy))
    throw DegenerateDenominator(name + ": discounted energy is not positive");
  return {std::move(name), pv_cost, pv_energy, pv_cost / pv_energy};
}

/// (1+r)^-t for t inside the summation bounds, 0 outside.
template <typename Scalar>
typename YearSeries<Scalar>::Values discount_factors(
    const FinancialAssumptions<Scalar>& fin) {
  using Values = typename YearSeries<Scalar>::Values;
  using std::log1p;
  fin.validate();
  const int n = fin.horizon_years;
  Values t = Values::LinSpaced(n + 1, Scalar(0), Scalar(n));
  Values df = (t * -log1p(fin.discount_rate)).exp();
  df.head(fin.first_year()).setZero();
  return df;
}

/// (1-d)^t for t = 0..n.
template <typename Scalar>
typename YearSeries<Scalar>::Values degradation_factors(Scalar degradation,
                                                        int horizon_years) {
  using Values = typename YearSeries<Scalar>::Values;
  using std::log1p;
  if (!(degradation >= Scalar(0) && degradation < Scalar(1)))
    throw DomainError("degradation must lie in [0, 1)");
  Values t = Values::LinSpaced(horizon_years + 1, Scalar(0),
                               Scalar(horizon_years));
  return (t * log1p(-degradation)).exp();
}

namespace detail {

template <typename Scalar>
void check_length(const YearSeries<Scalar>& s,
                  const FinancialAssumptions<Scalar>& fin, const char* what) {
  if (s.size() != fin.horizon_years + 1)
    throw ContractViolation(std::string(what) +
                            ": series length does not match horizon + 1");
}

template <typename Scalar>
void check_energy(const YearSeries<Scalar>& s, const char* what) {
  if (s.unit != UnitTag::Energy)
    throw ContractViolation(std::string(what) + ": expected an energy series");
  if ((s.values < Scalar(0)).any())
    throw ContractViolation(std::string(what) + ": negative energy entry");
}

}  // namespace detail

/// Sum of values[t] / (1+r)^t over the years selected by the start convention.
template <typename Scalar>
Scalar present_value(const YearSeries<Scalar>& series,
                     const FinancialAssumptions<Scalar>& fin) {
  fin.validate();
  detail::check_length(series, fin, "present_value");
  return (series.values * discount_factors(fin)).sum();
}

/// r / (1 - (1+r)^-n); the r -> 0 limit 1/n is returned at r == 0.
template <typename Scalar>
Scalar annuity_factor(const FinancialAssumptions<Scalar>& fin) {
  using std::expm1;
  using std::log1p;
  fin.validate();
  const Scalar r = fin.discount_rate;
  const Scalar n = Scalar(fin.horizon_years);
  if (r == Scalar(0)) return Scalar(1) / n;
  return r / -expm1(-n * log1p(r));
}

/// PrV(costs) / PrV(energies).
template <typename Scalar>
LevelizedMetric<Scalar> lcoe_discounting(
    const YearSeries<Scalar>& costs, const YearSeries<Scalar>& energies,
    const FinancialAssumptions<Scalar>& fin) {
  detail::check_energy(energies, "lcoe_discounting");
  if (costs.size() != energies.size())
    throw ContractViolation("lcoe_discounting: series lengths differ");
  return make_metric<Scalar>("lcoe_discounting", present_value(costs, fin),
                             present_value(energies, fin));
}

/// PrV(costs) * annuity factor over the undiscounted mean of E_1..E_n.
/// pv_energy on the result holds that mean annual output.
template <typename Scalar>
LevelizedMetric<Scalar> lcoe_annuitizing(
    const YearSeries<Scalar>& costs, const YearSeries<Scalar>& energies,
    const FinancialAssumptions<Scalar>& fin) {
  detail::check_energy(energies, "lcoe_annuitizing");
  if (costs.size() != energies.size())
    throw ContractViolation("lcoe_annuitizing: series lengths differ");
  detail::check_length(energies, fin, "lcoe_annuitizing");
  const int n = fin.horizon_years;
  const Scalar mean_output = energies.values.tail(n).sum() / Scalar(n);
  const Scalar annual_cost = present_value(costs, fin) * annuity_factor(fin);
  return make_metric<Scalar>("lcoe_annuitizing", annual_cost, mean_output);
}

/// LCOE of a PV module with up-front capital, recurring costs and a rated
/// yearly output that decays by (1-d)^t. Capital is neither discounted nor
/// degraded.
template <typename Scalar>
LevelizedMetric<Scalar> pv_module_lcoe(Scalar capital,
                                       const YearSeries<Scalar>& yearly_costs,
                                       Scalar rated_annual_energy,
                                       Scalar degradation,
                                       const FinancialAssumptions<Scalar>& fin) {
  fin.validate();
  if (rated_annual_energy < Scalar(0))
    throw DomainError("pv_module_lcoe: rated energy must be non-negative");
  const typename YearSeries<Scalar>::Values output =
      rated_annual_energy *
      degradation_factors(degradation, fin.horizon_years) *
      discount_factors(fin);
  return make_metric<Scalar>("pv_module_lcoe",
                             capital + present_value(yearly_costs, fin),
                             output.sum());
}

using FinancialAssumptionsd = FinancialAssumptions<double>;
using YearSeriesd = YearSeries<double>;
using LevelizedMetricd = LevelizedMetric<double>;

}  // namespace levelcost
