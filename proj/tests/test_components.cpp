#include <doctest.h>

#include <cmath>

#include "levelcost/components.hpp"
#include "support.hpp"

using namespace levelcost;
using fixture::finance;

namespace {

StorageSpec sized(StorageSpec s, double mwh) {
  s.energy_capacity_mwh = mwh;
  return s;
}

}  // namespace

TEST_CASE("storage cost schedule") {
  const auto fin = finance(0.05, 20);
  const auto vrb = ess_cost_schedule(sized(presets::vrb_lower(), 5), fin);
  CHECK(vrb.capital == doctest::Approx(760.0 * 5000));
  CHECK(vrb.yearly.values(1) == doctest::Approx(100.0 * 5000));
  CHECK(vrb.yearly.values(20) == doctest::Approx(0.5e6));
  // Year 0 is populated; the start convention decides whether it counts.
  CHECK(vrb.yearly.values(0) == doctest::Approx(0.5e6));

  const auto li = ess_cost_schedule(sized(presets::liion_lower(), 4), fin);
  CHECK(li.capital == doctest::Approx(2.86e6));

  const auto none = ess_cost_schedule(sized(presets::vrb_lower(), 0), fin);
  CHECK(none.capital == 0.0);
  CHECK(none.yearly.values.isZero());
  CHECK(present_cost(none, fin) == 0.0);

  // Capital is never discounted; O&M follows the ledger.
  CHECK(present_cost(vrb, fin) ==
        doctest::Approx(3.8e6 + oracle::ledger_pv(oracle::ledger_constant(0.5e6, 20, 1), 0.05, 1))
            .epsilon(1e-12));
}

TEST_CASE("storage energy schedule") {
  const auto fin = finance(0.05, 20);
  const auto vrb = ess_energy_schedule(4.676, presets::vrb_lower(), fin);
  CHECK(vrb.unit == UnitTag::Energy);
  CHECK(vrb.values(0) == doctest::Approx(0.7 * 4.676 * 365 * 1000));
  CHECK(vrb.values(0) / 1000 == doctest::Approx(1194.718).epsilon(1e-6));
  CHECK(vrb.values(10) == doctest::Approx(vrb.values(0) * std::pow(0.99, 10)).epsilon(1e-13));

  StorageSpec ideal = presets::vrb_lower();
  ideal.round_trip_efficiency = 1;
  ideal.degradation = 0;
  const auto flat = ess_energy_schedule(3.0, ideal, fin);
  CHECK((flat.values == 3.0 * 365 * 1000).all());

  CHECK(ess_energy_schedule(0.0, presets::liion_lower(), fin).values.isZero());
  CHECK_THROWS_AS(ess_energy_schedule(-1.0, presets::liion_lower(), fin), DomainError);
}

TEST_CASE("pv cost and energy schedules") {
  const auto fin = finance(0.05, 20);
  const auto pv = presets::sharp_nd250();
  const auto s20 = pv_cost_schedule(pv, 20000, fin);
  CHECK(s20.capital == doctest::Approx(4.56e6));
  CHECK(s20.yearly.values(5) == doctest::Approx(120e3));

  const auto s30 = pv_cost_schedule(pv, 30000, fin);
  CHECK(s30.capital == doctest::Approx(1.5 * s20.capital).epsilon(1e-15));
  CHECK(((s30.yearly.values - 1.5 * s20.yearly.values).abs() < 1e-9).all());

  const auto s0 = pv_cost_schedule(pv, 0, fin);
  CHECK(s0.capital == 0.0);
  CHECK(s0.yearly.values.isZero());

  PvArraySpec flat = pv;
  flat.degradation = 0;
  CHECK((pv_direct_energy_schedule(10, flat, fin).values == 3650e3).all());
  const auto e = pv_direct_energy_schedule(10, pv, fin);
  CHECK(e.values(20) / 1000 == doctest::Approx(3650 * std::pow(0.995, 20)).epsilon(1e-12));
  CHECK(e.values(20) / 1000 == doctest::Approx(3301.83).epsilon(1e-6));
  CHECK(pv_direct_energy_schedule(0, pv, fin).values.isZero());
}

TEST_CASE("panel counts from annual insolation") {
  PvArraySpec pv = presets::sharp_nd250();
  pv.efficiency = 0.15;
  pv.panel_area_m2 = 1.64;
  const auto n = panel_counts(1000, 0, 2.0e6, pv);
  CHECK(n.n_direct == doctest::Approx(1000.0 / (0.15 * 1.64 * 2.0)).epsilon(1e-12));
  CHECK(n.n_direct == doctest::Approx(2032.52).epsilon(1e-5));
  CHECK(n.n_surplus == 0.0);
  const auto twice = panel_counts(2000, 500, 2.0e6, pv);
  CHECK(twice.n_direct == doctest::Approx(2 * n.n_direct));
  CHECK(twice.total() == doctest::Approx(twice.n_direct + twice.n_surplus));
  CHECK_THROWS_AS(panel_counts(1, 1, 0.0, pv), DomainError);
}

TEST_CASE("panel preset is physically consistent") {
  const auto pv = presets::sharp_nd250();
  const double nameplate = pv.efficiency * pv.panel_area_m2 * 1000.0;
  CHECK(oracle::rel_close(nameplate, pv.rated_power_w, 0.05));
}

TEST_CASE("degradation bounds and cost-bound ordering") {
  const auto fin = finance(0.08, 20);
  for (const auto& spec : {presets::vrb_lower(), presets::liion_upper()}) {
    const auto e = ess_energy_schedule(4.0, spec, fin);
    CHECK((e.values > 0).all());
    CHECK((e.values.tail(20) < e.values.head(20)).all());
  }
  const auto pv = pv_direct_energy_schedule(7.0, presets::sharp_nd250(), fin);
  CHECK((pv.values.tail(20) < pv.values.head(20)).all());

  const std::pair<StorageSpec, StorageSpec> bounds[] = {
      {presets::vrb_lower(), presets::vrb_upper()},
      {presets::liion_lower(), presets::liion_upper()}};
  for (const auto& [lo, hi] : bounds) {
    const auto a = ess_cost_schedule(lo, fin);
    const auto b = ess_cost_schedule(hi, fin);
    CHECK(a.capital <= b.capital);
    CHECK((a.yearly.values <= b.yearly.values).all());
  }
}

TEST_CASE("presets lookup and validation") {
  CHECK(presets::find_pv("sharp-nd250").has_value());
  CHECK(presets::find_storage("vrb-upper").has_value());
  CHECK_FALSE(presets::find_storage("lead-acid").has_value());
  CHECK(presets::names().size() == 5);

  StorageSpec bad = presets::vrb_lower();
  bad.round_trip_efficiency = 0;
  CHECK_THROWS(bad.validate());
  PvArraySpec badpv = presets::sharp_nd250();
  badpv.efficiency = 1.2;
  CHECK_THROWS(badpv.validate());
}
