#include "levelcost/metrics.hpp"

namespace levelcost {

void SystemCostEnergy::validate() const {
  if (cost_pv_surplus < 0 || cost_pv_direct < 0 || cost_ess < 0 ||
      energy_ess < 0 || energy_pv_direct < 0 || energy_surplus_in < 0)
    throw ContractViolation("system cost/energy terms must be non-negative");
}

LevelizedMetricd lcoe_energy_in(const SystemCostEnergy& sce) {
  sce.validate();
  return make_metric("lcoe_energy_in", sce.cost_pv_surplus, sce.energy_surplus_in);
}

LevelizedMetricd lcod(const SystemCostEnergy& sce, double eta) {
  sce.validate();
  if (!(eta > 0 && eta <= 1)) throw DomainError("lcod: eta must lie in (0, 1]");
  return make_metric("lcod", sce.cost_pv_surplus + sce.cost_ess,
                     eta * sce.energy_surplus_in);
}

LevelizedMetricd lcos_wec(double capital, const YearSeriesd& ess_yearly_costs,
                          const YearSeriesd& ess_energy,
                          const FinancialAssumptionsd& fin) {
  detail::check_energy(ess_energy, "lcos_wec");
  return make_metric("lcos_wec", capital + present_value(ess_yearly_costs, fin),
                     present_value(ess_energy, fin));
}

NetLcos lcos_net(double lcoe, double charging_price, double overall_efficiency) {
  if (!(overall_efficiency > 0 && overall_efficiency <= 1))
    throw DomainError("lcos_net: efficiency must lie in (0, 1]");
  const double value = lcoe - charging_price / overall_efficiency;
  return {value, value < 0};
}

LevelizedMetricd lcoe_system(const SystemCostEnergy& sce) {
  sce.validate();
  return make_metric("lcoe_system",
                     sce.cost_pv_surplus + sce.cost_ess + sce.cost_pv_direct,
                     sce.energy_ess + sce.energy_pv_direct);
}

}  // namespace levelcost
