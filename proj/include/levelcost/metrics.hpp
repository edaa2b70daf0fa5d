#pragma once

#include "levelcost/finance.hpp"

namespace levelcost {

/// Discounted cost ($) and energy (kWh) terms of a PV + storage system.
/// `energy_surplus_in` is the PV surplus delivered into storage before the
/// round-trip loss, so energy_ess == eta * energy_surplus_in.
struct SystemCostEnergy {
  double cost_pv_surplus = 0;
  double cost_pv_direct = 0;
  double cost_ess = 0;
  double energy_ess = 0;
  double energy_pv_direct = 0;
  double energy_surplus_in = 0;

  void validate() const;
};

/// Generation cost of the energy put into storage.
LevelizedMetricd lcoe_energy_in(const SystemCostEnergy& sce);

/// Levelized cost of delivery: cost of the surplus PV plus the storage,
/// over the energy the storage hands back.
///   lcod = (C_pvsurplus + C_ess) / (eta * E_in)
///        = lcoe_energy_in / eta + C_ess / E_ess
LevelizedMetricd lcod(const SystemCostEnergy& sce, double eta);

/// Storage-only levelized cost: (capital + PrV(costs)) / PrV(energy).
LevelizedMetricd lcos_wec(double capital, const YearSeriesd& ess_yearly_costs,
                          const YearSeriesd& ess_energy,
                          const FinancialAssumptionsd& fin);

struct NetLcos {
  double value = 0;
  bool negative = false;
};

/// lcoe - charging_price / efficiency. Kept only as a reference point; it
/// drops the generation cost of the stored energy and can go negative.
NetLcos lcos_net(double lcoe, double charging_price, double overall_efficiency);

/// Whole-system cost over delivered energy (storage output + direct PV).
LevelizedMetricd lcoe_system(const SystemCostEnergy& sce);

}  // namespace levelcost
