#include "levelcost/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "levelcost/config.hpp"
#include "levelcost/errors.hpp"
#include "levelcost/report.hpp"

namespace levelcost {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string scenario;
  std::string out_dir;
  std::vector<std::string> formats{"csv"};
  bool paper_bounds = false;
  std::optional<std::string> rates_percent;
  int verbosity = 0;
};

struct Session {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;

  void info(const std::string& msg) const {
    if (cfg.verbosity > 0) err << "levelcost: " << msg << '\n';
  }
  void warn(const std::string& msg) const { err << "levelcost: warning: " << msg << '\n'; }

  std::vector<ReportFormat> formats() const {
    std::vector<ReportFormat> fs;
    for (const auto& name : cfg.formats) {
      auto f = parse_report_format(name);
      if (!f) throw InputError("--format", 0, "unknown format '" + name + "'");
      fs.push_back(*f);
    }
    if (fs.empty()) throw InputError("--format", 0, "at least one output format is required");
    return fs;
  }

  /// Sends one report to `<out>/<stem>.<ext>`, or to stdout without --out.
  void emit(const std::string& stem, const char* ext,
            const std::function<void(std::ostream&)>& write) const {
    if (cfg.out_dir.empty()) {
      write(out);
      return;
    }
    fs::create_directories(cfg.out_dir);
    const fs::path path = fs::path(cfg.out_dir) / (stem + "." + ext);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    write(file);
    info("wrote " + path.string());
  }
};

std::vector<double> parse_rates_percent(const std::string& text) {
  std::vector<double> rates;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    double v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw InputError("--rates", 0, "bad rate '" + std::string(item) + "'");
    rates.push_back(v / 100.0);
  }
  return rates;
}

Scenario load(const RunConfig& cfg) {
  Scenario sc = load_scenario(resolve_scenario(cfg.scenario));
  if (cfg.paper_bounds) {
    sc.finance.start_convention = StartConvention::IncludeYearZero;
    if (sc.sweep) sc.sweep->start_convention = StartConvention::IncludeYearZero;
    if (sc.study) sc.study->start_convention = StartConvention::IncludeYearZero;
  }
  return sc;
}

std::vector<double> rates_for(const RunConfig& cfg, const Scenario& sc,
                              std::vector<double> fallback) {
  if (cfg.rates_percent) return parse_rates_percent(*cfg.rates_percent);
  return sc.rates.empty() ? fallback : sc.rates;
}

std::string inputs_fingerprint(const RunConfig& cfg, const Scenario& sc) {
  return fingerprint(sc.canonical_json + (cfg.paper_bounds ? "|paper-bounds" : ""));
}

MetricRecord levelize_item(const LevelizeItem& item, const FinancialAssumptionsd& fin,
                           const std::string& fp) {
  switch (item.method) {
    case LevelizeMethod::Discounting: {
      const auto m = lcoe_discounting(item.costs, item.energy, fin);
      return to_record(make_metric(item.name, item.capital + m.pv_cost, m.pv_energy), fp,
                       fin.discount_rate);
    }
    case LevelizeMethod::Annuitizing: {
      const auto m = lcoe_annuitizing(item.costs, item.energy, fin);
      const double annual_cost = m.pv_cost + item.capital * annuity_factor(fin);
      return to_record(make_metric(item.name, annual_cost, m.pv_energy), fp, fin.discount_rate);
    }
    case LevelizeMethod::NetLcos: {
      const NetLcos net = lcos_net(item.lcoe, item.charging_price, item.efficiency);
      MetricRecord r;
      r.name = item.name;
      r.value = net.value;
      r.inputs_fingerprint = fp;
      r.flag = net.negative ? "negative" : "";
      return r;
    }
  }
  throw ContractViolation("unhandled levelize method");
}

std::vector<MetricRecord> case_metrics(const CaseSweepScenario& sweep, double rate,
                                       const std::string& fp) {
  const FinancialAssumptionsd fin = sweep.finance(rate);
  const auto defs = sweep.cases();
  const CaseTotals c1 = evaluate_case(defs[0], sweep.pv, fin);
  const CaseTotals c3 = evaluate_case(defs[2], sweep.pv, fin);
  const SystemCostEnergy& sce = c3.breakdown;
  const CostSchedule ess_costs = ess_cost_schedule(sweep.storage, fin);
  const YearSeriesd ess_energy = ess_energy_schedule(c3.daily.e_surplus_stored, sweep.storage, fin);
  return {
      to_record(make_metric("LCOE_basecase", c1.total_cost, c1.total_energy), fp, rate),
      to_record(lcoe_energy_in(sce), fp, rate),
      to_record(lcos_wec(ess_costs.capital, ess_costs.yearly, ess_energy, fin), fp, rate),
      to_record(lcod(sce, sweep.storage.round_trip_efficiency), fp, rate),
      to_record(lcoe_system(sce), fp, rate),
  };
}

int cmd_levelize(const Session& s) {
  const Scenario sc = load(s.cfg);
  const auto formats = s.formats();
  const std::string fp = inputs_fingerprint(s.cfg, sc);
  std::vector<MetricRecord> records;
  int status = kExitOk;

  if (sc.kind == ScenarioKind::Levelize) {
    for (double r : rates_for(s.cfg, sc, {sc.finance.discount_rate})) {
      FinancialAssumptionsd fin = sc.finance;
      fin.discount_rate = r;
      for (const auto& item : sc.levelize) {
        MetricRecord rec = levelize_item(item, fin, fp);
        if (rec.flag == "negative") s.warn(item.name + ": net LCOS is negative");
        records.push_back(std::move(rec));
      }
    }
  } else if (sc.kind == ScenarioKind::CaseSweep) {
    for (double r : rates_for(s.cfg, sc, {})) {
      try {
        auto rows = case_metrics(*sc.sweep, r, fp);
        records.insert(records.end(), rows.begin(), rows.end());
      } catch (const InputError&) {
        throw;
      } catch (const std::exception& e) {
        s.err << "levelcost: rate " << format_sig6(r * 100) << "%: " << e.what() << '\n';
        status = kExitComputation;
      }
    }
  } else {
    throw InputError(s.cfg.scenario, 0, "case-study scenarios run with 'casestudy'");
  }
  for (auto f : formats)
    s.emit(sc.name + "-levelize", file_extension(f),
           [&](std::ostream& o) { write_metric_records(o, records, f); });
  return status;
}

int run_case_study(const Session& s, const Scenario& sc, bool plot_data) {
  const auto rates = rates_for(s.cfg, sc, {});
  if (rates.empty()) s.warn("empty rate list; writing an empty table");
  const CaseStudyResult result = multi_year_case_study(*sc.study, rates);
  for (const auto& w : result.warnings) s.warn(w);
  for (auto f : s.formats())
    s.emit(sc.name + "-casestudy", file_extension(f),
           [&](std::ostream& o) { write_case_study_grid(o, result, f); });
  if (plot_data && !s.cfg.out_dir.empty())
    s.emit(sc.name + "-plot", "csv", [&](std::ostream& o) { write_case_study_long(o, result); });
  int status = kExitOk;
  for (const auto& row : result.rows)
    if (!row.ok()) {
      s.err << "levelcost: " << row.technology << "/" << row.bound << " " << row.year
            << " at " << format_sig6(row.rate * 100) << "%: " << row.error << '\n';
      status = kExitComputation;
    }
  return status;
}

int cmd_scenario(const Session& s) {
  const Scenario sc = load(s.cfg);
  if (sc.kind == ScenarioKind::CaseStudy) return run_case_study(s, sc, false);
  if (sc.kind != ScenarioKind::CaseSweep)
    throw InputError(s.cfg.scenario, 0, "'scenario' needs a case-sweep or case-study file");
  const auto formats = s.formats();
  const auto rates = rates_for(s.cfg, sc, {});
  if (rates.empty()) s.warn("empty rate list; writing an empty table");
  const auto rows = rate_sweep(*sc.sweep, rates);
  for (auto f : formats)
    s.emit(sc.name + "-sweep", file_extension(f),
           [&](std::ostream& o) { write_sweep_table(o, rows, f, sc.name); });
  int status = kExitOk;
  for (const auto& row : rows)
    if (!row.ok()) {
      s.err << "levelcost: rate " << format_sig6(row.rate * 100) << "%: " << row.error << '\n';
      status = kExitComputation;
    }
  return status;
}

int cmd_casestudy(const Session& s) {
  const Scenario sc = load(s.cfg);
  if (sc.kind != ScenarioKind::CaseStudy)
    throw InputError(s.cfg.scenario, 0, "'casestudy' needs a case-study file");
  return run_case_study(s, sc, true);
}

std::string clock_string(ClockTime t) {
  const auto total = t.count();
  std::ostringstream o;
  o << std::setfill('0') << std::setw(2) << total / 3600 << ':' << std::setw(2)
    << total / 60 % 60 << ':' << std::setw(2) << total % 60;
  return o.str();
}

int cmd_calibrate(const Session& s) {
  const Scenario sc = load(s.cfg);
  if (sc.kind != ScenarioKind::CaseSweep || !sc.calibration)
    throw InputError(s.cfg.scenario, 0, "'calibrate' needs a case-sweep file with a calibration block");
  const CalibrationRecord& anchors = *sc.calibration;
  CalibrationTargets targets;
  targets.case1_daily_direct_mwh =
      daily_energy_for_basecase(*sc.sweep, anchors.anchor_rate, anchors.anchor_basecase_lcoe);
  targets.case3_daily_surplus_mwh = anchors.target_daily_surplus_mwh;
  const auto cal = calibrate_clear_sky(*sc.sweep, targets, sc.sweep->irradiance.step);
  nlohmann::json j = {
      {"irradiance",
       {{"type", "clear-sky"},
        {"peak_w_per_m2", cal.peak_w_per_m2},
        {"sunrise", clock_string(cal.sunrise)},
        {"sunset", clock_string(cal.sunset)},
        {"step_minutes", sc.sweep->irradiance.step.count() / 60.0}}},
      {"case1_daily_direct_mwh", cal.case1_daily_direct_mwh},
      {"case3_daily_surplus_mwh", cal.case3_daily_surplus_mwh},
      {"target_case1_daily_direct_mwh", targets.case1_daily_direct_mwh}};
  s.out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_presets_list(const Session& s) {
  s.out << "components:\n";
  for (const auto& name : presets::names()) {
    s.out << "  " << name;
    if (auto pv = presets::find_pv(name))
      s.out << "  pv: " << pv->rated_power_w << " W, capital " << pv->capital_per_unit
            << " + install " << pv->install_per_unit << " USD/panel, O&M "
            << pv->om_per_unit_year << " USD/panel/yr";
    if (auto st = presets::find_storage(name))
      s.out << "  storage: " << st->capital_per_kwh << " USD/kWh, O&M " << st->om_per_kwh_year
            << " USD/kWh/yr, eta " << st->round_trip_efficiency << ", " << st->lifetime_years
            << " yr";
    s.out << '\n';
  }
  s.out << "scenarios (" << preset_dir().string() << "):\n";
  for (const auto& name : canned_scenarios()) s.out << "  " << name << '\n';
  return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--scenario", cfg.scenario, "Scenario file or canned scenario name")->required();
  sub->add_option("--out", cfg.out_dir, "Output directory (stdout when omitted)");
  sub->add_option("--format", cfg.formats, "csv, markdown or jsonl; repeatable")
      ->delimiter(',');
  sub->add_flag("--paper-bounds", cfg.paper_bounds,
                "Sum recurring entries over t = 0..n instead of 1..n");
  sub->add_option("--rates", cfg.rates_percent, "Comma-separated discount rates in percent");
  sub->add_flag("-v,--verbose", cfg.verbosity, "Report written files");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Levelized cost metrics for PV with grid-scale storage", "levelcost"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* levelize = app.add_subcommand("levelize", "Levelize cost/energy streams of a scenario");
  auto* scenario = app.add_subcommand("scenario", "Sweep a scenario over discount rates");
  auto* casestudy = app.add_subcommand("casestudy", "Multi-year case study with plot data");
  auto* calibrate = app.add_subcommand("calibrate", "Solve the clear-sky profile of a sweep");
  auto* presets_cmd = app.add_subcommand("presets", "Shipped component presets and scenarios");
  auto* presets_list = presets_cmd->add_subcommand("list", "List presets");
  presets_cmd->require_subcommand(1);
  for (auto* sub : {levelize, scenario, casestudy, calibrate}) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  const Session session{cfg, out, err};
  try {
    if (levelize->parsed()) return cmd_levelize(session);
    if (scenario->parsed()) return cmd_scenario(session);
    if (casestudy->parsed()) return cmd_casestudy(session);
    if (calibrate->parsed()) return cmd_calibrate(session);
    if (presets_list->parsed()) return cmd_presets_list(session);
  } catch (const InputError& e) {
    err << "levelcost: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "levelcost: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitInput;
}

}  // namespace levelcost
