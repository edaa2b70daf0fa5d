#include "levelcost/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levelcost/errors.hpp"

#ifndef LEVELCOST_DEFAULT_PRESET_DIR
#define LEVELCOST_DEFAULT_PRESET_DIR "scenarios"
#endif

namespace levelcost {

using nlohmann::json;
namespace fs = std::filesystem;

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("LEVELCOST_PRESET_DIR"); env && *env) return env;
  return LEVELCOST_DEFAULT_PRESET_DIR;
}

std::filesystem::path resolve_scenario(const std::string& name_or_path) {
  const fs::path direct{name_or_path};
  if (fs::exists(direct)) return direct;
  fs::path canned = preset_dir() / direct;
  if (canned.extension() != ".json") canned += ".json";
  if (fs::exists(canned)) return canned;
  throw InputError(name_or_path, 0, "no such scenario file or canned scenario");
}

std::vector<std::string> canned_scenarios() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(preset_dir(), ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

namespace {

/// Walks a JSON document while remembering the dotted path for messages.
class Node {
 public:
  Node(const json& value, std::string path, const std::string& source)
      : value_(value), path_(std::move(path)), source_(source) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(source_, 0, (path_.empty() ? "" : path_ + ": ") + what);
  }

  bool has(const char* key) const { return value_.is_object() && value_.contains(key); }

  Node operator[](const char* key) const {
    if (!value_.is_object()) fail("expected an object");
    if (!value_.contains(key)) fail(std::string("missing field '") + key + "'");
    return Node(value_.at(key), child(key), source_);
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    return value_.get<double>();
  }
  int integer() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    return value_.get<int>();
  }
  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  double number_or(const char* key, double fallback) const {
    return has(key) ? (*this)[key].number() : fallback;
  }

  std::vector<Node> elements() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_.size(); ++i)
      out.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]", source_);
    return out;
  }

  std::vector<std::pair<std::string, Node>> members() const {
    if (!value_.is_object()) fail("expected an object");
    std::vector<std::pair<std::string, Node>> out;
    for (const auto& [k, v] : value_.items()) out.emplace_back(k, Node(v, child(k), source_));
    return out;
  }

  const json& raw() const { return value_; }

 private:
  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json& value_;
  std::string path_;
  const std::string& source_;
};

struct Context {
  std::string source;
  fs::path base_dir;

  fs::path resolve(const std::string& p) const {
    const fs::path path{p};
    return path.is_absolute() ? path : base_dir / path;
  }
};

StartConvention parse_convention(const Node& n) {
  const std::string s = n.string();
  if (s == "exclude-year-zero") return StartConvention::ExcludeYearZero;
  if (s == "include-year-zero") return StartConvention::IncludeYearZero;
  n.fail("start_convention must be 'exclude-year-zero' or 'include-year-zero'");
}

ClockTime parse_clock(const Node& n) {
  const std::string s = n.string();
  int h = 0, m = 0, sec = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  in >> h >> c1 >> m;
  if (!in || c1 != ':') n.fail("expected HH:MM[:SS], got '" + s + "'");
  if (in >> c2) {
    if (c2 != ':' || !(in >> sec)) n.fail("expected HH:MM[:SS], got '" + s + "'");
  }
  if (h < 0 || h > 24 || m < 0 || m > 59 || sec < 0 || sec > 59)
    n.fail("clock time out of range: '" + s + "'");
  return std::chrono::hours(h) + std::chrono::minutes(m) + std::chrono::seconds(sec);
}

std::chrono::seconds parse_step(const Node& profile) {
  const double minutes = profile.number_or("step_minutes", 30);
  if (!(minutes > 0)) profile.fail("step_minutes must be positive");
  return std::chrono::seconds(std::llround(minutes * 60));
}

PvArraySpec parse_pv(const Node& n) {
  PvArraySpec pv;
  if (n.has("preset")) {
    const std::string name = n["preset"].string();
    auto found = presets::find_pv(name);
    if (!found) n.fail("unknown pv preset '" + name + "'");
    pv = *found;
  } else {
    for (const char* key : {"capital_per_unit", "install_per_unit", "om_per_unit_year",
                            "rated_power_w", "efficiency", "panel_area_m2"})
      if (!n.has(key)) n.fail(std::string("missing field '") + key + "' (or give a preset)");
  }
  pv.capital_per_unit = n.number_or("capital_per_unit", pv.capital_per_unit);
  pv.install_per_unit = n.number_or("install_per_unit", pv.install_per_unit);
  pv.om_per_unit_year = n.number_or("om_per_unit_year", pv.om_per_unit_year);
  pv.rated_power_w = n.number_or("rated_power_w", pv.rated_power_w);
  pv.efficiency = n.number_or("efficiency", pv.efficiency);
  pv.panel_area_m2 = n.number_or("panel_area_m2", pv.panel_area_m2);
  pv.degradation = n.number_or("degradation", pv.degradation);
  try {
    pv.validate();
  } catch (const DomainError& e) {
    n.fail(e.what());
  }
  return pv;
}

StorageSpec parse_storage(const Node& n) {
  StorageSpec s;
  if (n.has("preset")) {
    const std::string name = n["preset"].string();
    auto found = presets::find_storage(name);
    if (!found) n.fail("unknown storage preset '" + name + "'");
    s = *found;
  } else {
    for (const char* key : {"capital_per_kwh", "om_per_kwh_year", "power_rating_mw",
                            "energy_capacity_mwh", "round_trip_efficiency", "lifetime_years"})
      if (!n.has(key)) n.fail(std::string("missing field '") + key + "' (or give a preset)");
  }
  s.capital_per_kwh = n.number_or("capital_per_kwh", s.capital_per_kwh);
  s.om_per_kwh_year = n.number_or("om_per_kwh_year", s.om_per_kwh_year);
  s.power_rating_mw = n.number_or("power_rating_mw", s.power_rating_mw);
  s.energy_capacity_mwh = n.number_or("energy_capacity_mwh", s.energy_capacity_mwh);
  s.round_trip_efficiency = n.number_or("round_trip_efficiency", s.round_trip_efficiency);
  s.degradation = n.number_or("degradation", s.degradation);
  if (n.has("lifetime_years")) s.lifetime_years = n["lifetime_years"].integer();
  try {
    s.validate();
  } catch (const DomainError& e) {
    n.fail(e.what());
  }
  return s;
}

PowerTimeSeries parse_profile(const Node& n, SeriesKind kind, const Context& ctx) {
  const std::string type = n["type"].string();
  if (type == "csv") {
    CsvReadOptions opts;
    opts.kind = kind;
    if (n.has("gaps")) {
      const std::string g = n["gaps"].string();
      if (g == "interpolate") opts.gaps = GapPolicy::Interpolate;
      else if (g != "fail") n["gaps"].fail("gaps must be 'fail' or 'interpolate'");
      if (n.has("max_gap_steps")) opts.max_gap_steps = n["max_gap_steps"].integer();
    }
    return read_series_csv(ctx.resolve(n["path"].string()), opts);
  }
  if (type == "clear-sky") {
    if (kind != SeriesKind::Irradiance) n.fail("clear-sky profiles are irradiance");
    try {
      return clear_sky_profile(n["peak_w_per_m2"].number(), parse_clock(n["sunrise"]),
                               parse_clock(n["sunset"]), parse_step(n));
    } catch (const DomainError& e) {
      n.fail(e.what());
    }
  }
  if (type == "synthetic-load") {
    if (kind != SeriesKind::Power) n.fail("synthetic-load profiles are power");
    try {
      return synthetic_load_profile(n["base_mw"].number(), n["evening_peak_mw"].number(),
                                    parse_clock(n["peak_time"]), parse_step(n));
    } catch (const DomainError& e) {
      n.fail(e.what());
    }
  }
  n.fail("unknown profile type '" + type + "'");
}

YearSeriesd parse_year_series(const Node& n, int horizon, UnitTag unit, const Context& ctx) {
  if (n.raw().is_array()) {
    const auto items = n.elements();
    if (static_cast<int>(items.size()) != horizon + 1)
      n.fail("expected " + std::to_string(horizon + 1) + " entries (years 0.." +
             std::to_string(horizon) + ")");
    YearSeriesd s = YearSeriesd::zeros(horizon, unit);
    for (int t = 0; t <= horizon; ++t) s.values(t) = items[t].number();
    return s;
  }
  if (n.has("constant")) return YearSeriesd::constant(horizon, n["constant"].number(), unit, 0);
  if (n.has("csv")) return read_year_series_csv(ctx.resolve(n["csv"].string()), horizon, unit);
  n.fail("expected an array, {\"constant\": x} or {\"csv\": path}");
}

FinancialAssumptionsd parse_finance(const Node& root) {
  FinancialAssumptionsd fin;
  if (!root.has("finance")) return fin;
  const Node f = root["finance"];
  fin.discount_rate = f.number_or("discount_rate", 0.0);
  if (f.has("horizon_years")) fin.horizon_years = f["horizon_years"].integer();
  if (f.has("start_convention")) fin.start_convention = parse_convention(f["start_convention"]);
  try {
    fin.validate();
  } catch (const DomainError& e) {
    f.fail(e.what());
  }
  return fin;
}

void parse_levelize(const Node& root, Scenario& sc, const Context& ctx) {
  const int n = sc.finance.horizon_years;
  for (const Node& item : root["items"].elements()) {
    LevelizeItem li;
    li.name = item["name"].string();
    if (item.has("method")) {
      const std::string m = item["method"].string();
      if (m == "annuitizing") li.method = LevelizeMethod::Annuitizing;
      else if (m == "net-lcos") li.method = LevelizeMethod::NetLcos;
      else if (m != "discounting")
        item["method"].fail("method must be 'discounting', 'annuitizing' or 'net-lcos'");
    }
    if (li.method == LevelizeMethod::NetLcos) {
      li.lcoe = item["lcoe"].number();
      li.charging_price = item["charging_price"].number();
      li.efficiency = item["efficiency"].number();
      sc.levelize.push_back(std::move(li));
      continue;
    }
    li.capital = item.number_or("capital", 0.0);
    li.costs = parse_year_series(item["costs"], n, UnitTag::Money, ctx);
    li.energy = parse_year_series(item["energy"], n, UnitTag::Energy, ctx);
    if ((li.energy.values < 0).any()) item["energy"].fail("energy entries must be non-negative");
    sc.levelize.push_back(std::move(li));
  }
}

void parse_case_sweep(const Node& root, Scenario& sc, const Context& ctx) {
  CaseSweepScenario cs;
  cs.name = sc.name;
  cs.pv = parse_pv(root["pv"]);
  cs.storage = parse_storage(root["storage"]);
  if (root.has("cases")) {
    const Node c = root["cases"];
    cs.case1_panels = c.number_or("case1_panels", cs.case1_panels);
    cs.case2_factor = c.number_or("case2_factor", cs.case2_factor);
  }
  const Node profiles = root["profiles"];
  cs.irradiance = parse_profile(profiles["irradiance"], SeriesKind::Irradiance, ctx);
  if (profiles.has("load")) {
    const Node load = profiles["load"];
    if (!(load.has("type") && load["type"].raw() == "case1-pv-peak"))
      cs.load = parse_profile(load, SeriesKind::Power, ctx);
  }
  if (root.has("finance") && root["finance"].has("horizon_years"))
    cs.horizon_years = sc.finance.horizon_years;
  cs.start_convention = sc.finance.start_convention;

  if (root.has("calibration")) {
    const Node c = root["calibration"];
    CalibrationRecord rec;
    rec.anchor_rate = c["anchor_rate"].number();
    rec.anchor_basecase_lcoe = c["anchor_basecase_lcoe"].number();
    rec.target_daily_surplus_mwh = c["target_daily_surplus_mwh"].number();
    rec.case1_daily_direct_mwh = c.number_or("case1_daily_direct_mwh", 0.0);
    sc.calibration = rec;
  }
  sc.sweep = std::move(cs);
}

void parse_case_study(const Node& root, Scenario& sc, const Context& ctx) {
  CaseStudyInputs in;
  in.pv = parse_pv(root["pv"]);
  in.farm_panels = root.number_or("farm_panels", in.farm_panels);
  for (const Node& s : root["storages"].elements()) {
    StorageOption opt;
    opt.technology = s["technology"].string();
    opt.bound = s["bound"].string();
    opt.spec = parse_storage(s);
    in.storages.push_back(std::move(opt));
  }
  const Node profiles = root["profiles"];
  for (const auto& [key, node] : profiles["irradiance_by_year"].members()) {
    int year = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), year);
    if (ec != std::errc() || ptr != key.data() + key.size())
      node.fail("year keys must be integers");
    in.irradiance_by_year.emplace(year, parse_profile(node, SeriesKind::Irradiance, ctx));
  }
  in.load = parse_profile(profiles["load"], SeriesKind::Power, ctx);
  if (root.has("finance") && root["finance"].has("horizon_years"))
    in.horizon_years = sc.finance.horizon_years;
  in.start_convention = sc.finance.start_convention;
  sc.study = std::move(in);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& source_name,
                        const std::filesystem::path& base_dir) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source_name, line_of(text, e.byte == 0 ? 0 : e.byte - 1),
                     "malformed JSON");
  }
  const Context ctx{source_name, base_dir};
  const Node root(doc, "", ctx.source);

  Scenario sc;
  sc.name = root.has("name") ? root["name"].string()
                             : fs::path(source_name).stem().string();
  const std::string kind = root["kind"].string();
  sc.finance = parse_finance(root);
  if (root.has("sweep"))
    for (const Node& r : root["sweep"]["rates"].elements()) sc.rates.push_back(r.number());
  sc.canonical_json = doc.dump();

  if (kind == "levelize") {
    sc.kind = ScenarioKind::Levelize;
    parse_levelize(root, sc, ctx);
  } else if (kind == "case-sweep") {
    sc.kind = ScenarioKind::CaseSweep;
    parse_case_sweep(root, sc, ctx);
  } else if (kind == "case-study") {
    sc.kind = ScenarioKind::CaseStudy;
    parse_case_study(root, sc, ctx);
  } else {
    root["kind"].fail("kind must be 'levelize', 'case-sweep' or 'case-study'");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), 0, "cannot open scenario file");
  return parse_scenario(in, path.string(), path.parent_path());
}

YearSeriesd parse_year_series_csv(std::istream& in, const std::string& source_name,
                                  int horizon_years, UnitTag unit) {
  YearSeriesd s = YearSeriesd::zeros(horizon_years, unit);
  std::string raw;
  std::size_t line_no = 0;
  bool seen_content = false;
  std::vector<bool> seen(static_cast<std::size_t>(horizon_years) + 1, false);
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos)
      throw InputError(source_name, line_no, "expected 'year,value'");
    std::string_view year_text = line.substr(0, comma);
    std::string_view value_text = line.substr(comma + 1);
    while (!value_text.empty() && value_text.front() == ' ') value_text.remove_prefix(1);
    int year = 0;
    auto [yp, yec] = std::from_chars(year_text.data(), year_text.data() + year_text.size(), year);
    if (yec != std::errc() || yp != year_text.data() + year_text.size()) {
      if (!seen_content) {
        seen_content = true;
        continue;
      }
      throw InputError(source_name, line_no, "bad year '" + std::string(year_text) + "'");
    }
    seen_content = true;
    double value = 0;
    auto [vp, vec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (vec != std::errc() || vp != value_text.data() + value_text.size() || !std::isfinite(value))
      throw InputError(source_name, line_no, "bad value '" + std::string(value_text) + "'");
    if (year < 0 || year > horizon_years)
      throw InputError(source_name, line_no,
                       "year " + std::to_string(year) + " outside 0.." + std::to_string(horizon_years));
    if (seen[static_cast<std::size_t>(year)])
      throw InputError(source_name, line_no, "duplicate year " + std::to_string(year));
    if (unit == UnitTag::Energy && value < 0)
      throw InputError(source_name, line_no, "negative energy");
    seen[static_cast<std::size_t>(year)] = true;
    s.values(year) = value;
  }
  return s;
}

YearSeriesd read_year_series_csv(const std::filesystem::path& path, int horizon_years,
                                 UnitTag unit) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  return parse_year_series_csv(in, path.string(), horizon_years, unit);
}

}  // namespace levelcost
