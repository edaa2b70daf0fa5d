#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "levelcost/config.hpp"
#include "levelcost/errors.hpp"
#include "levelcost/report.hpp"
#include "support.hpp"

using namespace levelcost;

namespace {

Scenario parse_text(const std::string& text, const std::filesystem::path& base = ".") {
  std::istringstream in(text);
  return parse_scenario(in, "inline.json", base);
}

std::string error_of(const std::string& text) {
  try {
    parse_text(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const char* kLevelize = R"({
  "name": "flat",
  "kind": "levelize",
  "finance": {"discount_rate": 0.07, "horizon_years": 3},
  "items": [
    {"name": "plant", "costs": {"constant": 100}, "energy": [1000, 1000, 1000, 1000]},
    {"name": "net", "method": "net-lcos", "lcoe": 0.2, "charging_price": 0.15, "efficiency": 0.7}
  ]
})";

}  // namespace

TEST_CASE("levelize scenario parsing") {
  const Scenario sc = parse_text(kLevelize);
  CHECK(sc.name == "flat");
  CHECK(sc.kind == ScenarioKind::Levelize);
  CHECK(sc.finance.discount_rate == 0.07);
  CHECK(sc.finance.horizon_years == 3);
  REQUIRE(sc.levelize.size() == 2);
  CHECK(sc.levelize[0].costs.values(0) == 100);
  CHECK(sc.levelize[0].energy.unit == UnitTag::Energy);
  CHECK(sc.levelize[1].method == LevelizeMethod::NetLcos);
  CHECK_FALSE(sc.canonical_json.empty());
}

TEST_CASE("canned scenarios load") {
  const auto dir = fixture::source_dir() / "scenarios";
  const Scenario t4 = load_scenario(dir / "table4-vrb-lower.json");
  REQUIRE(t4.sweep.has_value());
  CHECK(t4.rates.size() == 5);
  CHECK(t4.sweep->storage.energy_capacity_mwh == 5);
  CHECK(t4.sweep->storage.round_trip_efficiency == 0.7);
  CHECK(t4.sweep->horizon() == 20);
  CHECK(t4.sweep->irradiance.step == std::chrono::minutes(1));

  const Scenario t5 = load_scenario(dir / "table5-liion-lower.json");
  CHECK(t5.sweep->horizon() == 15);

  const Scenario study = load_scenario(dir / "table6to9-template.json");
  REQUIRE(study.study.has_value());
  CHECK(study.rates.size() == 7);
  CHECK(study.study->storages.size() == 4);
  CHECK(study.study->irradiance_by_year.size() == 3);
  CHECK(study.study->irradiance_by_year.at(2012).size() == 366 * 48);
}

TEST_CASE("preset directory lookup") {
  const auto names = canned_scenarios();
  CHECK(names == std::vector<std::string>{"table4-vrb-lower", "table5-liion-lower", "table6to9-template"});
  CHECK(resolve_scenario("table4-vrb-lower").filename() == "table4-vrb-lower.json");
  CHECK(resolve_scenario("table4-vrb-lower.json").filename() == "table4-vrb-lower.json");
  CHECK_THROWS_AS(resolve_scenario("no-such-scenario"), InputError);

  const auto dir = fixture::scratch_dir("presets");
  std::ofstream(dir / "mine.json") << kLevelize;
  ::setenv("LEVELCOST_PRESET_DIR", dir.c_str(), 1);
  CHECK(preset_dir() == dir);
  CHECK(canned_scenarios() == std::vector<std::string>{"mine"});
  CHECK(load_scenario(resolve_scenario("mine")).name == "flat");
  ::unsetenv("LEVELCOST_PRESET_DIR");
  std::filesystem::remove_all(dir);
}

TEST_CASE("scenario errors name the field or line") {
  CHECK(contains(error_of("{\n  \"kind\": \"levelize\",\n  oops\n}"), "inline.json:3"));
  CHECK(contains(error_of(R"({"kind": "case-sweep", "pv": {"preset": "sharp-nd250"}})"), "storage"));
  CHECK(contains(error_of(R"({"kind": "bogus"})"), "kind"));
  CHECK(contains(error_of(R"({"kind": "levelize", "finance": {"discount_rate": -1.5}, "items": []})"),
                 "finance"));
  CHECK(contains(error_of(R"({"kind": "levelize", "finance": {"horizon_years": 2},
    "items": [{"name": "a", "costs": [1, 2], "energy": [0, 1, 1]}]})"),
                 "items[0].costs"));
  CHECK(contains(error_of(R"({"kind": "levelize", "finance": {"horizon_years": 1},
    "items": [{"name": "a", "costs": [1, 2], "energy": [0, -1]}]})"),
                 "energy"));
  CHECK(contains(error_of(R"({"kind": "case-sweep", "pv": {"preset": "sharp-nd250"},
    "storage": {"preset": "flywheel"}})"),
                 "flywheel"));
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), InputError);
}

TEST_CASE("year series CSV") {
  std::istringstream ok("year,value\n0,10\n2, 30\n\n3,40\n");
  const auto s = parse_year_series_csv(ok, "y.csv", 3, UnitTag::Money);
  CHECK(s.values(0) == 10);
  CHECK(s.values(1) == 0);
  CHECK(s.values(3) == 40);

  auto line_of = [](const std::string& text, UnitTag unit) -> std::size_t {
    std::istringstream in(text);
    try {
      parse_year_series_csv(in, "y.csv", 3, unit);
    } catch (const InputError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("0,1\n1,x\n", UnitTag::Money) == 2);
  CHECK(line_of("0,1\n1,1\n9,1\n", UnitTag::Money) == 3);
  CHECK(line_of("0,1\n0,2\n", UnitTag::Money) == 2);
  CHECK(line_of("year,value\n1,-5\n", UnitTag::Energy) == 2);
  CHECK(line_of("1,-5\n", UnitTag::Money) == 0);
  CHECK(line_of("1;5\n", UnitTag::Money) == 1);
}

TEST_CASE("levelize series from csv files resolve next to the scenario") {
  const auto dir = fixture::scratch_dir("yearcsv");
  std::ofstream(dir / "energy.csv") << "year,value\n1,500\n2,500\n";
  std::ofstream(dir / "s.json") << R"({"kind": "levelize", "finance": {"horizon_years": 2},
    "items": [{"name": "a", "capital": 100, "costs": {"constant": 0}, "energy": {"csv": "energy.csv"}}]})";
  const Scenario sc = load_scenario(dir / "s.json");
  CHECK(sc.levelize.at(0).energy.values(2) == 500);
  CHECK(sc.levelize.at(0).capital == 100);
  std::filesystem::remove_all(dir);
}

TEST_CASE("number formatting") {
  CHECK(format_sig6(0.0950000234) == "0.095");
  CHECK(format_sig6(1.35238095) == "1.35238");
  CHECK(format_sig6(-0.0142857142857) == "-0.0142857");
  CHECK(format_sig6(1234567.0) == "1.23457e+06");
  CHECK(format_sig6(0) == "0");
}

TEST_CASE("fingerprints") {
  const auto a = fingerprint("{\"a\":1}");
  CHECK(a.size() == 16);
  CHECK(a == fingerprint("{\"a\":1}"));
  CHECK(a != fingerprint("{\"a\":2}"));
  CHECK(fingerprint("") == "cbf29ce484222325");
}

TEST_CASE("metric records round trip through jsonl") {
  std::vector<MetricRecord> records;
  records.push_back(to_record(make_metric<double>("lcod", 1.0 / 3.0, 7.0), fingerprint("x"), 0.08));
  MetricRecord net;
  net.name = "net, with \"quotes\"";
  net.value = -0.014285714285714285;
  net.inputs_fingerprint = fingerprint("y");
  net.flag = "negative";
  records.push_back(net);

  std::stringstream io;
  write_metric_records(io, records, ReportFormat::Jsonl);
  CHECK(read_metric_records_jsonl(io, "mem") == records);

  std::istringstream bad("{\"name\": \"a\"}\nnot json\n");
  try {
    read_metric_records_jsonl(bad, "r.jsonl");
    FAIL("expected an InputError");
  } catch (const InputError& e) {
    CHECK(e.line() >= 1);
  }
}

TEST_CASE("report tables") {
  const std::vector<MetricRecord> records{
      to_record(make_metric<double>("a", 1, 3), "f", 0.05)};
  std::ostringstream csv, md;
  write_metric_records(csv, records, ReportFormat::Csv);
  write_metric_records(md, records, ReportFormat::Markdown);
  CHECK(contains(csv.str(), "0.333333"));
  CHECK(contains(md.str(), "|"));

  const auto headers = sweep_headers();
  CHECK(headers.front() == "r (%)");
  CHECK(headers.back() == "error");
  for (const char* col : {"LCOE_basecase", "1-2", "2-3", "1-3", "LCOD", "LCOE_system"}) {
    bool found = false;
    for (const auto& h : headers) found |= h.rfind(col, 0) == 0;
    CHECK_MESSAGE(found, col);
  }

  SweepRow row;
  row.rate = 0.08;
  row.basecase = 0.12;
  SweepRow failed;
  failed.rate = -1.5;
  failed.error = "discount rate must exceed -1";
  std::ostringstream sweep;
  write_sweep_table(sweep, {row, failed}, ReportFormat::Csv, "demo");
  std::istringstream lines(sweep.str());
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(first.rfind("8,0.12,", 0) == 0);
  CHECK(contains(second, "discount rate must exceed -1"));

  CHECK(parse_report_format("md") == ReportFormat::Markdown);
  CHECK(parse_report_format("json-lines") == ReportFormat::Jsonl);
  CHECK_FALSE(parse_report_format("xlsx").has_value());
  CHECK(std::string(file_extension(ReportFormat::Jsonl)) == "jsonl");
}

TEST_CASE("case-study tables") {
  CaseStudyResult result;
  for (int year : {2009, 2011})
    for (double r : {0.0, 0.05}) {
      CaseStudyRow row;
      row.year = year;
      row.rate = r;
      row.technology = "vrb";
      row.bound = "lower";
      row.lcod = 0.5 - r - (year - 2009) * 0.01;
      row.lcoe_system = 0.2 - r;
      result.rows.push_back(row);
    }
  std::ostringstream grid, plot;
  write_case_study_grid(grid, result, ReportFormat::Csv);
  write_case_study_long(plot, result);
  CHECK(contains(grid.str(), "LCOD 2009"));
  CHECK(contains(grid.str(), "LCOE_system 2011"));
  std::istringstream lines(plot.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "year,rate,technology,bound,metric,value");
  int count = 0;
  for (std::string l; std::getline(lines, l);) ++count;
  CHECK(count == 8);
}
