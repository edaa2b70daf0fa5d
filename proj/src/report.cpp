#include "levelcost/report.hpp"

#include <cstdint>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "levelcost/errors.hpp"

namespace levelcost {

using nlohmann::json;

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  if (name == "jsonl" || name == "json-lines") return ReportFormat::Jsonl;
  return std::nullopt;
}

const char* file_extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Markdown: return "md";
    case ReportFormat::Jsonl: return "jsonl";
  }
  return "txt";
}

std::string fingerprint(std::string_view canonical_inputs) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_inputs) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

MetricRecord to_record(const LevelizedMetricd& metric, std::string inputs_fingerprint,
                       std::optional<double> rate) {
  return {metric.name, metric.pv_cost, metric.pv_energy, metric.value,
          std::move(inputs_fingerprint), rate, {}};
}

std::string format_sig6(double value) {
  std::ostringstream out;
  out << std::setprecision(6) << value;
  return out.str();
}

namespace {

std::string percent(double rate) { return format_sig6(rate * 100.0); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c == '\n' ? ' ' : c;
  }
  return quoted + "\"";
}

std::string md_field(const std::string& s) {
  std::string out;
  for (char c : s) out += c == '|' ? '/' : c;
  return out;
}

/// Shared csv / markdown table emitter.
class Table {
 public:
  Table(std::ostream& out, ReportFormat format) : out_(out), format_(format) {}

  void header(const std::vector<std::string>& cols) {
    row(cols);
    if (format_ == ReportFormat::Markdown) {
      out_ << '|';
      for (std::size_t i = 0; i < cols.size(); ++i) out_ << "---|";
      out_ << '\n';
    }
  }

  void row(const std::vector<std::string>& cells) {
    if (format_ == ReportFormat::Markdown) {
      out_ << '|';
      for (const auto& c : cells) out_ << ' ' << md_field(c) << " |";
    } else {
      for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << csv_field(cells[i]);
    }
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  ReportFormat format_;
};

json record_json(const MetricRecord& r) {
  json j = {{"name", r.name},
            {"pv_cost", r.pv_cost},
            {"pv_energy", r.pv_energy},
            {"value", r.value},
            {"inputs_fingerprint", r.inputs_fingerprint}};
  if (r.rate) j["rate"] = *r.rate;
  if (!r.flag.empty()) j["flag"] = r.flag;
  return j;
}

}  // namespace

void write_metric_records(std::ostream& out, const std::vector<MetricRecord>& records,
                          ReportFormat format) {
  if (format == ReportFormat::Jsonl) {
    for (const auto& r : records) out << record_json(r).dump() << '\n';
    return;
  }
  Table t(out, format);
  t.header({"name", "r (%)", "pv_cost (USD)", "pv_energy (kWh)", "value (USD/kWh)",
            "flag", "inputs_fingerprint"});
  for (const auto& r : records)
    t.row({r.name, r.rate ? percent(*r.rate) : "", format_sig6(r.pv_cost),
           format_sig6(r.pv_energy), format_sig6(r.value), r.flag, r.inputs_fingerprint});
}

std::vector<MetricRecord> read_metric_records_jsonl(std::istream& in,
                                                    const std::string& source_name) {
  std::vector<MetricRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      MetricRecord r;
      r.name = j.at("name").get<std::string>();
      r.pv_cost = j.at("pv_cost").get<double>();
      r.pv_energy = j.at("pv_energy").get<double>();
      r.value = j.at("value").get<double>();
      r.inputs_fingerprint = j.at("inputs_fingerprint").get<std::string>();
      if (j.contains("rate")) r.rate = j.at("rate").get<double>();
      if (j.contains("flag")) r.flag = j.at("flag").get<std::string>();
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw InputError(source_name, line_no, std::string("bad metric record: ") + e.what());
    }
  }
  return records;
}

std::vector<std::string> sweep_headers() {
  return {"r (%)",      "LCOE_basecase (USD/kWh)", "1-2 (USD/kWh)",
          "2-3 (USD/kWh)", "1-3 (USD/kWh)",        "LCOD (USD/kWh)",
          "LCOE_system (USD/kWh)", "error"};
}

void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows,
                       ReportFormat format, const std::string& scenario_name) {
  if (format == ReportFormat::Jsonl) {
    for (const auto& r : rows) {
      json j = {{"scenario", scenario_name}, {"rate", r.rate}};
      if (r.ok()) {
        j["LCOE_basecase"] = r.basecase;
        j["1-2"] = r.marginal_12;
        j["2-3"] = r.marginal_23;
        j["1-3"] = r.marginal_13;
        j["LCOD"] = r.lcod;
        j["LCOE_system"] = r.lcoe_system;
      } else {
        j["error"] = r.error;
      }
      out << j.dump() << '\n';
    }
    return;
  }
  Table t(out, format);
  t.header(sweep_headers());
  for (const auto& r : rows) {
    if (!r.ok()) {
      t.row({percent(r.rate), "", "", "", "", "", "", r.error});
      continue;
    }
    t.row({percent(r.rate), format_sig6(r.basecase), format_sig6(r.marginal_12),
           format_sig6(r.marginal_23), format_sig6(r.marginal_13), format_sig6(r.lcod),
           format_sig6(r.lcoe_system), ""});
  }
}

void write_case_study_grid(std::ostream& out, const CaseStudyResult& result,
                           ReportFormat format) {
  if (format == ReportFormat::Jsonl) {
    for (const auto& r : result.rows) {
      json j = {{"year", r.year}, {"rate", r.rate}, {"technology", r.technology},
                {"bound", r.bound}};
      if (r.ok()) {
        j["LCOD"] = r.lcod;
        j["LCOE_system"] = r.lcoe_system;
        j["n_direct"] = r.panels.n_direct;
        j["n_surplus"] = r.panels.n_surplus;
      } else {
        j["error"] = r.error;
      }
      out << j.dump() << '\n';
    }
    return;
  }

  // Group by (technology, bound) in first-seen order, then rate x year.
  std::vector<std::pair<std::string, std::string>> groups;
  std::map<std::pair<std::string, std::string>,
           std::map<double, std::map<int, const CaseStudyRow*>>> cells;
  std::map<std::pair<std::string, std::string>, std::vector<double>> rate_order;
  std::set<int> years;
  for (const auto& r : result.rows) {
    const auto key = std::make_pair(r.technology, r.bound);
    if (!cells.count(key)) groups.push_back(key);
    auto& by_rate = cells[key];
    if (!by_rate.count(r.rate)) rate_order[key].push_back(r.rate);
    by_rate[r.rate][r.year] = &r;
    years.insert(r.year);
  }

  bool first = true;
  for (const auto& key : groups) {
    if (!first) out << '\n';
    first = false;
    if (format == ReportFormat::Markdown)
      out << "### " << key.first << ", " << key.second << " bound\n\n";
    std::vector<std::string> header{"technology", "bound", "d (%)"};
    for (int y : years) header.push_back("LCOD " + std::to_string(y) + " (USD/kWh)");
    for (int y : years) header.push_back("LCOE_system " + std::to_string(y) + " (USD/kWh)");
    Table t(out, format);
    t.header(header);
    for (double rate : rate_order[key]) {
      std::vector<std::string> row{key.first, key.second, percent(rate)};
      const auto& by_year = cells[key][rate];
      for (int pass = 0; pass < 2; ++pass)
        for (int y : years) {
          auto it = by_year.find(y);
          if (it == by_year.end() || !it->second->ok()) {
            row.push_back("");
            continue;
          }
          row.push_back(format_sig6(pass == 0 ? it->second->lcod : it->second->lcoe_system));
        }
      t.row(row);
    }
  }
}

void write_case_study_long(std::ostream& out, const CaseStudyResult& result) {
  Table t(out, ReportFormat::Csv);
  t.header({"year", "rate", "technology", "bound", "metric", "value"});
  const auto old = out.precision(17);
  for (const auto& r : result.rows) {
    if (!r.ok()) continue;
    for (const auto& [metric, value] : {std::pair{"LCOD", r.lcod}, {"LCOE_system", r.lcoe_system}}) {
      std::ostringstream v, rate;
      v << std::setprecision(17) << value;
      rate << std::setprecision(17) << r.rate;
      t.row({std::to_string(r.year), rate.str(), r.technology, r.bound, metric, v.str()});
    }
  }
  out.precision(old);
}

}  // namespace levelcost
