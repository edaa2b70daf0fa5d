#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levelcost/finance.hpp"
#include "levelcost/scenarios.hpp"

namespace levelcost {

enum class ReportFormat { Csv, Markdown, Jsonl };

std::optional<ReportFormat> parse_report_format(std::string_view name);
const char* file_extension(ReportFormat format);

/// Audit record of one metric evaluation.
struct MetricRecord {
  std::string name;
  double pv_cost = 0;
  double pv_energy = 0;
  double value = 0;
  std::string inputs_fingerprint;
  std::optional<double> rate;
  std::string flag;  // e.g. "negative" for a net LCOS below zero

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

/// 64-bit FNV-1a of the canonical inputs, as 16 hex digits.
std::string fingerprint(std::string_view canonical_inputs);

MetricRecord to_record(const LevelizedMetricd& metric, std::string inputs_fingerprint,
                       std::optional<double> rate = std::nullopt);

/// Six significant digits, the precision of the human-readable tables.
std::string format_sig6(double value);

void write_metric_records(std::ostream& out, const std::vector<MetricRecord>& records,
                          ReportFormat format);
/// Inverse of the jsonl writer.
std::vector<MetricRecord> read_metric_records_jsonl(std::istream& in,
                                                    const std::string& source_name);

/// Column titles of the sweep table (rate first, error last).
std::vector<std::string> sweep_headers();
void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows,
                       ReportFormat format, const std::string& scenario_name);

/// One LCOD / LCOE_system grid per technology and cost bound, years as columns.
void write_case_study_grid(std::ostream& out, const CaseStudyResult& result,
                           ReportFormat format);
/// Long-format plot data: year, rate, technology, bound, metric, value.
void write_case_study_long(std::ostream& out, const CaseStudyResult& result);

}  // namespace levelcost
