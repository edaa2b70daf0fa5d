#include "levelcost/timeseries.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "levelcost/errors.hpp"

namespace levelcost {

void PowerTimeSeries::validate() const {
  if (step.count() <= 0) throw ContractViolation("series step must be positive");
  if (samples.size() < 1) throw ContractViolation("series must not be empty");
  if (!samples.isFinite().all() || (samples < 0).any())
    throw ContractViolation("series samples must be finite and non-negative");
}

bool aligned(const PowerTimeSeries& a, const PowerTimeSeries& b) {
  return a.start == b.start && a.step == b.step && a.size() == b.size();
}

namespace {

int parse_int(std::string_view text, std::size_t pos, std::size_t len) {
  if (pos + len > text.size())
    throw std::invalid_argument("timestamp truncated");
  int v = 0;
  auto first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, v);
  if (ec != std::errc() || ptr != first + len)
    throw std::invalid_argument("non-numeric timestamp field");
  return v;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c)
    throw std::invalid_argument(std::string("expected '") + c + "' in timestamp");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Timestamp parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  text = trim(text);
  const int y = parse_int(text, 0, 4);
  expect(text, 4, '-');
  const int mo = parse_int(text, 5, 2);
  expect(text, 7, '-');
  const int d = parse_int(text, 8, 2);
  if (text.size() < 11 || (text[10] != 'T' && text[10] != ' '))
    throw std::invalid_argument("expected 'T' between date and time");
  const int hh = parse_int(text, 11, 2);
  expect(text, 13, ':');
  const int mm = parse_int(text, 14, 2);
  std::size_t pos = 16;
  int ss = 0;
  if (pos < text.size() && text[pos] == ':') {
    ss = parse_int(text, pos + 1, 2);
    pos += 3;
  }
  seconds offset{0};
  if (pos < text.size()) {
    const char c = text[pos];
    if (c == 'Z' && pos + 1 == text.size()) {
      pos += 1;
    } else if ((c == '+' || c == '-') && pos + 6 == text.size()) {
      const int oh = parse_int(text, pos + 1, 2);
      expect(text, pos + 3, ':');
      const int om = parse_int(text, pos + 4, 2);
      offset = hours(oh) + minutes(om);
      if (c == '-') offset = -offset;
      pos += 6;
    } else {
      throw std::invalid_argument("unrecognised timestamp suffix");
    }
  }
  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                            day{static_cast<unsigned>(d)}};
  if (!date.ok() || hh > 23 || mm > 59 || ss > 59)
    throw std::invalid_argument("timestamp field out of range");
  return sys_days{date} + hours(hh) + minutes(mm) + seconds(ss) - offset;
}

std::string format_iso8601(Timestamp t) {
  using namespace std::chrono;
  const auto day_start = floor<days>(t);
  const year_month_day date{day_start};
  const hh_mm_ss clock{t - day_start};
  std::ostringstream out;
  out << std::setfill('0') << std::setw(4) << static_cast<int>(date.year())
      << '-' << std::setw(2) << static_cast<unsigned>(date.month()) << '-'
      << std::setw(2) << static_cast<unsigned>(date.day()) << 'T'
      << std::setw(2) << clock.hours().count() << ':' << std::setw(2)
      << clock.minutes().count() << ':' << std::setw(2)
      << clock.seconds().count() << 'Z';
  return out.str();
}

PowerTimeSeries parse_series_csv(std::istream& in,
                                 const std::string& source_name,
                                 const CsvReadOptions& options) {
  struct Row {
    Timestamp t;
    double value;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos)
      throw InputError(source_name, line_no, "expected 'timestamp,value'");
    const auto ts_text = trim(line.substr(0, comma));
    const auto value_text = trim(line.substr(comma + 1));
    Timestamp t;
    try {
      t = parse_iso8601(ts_text);
    } catch (const std::invalid_argument& e) {
      if (!seen_content) {  // header row
        seen_content = true;
        continue;
      }
      throw InputError(source_name, line_no,
                       "bad timestamp '" + std::string(ts_text) + "': " + e.what());
    }
    seen_content = true;
    double value = 0;
    auto [ptr, ec] = std::from_chars(value_text.data(),
                                     value_text.data() + value_text.size(), value);
    if (ec != std::errc() || ptr != value_text.data() + value_text.size() ||
        !std::isfinite(value))
      throw InputError(source_name, line_no,
                       "bad value '" + std::string(value_text) + "'");
    if (value < 0)
      throw InputError(source_name, line_no, "negative value");
    rows.push_back({t, value, line_no});
  }
  if (rows.empty()) throw InputError(source_name, 0, "no data rows");

  PowerTimeSeries series;
  series.kind = options.kind;
  series.start = rows.front().t;
  if (rows.size() == 1) {
    series.samples = Eigen::ArrayXd::Constant(1, rows.front().value);
    return series;
  }
  series.step = rows[1].t - rows[0].t;
  if (series.step.count() <= 0)
    throw InputError(source_name, rows[1].line, "timestamps must increase");

  std::vector<double> values{rows.front().value};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto delta = rows[i].t - rows[i - 1].t;
    if (delta == series.step) {
      values.push_back(rows[i].value);
      continue;
    }
    if (delta.count() <= 0 || delta % series.step != std::chrono::seconds{0})
      throw InputError(source_name, rows[i].line, "timestamp off the uniform step grid");
    const long long missing = delta / series.step - 1;
    if (options.gaps == GapPolicy::Fail || missing > options.max_gap_steps)
      throw InputError(source_name, rows[i].line,
                       "gap of " + std::to_string(missing) + " missing sample(s)");
    const double a = rows[i - 1].value;
    const double b = rows[i].value;
    for (long long k = 1; k <= missing; ++k)
      values.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(missing + 1));
    values.push_back(b);
  }
  series.samples = Eigen::Map<const Eigen::ArrayXd>(values.data(),
                                                    static_cast<Eigen::Index>(values.size()));
  return series;
}

PowerTimeSeries read_series_csv(const std::filesystem::path& path,
                                const CsvReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string(), 0, "cannot open file");
  return parse_series_csv(in, path.string(), options);
}

void write_series_csv(std::ostream& out, const PowerTimeSeries& series) {
  out << "timestamp,value\n";
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < series.size(); ++i)
    out << format_iso8601(series.time_at(i)) << ',' << series.samples(i) << '\n';
  out.precision(old_precision);
}

}  // namespace levelcost
