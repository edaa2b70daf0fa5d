#include <doctest.h>

#include <sstream>

#include "levelcost/errors.hpp"
#include "levelcost/timeseries.hpp"

using namespace levelcost;
using namespace std::chrono;

namespace {

PowerTimeSeries parse(const std::string& text, CsvReadOptions opt = {}) {
  std::istringstream in(text);
  return parse_series_csv(in, "trace.csv", opt);
}

std::size_t error_line(const std::string& text, CsvReadOptions opt = {}) {
  try {
    parse(text, opt);
  } catch (const InputError& e) {
    CHECK(e.source() == "trace.csv");
    return e.line();
  }
  FAIL("expected an InputError");
  return 0;
}

}  // namespace

TEST_CASE("ISO-8601 timestamps") {
  const auto t = parse_iso8601("2012-02-29T13:30:00Z");
  CHECK(t == sys_days{2012y / February / 29} + 13h + 30min);
  CHECK(parse_iso8601("2012-02-29 13:30") == t);
  CHECK(parse_iso8601("2012-02-29T16:30:00+03:00") == t);
  CHECK(format_iso8601(t) == "2012-02-29T13:30:00Z");
  CHECK_THROWS_AS(parse_iso8601("2011-02-29T00:00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("2011-02-01T25:00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("yesterday"), std::invalid_argument);
}

TEST_CASE("CSV ingestion") {
  const auto s = parse(
      "timestamp,value\n"
      "# comment\n"
      "2009-01-01T00:00,1.5\n"
      "\n"
      "2009-01-01T00:30,2\n"
      "2009-01-01T01:00,0\n",
      {SeriesKind::Irradiance});
  CHECK(s.kind == SeriesKind::Irradiance);
  CHECK(s.step == 30min);
  REQUIRE(s.size() == 3);
  CHECK(s.samples(1) == 2.0);
  CHECK(s.integral() == doctest::Approx(1.75));
}

TEST_CASE("CSV errors carry the line number") {
  CHECK(error_line("2009-01-01T00:00,1\n2009-01-01T00:30,x\n") == 2);
  CHECK(error_line("t,v\n2009-01-01T00:00,1\n2009-01-01T00:30,-3\n") == 3);
  CHECK(error_line("2009-01-01T00:00,1\n2009-01-01T00:30,1\n2009-01-01T00:45,1\n") == 3);
  CHECK(error_line("2009-01-01T00:00,1\nnot-a-time,1\n") == 2);
  CHECK(error_line("2009-01-01T00:00 1\n") == 1);
  CHECK(error_line("2009-01-01T00:30,1\n2009-01-01T00:00,1\n") == 2);
  CHECK(error_line("# empty\n") == 0);
}

TEST_CASE("gap policy") {
  const std::string gap =
      "2009-01-01T00:00,0\n"
      "2009-01-01T00:30,1\n"
      "2009-01-01T02:00,4\n";
  CHECK(error_line(gap) == 3);

  CsvReadOptions fill;
  fill.gaps = GapPolicy::Interpolate;
  const auto s = parse(gap, fill);
  REQUIRE(s.size() == 5);
  CHECK(s.samples(2) == doctest::Approx(2.0));
  CHECK(s.samples(3) == doctest::Approx(3.0));

  fill.max_gap_steps = 1;
  CHECK(error_line(gap, fill) == 3);
}

TEST_CASE("write and read back") {
  PowerTimeSeries s;
  s.start = sys_days{2011y / June / 1} + 6h;
  s.step = 15min;
  s.samples.resize(4);
  s.samples << 0.1, 1.0 / 3.0, 2.5, 0;
  std::stringstream io;
  write_series_csv(io, s);
  const auto back = parse_series_csv(io, "round-trip");
  CHECK(aligned(back, s));
  CHECK((back.samples == s.samples).all());
}

TEST_CASE("series validation") {
  PowerTimeSeries s;
  s.samples = Eigen::ArrayXd::Constant(3, 1.0);
  CHECK_NOTHROW(s.validate());
  s.samples(1) = -1;
  CHECK_THROWS_AS(s.validate(), ContractViolation);
  s.samples.resize(0);
  CHECK_THROWS_AS(s.validate(), ContractViolation);
}
