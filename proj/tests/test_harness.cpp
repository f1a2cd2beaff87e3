#include <doctest.h>

#include <algorithm>
#include <limits>

#include "mockq/harness.hpp"

using namespace mockq;

TEST_CASE("suite names") {
  CHECK(suite_names().size() == 22);
  CHECK_THROWS_AS(run_suite("no-such-suite", 1, 1, 0.0), Error);
  CHECK_THROWS_AS(default_tolerance("nope"), Error);
}

TEST_CASE("suites pass and are deterministic") {
  const IdentityReport a = run_suite("mu-elliptic", 100, 42, 1e-9);
  CHECK(a.passed());
  CHECK(a.cases == 100);
  IdentityReport b = run_suite("mu-elliptic", 100, 42, 1e-9);
  b.wall_time_ms = a.wall_time_ms;
  CHECK(render_report(a, ReportFormat::kJson) == render_report(b, ReportFormat::kJson));

  const IdentityReport g = run_suite("group-closure", 1000, 7, 0.0);
  CHECK(g.passed());
  CHECK(g.max_residual == 0.0);

  CHECK(run_suite("quantum-t", 50, 1, 1e-10).passed());
}

TEST_CASE("report rendering") {
  IdentityReport r;
  r.suite = "demo";
  r.seed = 3;
  r.cases = 2;
  r.tolerance = 1e-9;
  const std::string empty = render_report(r, ReportFormat::kJson);
  CHECK(empty.find("\"failures\": []") != std::string::npos);
  CHECK(empty.find("\"suite\"") < empty.find("\"seed\""));

  r.record(1e-3, "tau=0+1i u=0.1,0.2");
  r.record(std::numeric_limits<double>::infinity(), "tau=\"x\"");
  const IdentityReport back = parse_report_json(render_report(r, ReportFormat::kJson));
  CHECK(back == r);

  const std::string csv = render_report(r, ReportFormat::kCsv);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(r.failures.size()));
}

TEST_CASE("cocycle scan") {
  const AlphaParams al(1, 3, 0);
  const auto rows = scan_cocycle(al, 1, -3.0, 3.0, 600);
  REQUIRE(rows.size() == 600);
  const double step = rows[1].x - rows[0].x;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    if (!rows[i].value) CHECK(std::abs(rows[i].x + 1.0) < 1e-3);
    if (rows[i].value && rows[i + 1].value) {
      CHECK(std::abs(std::abs(*rows[i + 1].value) - std::abs(*rows[i].value)) < 10.0 * step);
    }
  }
  // a grid through the excluded point produces a null row there and nowhere else
  const auto hit = scan_cocycle(al, 1, -2.0, 0.0, 201);
  long nulls = 0;
  for (const auto& r : hit) {
    if (!r.value) {
      ++nulls;
      CHECK(std::abs(r.x + 1.0) < 1e-3);
    }
  }
  CHECK(nulls == 1);
  CHECK(scan_to_csv(rows) == scan_to_csv(scan_cocycle(al, 1, -3.0, 3.0, 600)));
  const std::string svg = scan_to_svg(hit);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 3);
  CHECK_THROWS_AS(scan_cocycle(al, 3, 0.0, 1.0, 10), Error);
}
