#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mockq/alpha.hpp"
#include "mockq/report.hpp"
#include "mockq/types.hpp"

namespace mockq {

const std::vector<std::string>& suite_names();
double default_tolerance(const std::string& suite);
long default_cases(const std::string& suite);

/// Runs a named suite. `cases` is the number of random draws per
/// configuration (grid suites ignore it; <= 0 picks the default). Throws
/// UnknownSuite for names outside suite_names().
IdentityReport run_suite(const std::string& name, long cases, std::uint64_t seed, double tol);

enum class ReportFormat { kJson, kCsv };
std::string render_report(const IdentityReport& report, ReportFormat format);
IdentityReport parse_report_json(const std::string& text);

struct ScanRow {
  double x = 0.0;
  std::optional<cplx> value;  // empty for points that could not be evaluated
};

/// Right-hand side of the M-law as a function of real tau = x:
/// part 1: -(i/2) e(-A/(2C)) int_1^{i inf} g_{A/C,1/2}(z) / sqrt(-i(z + x)) dz,
/// part 2: -(i/2) int_{1/2}^{i inf} g_{A/C,0}(z) / sqrt(-i(z + x)) dz.
/// Rows run over `steps` equally spaced points including both ends.
std::vector<ScanRow> scan_cocycle(const AlphaParams& al, int part, double x_from, double x_to, long steps,
                                  const TruncationPolicy& policy = {});
std::string scan_to_csv(const std::vector<ScanRow>& rows);
std::string scan_to_svg(const std::vector<ScanRow>& rows);

}  // namespace mockq
