#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sarp/pareto.hpp"

namespace sarp {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& text);

struct ReportRow {
  int rvs = 0;
  std::string seed;
  std::vector<std::pair<int, double>> pareto_pairs;
  int lv_only_fleet = 0;
  double rv_only_profit = 0.0;
  int sarp_fleet = 0;
  double sarp_rv_profit = 0.0;
};

ReportRow report_row(const FrontierResult& result, const std::string& seed);

// Summary CSV, one row per run: fleet-size/profit pairs of the frontier next
// to the three benchmarks. Byte-stable for identical inputs, and
// parse_report(render_report(rows)) == rows.
std::string render_report(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_report(const std::string& csv);

std::string render_sweep_csv(SweepParam param, const std::vector<SweepRow>& rows);

}  // namespace sarp
