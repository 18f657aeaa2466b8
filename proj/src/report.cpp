#include "sarp/report.hpp"

#include <array>
#include <charconv>

#include "sarp/errors.hpp"

namespace sarp {

std::string format_double(double value) {
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ValidationError("not a number: '" + text + "'");
  }
  return value;
}

namespace {

constexpr const char* kReportHeader =
    "rvs,seed,pareto_pairs,lv_only_fleet,rv_only_profit,sarp_fleet,sarp_rv_profit";

std::string pairs_cell(const std::vector<std::pair<int, double>>& pairs) {
  std::string out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i > 0) out += "; ";
    out += "(" + std::to_string(pairs[i].first) + ", " + format_double(pairs[i].second) + ")";
  }
  return out;
}

std::vector<std::pair<int, double>> parse_pairs_cell(const std::string& cell) {
  std::vector<std::pair<int, double>> out;
  std::size_t pos = 0;
  while ((pos = cell.find('(', pos)) != std::string::npos) {
    const std::size_t comma = cell.find(',', pos);
    const std::size_t end = cell.find(')', pos);
    if (comma == std::string::npos || end == std::string::npos || comma > end) {
      throw ValidationError("malformed pareto pair cell: '" + cell + "'");
    }
    std::string eps = cell.substr(pos + 1, comma - pos - 1);
    std::string phi = cell.substr(comma + 1, end - comma - 1);
    while (!phi.empty() && phi.front() == ' ') phi.erase(phi.begin());
    out.emplace_back(std::stoi(eps), parse_double(phi));
    pos = end + 1;
  }
  return out;
}

std::string csv_quote(const std::string& cell) {
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// One CSV line into cells; handles doubled quotes inside quoted cells.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

ReportRow report_row(const FrontierResult& result, const std::string& seed) {
  ReportRow row;
  row.rvs = result.rv_fleet;
  row.seed = seed;
  for (const ParetoPoint& p : result.frontier) {
    row.pareto_pairs.emplace_back(p.epsilon, p.phi_rv);
  }
  row.lv_only_fleet = result.benchmarks.lv_only.fleet_size;
  row.rv_only_profit = result.benchmarks.rv_only.profit;
  row.sarp_fleet = result.benchmarks.sarp.lv_fleet;
  row.sarp_rv_profit = result.benchmarks.sarp.rv_profit;
  return row;
}

std::string render_report(const std::vector<ReportRow>& rows) {
  std::string out = kReportHeader;
  out += '\n';
  for (const ReportRow& row : rows) {
    out += std::to_string(row.rvs);
    out += ',';
    out += csv_quote(row.seed);
    out += ',';
    out += csv_quote(pairs_cell(row.pareto_pairs));
    out += ',';
    out += std::to_string(row.lv_only_fleet);
    out += ',';
    out += format_double(row.rv_only_profit);
    out += ',';
    out += std::to_string(row.sarp_fleet);
    out += ',';
    out += format_double(row.sarp_rv_profit);
    out += '\n';
  }
  return out;
}

std::vector<ReportRow> parse_report(const std::string& csv) {
  std::vector<ReportRow> rows;
  std::size_t start = 0;
  bool first = true;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string::npos) end = csv.size();
    const std::string line = csv.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    if (first) {
      if (line != kReportHeader) throw ValidationError("unexpected report header");
      first = false;
      continue;
    }
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 7) throw ValidationError("report row needs 7 columns");
    ReportRow row;
    row.rvs = std::stoi(cells[0]);
    row.seed = cells[1];
    row.pareto_pairs = parse_pairs_cell(cells[2]);
    row.lv_only_fleet = std::stoi(cells[3]);
    row.rv_only_profit = parse_double(cells[4]);
    row.sarp_fleet = std::stoi(cells[5]);
    row.sarp_rv_profit = parse_double(cells[6]);
    rows.push_back(std::move(row));
  }
  if (first) throw ValidationError("empty report");
  return rows;
}

std::string render_sweep_csv(SweepParam param, const std::vector<SweepRow>& rows) {
  std::string out = "param,value,seed,epsilon,phi_rv,acceptance_rate,avg_profit_per_rv,"
                    "sarp_rv_profit,sarp_fleet,lv_only_fleet,rv_only_profit\n";
  const std::string name = sweep_param_name(param);
  for (const SweepRow& row : rows) {
    out += name;
    out += ',';
    out += format_double(row.param_value);
    out += ',';
    out += row.seed;
    out += ',';
    out += format_double(row.epsilon);
    out += ',';
    out += format_double(row.phi_rv);
    out += ',';
    out += format_double(row.acceptance_rate);
    out += ',';
    out += format_double(row.avg_profit_per_rv);
    out += ',';
    out += format_double(row.sarp_rv_profit);
    out += ',';
    out += format_double(row.sarp_fleet);
    out += ',';
    out += format_double(row.lv_only_fleet);
    out += ',';
    out += format_double(row.rv_only_profit);
    out += '\n';
  }
  return out;
}

}  // namespace sarp
