#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sarp/assignment.hpp"

namespace sarp {

struct MetricBlock {
  double passenger_acceptance_rate = 0.0;    // served passengers / all passengers
  double avg_profit_per_rv = 0.0;            // profit / selected RV trips
  double rv_profit_increase_vs_rv_only_pct = 0.0;
  int lv_fleet_saving_vs_lv_only = 0;
  double rv_profit_vs_sarp_pct = 0.0;
  int lv_fleet_saving_vs_sarp = 0;
};

struct ParetoPoint {
  int epsilon = 0;      // LV fleet size
  double phi_rv = 0.0;  // total RV profit at this fleet size
  AssignmentSolution lv_solution;
  AssignmentSolution rv_solution;
  std::vector<int> lv_served_parcels;  // recorded for auditability
  MetricBlock metrics;
};

struct RvOnlyBenchmark {
  double profit = 0.0;
  AssignmentSolution solution;
};

struct LvOnlyBenchmark {
  bool feasible = false;
  int fleet_size = 0;
  std::vector<int> uncovered;
};

struct SarpBenchmark {
  double rv_profit = 0.0;
  int lv_fleet = 0;
  bool lv_feasible = false;          // stage 2 can fail; reported, not thrown
  std::vector<int> uncovered;        // unserved parcels no LV trip can absorb
  AssignmentSolution rv_solution;
  AssignmentSolution lv_solution;
};

struct Benchmarks {
  RvOnlyBenchmark rv_only;
  LvOnlyBenchmark lv_only;
  SarpBenchmark sarp;
};

struct FrontierResult {
  std::vector<ParetoPoint> frontier;                // non-dominated, epsilon ascending
  std::vector<std::pair<int, double>> collected;    // every visited (epsilon, phi)
  Benchmarks benchmarks;
  int rv_fleet = 0;
};

// Profit of serving passengers only with at most `rv_fleet` vehicles.
RvOnlyBenchmark benchmark_rv_only(const TripCatalog& catalog,
                                  const std::vector<Request>& requests, int rv_fleet);

// Minimum LV fleet that completes every parcel without RV help.
LvOnlyBenchmark benchmark_lv_only(const TripCatalog& catalog,
                                  const std::vector<Request>& requests);

// Profit-first coordination: maximize RV profit over all trips with nothing
// mandatory, then cover whatever parcels remain with a minimal LV fleet.
SarpBenchmark benchmark_sarp(const TripCatalog& catalog,
                             const std::vector<Request>& requests, int rv_fleet);

// Full fleet-size sweep: start at the minimum LV fleet, maximize LV utility
// at each size, make the unserved parcels mandatory for the RVs, and shrink
// the fleet until the RV side goes infeasible; the non-dominated (fleet,
// profit) pairs form the frontier.
FrontierResult pareto_frontier(const TripCatalog& catalog,
                               const std::vector<Request>& requests, int rv_fleet);

std::vector<std::pair<int, double>> non_dominated(
    const std::vector<std::pair<int, double>>& points);

enum class SweepParam { RvFleet, ParcelIncomePerKm, RequestRatio };

std::string sweep_param_name(SweepParam p);          // "rv_fleet" / "gamma2" / "ratio"
SweepParam sweep_param_from_name(const std::string& name);

struct SweepRow {
  double param_value = 0.0;
  std::string seed;  // seed number, or "mean"
  double epsilon = 0.0;
  double phi_rv = 0.0;
  double acceptance_rate = 0.0;
  double avg_profit_per_rv = 0.0;
  double sarp_rv_profit = 0.0;
  double sarp_fleet = 0.0;
  double lv_only_fleet = 0.0;
  double rv_only_profit = 0.0;
};

// Re-runs the whole pipeline for each (value, seed); each row reports the
// maximum-profit frontier point, and a "mean" row per value averages the
// numeric columns over seeds.
std::vector<SweepRow> sweep(SweepParam param, const std::vector<double>& values,
                            const ScenarioSpec& base, const Network& net,
                            const std::vector<std::uint64_t>& seeds, int threads = 1);

}  // namespace sarp
