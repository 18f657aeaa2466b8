#include "sarp/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sarp/errors.hpp"

namespace sarp {

namespace {

std::vector<Request> of_kind(const std::vector<Request>& requests, RequestKind kind) {
  std::vector<Request> out;
  for (const Request& r : requests) {
    if (r.kind == kind) out.push_back(r);
  }
  return out;
}

// Candidate RV trips once `served` parcels are in LV hands: passenger-only
// trips plus any parcel/mixed trip that avoids every LV-served parcel.
std::vector<Trip> rv_candidates(const TripPartition& part,
                                const std::vector<int>& served) {
  std::unordered_set<int> taken(served.begin(), served.end());
  std::vector<Trip> out = part.passenger_only;
  auto admit = [&](const std::vector<Trip>& trips) {
    for (const Trip& t : trips) {
      const bool clash = std::any_of(t.request_ids.begin(), t.request_ids.end(),
                                     [&](int id) { return taken.count(id) != 0; });
      if (!clash) out.push_back(t);
    }
  };
  admit(part.parcel_only);
  admit(part.mixed);
  return out;
}

std::vector<int> residual_parcels(const std::vector<Request>& parcels,
                                  const std::vector<int>& served) {
  std::unordered_set<int> taken(served.begin(), served.end());
  std::vector<int> out;
  for (const Request& r : parcels) {
    if (!taken.count(r.id)) out.push_back(r.id);
  }
  return out;
}

int count_served_passengers(const AssignmentSolution& solution,
                            const std::vector<Request>& passengers) {
  std::unordered_set<int> ids;
  for (const Request& r : passengers) ids.insert(r.id);
  int n = 0;
  for (int id : served_requests(solution)) n += ids.count(id) ? 1 : 0;
  return n;
}

double pct_increase(double value, double base) {
  if (base == 0.0) return 0.0;
  return (value - base) / base * 100.0;
}

}  // namespace

RvOnlyBenchmark benchmark_rv_only(const TripCatalog& catalog,
                                  const std::vector<Request>& requests, int rv_fleet) {
  const TripPartition part = partition(catalog);
  RvOnlyBenchmark out;
  out.solution = max_rv_profit(part.passenger_only,
                               of_kind(requests, RequestKind::Passenger), {}, rv_fleet);
  out.profit = out.solution.feasible ? out.solution.objective_value : 0.0;
  return out;
}

LvOnlyBenchmark benchmark_lv_only(const TripCatalog& catalog,
                                  const std::vector<Request>& requests) {
  const TripPartition part = partition(catalog);
  FleetSizeResult fleet =
      min_lv_fleet(part.parcel_only, of_kind(requests, RequestKind::Parcel));
  LvOnlyBenchmark out;
  out.feasible = fleet.feasible;
  out.fleet_size = fleet.fleet_size;
  out.uncovered = fleet.uncovered;
  return out;
}

SarpBenchmark benchmark_sarp(const TripCatalog& catalog,
                             const std::vector<Request>& requests, int rv_fleet) {
  const TripPartition part = partition(catalog);
  const std::vector<Request> parcels = of_kind(requests, RequestKind::Parcel);

  SelectionProgram stage1;
  for (const auto* trip : catalog.all()) stage1.candidate_trips.push_back(*trip);
  stage1.objective = SelectionObjective::MaximizeProfit;
  for (const Request& r : requests) stage1.coverage[r.id] = CoverageRule::AtMostOnce;
  stage1.cardinality_cap = std::max(0, rv_fleet);

  SarpBenchmark out;
  out.rv_solution = solve_selection(stage1);
  out.rv_profit = out.rv_solution.feasible ? out.rv_solution.objective_value : 0.0;

  const std::vector<int> rv_served = served_requests(out.rv_solution);
  const std::vector<int> leftover = residual_parcels(parcels, rv_served);
  std::unordered_set<int> leftover_set(leftover.begin(), leftover.end());

  // Stage 2 may only use parcel trips made entirely of unserved parcels.
  std::vector<Trip> lv_candidates;
  for (const Trip& t : part.parcel_only) {
    const bool ok = std::all_of(t.request_ids.begin(), t.request_ids.end(),
                                [&](int id) { return leftover_set.count(id) != 0; });
    if (ok) lv_candidates.push_back(t);
  }
  std::vector<Request> leftover_requests;
  for (const Request& r : parcels) {
    if (leftover_set.count(r.id)) leftover_requests.push_back(r);
  }
  FleetSizeResult fleet = min_lv_fleet(lv_candidates, leftover_requests);
  out.lv_feasible = fleet.feasible;
  out.lv_fleet = fleet.fleet_size;
  out.uncovered = fleet.uncovered;
  out.lv_solution = fleet.solution;
  return out;
}

std::vector<std::pair<int, double>> non_dominated(
    const std::vector<std::pair<int, double>>& points) {
  std::vector<std::pair<int, double>> out;
  for (const auto& p : points) {
    bool dominated = false;
    for (const auto& q : points) {
      if (q.first <= p.first && q.second >= p.second &&
          (q.first < p.first || q.second > p.second)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FrontierResult pareto_frontier(const TripCatalog& catalog,
                               const std::vector<Request>& requests, int rv_fleet) {
  const TripPartition part = partition(catalog);
  const std::vector<Request> passengers = of_kind(requests, RequestKind::Passenger);
  const std::vector<Request> parcels = of_kind(requests, RequestKind::Parcel);

  FrontierResult result;
  result.rv_fleet = rv_fleet;
  result.benchmarks.rv_only = benchmark_rv_only(catalog, requests, rv_fleet);
  result.benchmarks.lv_only = benchmark_lv_only(catalog, requests);
  result.benchmarks.sarp = benchmark_sarp(catalog, requests, rv_fleet);

  if (!parcels.empty() && !result.benchmarks.lv_only.feasible) {
    std::string ids;
    for (int id : result.benchmarks.lv_only.uncovered) {
      ids += (ids.empty() ? "" : ", ") + std::to_string(id);
    }
    throw ValidationError("no parcel-only trip can serve parcel(s) " + ids);
  }

  std::vector<Trip> all_trips;
  for (const Trip* trip : catalog.all()) all_trips.push_back(*trip);

  // Fleet-size sweep. At each size the parcel split between the LV fleet and
  // the RVs is optimized jointly, so the collected profits are the exact
  // fleet-constrained optima; profit can then only shrink as the fleet does.
  std::vector<ParetoPoint> points;
  for (int eps = result.benchmarks.lv_only.fleet_size; eps >= 0; --eps) {
    const ParcelSplitSolution split = max_rv_profit_with_lv_support(
        part.parcel_only, all_trips, passengers, parcels, eps, rv_fleet);
    if (!split.feasible) break;
    ParetoPoint point;
    point.epsilon = eps;
    point.phi_rv = split.rv_profit;
    point.lv_solution = split.lv;
    point.rv_solution = split.rv;
    point.lv_served_parcels = served_requests(split.lv);
    result.collected.emplace_back(eps, point.phi_rv);
    points.push_back(std::move(point));
  }

  const auto keep = non_dominated(result.collected);
  for (auto it = points.rbegin(); it != points.rend(); ++it) {  // epsilon ascending
    const bool kept = std::any_of(keep.begin(), keep.end(), [&](const auto& p) {
      return p.first == it->epsilon && p.second == it->phi_rv;
    });
    if (kept) result.frontier.push_back(std::move(*it));
  }

  for (ParetoPoint& point : result.frontier) {
    MetricBlock& m = point.metrics;
    m.passenger_acceptance_rate =
        passengers.empty()
            ? 1.0
            : static_cast<double>(count_served_passengers(point.rv_solution, passengers)) /
                  static_cast<double>(passengers.size());
    m.avg_profit_per_rv = point.rv_solution.selected.empty()
                              ? 0.0
                              : point.phi_rv /
                                    static_cast<double>(point.rv_solution.selected.size());
    m.rv_profit_increase_vs_rv_only_pct =
        pct_increase(point.phi_rv, result.benchmarks.rv_only.profit);
    m.lv_fleet_saving_vs_lv_only = result.benchmarks.lv_only.fleet_size - point.epsilon;
    m.rv_profit_vs_sarp_pct = pct_increase(point.phi_rv, result.benchmarks.sarp.rv_profit);
    m.lv_fleet_saving_vs_sarp = result.benchmarks.sarp.lv_fleet - point.epsilon;
  }
  return result;
}

std::string sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::RvFleet: return "rv_fleet";
    case SweepParam::ParcelIncomePerKm: return "gamma2";
    case SweepParam::RequestRatio: return "ratio";
  }
  return "rv_fleet";
}

SweepParam sweep_param_from_name(const std::string& name) {
  if (name == "rv_fleet") return SweepParam::RvFleet;
  if (name == "gamma2") return SweepParam::ParcelIncomePerKm;
  if (name == "ratio") return SweepParam::RequestRatio;
  throw ValidationError("unknown sweep parameter '" + name + "'");
}

std::vector<SweepRow> sweep(SweepParam param, const std::vector<double>& values,
                            const ScenarioSpec& base, const Network& net,
                            const std::vector<std::uint64_t>& seeds, int threads) {
  if (values.empty()) throw ValidationError("sweep needs at least one value");
  if (seeds.empty()) throw ValidationError("sweep needs at least one seed");

  std::vector<SweepRow> rows;
  for (double value : values) {
    std::vector<SweepRow> batch;
    for (std::uint64_t seed : seeds) {
      ScenarioSpec spec = base;
      spec.seed = seed;
      switch (param) {
        case SweepParam::RvFleet:
          spec.rv_fleet = static_cast<int>(std::lround(value));
          break;
        case SweepParam::ParcelIncomePerKm:
          spec.costs.parcel_income_per_km = value;
          break;
        case SweepParam::RequestRatio: {
          if (value < 0.0 || value > 1.0) {
            throw ValidationError("ratio values must lie in [0, 1]");
          }
          const int total = base.n_passengers + base.n_parcels;
          spec.n_parcels = static_cast<int>(std::lround(total * value));
          spec.n_passengers = total - spec.n_parcels;
          break;
        }
      }
      const std::vector<Request> requests = generate_scenario(spec, net);
      const TripCatalog catalog = enumerate_all(requests, net, spec.service, spec.costs,
                                                EnumMode::AugmentPruned, threads);
      const FrontierResult fr = pareto_frontier(catalog, requests, spec.rv_fleet);

      SweepRow row;
      row.param_value = value;
      row.seed = std::to_string(seed);
      if (!fr.frontier.empty()) {
        const ParetoPoint& best = fr.frontier.back();  // max profit = max epsilon kept
        row.epsilon = best.epsilon;
        row.phi_rv = best.phi_rv;
        row.acceptance_rate = best.metrics.passenger_acceptance_rate;
        row.avg_profit_per_rv = best.metrics.avg_profit_per_rv;
      }
      row.sarp_rv_profit = fr.benchmarks.sarp.rv_profit;
      row.sarp_fleet = fr.benchmarks.sarp.lv_fleet;
      row.lv_only_fleet = fr.benchmarks.lv_only.fleet_size;
      row.rv_only_profit = fr.benchmarks.rv_only.profit;
      batch.push_back(row);
    }

    SweepRow mean;
    mean.param_value = value;
    mean.seed = "mean";
    for (const SweepRow& r : batch) {
      mean.epsilon += r.epsilon;
      mean.phi_rv += r.phi_rv;
      mean.acceptance_rate += r.acceptance_rate;
      mean.avg_profit_per_rv += r.avg_profit_per_rv;
      mean.sarp_rv_profit += r.sarp_rv_profit;
      mean.sarp_fleet += r.sarp_fleet;
      mean.lv_only_fleet += r.lv_only_fleet;
      mean.rv_only_profit += r.rv_only_profit;
    }
    const double n = static_cast<double>(batch.size());
    mean.epsilon /= n;
    mean.phi_rv /= n;
    mean.acceptance_rate /= n;
    mean.avg_profit_per_rv /= n;
    mean.sarp_rv_profit /= n;
    mean.sarp_fleet /= n;
    mean.lv_only_fleet /= n;
    mean.rv_only_profit /= n;

    rows.insert(rows.end(), batch.begin(), batch.end());
    rows.push_back(mean);
  }
  return rows;
}

}  // namespace sarp
