#include "sarp/brute_force.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_set>

#include "sarp/errors.hpp"

namespace sarp::brute_force {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

RouteResult optimal_route(const std::vector<Request>& requests, const Network& net,
                          const ServiceParams& sp, const CostParams& cp) {
  if (requests.empty()) throw ValidationError("optimal_route needs at least one request");
  if (requests.size() > 5) {
    throw ValidationError("brute-force routing is for at most 5 requests");
  }
  std::vector<Request> reqs = requests;
  std::sort(reqs.begin(), reqs.end(),
            [](const Request& a, const Request& b) { return a.id < b.id; });
  const int delta = static_cast<int>(reqs.size());
  const int n_stops = 2 * delta;

  std::vector<int> loc(n_stops);
  std::vector<double> open(n_stops), close(n_stops), qdelta(n_stops), t_star(delta);
  std::vector<bool> pass(delta);
  double fixed_income = 0.0;
  for (int i = 0; i < delta; ++i) {
    const Request& r = reqs[i];
    pass[i] = r.kind == RequestKind::Passenger;
    t_star[i] = earliest_dropoff(r, net);
    loc[i] = r.origin;
    loc[i + delta] = r.destination;
    qdelta[i] = r.load;
    qdelta[i + delta] = -r.load;
    open[i] = r.submit_time;
    close[i] = latest_pickup(r, sp);
    open[i + delta] = 0.0;
    close[i + delta] = t_star[i] + (pass[i] ? sp.max_delay_passenger : sp.max_delay_parcel);
    const double direct = net.travel_distance(r.origin, r.destination);
    fixed_income += pass[i]
                        ? cp.passenger_fixed_income + cp.passenger_income_per_km * direct
                        : cp.parcel_fixed_income + cp.parcel_income_per_km * direct;
  }

  std::vector<int> perm(n_stops);
  std::iota(perm.begin(), perm.end(), 0);

  RouteResult best;
  std::vector<double> arrival(n_stops);
  do {
    bool ok = true;
    std::vector<int> pos(n_stops);
    for (int k = 0; k < n_stops; ++k) pos[perm[k]] = k;
    for (int i = 0; i < delta && ok; ++i) {
      if (pos[i] > pos[i + delta]) ok = false;  // pickup first
      if (ok && pass[i] && pos[i + delta] - pos[i] - 1 > sp.max_intermediate_stops) ok = false;
    }
    if (!ok) continue;

    double w = 0.0;
    for (int k = 0; k < n_stops && ok; ++k) {
      w += qdelta[perm[k]];
      if (w < -kFeasTol || w > sp.capacity + kFeasTol) ok = false;
    }
    if (!ok) continue;

    // Earliest schedule by repeated relaxation until nothing moves.
    for (int k = 0; k < n_stops; ++k) arrival[k] = open[perm[k]];
    bool changed = true;
    while (changed) {
      changed = false;
      for (int k = 1; k < n_stops; ++k) {
        const double lb = arrival[k - 1] + net.travel_time(loc[perm[k - 1]], loc[perm[k]]);
        if (arrival[k] < lb) {
          arrival[k] = lb;
          changed = true;
        }
      }
    }
    for (int k = 0; k < n_stops && ok; ++k) {
      if (arrival[k] > close[perm[k]] + kFeasTol) ok = false;
    }
    if (!ok) continue;

    double dist = 0.0;
    for (int k = 1; k < n_stops; ++k) {
      dist += net.travel_distance(loc[perm[k - 1]], loc[perm[k]]);
    }
    double delay_pen = 0.0;
    for (int i = 0; i < delta; ++i) {
      if (pass[i]) delay_pen += arrival[pos[i + delta]] - t_star[i];
    }
    const double profit = fixed_income - cp.cost_per_km * dist -
                          cp.delay_penalty_per_min * delay_pen;
    if (!best.feasible || profit > best.profit) {
      best.feasible = true;
      best.profit = profit;
      Route route;
      for (int k = 0; k < n_stops; ++k) {
        const int s = perm[k];
        const int i = s < delta ? s : s - delta;
        Stop stop;
        stop.request_id = reqs[i].id;
        stop.role = s < delta ? (pass[i] ? StopRole::PickupPassenger : StopRole::PickupParcel)
                              : (pass[i] ? StopRole::DropoffPassenger : StopRole::DropoffParcel);
        stop.location = loc[s];
        stop.load_delta = qdelta[s];
        route.stops.push_back(stop);
        route.arrival.push_back(arrival[k]);
        route.visit_index.push_back(k + 1);
      }
      double load = 0.0;
      for (int k = 0; k < n_stops; ++k) {
        load += qdelta[perm[k]];
        route.load.push_back(load);
      }
      route.profit = profit;
      best.route = std::move(route);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

AssignmentSolution solve_selection(const SelectionProgram& program) {
  const std::size_t n = program.candidate_trips.size();
  if (n > 20) throw ValidationError("brute-force selection is for at most 20 trips");

  const bool maximize = program.objective == SelectionObjective::MaximizeProfit;
  AssignmentSolution best;
  best.proven_optimal = true;
  double best_value = maximize ? -kInf : kInf;

  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::map<int, int> hits;
    double profit = 0.0;
    int count = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if (!(mask & (1ULL << t))) continue;
      ++count;
      profit += program.candidate_trips[t].profit;
      for (int id : program.candidate_trips[t].request_ids) ++hits[id];
    }
    if (program.cardinality_cap && count > *program.cardinality_cap) continue;
    bool ok = true;
    for (const auto& [id, rule] : program.coverage) {
      const int h = hits.count(id) ? hits.at(id) : 0;
      if (rule == CoverageRule::ExactlyOnce && h != 1) ok = false;
      if (rule == CoverageRule::AtMostOnce && h > 1) ok = false;
      if (!ok) break;
    }
    if (!ok) continue;
    const double value = maximize ? profit : static_cast<double>(count);
    if (!best.feasible || (maximize ? value > best_value : value < best_value)) {
      best.feasible = true;
      best_value = value;
      best.objective_value = value;
      best.selected.clear();
      for (std::size_t t = 0; t < n; ++t) {
        if (mask & (1ULL << t)) best.selected.push_back(program.candidate_trips[t]);
      }
    }
  }
  return best;
}

namespace {

// All unions of at most `cap` pairwise-disjoint trips, as sorted id vectors.
void disjoint_unions(const std::vector<Trip>& trips, std::size_t from, int cap,
                     std::vector<int>& members, int used,
                     std::map<std::vector<int>, int>& fewest_trips) {
  std::vector<int> key = members;
  std::sort(key.begin(), key.end());
  auto it = fewest_trips.find(key);
  if (it == fewest_trips.end() || used < it->second) fewest_trips[key] = used;
  if (used >= cap) return;
  for (std::size_t t = from; t < trips.size(); ++t) {
    const auto& ids = trips[t].request_ids;
    const bool clash = std::any_of(ids.begin(), ids.end(), [&](int id) {
      return std::find(members.begin(), members.end(), id) != members.end();
    });
    if (clash) continue;
    members.insert(members.end(), ids.begin(), ids.end());
    disjoint_unions(trips, t + 1, cap, members, used + 1, fewest_trips);
    members.resize(members.size() - ids.size());
  }
}

// Best total profit of at most `cap` disjoint trips covering every id in
// `must_cover`; -inf when impossible.
double best_packing(const std::vector<Trip>& trips, const std::vector<int>& must_cover,
                    int cap) {
  double best = -kInf;
  std::vector<int> covered;
  int used = 0;

  std::function<void(std::size_t, double)> rec = [&](std::size_t from, double profit) {
    const bool all = std::all_of(must_cover.begin(), must_cover.end(), [&](int id) {
      return std::find(covered.begin(), covered.end(), id) != covered.end();
    });
    if (all) best = std::max(best, profit);
    if (used >= cap) return;
    for (std::size_t t = from; t < trips.size(); ++t) {
      const auto& ids = trips[t].request_ids;
      const bool clash = std::any_of(ids.begin(), ids.end(), [&](int id) {
        return std::find(covered.begin(), covered.end(), id) != covered.end();
      });
      if (clash) continue;
      covered.insert(covered.end(), ids.begin(), ids.end());
      ++used;
      rec(t + 1, profit + trips[t].profit);
      --used;
      covered.resize(covered.size() - ids.size());
    }
  };
  rec(0, 0.0);
  return best;
}

}  // namespace

std::vector<std::pair<int, double>> pareto_frontier(const TripCatalog& catalog,
                                                    const std::vector<Request>& requests,
                                                    int rv_fleet) {
  const TripPartition part = partition(catalog);
  if (part.parcel_only.size() > 25 || catalog.trip_count() > 200) {
    throw ValidationError("brute-force frontier is for small catalogs");
  }
  std::vector<int> parcel_ids;
  for (const Request& r : requests) {
    if (r.kind == RequestKind::Parcel) parcel_ids.push_back(r.id);
  }
  std::sort(parcel_ids.begin(), parcel_ids.end());
  const int m = static_cast<int>(parcel_ids.size());

  // Achievable LV-served parcel sets and the fewest trips realizing each.
  std::map<std::vector<int>, int> served_sets;
  std::vector<int> members;
  disjoint_unions(part.parcel_only, 0, m, members, 0, served_sets);

  // Best RV profit per residual set, shared across fleet sizes.
  std::map<std::vector<int>, double> rv_profit_cache;
  auto rv_profit_for = [&](const std::vector<int>& served) {
    auto it = rv_profit_cache.find(served);
    if (it != rv_profit_cache.end()) return it->second;
    std::unordered_set<int> taken(served.begin(), served.end());
    std::vector<Trip> candidates = part.passenger_only;
    for (const auto& pool : {part.parcel_only, part.mixed}) {
      for (const Trip& t : pool) {
        const bool clash = std::any_of(t.request_ids.begin(), t.request_ids.end(),
                                       [&](int id) { return taken.count(id) != 0; });
        if (!clash) candidates.push_back(t);
      }
    }
    std::vector<int> residual;
    for (int id : parcel_ids) {
      if (!taken.count(id)) residual.push_back(id);
    }
    const double value = best_packing(candidates, residual, rv_fleet);
    rv_profit_cache[served] = value;
    return value;
  };

  std::vector<std::pair<int, double>> collected;
  for (int eps = 0; eps <= m; ++eps) {
    double best = -kInf;
    for (const auto& [served, fewest] : served_sets) {
      if (fewest > eps) continue;
      best = std::max(best, rv_profit_for(served));
    }
    if (best > -kInf) collected.emplace_back(eps, best);
  }

  std::vector<std::pair<int, double>> frontier;
  for (const auto& p : collected) {
    bool dominated = false;
    for (const auto& q : collected) {
      if (q.first <= p.first && q.second >= p.second &&
          (q.first < p.first || q.second > p.second)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) frontier.push_back(p);
  }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

}  // namespace sarp::brute_force
