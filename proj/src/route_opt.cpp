#include "sarp/route_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sarp/errors.hpp"

namespace sarp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stop s in [0, 2*delta): s < delta is the pickup of request s (requests
// sorted by id), s >= delta the matching dropoff. This indexing defines the
// lexicographic tie-break order.
struct Search {
  const Network& net;
  const ServiceParams& sp;
  const CostParams& cp;

  int delta = 0;
  std::vector<const Request*> reqs;  // sorted by id
  std::vector<int> loc;              // per stop
  std::vector<double> load_delta;
  std::vector<double> open;          // earliest service time
  std::vector<double> close;         // latest arrival
  std::vector<double> t_star;        // per request
  std::vector<char> passenger;       // per request
  std::vector<std::vector<double>> td;  // stop-to-stop distance
  std::vector<std::vector<double>> tt;  // stop-to-stop time
  double fixed_income = 0.0;

  // DFS state
  std::vector<char> visited;
  std::vector<char> picked;
  std::vector<char> dropped;
  std::vector<int> onride;  // intermediate stops seen per onboard passenger
  std::vector<int> seq;
  std::vector<double> arrivals;
  std::vector<double> loads;

  bool found = false;
  double best_profit = -kInf;
  std::vector<int> best_seq;
  std::vector<double> best_arrivals;
  std::vector<double> best_loads;

  // scratch, reused across nodes
  std::vector<int> remaining;
  std::vector<double> min_in_td;
  std::vector<double> min_in_tt;

  explicit Search(const std::vector<Request>& requests, const Network& n,
                  const ServiceParams& s, const CostParams& c)
      : net(n), sp(s), cp(c) {
    delta = static_cast<int>(requests.size());
    reqs.reserve(requests.size());
    for (const Request& r : requests) reqs.push_back(&r);
    std::sort(reqs.begin(), reqs.end(),
              [](const Request* a, const Request* b) { return a->id < b->id; });

    const int n_stops = 2 * delta;
    loc.resize(n_stops);
    load_delta.resize(n_stops);
    open.resize(n_stops);
    close.resize(n_stops);
    t_star.resize(delta);
    passenger.resize(delta);
    for (int i = 0; i < delta; ++i) {
      const Request& r = *reqs[i];
      passenger[i] = r.kind == RequestKind::Passenger;
      t_star[i] = earliest_dropoff(r, net);
      loc[i] = r.origin;
      loc[i + delta] = r.destination;
      load_delta[i] = r.load;
      load_delta[i + delta] = -r.load;
      open[i] = r.submit_time;
      close[i] = latest_pickup(r, sp);
      open[i + delta] = 0.0;
      close[i + delta] =
          t_star[i] + (passenger[i] ? sp.max_delay_passenger : sp.max_delay_parcel);
      const double direct = net.travel_distance(r.origin, r.destination);
      fixed_income += passenger[i]
                          ? cp.passenger_fixed_income + cp.passenger_income_per_km * direct
                          : cp.parcel_fixed_income + cp.parcel_income_per_km * direct;
    }
    td.assign(n_stops, std::vector<double>(n_stops, 0.0));
    tt.assign(n_stops, std::vector<double>(n_stops, 0.0));
    for (int a = 0; a < n_stops; ++a) {
      for (int b = 0; b < n_stops; ++b) {
        td[a][b] = net.travel_distance(loc[a], loc[b]);
        tt[a][b] = net.travel_time(loc[a], loc[b]);
      }
    }
    visited.assign(n_stops, 0);
    picked.assign(delta, 0);
    dropped.assign(delta, 0);
    onride.assign(delta, 0);
    min_in_td.resize(n_stops);
    min_in_tt.resize(n_stops);
  }

  int request_of(int stop) const { return stop < delta ? stop : stop - delta; }

  // Admissible pruning at node entry. Returns true if the subtree can be cut.
  bool prune(int cur, double tau, double dist, double delay_pen) {
    remaining.clear();
    for (int s = 0; s < 2 * delta; ++s) {
      if (!visited[s]) remaining.push_back(s);
    }
    // Cheapest way into each remaining stop: from the current position or
    // from another remaining stop. Valid without the triangle inequality.
    for (int s : remaining) {
      double btd = cur >= 0 ? td[cur][s] : kInf;
      double btt = cur >= 0 ? tt[cur][s] : kInf;
      if (cur < 0) { btd = 0.0; btt = 0.0; }  // first leg leaves the depot free
      for (int q : remaining) {
        if (q == s) continue;
        btd = std::min(btd, td[q][s]);
        btt = std::min(btt, tt[q][s]);
      }
      min_in_td[s] = btd;
      min_in_tt[s] = btt;
    }
    double dist_lb = 0.0;
    double delay_lb = 0.0;
    for (int s : remaining) {
      dist_lb += min_in_td[s];
      const int r = request_of(s);
      double lb;
      if (s < delta) {  // pickup still to make
        lb = std::max(open[s], tau + min_in_tt[s]);
      } else if (!picked[r]) {
        lb = std::max(open[r], tau + min_in_tt[r]) + min_in_tt[s];
      } else {
        lb = tau + min_in_tt[s];
      }
      if (lb > close[s] + kFeasTol) return true;  // window already lost
      if (s >= delta && passenger[r]) delay_lb += lb - t_star[r];
    }
    if (found) {
      const double ub = fixed_income - cp.cost_per_km * (dist + dist_lb) -
                        cp.delay_penalty_per_min * (delay_pen + delay_lb);
      if (ub <= best_profit + kTieTol) return true;
    }
    return false;
  }

  void record(double dist, double delay_pen) {
    const double profit =
        fixed_income - cp.cost_per_km * dist - cp.delay_penalty_per_min * delay_pen;
    if (!found || profit > best_profit + kTieTol) {
      found = true;
      best_profit = profit;
      best_seq = seq;
      best_arrivals = arrivals;
      best_loads = loads;
    }
  }

  void dfs(int cur, double tau, double w, double dist, double delay_pen) {
    if (static_cast<int>(seq.size()) == 2 * delta) {
      record(dist, delay_pen);
      return;
    }
    if (prune(cur, tau, dist, delay_pen)) return;

    for (int s = 0; s < 2 * delta; ++s) {
      if (visited[s]) continue;
      const int r = request_of(s);
      const bool pickup = s < delta;
      if (!pickup && !picked[r]) continue;

      const double arrival =
          cur < 0 ? open[s] : std::max(tau + tt[cur][s], open[s]);
      if (arrival > close[s] + kFeasTol) continue;
      const double w2 = w + load_delta[s];
      if (pickup && w2 > sp.capacity + kFeasTol) continue;

      // Stop budget during passenger rides: anything visited between a
      // passenger's pickup and dropoff counts against the budget.
      bool blocked = false;
      for (int p = 0; p < delta; ++p) {
        if (passenger[p] && picked[p] && !dropped[p] && s != p + delta &&
            onride[p] + 1 > sp.max_intermediate_stops) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;

      for (int p = 0; p < delta; ++p) {
        if (passenger[p] && picked[p] && !dropped[p] && s != p + delta) ++onride[p];
      }
      visited[s] = 1;
      if (pickup) picked[r] = 1; else dropped[r] = 1;
      seq.push_back(s);
      arrivals.push_back(arrival);
      loads.push_back(w2);
      const double pen =
          (!pickup && passenger[r]) ? arrival - t_star[r] : 0.0;

      dfs(s, arrival, w2, dist + (cur < 0 ? 0.0 : td[cur][s]), delay_pen + pen);

      loads.pop_back();
      arrivals.pop_back();
      seq.pop_back();
      if (pickup) picked[r] = 0; else dropped[r] = 0;
      visited[s] = 0;
      for (int p = 0; p < delta; ++p) {
        if (passenger[p] && picked[p] && !dropped[p] && s != p + delta) --onride[p];
      }
    }
  }
};

StopRole role_of(bool pickup, bool is_passenger) {
  if (pickup) return is_passenger ? StopRole::PickupPassenger : StopRole::PickupParcel;
  return is_passenger ? StopRole::DropoffPassenger : StopRole::DropoffParcel;
}

}  // namespace

RouteResult optimal_route(const std::vector<Request>& requests, const Network& net,
                          const ServiceParams& sp, const CostParams& cp) {
  if (requests.empty()) throw ValidationError("optimal_route needs at least one request");
  Search search(requests, net, sp, cp);
  search.dfs(-1, 0.0, 0.0, 0.0, 0.0);

  RouteResult result;
  if (!search.found) return result;

  Route route;
  const int n_stops = 2 * search.delta;
  route.stops.reserve(n_stops);
  for (int k = 0; k < n_stops; ++k) {
    const int s = search.best_seq[k];
    const int r = search.request_of(s);
    Stop stop;
    stop.request_id = search.reqs[r]->id;
    stop.role = role_of(s < search.delta, search.passenger[r]);
    stop.location = search.loc[s];
    stop.load_delta = search.load_delta[s];
    route.stops.push_back(stop);
    route.visit_index.push_back(k + 1);
  }
  route.arrival = search.best_arrivals;
  route.load = search.best_loads;
  route.profit = search.best_profit;

  result.feasible = true;
  result.profit = search.best_profit;
  result.route = std::move(route);
  return result;
}

double route_profit(const Route& route, const std::vector<Request>& requests,
                    const Network& net, const ServiceParams& sp, const CostParams& cp) {
  const std::size_t n_stops = route.stops.size();
  if (n_stops != 2 * requests.size() || route.arrival.size() != n_stops ||
      route.load.size() != n_stops) {
    throw ValidationError("route must visit exactly the pickup and dropoff of each request");
  }

  auto request_index = [&](int id) -> std::size_t {
    for (std::size_t i = 0; i < requests.size(); ++i) {
      if (requests[i].id == id) return i;
    }
    throw ValidationError("route stop references unknown request " + std::to_string(id));
  };

  std::vector<int> pickup_pos(requests.size(), -1), dropoff_pos(requests.size(), -1);
  double w = 0.0;
  double total_dist = 0.0;
  for (std::size_t k = 0; k < n_stops; ++k) {
    const Stop& stop = route.stops[k];
    const std::size_t ri = request_index(stop.request_id);
    const Request& r = requests[ri];
    const bool pickup = is_pickup(stop.role);
    const bool is_pass = is_passenger_stop(stop.role);
    if (is_pass != (r.kind == RequestKind::Passenger)) {
      throw ValidationError("stop role disagrees with request kind");
    }
    const int expected_loc = pickup ? r.origin : r.destination;
    if (stop.location != expected_loc) {
      throw ValidationError("stop location disagrees with request endpoint");
    }
    const double expected_delta = pickup ? r.load : -r.load;
    if (std::abs(stop.load_delta - expected_delta) > kFeasTol) {
      throw ValidationError("stop load delta must be +load at pickup, -load at dropoff");
    }
    int& slot = pickup ? pickup_pos[ri] : dropoff_pos[ri];
    if (slot >= 0) throw ValidationError("request visited twice");
    slot = static_cast<int>(k);

    if (k > 0) {
      const double gap = net.travel_time(route.stops[k - 1].location, stop.location);
      if (route.arrival[k] + kFeasTol < route.arrival[k - 1] + gap) {
        throw ValidationError("arrival times must leave room for travel between stops");
      }
      total_dist += net.travel_distance(route.stops[k - 1].location, stop.location);
    }
    if (pickup) {
      if (route.arrival[k] + kFeasTol < r.submit_time ||
          route.arrival[k] > latest_pickup(r, sp) + kFeasTol) {
        throw ValidationError("pickup outside its wait window");
      }
    } else {
      const double delay = route.arrival[k] - earliest_dropoff(r, net);
      const double bound = r.kind == RequestKind::Passenger ? sp.max_delay_passenger
                                                            : sp.max_delay_parcel;
      if (delay > bound + kFeasTol) throw ValidationError("dropoff delay exceeds tolerance");
    }
    w += stop.load_delta;
    if (w < -kFeasTol || w > sp.capacity + kFeasTol) {
      throw ValidationError("vehicle load out of range");
    }
    if (std::abs(route.load[k] - w) > kFeasTol) {
      throw ValidationError("stored load disagrees with load deltas");
    }
  }

  double income = 0.0;
  double delay_pen = 0.0;
  for (std::size_t ri = 0; ri < requests.size(); ++ri) {
    const Request& r = requests[ri];
    if (pickup_pos[ri] < 0 || dropoff_pos[ri] < 0) {
      throw ValidationError("request " + std::to_string(r.id) + " not fully served");
    }
    if (pickup_pos[ri] > dropoff_pos[ri]) {
      throw ValidationError("pickup must precede dropoff for request " + std::to_string(r.id));
    }
    const double direct = net.travel_distance(r.origin, r.destination);
    if (r.kind == RequestKind::Passenger) {
      const int between = dropoff_pos[ri] - pickup_pos[ri] - 1;
      if (between > sp.max_intermediate_stops) {
        throw ValidationError("too many stops during passenger ride " + std::to_string(r.id));
      }
      income += cp.passenger_fixed_income + cp.passenger_income_per_km * direct;
      delay_pen += route.arrival[dropoff_pos[ri]] - earliest_dropoff(r, net);
    } else {
      income += cp.parcel_fixed_income + cp.parcel_income_per_km * direct;
    }
  }
  return income - cp.delay_penalty_per_min * delay_pen - cp.cost_per_km * total_dist;
}

}  // namespace sarp
