#pragma once

#include <optional>
#include <vector>

#include "sarp/demand.hpp"
#include "sarp/network.hpp"

namespace sarp {

// Comparison slack for windows, delays and capacity.
inline constexpr double kFeasTol = 1e-6;
// Strict-improvement margin for profit incumbents.
inline constexpr double kTieTol = 1e-9;

enum class StopRole { PickupPassenger, DropoffPassenger, PickupParcel, DropoffParcel };

inline bool is_pickup(StopRole role) {
  return role == StopRole::PickupPassenger || role == StopRole::PickupParcel;
}
inline bool is_passenger_stop(StopRole role) {
  return role == StopRole::PickupPassenger || role == StopRole::DropoffPassenger;
}

struct Stop {
  int request_id = 0;
  StopRole role = StopRole::PickupPassenger;
  int location = 0;
  double load_delta = 0.0;  // +load at pickup, -load at dropoff
};

struct Route {
  std::vector<Stop> stops;        // visit order
  std::vector<double> arrival;    // minutes, one per stop
  std::vector<double> load;       // vehicle load after each stop
  std::vector<int> visit_index;   // 1-based position of each stop
  double profit = 0.0;
};

struct RouteResult {
  bool feasible = false;
  std::optional<Route> route;
  double profit = 0.0;  // meaningful only when feasible
};

// Exact profit-maximizing route over all stop sequences serving every given
// request, or infeasible if no sequence satisfies the service constraints.
// Pure function; callers may run any number of invocations concurrently.
//
// Scheduling: each stop is visited as early as its window permits. The only
// time-dependent profit term is the passenger delay penalty, which is
// non-decreasing in every arrival time, so the earliest schedule is optimal
// for a fixed sequence; it is also component-wise minimal, so any window it
// violates is violated by every schedule of that sequence.
//
// Ties between equal-profit sequences go to the lexicographically smallest
// stop-index sequence (requests ordered by id; pickup i before dropoff i).
RouteResult optimal_route(const std::vector<Request>& requests, const Network& net,
                          const ServiceParams& sp, const CostParams& cp);

// Recomputes a route's profit from scratch, validating every route invariant
// (precedence, windows, delays, loads, stop-count budget during passenger
// rides). Throws ValidationError on any violation. `requests` must be the
// exact request set served by the route.
double route_profit(const Route& route, const std::vector<Request>& requests,
                    const Network& net, const ServiceParams& sp, const CostParams& cp);

}  // namespace sarp
