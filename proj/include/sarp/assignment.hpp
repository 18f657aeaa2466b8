#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sarp/trip_enum.hpp"

namespace sarp {

enum class CoverageRule { ExactlyOnce, AtMostOnce, Ignore };
enum class SelectionObjective { MinimizeCount, MaximizeProfit };

struct SelectionProgram {
  std::vector<Trip> candidate_trips;
  SelectionObjective objective = SelectionObjective::MaximizeProfit;
  std::unordered_map<int, CoverageRule> coverage;  // request id -> rule; absent = Ignore
  std::optional<int> cardinality_cap;
  std::size_t max_candidates = 5000;  // hard instance cap
};

struct AssignmentSolution {
  bool feasible = false;
  std::vector<Trip> selected;       // canonical order (descending profit, lex ids)
  double objective_value = 0.0;
  bool proven_optimal = false;
  std::vector<int> uncovered;       // exactly-once requests no candidate can serve
};

// Exact 0-1 trip selection by depth-first branch and bound. Mandatory rows
// are covered by branching on the thinnest uncovered row; whatever remains is
// a packing solved by include/exclude with a top-k profit bound. Candidates
// are processed in a fixed order (descending profit, then lexicographic
// id-set), so results are deterministic; equal-profit alternatives resolve to
// the one found first in that order.
AssignmentSolution solve_selection(const SelectionProgram& program);

// Independent feasibility audit of a solution against its program: coverage
// rows, cardinality cap, candidate membership, objective recomputation.
bool check_solution(const SelectionProgram& program, const AssignmentSolution& solution,
                    std::string* why = nullptr);

// Requests appearing in the selected trips.
std::vector<int> served_requests(const AssignmentSolution& solution);

struct FleetSizeResult {
  bool feasible = false;
  int fleet_size = 0;
  AssignmentSolution solution;
  std::vector<int> uncovered;  // parcels no trip can serve, when infeasible
};

// Smallest number of parcel-only trips that partitions all parcels.
FleetSizeResult min_lv_fleet(const std::vector<Trip>& parcel_trips,
                             const std::vector<Request>& parcels);

// Most profitable set of at most `fleet_cap` disjoint parcel-only trips.
AssignmentSolution max_lv_utility(const std::vector<Trip>& parcel_trips,
                                  const std::vector<Request>& parcels, int fleet_cap);

// Most profitable RV assignment: passengers at most once, every residual
// parcel exactly once, at most `rv_fleet` trips. Infeasibility is a value
// (the residual parcels cannot all be carried), not an error.
AssignmentSolution max_rv_profit(const std::vector<Trip>& rv_trips,
                                 const std::vector<Request>& passengers,
                                 const std::vector<int>& residual_parcels, int rv_fleet);

// Joint split of the parcel work between an LV fleet and the RV fleet at a
// fixed LV fleet size: every parcel is served exactly once by either side,
// passengers at most once by RVs, and the total RV profit is maximized over
// both selections together. LV trips contribute nothing to the objective.
struct ParcelSplitSolution {
  bool feasible = false;
  double rv_profit = 0.0;
  AssignmentSolution lv;  // objective_value reports the LV trips' own profits
  AssignmentSolution rv;
};

ParcelSplitSolution max_rv_profit_with_lv_support(const std::vector<Trip>& lv_trips,
                                                  const std::vector<Trip>& rv_trips,
                                                  const std::vector<Request>& passengers,
                                                  const std::vector<Request>& parcels,
                                                  int lv_cap, int rv_cap);

}  // namespace sarp
