#include "sarp/assignment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "sarp/errors.hpp"

namespace sarp {

namespace {

bool canonical_before(const Trip& a, const Trip& b) {
  if (a.profit != b.profit) return a.profit > b.profit;
  return a.request_ids < b.request_ids;
}

// Internal normalized form: candidate entries carry a pool id so that a
// selection can be capped per pool (LV fleet vs RV fleet); the plain
// single-cap programs use pool 0 only.
struct Entry {
  Trip trip;
  double profit = 0.0;  // objective contribution; may differ from trip.profit
  int pool = 0;
};

struct Instance {
  std::vector<Entry> entries;
  SelectionObjective objective = SelectionObjective::MaximizeProfit;
  std::unordered_map<int, CoverageRule> coverage;
  std::array<int, 2> pool_caps{std::numeric_limits<int>::max(),
                               std::numeric_limits<int>::max()};
};

struct Solver {
  const Instance& inst;
  std::vector<std::vector<int>> entry_rows;  // constrained row ids per entry
  std::unordered_map<int, char> mandatory;
  std::unordered_map<int, int> covered;

  std::size_t mandatory_left = 0;
  std::vector<int> chosen;
  std::array<int, 2> pool_used{0, 0};
  double profit = 0.0;

  bool found = false;
  double best_value = 0.0;
  std::vector<int> best_chosen;

  explicit Solver(const Instance& instance) : inst(instance) {
    for (const auto& [id, rule] : inst.coverage) {
      if (rule == CoverageRule::ExactlyOnce) {
        mandatory[id] = 1;
        covered[id] = 0;
      } else if (rule == CoverageRule::AtMostOnce) {
        covered[id] = 0;
      }
    }
    mandatory_left = mandatory.size();
    entry_rows.resize(inst.entries.size());
    for (std::size_t i = 0; i < inst.entries.size(); ++i) {
      for (int id : inst.entries[i].trip.request_ids) {
        if (covered.count(id)) entry_rows[i].push_back(id);
      }
    }
  }

  bool compatible(std::size_t t) const {
    const Entry& e = inst.entries[t];
    if (pool_used[e.pool] >= inst.pool_caps[e.pool]) return false;
    for (int row : entry_rows[t]) {
      if (covered.at(row) > 0) return false;
    }
    return true;
  }

  void include(std::size_t t) {
    for (int row : entry_rows[t]) {
      if (++covered[row] == 1 && mandatory.count(row)) --mandatory_left;
    }
    chosen.push_back(static_cast<int>(t));
    ++pool_used[inst.entries[t].pool];
    profit += inst.entries[t].profit;
  }

  void exclude(std::size_t t) {
    profit -= inst.entries[t].profit;
    --pool_used[inst.entries[t].pool];
    chosen.pop_back();
    for (int row : entry_rows[t]) {
      if (--covered[row] == 0 && mandatory.count(row)) ++mandatory_left;
    }
  }

  void record_if_better() {
    if (mandatory_left > 0) return;
    const double value = inst.objective == SelectionObjective::MaximizeProfit
                             ? profit
                             : static_cast<double>(chosen.size());
    const bool better =
        !found || (inst.objective == SelectionObjective::MaximizeProfit
                       ? value > best_value + kTieTol
                       : value < best_value);
    if (better) {
      found = true;
      best_value = value;
      best_chosen = chosen;
    }
  }

  // Upper bound on extra profit from entries with index >= from: best
  // positive contributions that still fit each pool's remaining slots.
  // Entries are profit-sorted, and rows covered here stay covered in the
  // whole subtree, so skipping incompatible entries keeps the bound valid.
  double packing_bound(std::size_t from) const {
    double bound = 0.0;
    std::array<int, 2> slots{inst.pool_caps[0] - pool_used[0],
                             inst.pool_caps[1] - pool_used[1]};
    for (std::size_t t = from; t < inst.entries.size(); ++t) {
      if (inst.entries[t].profit <= 0.0) break;
      if (slots[0] <= 0 && slots[1] <= 0) break;
      if (slots[inst.entries[t].pool] <= 0) continue;
      if (!compatible(t)) continue;
      bound += inst.entries[t].profit;
      --slots[inst.entries[t].pool];
    }
    return bound;
  }

  // Least extra entries needed to close every mandatory row.
  int count_bound() const {
    if (mandatory_left == 0) return 0;
    std::size_t widest = 0;
    for (std::size_t t = 0; t < inst.entries.size(); ++t) {
      if (!compatible(t)) continue;
      std::size_t covers = 0;
      for (int row : entry_rows[t]) {
        if (mandatory.count(row) && covered.at(row) == 0) ++covers;
      }
      widest = std::max(widest, covers);
    }
    if (widest == 0) return std::numeric_limits<int>::max();
    return static_cast<int>((mandatory_left + widest - 1) / widest);
  }

  int total_cap() const {
    const long long sum = static_cast<long long>(inst.pool_caps[0]) + inst.pool_caps[1];
    return sum > std::numeric_limits<int>::max()
               ? std::numeric_limits<int>::max()
               : static_cast<int>(sum);
  }

  void search_cover() {
    if (mandatory_left == 0) {
      record_if_better();
      if (inst.objective == SelectionObjective::MaximizeProfit) search_pack(0);
      return;
    }
    if (inst.objective == SelectionObjective::MinimizeCount) {
      const int need = count_bound();
      if (need == std::numeric_limits<int>::max()) return;
      if (static_cast<int>(chosen.size()) + need > total_cap()) return;
      if (found && static_cast<double>(chosen.size() + need) >= best_value) return;
    } else if (found && profit + packing_bound(0) <= best_value + kTieTol) {
      return;
    }

    // Branch on the uncovered mandatory row with the fewest live candidates.
    int branch_row = -1;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (const auto& [row, one] : mandatory) {
      (void)one;
      if (covered.at(row) > 0) continue;
      std::size_t live = 0;
      for (std::size_t t = 0; t < inst.entries.size(); ++t) {
        if (compatible(t) && covers_row(t, row)) ++live;
      }
      if (live < fewest || (live == fewest && (branch_row < 0 || row < branch_row))) {
        fewest = live;
        branch_row = row;
      }
    }
    if (branch_row < 0 || fewest == 0) return;  // a row cannot be closed

    for (std::size_t t = 0; t < inst.entries.size(); ++t) {
      if (!compatible(t) || !covers_row(t, branch_row)) continue;
      include(t);
      search_cover();
      exclude(t);
    }
  }

  bool covers_row(std::size_t t, int row) const {
    const auto& ids = inst.entries[t].trip.request_ids;
    return std::binary_search(ids.begin(), ids.end(), row);
  }

  // Optional entries only: every mandatory row is closed, so anything
  // touching one is incompatible and the rest is a pure packing.
  void search_pack(std::size_t from) {
    for (std::size_t t = from; t < inst.entries.size(); ++t) {
      if (inst.entries[t].profit <= 0.0) break;  // sorted: nothing ahead helps
      if (!compatible(t)) continue;
      if (found && profit + packing_bound(t) <= best_value + kTieTol) return;
      include(t);
      record_if_better();
      search_pack(t + 1);
      exclude(t);
    }
  }

  bool run() {
    search_cover();
    return found;
  }
};

std::vector<int> uncoverable_rows(const Instance& inst) {
  std::vector<int> out;
  for (const auto& [id, rule] : inst.coverage) {
    if (rule != CoverageRule::ExactlyOnce) continue;
    bool coverable = false;
    for (const Entry& e : inst.entries) {
      if (std::binary_search(e.trip.request_ids.begin(), e.trip.request_ids.end(), id)) {
        coverable = true;
        break;
      }
    }
    if (!coverable) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void enforce_candidate_cap(std::size_t count, std::size_t cap) {
  if (count > cap) {
    throw CapExceededError("selection program exceeds the " + std::to_string(cap) +
                           "-trip cap (got " + std::to_string(count) + ")");
  }
}

}  // namespace

AssignmentSolution solve_selection(const SelectionProgram& program) {
  enforce_candidate_cap(program.candidate_trips.size(), program.max_candidates);

  Instance inst;
  inst.objective = program.objective;
  inst.coverage = program.coverage;
  if (program.cardinality_cap) inst.pool_caps[0] = *program.cardinality_cap;
  inst.pool_caps[1] = 0;

  const bool has_mandatory =
      std::any_of(program.coverage.begin(), program.coverage.end(), [](const auto& kv) {
        return kv.second == CoverageRule::ExactlyOnce;
      });
  std::vector<Trip> trips = program.candidate_trips;
  std::sort(trips.begin(), trips.end(), canonical_before);
  for (Trip& t : trips) {
    // In a pure packing, trips that cannot pay their way are dead weight.
    if (!has_mandatory && program.objective == SelectionObjective::MaximizeProfit &&
        t.profit < 0.0) {
      continue;
    }
    Entry e;
    e.profit = t.profit;
    e.trip = std::move(t);
    inst.entries.push_back(std::move(e));
  }

  AssignmentSolution out;
  out.proven_optimal = true;
  out.uncovered = uncoverable_rows(inst);
  if (!out.uncovered.empty()) return out;
  if (program.cardinality_cap && *program.cardinality_cap < 0) return out;

  Solver solver(inst);
  if (!solver.run()) return out;

  out.feasible = true;
  out.objective_value = solver.best_value;
  for (int t : solver.best_chosen) out.selected.push_back(inst.entries[t].trip);
  std::sort(out.selected.begin(), out.selected.end(), canonical_before);
  return out;
}

bool check_solution(const SelectionProgram& program, const AssignmentSolution& solution,
                    std::string* why) {
  auto fail = [&](const std::string& message) {
    if (why) *why = message;
    return false;
  };
  if (!solution.feasible) return true;  // nothing to audit

  std::unordered_map<int, int> hits;
  for (const auto& [id, rule] : program.coverage) {
    if (rule != CoverageRule::Ignore) hits[id] = 0;
  }
  double profit = 0.0;
  for (const Trip& t : solution.selected) {
    const bool known = std::any_of(
        program.candidate_trips.begin(), program.candidate_trips.end(),
        [&](const Trip& c) { return c.request_ids == t.request_ids; });
    if (!known) return fail("selected trip is not a program candidate");
    profit += t.profit;
    for (int id : t.request_ids) {
      auto it = hits.find(id);
      if (it != hits.end()) ++it->second;
    }
  }
  for (const auto& [id, rule] : program.coverage) {
    if (rule == CoverageRule::ExactlyOnce && hits[id] != 1) {
      return fail("request " + std::to_string(id) + " covered " +
                  std::to_string(hits[id]) + " times, expected exactly once");
    }
    if (rule == CoverageRule::AtMostOnce && hits[id] > 1) {
      return fail("request " + std::to_string(id) + " covered twice");
    }
  }
  if (program.cardinality_cap &&
      static_cast<int>(solution.selected.size()) > *program.cardinality_cap) {
    return fail("cardinality cap exceeded");
  }
  const double value = program.objective == SelectionObjective::MaximizeProfit
                           ? profit
                           : static_cast<double>(solution.selected.size());
  if (std::abs(value - solution.objective_value) > 1e-6) {
    return fail("objective value does not match the selected trips");
  }
  return true;
}

std::vector<int> served_requests(const AssignmentSolution& solution) {
  std::vector<int> out;
  for (const Trip& t : solution.selected) {
    out.insert(out.end(), t.request_ids.begin(), t.request_ids.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

FleetSizeResult min_lv_fleet(const std::vector<Trip>& parcel_trips,
                             const std::vector<Request>& parcels) {
  SelectionProgram program;
  program.candidate_trips = parcel_trips;
  program.objective = SelectionObjective::MinimizeCount;
  for (const Request& r : parcels) program.coverage[r.id] = CoverageRule::ExactlyOnce;

  FleetSizeResult result;
  result.solution = solve_selection(program);
  result.feasible = result.solution.feasible;
  result.fleet_size =
      result.feasible ? static_cast<int>(result.solution.selected.size()) : 0;
  result.uncovered = result.solution.uncovered;
  return result;
}

AssignmentSolution max_lv_utility(const std::vector<Trip>& parcel_trips,
                                  const std::vector<Request>& parcels, int fleet_cap) {
  SelectionProgram program;
  program.candidate_trips = parcel_trips;
  program.objective = SelectionObjective::MaximizeProfit;
  for (const Request& r : parcels) program.coverage[r.id] = CoverageRule::AtMostOnce;
  program.cardinality_cap = std::max(0, fleet_cap);
  return solve_selection(program);
}

AssignmentSolution max_rv_profit(const std::vector<Trip>& rv_trips,
                                 const std::vector<Request>& passengers,
                                 const std::vector<int>& residual_parcels, int rv_fleet) {
  SelectionProgram program;
  program.candidate_trips = rv_trips;
  program.objective = SelectionObjective::MaximizeProfit;
  for (const Request& r : passengers) program.coverage[r.id] = CoverageRule::AtMostOnce;
  for (int id : residual_parcels) program.coverage[id] = CoverageRule::ExactlyOnce;
  program.cardinality_cap = std::max(0, rv_fleet);
  return solve_selection(program);
}

ParcelSplitSolution max_rv_profit_with_lv_support(const std::vector<Trip>& lv_trips,
                                                  const std::vector<Trip>& rv_trips,
                                                  const std::vector<Request>& passengers,
                                                  const std::vector<Request>& parcels,
                                                  int lv_cap, int rv_cap) {
  enforce_candidate_cap(lv_trips.size() + rv_trips.size(), 2 * 5000);

  Instance inst;
  inst.objective = SelectionObjective::MaximizeProfit;
  for (const Request& r : passengers) inst.coverage[r.id] = CoverageRule::AtMostOnce;
  for (const Request& r : parcels) inst.coverage[r.id] = CoverageRule::ExactlyOnce;
  inst.pool_caps = {std::max(0, lv_cap), std::max(0, rv_cap)};

  for (const Trip& t : lv_trips) {
    Entry e;
    e.trip = t;
    e.profit = 0.0;  // LV work is free capacity for the RV objective
    e.pool = 0;
    inst.entries.push_back(std::move(e));
  }
  for (const Trip& t : rv_trips) {
    Entry e;
    e.trip = t;
    e.profit = t.profit;
    e.pool = 1;
    inst.entries.push_back(std::move(e));
  }
  std::sort(inst.entries.begin(), inst.entries.end(), [](const Entry& a, const Entry& b) {
    if (a.profit != b.profit) return a.profit > b.profit;
    if (a.trip.request_ids != b.trip.request_ids) {
      return a.trip.request_ids < b.trip.request_ids;
    }
    return a.pool < b.pool;
  });

  ParcelSplitSolution out;
  out.lv.proven_optimal = true;
  out.rv.proven_optimal = true;
  out.rv.uncovered = uncoverable_rows(inst);
  if (!out.rv.uncovered.empty()) return out;

  Solver solver(inst);
  if (!solver.run()) return out;

  out.feasible = true;
  out.rv_profit = solver.best_value;
  for (int t : solver.best_chosen) {
    const Entry& e = inst.entries[t];
    if (e.pool == 0) {
      out.lv.selected.push_back(e.trip);
      out.lv.objective_value += e.trip.profit;
    } else {
      out.rv.selected.push_back(e.trip);
      out.rv.objective_value += e.trip.profit;
    }
  }
  std::sort(out.lv.selected.begin(), out.lv.selected.end(), canonical_before);
  std::sort(out.rv.selected.begin(), out.rv.selected.end(), canonical_before);
  out.lv.feasible = true;
  out.rv.feasible = true;
  return out;
}

}  // namespace sarp
