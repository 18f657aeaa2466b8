#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sarp/assignment.hpp"
#include "sarp/brute_force.hpp"
#include "sarp/errors.hpp"
#include "sarp/rng.hpp"

using namespace sarp;

namespace {

Trip make_trip(std::vector<int> ids, double profit, TripKind kind = TripKind::ParcelOnly) {
  Trip t;
  t.request_ids = std::move(ids);
  std::sort(t.request_ids.begin(), t.request_ids.end());
  t.profit = profit;
  t.kind = kind;
  return t;
}

Request parcel(int id) { return {id, RequestKind::Parcel, 0, 1, 0.0, 1.0}; }
Request passenger(int id) { return {id, RequestKind::Passenger, 0, 1, 0.0, 4.0}; }

}  // namespace

TEST_CASE("singleton-only catalog forces one vehicle per parcel") {
  std::vector<Trip> trips;
  std::vector<Request> parcels;
  for (int id = 1; id <= 5; ++id) {
    trips.push_back(make_trip({id}, 4.0));
    parcels.push_back(parcel(id));
  }
  const FleetSizeResult result = min_lv_fleet(trips, parcels);
  REQUIRE(result.feasible);
  CHECK(result.fleet_size == 5);
}

TEST_CASE("no parcels need no vehicles") {
  const FleetSizeResult result = min_lv_fleet({}, {});
  REQUIRE(result.feasible);
  CHECK(result.fleet_size == 0);
}

TEST_CASE("an unservable parcel is reported by id") {
  const std::vector<Trip> trips{make_trip({1}, 4.0)};
  const FleetSizeResult result = min_lv_fleet(trips, {parcel(1), parcel(7)});
  CHECK_FALSE(result.feasible);
  CHECK(result.uncovered == std::vector<int>{7});
}

TEST_CASE("pairing parcels halves the fleet") {
  std::vector<Trip> trips;
  std::vector<Request> parcels;
  for (int id = 1; id <= 4; ++id) {
    trips.push_back(make_trip({id}, 4.0));
    parcels.push_back(parcel(id));
  }
  trips.push_back(make_trip({1, 2}, 7.0));
  trips.push_back(make_trip({3, 4}, 7.0));
  const FleetSizeResult result = min_lv_fleet(trips, parcels);
  REQUIRE(result.feasible);
  CHECK(result.fleet_size == 2);
}

TEST_CASE("utility maximization under a fleet cap") {
  std::vector<Trip> trips{make_trip({1}, 5.0), make_trip({2}, 3.0), make_trip({3}, 8.0),
                          make_trip({1, 2}, 9.0)};
  const std::vector<Request> parcels{parcel(1), parcel(2), parcel(3)};

  SUBCASE("zero cap selects nothing") {
    const AssignmentSolution sol = max_lv_utility(trips, parcels, 0);
    REQUIRE(sol.feasible);
    CHECK(sol.objective_value == doctest::Approx(0.0));
    CHECK(sol.selected.empty());
  }
  SUBCASE("slack cap takes every disjoint positive trip") {
    const AssignmentSolution sol =
        max_lv_utility({make_trip({1}, 5.0), make_trip({2}, 3.0), make_trip({3}, 8.0)},
                       parcels, 10);
    REQUIRE(sol.feasible);
    CHECK(sol.objective_value == doctest::Approx(16.0));
    CHECK(sol.selected.size() == 3);
  }
  SUBCASE("tight cap prefers the best combination") {
    const AssignmentSolution sol = max_lv_utility(trips, parcels, 2);
    REQUIRE(sol.feasible);
    CHECK(sol.objective_value == doctest::Approx(17.0));  // {1,2} + {3}
  }
}

TEST_CASE("rv profit with mandatory residual parcels") {
  const std::vector<Request> passengers{passenger(1), passenger(2)};
  std::vector<Trip> trips{
      make_trip({1}, 20.0, TripKind::PassengerOnly),
      make_trip({2}, 15.0, TripKind::PassengerOnly),
      make_trip({1, 3}, 18.0, TripKind::Mixed),
      make_trip({3}, 4.0, TripKind::ParcelOnly),
  };

  SUBCASE("all parcels in LV hands decouples into singleton passengers") {
    const AssignmentSolution sol = max_rv_profit(
        {trips[0], trips[1]}, passengers, {}, 5);
    REQUIRE(sol.feasible);
    CHECK(sol.objective_value == doctest::Approx(35.0));
  }
  SUBCASE("zero vehicles with residual parcels is infeasible") {
    const AssignmentSolution sol = max_rv_profit(trips, passengers, {3}, 0);
    CHECK_FALSE(sol.feasible);
  }
  SUBCASE("residual parcel forces a carrying trip") {
    const AssignmentSolution sol = max_rv_profit(trips, passengers, {3}, 2);
    REQUIRE(sol.feasible);
    // {1,3} mixed + {2}: 18 + 15; beats {1} + {3} + {2} which needs 3 vehicles.
    CHECK(sol.objective_value == doctest::Approx(33.0));
  }
}

TEST_CASE("single candidate covering everything is selected") {
  SelectionProgram program;
  program.candidate_trips = {make_trip({1, 2, 3}, 5.0)};
  program.coverage = {{1, CoverageRule::ExactlyOnce},
                      {2, CoverageRule::ExactlyOnce},
                      {3, CoverageRule::ExactlyOnce}};
  const AssignmentSolution sol = solve_selection(program);
  REQUIRE(sol.feasible);
  REQUIRE(sol.selected.size() == 1);
  CHECK(sol.selected[0].request_ids == std::vector<int>{1, 2, 3});
  CHECK(sol.proven_optimal);
}

TEST_CASE("equal-profit tie goes to the lexicographically smaller id-set") {
  SelectionProgram program;
  program.candidate_trips = {make_trip({2, 4}, 6.0), make_trip({1, 5}, 6.0)};
  program.coverage = {{1, CoverageRule::AtMostOnce},
                      {2, CoverageRule::AtMostOnce},
                      {4, CoverageRule::AtMostOnce},
                      {5, CoverageRule::AtMostOnce}};
  program.cardinality_cap = 1;
  const AssignmentSolution sol = solve_selection(program);
  REQUIRE(sol.feasible);
  REQUIRE(sol.selected.size() == 1);
  CHECK(sol.selected[0].request_ids == std::vector<int>{1, 5});
}

TEST_CASE("negative-profit trips are taken only when coverage demands them") {
  SelectionProgram program;
  program.candidate_trips = {make_trip({1}, -2.0), make_trip({2}, 5.0)};
  program.coverage = {{1, CoverageRule::AtMostOnce}, {2, CoverageRule::AtMostOnce}};
  const AssignmentSolution packing = solve_selection(program);
  REQUIRE(packing.feasible);
  CHECK(packing.objective_value == doctest::Approx(5.0));
  CHECK(packing.selected.size() == 1);

  program.coverage[1] = CoverageRule::ExactlyOnce;
  const AssignmentSolution forced = solve_selection(program);
  REQUIRE(forced.feasible);
  CHECK(forced.objective_value == doctest::Approx(3.0));
  CHECK(forced.selected.size() == 2);
}

TEST_CASE("solver matches subset enumeration on random programs") {
  SplitMix64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    SelectionProgram program;
    const int n_trips = 3 + static_cast<int>(rng.next_below(10));
    const int universe = 2 + static_cast<int>(rng.next_below(8));
    for (int t = 0; t < n_trips; ++t) {
      std::vector<int> ids;
      for (int id = 1; id <= universe; ++id) {
        if (rng.next_below(3) == 0) ids.push_back(id);
      }
      if (ids.empty()) ids.push_back(1 + static_cast<int>(rng.next_below(universe)));
      const double profit = static_cast<double>(rng.next_below(41)) - 8.0;
      program.candidate_trips.push_back(make_trip(std::move(ids), profit));
    }
    for (int id = 1; id <= universe; ++id) {
      switch (rng.next_below(3)) {
        case 0: program.coverage[id] = CoverageRule::AtMostOnce; break;
        case 1: program.coverage[id] = CoverageRule::ExactlyOnce; break;
        default: break;  // unconstrained
      }
    }
    if (rng.next_below(2) == 0) {
      program.cardinality_cap = static_cast<int>(rng.next_below(5));
    }
    program.objective = rng.next_below(2) == 0 ? SelectionObjective::MaximizeProfit
                                               : SelectionObjective::MinimizeCount;

    const AssignmentSolution fast = solve_selection(program);
    const AssignmentSolution slow = brute_force::solve_selection(program);
    REQUIRE(fast.feasible == slow.feasible);
    if (fast.feasible) {
      CHECK(fast.objective_value == doctest::Approx(slow.objective_value).epsilon(1e-9));
      std::string why;
      CHECK_MESSAGE(check_solution(program, fast, &why), why);
    }
  }
}

TEST_CASE("fleet minimum is monotone in the candidate set") {
  std::vector<Request> parcels;
  std::vector<Trip> trips;
  for (int id = 1; id <= 6; ++id) {
    parcels.push_back(parcel(id));
    trips.push_back(make_trip({id}, 3.0));
  }
  const int base = min_lv_fleet(trips, parcels).fleet_size;
  trips.push_back(make_trip({1, 2}, 5.0));
  trips.push_back(make_trip({3, 4, 5}, 8.0));
  const int richer = min_lv_fleet(trips, parcels).fleet_size;
  CHECK(richer <= base);
  CHECK(richer == 3);  // {1,2} + {3,4,5} + {6}
}

TEST_CASE("utility is non-decreasing in the cap") {
  SplitMix64 rng(99);
  std::vector<Trip> trips;
  std::vector<Request> parcels;
  for (int id = 1; id <= 7; ++id) parcels.push_back(parcel(id));
  for (int t = 0; t < 9; ++t) {
    std::vector<int> ids;
    for (int id = 1; id <= 7; ++id) {
      if (rng.next_below(3) == 0) ids.push_back(id);
    }
    if (ids.empty()) ids.push_back(1);
    trips.push_back(make_trip(std::move(ids), 1.0 + static_cast<double>(rng.next_below(9))));
  }
  double previous = -1.0;
  for (int cap = 0; cap <= 5; ++cap) {
    const AssignmentSolution sol = max_lv_utility(trips, parcels, cap);
    REQUIRE(sol.feasible);
    CHECK(sol.objective_value >= previous - 1e-9);
    previous = sol.objective_value;
  }
}

TEST_CASE("rv profit is non-decreasing in fleet size and in offloaded parcels") {
  const std::vector<Request> passengers{passenger(1), passenger(2), passenger(3)};
  const std::vector<Trip> trips{
      make_trip({1}, 12.0, TripKind::PassengerOnly),
      make_trip({2}, 9.0, TripKind::PassengerOnly),
      make_trip({3}, 7.0, TripKind::PassengerOnly),
      make_trip({2, 4}, 10.0, TripKind::Mixed),
      make_trip({4}, 2.0, TripKind::ParcelOnly),
      make_trip({4, 5}, 5.0, TripKind::ParcelOnly),
      make_trip({5}, 2.5, TripKind::ParcelOnly),
  };
  double previous = 0.0;
  for (int fleet = 1; fleet <= 4; ++fleet) {
    const AssignmentSolution sol = max_rv_profit(trips, passengers, {4, 5}, fleet);
    if (!sol.feasible) {
      CHECK(fleet < 2);
      continue;
    }
    CHECK(sol.objective_value >= previous - 1e-9);
    previous = sol.objective_value;
  }
  // Fewer residual parcels cannot hurt: drop 5, keep 4 mandatory.
  std::vector<Trip> no5;
  for (const Trip& t : trips) {
    if (!std::binary_search(t.request_ids.begin(), t.request_ids.end(), 5)) {
      no5.push_back(t);
    }
  }
  const double with_both =
      max_rv_profit(trips, passengers, {4, 5}, 3).objective_value;
  const double with_one = max_rv_profit(no5, passengers, {4}, 3).objective_value;
  CHECK(with_one >= with_both - 1e-9);
}

TEST_CASE("candidate cap triggers a clear error") {
  SelectionProgram program;
  program.max_candidates = 3;
  for (int id = 1; id <= 4; ++id) program.candidate_trips.push_back(make_trip({id}, 1.0));
  CHECK_THROWS_AS(solve_selection(program), CapExceededError);
}
