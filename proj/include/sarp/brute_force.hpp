#pragma once

#include <utility>
#include <vector>

#include "sarp/assignment.hpp"
#include "sarp/pareto.hpp"

// Reference implementations by exhaustive enumeration. They share no search
// code with the optimized paths and exist to audit them: the test suites and
// the `verify` subcommand compare both sides on small instances.
namespace sarp::brute_force {

// Every stop permutation, scheduled by iterating arrival-time relaxations to
// a fixed point; the best feasible permutation wins.
RouteResult optimal_route(const std::vector<Request>& requests, const Network& net,
                          const ServiceParams& sp, const CostParams& cp);

// Every subset of candidate trips, checked against coverage and cap.
AssignmentSolution solve_selection(const SelectionProgram& program);

// Every (fleet size, LV selection, RV selection) combination; returns the
// non-dominated (fleet size, profit) pairs.
std::vector<std::pair<int, double>> pareto_frontier(const TripCatalog& catalog,
                                                    const std::vector<Request>& requests,
                                                    int rv_fleet);

}  // namespace sarp::brute_force
