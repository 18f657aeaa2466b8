#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sarp/network.hpp"

namespace sarp {

enum class RequestKind { Passenger, Parcel };

struct Request {
  int id = 0;  // passengers 1..n, parcels n+1..n+m
  RequestKind kind = RequestKind::Passenger;
  int origin = 0;
  int destination = 0;
  double submit_time = 0.0;  // minutes from scenario start
  double load = 0.0;         // capacity units
};

struct ServiceParams {
  double max_wait = 5.0;             // between submission and pickup
  double max_delay_passenger = 10.0; // dropoff delay bound, passengers
  double max_delay_parcel = 15.0;    // dropoff delay bound, parcels
  int max_intermediate_stops = 2;    // stops tolerated during a passenger's ride
  double capacity = 6.0;
  double passenger_load = 4.0;
  double parcel_load = 1.0;

  void validate() const;  // throws ValidationError
};

struct CostParams {
  double passenger_fixed_income = 5.0;
  double parcel_fixed_income = 3.0;
  double passenger_income_per_km = 2.4;
  double parcel_income_per_km = 1.2;
  double cost_per_km = 0.6;
  double delay_penalty_per_min = 0.5;  // passengers only

  void validate() const;
};

// Derived deadlines; always recomputed from the request, never stored.
double latest_pickup(const Request& r, const ServiceParams& sp);
// Earliest time the destination could possibly be reached.
double earliest_dropoff(const Request& r, const Network& net);

enum class Pattern { SS, SC_South, SC_North, CS_South, CS_North };

std::string pattern_name(Pattern p);
Pattern pattern_from_name(const std::string& name);

struct ScenarioSpec {
  Pattern pattern = Pattern::SS;
  int n_passengers = 0;
  int n_parcels = 0;
  std::uint64_t seed = 0;
  double horizon = 60.0;  // minutes; submissions drawn from [0, horizon)
  ServiceParams service;
  CostParams costs;
  int rv_fleet = 0;
};

// Seeded scenario generation. Passenger endpoints are uniform over the
// network; parcel endpoints follow the pattern (scattered ends uniform,
// clustered ends uniform within the south/north band). Deterministic:
// per request the draw order is origin, destination, submission time,
// all from one SplitMix64 stream seeded with spec.seed.
std::vector<Request> generate_scenario(const ScenarioSpec& spec, const Network& net);

void validate_requests(const std::vector<Request>& requests, const Network& net);

}  // namespace sarp
