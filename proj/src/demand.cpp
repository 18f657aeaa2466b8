#include "sarp/demand.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sarp/errors.hpp"
#include "sarp/rng.hpp"

namespace sarp {

void ServiceParams::validate() const {
  if (max_wait < 0 || max_delay_passenger < 0 || max_delay_parcel < 0 ||
      max_intermediate_stops < 0 || capacity < 0 || passenger_load < 0 || parcel_load < 0) {
    throw ValidationError("service parameters must be non-negative");
  }
  // Capacity below two passenger loads is what rules out passenger-passenger
  // sharing; the solver relies on the capacity constraint alone.
  if (!(capacity < 2.0 * passenger_load)) {
    throw ValidationError("capacity must be smaller than twice the passenger load");
  }
}

void CostParams::validate() const {
  if (passenger_fixed_income < 0 || parcel_fixed_income < 0 || passenger_income_per_km < 0 ||
      parcel_income_per_km < 0 || cost_per_km < 0 || delay_penalty_per_min < 0) {
    throw ValidationError("cost parameters must be non-negative");
  }
}

double latest_pickup(const Request& r, const ServiceParams& sp) {
  return r.submit_time + sp.max_wait;
}

double earliest_dropoff(const Request& r, const Network& net) {
  return r.submit_time + net.travel_time(r.origin, r.destination);
}

std::string pattern_name(Pattern p) {
  switch (p) {
    case Pattern::SS: return "SS";
    case Pattern::SC_South: return "SC_South";
    case Pattern::SC_North: return "SC_North";
    case Pattern::CS_South: return "CS_South";
    case Pattern::CS_North: return "CS_North";
  }
  return "SS";
}

Pattern pattern_from_name(const std::string& name) {
  if (name == "SS") return Pattern::SS;
  if (name == "SC_South") return Pattern::SC_South;
  if (name == "SC_North") return Pattern::SC_North;
  if (name == "CS_South") return Pattern::CS_South;
  if (name == "CS_North") return Pattern::CS_North;
  throw ValidationError("unknown demand pattern '" + name + "'");
}

namespace {

int pick(const std::vector<int>& ids, SplitMix64& rng) {
  return ids[static_cast<std::size_t>(rng.next_below(ids.size()))];
}

// Uniform over ids minus one excluded element, without rejection loops.
int pick_excluding(const std::vector<int>& ids, int excluded, SplitMix64& rng) {
  auto it = std::find(ids.begin(), ids.end(), excluded);
  if (it == ids.end()) return pick(ids, rng);
  if (ids.size() < 2) {
    throw ValidationError("cannot draw distinct endpoints from a single location");
  }
  std::size_t k = static_cast<std::size_t>(rng.next_below(ids.size() - 1));
  std::size_t skip = static_cast<std::size_t>(it - ids.begin());
  if (k >= skip) ++k;
  return ids[k];
}

}  // namespace

std::vector<Request> generate_scenario(const ScenarioSpec& spec, const Network& net) {
  if (spec.n_passengers < 0 || spec.n_parcels < 0) {
    throw ValidationError("request counts must be non-negative");
  }
  if (!(spec.horizon > 0.0)) throw ValidationError("horizon must be positive");
  spec.service.validate();
  spec.costs.validate();

  std::vector<int> all_ids;
  all_ids.reserve(net.locations().size());
  for (const Location& loc : net.locations()) all_ids.push_back(loc.id);

  std::vector<int> parcel_origin_ids = all_ids;
  std::vector<int> parcel_dest_ids = all_ids;
  switch (spec.pattern) {
    case Pattern::SS: break;
    case Pattern::SC_South: parcel_dest_ids = net.south_band(); break;
    case Pattern::SC_North: parcel_dest_ids = net.north_band(); break;
    case Pattern::CS_South: parcel_origin_ids = net.south_band(); break;
    case Pattern::CS_North: parcel_origin_ids = net.north_band(); break;
  }
  if (spec.n_parcels > 0 && (parcel_origin_ids.empty() || parcel_dest_ids.empty())) {
    throw ValidationError("cluster region contains no locations");
  }

  SplitMix64 rng(spec.seed);
  std::vector<Request> out;
  out.reserve(static_cast<std::size_t>(spec.n_passengers) + spec.n_parcels);

  for (int i = 0; i < spec.n_passengers; ++i) {
    Request r;
    r.id = i + 1;
    r.kind = RequestKind::Passenger;
    r.load = spec.service.passenger_load;
    r.origin = pick(all_ids, rng);
    r.destination = pick_excluding(all_ids, r.origin, rng);
    r.submit_time = rng.next_double() * spec.horizon;
    out.push_back(r);
  }
  for (int i = 0; i < spec.n_parcels; ++i) {
    Request r;
    r.id = spec.n_passengers + i + 1;
    r.kind = RequestKind::Parcel;
    r.load = spec.service.parcel_load;
    r.origin = pick(parcel_origin_ids, rng);
    r.destination = pick_excluding(parcel_dest_ids, r.origin, rng);
    r.submit_time = rng.next_double() * spec.horizon;
    out.push_back(r);
  }
  return out;
}

void validate_requests(const std::vector<Request>& requests, const Network& net) {
  std::unordered_set<int> seen;
  int max_passenger_id = 0;
  for (const Request& r : requests) {
    if (r.kind == RequestKind::Passenger) max_passenger_id = std::max(max_passenger_id, r.id);
  }
  for (const Request& r : requests) {
    const std::string tag = "request " + std::to_string(r.id);
    if (r.id <= 0) throw ValidationError(tag + ": ids must be positive");
    if (!seen.insert(r.id).second) throw ValidationError(tag + ": duplicate id");
    if (r.origin == r.destination) {
      throw ValidationError(tag + ": origin equals destination");
    }
    if (!net.has_location(r.origin) || !net.has_location(r.destination)) {
      throw ValidationError(tag + ": endpoint is not a network location");
    }
    if (r.submit_time < 0.0 || !std::isfinite(r.submit_time)) {
      throw ValidationError(tag + ": submission time must be non-negative");
    }
    if (r.load < 0.0) throw ValidationError(tag + ": load must be non-negative");
    if (r.kind == RequestKind::Parcel && r.id <= max_passenger_id) {
      throw ValidationError(tag + ": parcel ids must follow all passenger ids");
    }
  }
  // Contiguity 1..n+m keeps the request ordering canonical.
  for (std::size_t i = 1; i <= requests.size(); ++i) {
    if (!seen.count(static_cast<int>(i))) {
      throw ValidationError("request ids must form 1..n+m without gaps (missing " +
                            std::to_string(i) + ")");
    }
  }
}

}  // namespace sarp
