#include "sarp/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sarp/errors.hpp"

namespace sarp {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write '" + path + "'");
  out << content;
}

namespace {

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("malformed JSON in " + what);
  return j;
}

json load_json_file(const std::string& path) {
  return parse_json(read_file(path), path);
}

void save_json_file(const json& j, const std::string& path) {
  write_file(path, j.dump(2) + "\n");
}

}  // namespace

json network_to_json(const Network& net) {
  json j;
  j["mode"] = net.metric() == Metric::Grid ? "grid" : "matrix";
  j["speed_kmh"] = net.speed_kmh();
  json locs = json::array();
  for (const Location& loc : net.locations()) {
    json entry;
    entry["id"] = loc.id;
    if (loc.has_coords) {
      entry["x"] = loc.x;
      entry["y"] = loc.y;
    }
    locs.push_back(entry);
  }
  j["locations"] = locs;
  if (net.metric() == Metric::ExplicitMatrix) j["matrix"] = net.matrix();
  return j;
}

Network network_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mode") || !j.contains("speed_kmh") ||
      !j.contains("locations")) {
    throw ValidationError("network file needs mode, speed_kmh and locations");
  }
  const std::string mode = j.at("mode").get<std::string>();
  const double speed = j.at("speed_kmh").get<double>();
  std::vector<Location> locs;
  for (const json& entry : j.at("locations")) {
    Location loc;
    loc.id = entry.at("id").get<int>();
    if (entry.contains("x") && entry.contains("y")) {
      loc.x = entry.at("x").get<double>();
      loc.y = entry.at("y").get<double>();
      loc.has_coords = true;
    } else {
      loc.has_coords = false;
    }
    locs.push_back(loc);
  }
  if (mode == "grid") return Network::from_locations(std::move(locs), speed);
  if (mode == "matrix") {
    if (!j.contains("matrix")) throw ValidationError("matrix mode needs a matrix");
    auto matrix = j.at("matrix").get<std::vector<std::vector<double>>>();
    return Network::from_matrix(std::move(locs), std::move(matrix), speed);
  }
  throw ValidationError("network mode must be 'grid' or 'matrix'");
}

void save_network(const Network& net, const std::string& path) {
  save_json_file(network_to_json(net), path);
}

Network load_network(const std::string& path) {
  return network_from_json(load_json_file(path));
}

json requests_to_json(const std::vector<Request>& requests) {
  json j = json::array();
  for (const Request& r : requests) {
    json entry;
    entry["id"] = r.id;
    entry["kind"] = r.kind == RequestKind::Passenger ? "passenger" : "parcel";
    entry["origin"] = r.origin;
    entry["destination"] = r.destination;
    entry["submit_time"] = r.submit_time;
    j.push_back(entry);
  }
  return j;
}

std::vector<Request> requests_from_json(const json& j, const ServiceParams& sp,
                                        const Network& net) {
  if (!j.is_array()) throw ValidationError("request file must be a JSON array");
  std::vector<Request> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& entry = j[i];
    const std::string tag = "request record " + std::to_string(i);
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("kind") ||
        !entry.contains("origin") || !entry.contains("destination") ||
        !entry.contains("submit_time")) {
      throw ValidationError(tag + ": needs id, kind, origin, destination, submit_time");
    }
    Request r;
    r.id = entry.at("id").get<int>();
    const std::string kind = entry.at("kind").get<std::string>();
    if (kind == "passenger") {
      r.kind = RequestKind::Passenger;
      r.load = sp.passenger_load;
    } else if (kind == "parcel") {
      r.kind = RequestKind::Parcel;
      r.load = sp.parcel_load;
    } else {
      throw ValidationError(tag + ": kind must be 'passenger' or 'parcel'");
    }
    r.origin = entry.at("origin").get<int>();
    r.destination = entry.at("destination").get<int>();
    r.submit_time = entry.at("submit_time").get<double>();
    out.push_back(r);
  }
  validate_requests(out, net);
  return out;
}

void save_requests(const std::vector<Request>& requests, const std::string& path) {
  save_json_file(requests_to_json(requests), path);
}

std::vector<Request> load_requests(const std::string& path, const ServiceParams& sp,
                                   const Network& net) {
  return requests_from_json(load_json_file(path), sp, net);
}

namespace {

std::string role_name(StopRole role) {
  switch (role) {
    case StopRole::PickupPassenger: return "pickup_passenger";
    case StopRole::DropoffPassenger: return "dropoff_passenger";
    case StopRole::PickupParcel: return "pickup_parcel";
    case StopRole::DropoffParcel: return "dropoff_parcel";
  }
  return "pickup_passenger";
}

StopRole role_from_name(const std::string& name) {
  if (name == "pickup_passenger") return StopRole::PickupPassenger;
  if (name == "dropoff_passenger") return StopRole::DropoffPassenger;
  if (name == "pickup_parcel") return StopRole::PickupParcel;
  if (name == "dropoff_parcel") return StopRole::DropoffParcel;
  throw ValidationError("unknown stop role '" + name + "'");
}

}  // namespace

json route_to_json(const Route& route) {
  json stops = json::array();
  for (std::size_t k = 0; k < route.stops.size(); ++k) {
    const Stop& s = route.stops[k];
    json entry;
    entry["request"] = s.request_id;
    entry["role"] = role_name(s.role);
    entry["location"] = s.location;
    entry["load_delta"] = s.load_delta;
    entry["arrival"] = route.arrival[k];
    entry["load"] = route.load[k];
    entry["position"] = route.visit_index[k];
    stops.push_back(entry);
  }
  json j;
  j["stops"] = stops;
  j["profit"] = route.profit;
  return j;
}

Route route_from_json(const json& j) {
  Route route;
  for (const json& entry : j.at("stops")) {
    Stop s;
    s.request_id = entry.at("request").get<int>();
    s.role = role_from_name(entry.at("role").get<std::string>());
    s.location = entry.at("location").get<int>();
    s.load_delta = entry.at("load_delta").get<double>();
    route.stops.push_back(s);
    route.arrival.push_back(entry.at("arrival").get<double>());
    route.load.push_back(entry.at("load").get<double>());
    route.visit_index.push_back(entry.at("position").get<int>());
  }
  route.profit = j.at("profit").get<double>();
  return route;
}

json trip_to_json(const Trip& trip) {
  json j;
  j["ids"] = trip.request_ids;
  j["kind"] = std::string(1, trip_kind_code(trip.kind));
  j["profit"] = trip.profit;
  j["route"] = route_to_json(trip.route);
  return j;
}

Trip trip_from_json(const json& j) {
  Trip trip;
  trip.request_ids = j.at("ids").get<std::vector<int>>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind.size() != 1) throw ValidationError("trip kind must be one of P, F, M");
  trip.kind = trip_kind_from_code(kind[0]);
  trip.profit = j.at("profit").get<double>();
  trip.route = route_from_json(j.at("route"));
  return trip;
}

void save_catalog(const TripCatalog& catalog, const std::string& path) {
  std::string out;
  for (const auto& level : catalog.levels) {
    for (const Trip& trip : level) {
      out += trip_to_json(trip).dump();
      out += '\n';
    }
  }
  write_file(path, out);
}

TripCatalog load_catalog(const std::string& path) {
  const std::string text = read_file(path);
  TripCatalog catalog;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Trip trip = trip_from_json(parse_json(line, path + ":" + std::to_string(line_no)));
    const std::size_t level = trip.request_ids.size();
    if (level == 0) throw ValidationError("catalog trip with no requests");
    if (catalog.levels.size() < level) catalog.levels.resize(level);
    catalog.levels[level - 1].push_back(std::move(trip));
  }
  for (auto& level : catalog.levels) {
    std::sort(level.begin(), level.end(),
              [](const Trip& a, const Trip& b) { return a.request_ids < b.request_ids; });
  }
  catalog.stats.feasible_found = catalog.trip_count();
  for (const auto& level : catalog.levels) {
    catalog.stats.level_feasible.push_back(level.size());
  }
  return catalog;
}

json stats_to_json(const EnumStats& stats) {
  json j;
  j["candidates_evaluated"] = stats.candidates_evaluated;
  j["feasible_found"] = stats.feasible_found;
  j["level_candidates"] = stats.level_candidates;
  j["level_feasible"] = stats.level_feasible;
  j["wall_seconds"] = stats.wall_seconds;
  return j;
}

json solution_to_json(const AssignmentSolution& solution) {
  json j;
  j["feasible"] = solution.feasible;
  j["objective_value"] = solution.objective_value;
  j["proven_optimal"] = solution.proven_optimal;
  json trips = json::array();
  for (const Trip& t : solution.selected) trips.push_back(t.request_ids);
  j["selected"] = trips;
  if (!solution.uncovered.empty()) j["uncovered"] = solution.uncovered;
  return j;
}

json frontier_to_json(const FrontierResult& result) {
  json j;
  j["rv_fleet"] = result.rv_fleet;
  json points = json::array();
  for (const ParetoPoint& p : result.frontier) {
    json entry;
    entry["epsilon"] = p.epsilon;
    entry["phi_rv"] = p.phi_rv;
    entry["lv"] = solution_to_json(p.lv_solution);
    entry["rv"] = solution_to_json(p.rv_solution);
    entry["lv_served_parcels"] = p.lv_served_parcels;
    json m;
    m["passenger_acceptance_rate"] = p.metrics.passenger_acceptance_rate;
    m["avg_profit_per_rv"] = p.metrics.avg_profit_per_rv;
    m["rv_profit_increase_vs_rv_only_pct"] = p.metrics.rv_profit_increase_vs_rv_only_pct;
    m["lv_fleet_saving_vs_lv_only"] = p.metrics.lv_fleet_saving_vs_lv_only;
    m["rv_profit_vs_sarp_pct"] = p.metrics.rv_profit_vs_sarp_pct;
    m["lv_fleet_saving_vs_sarp"] = p.metrics.lv_fleet_saving_vs_sarp;
    entry["metrics"] = m;
    points.push_back(entry);
  }
  j["points"] = points;
  json collected = json::array();
  for (const auto& [eps, phi] : result.collected) {
    collected.push_back(json::array({eps, phi}));
  }
  j["collected"] = collected;
  json b;
  b["rv_only_profit"] = result.benchmarks.rv_only.profit;
  b["lv_only_fleet"] = result.benchmarks.lv_only.fleet_size;
  b["lv_only_feasible"] = result.benchmarks.lv_only.feasible;
  b["sarp_rv_profit"] = result.benchmarks.sarp.rv_profit;
  b["sarp_fleet"] = result.benchmarks.sarp.lv_fleet;
  b["sarp_lv_feasible"] = result.benchmarks.sarp.lv_feasible;
  j["benchmarks"] = b;
  return j;
}

json service_to_json(const ServiceParams& sp) {
  json j;
  j["max_wait"] = sp.max_wait;
  j["max_delay_passenger"] = sp.max_delay_passenger;
  j["max_delay_parcel"] = sp.max_delay_parcel;
  j["max_intermediate_stops"] = sp.max_intermediate_stops;
  j["capacity"] = sp.capacity;
  j["passenger_load"] = sp.passenger_load;
  j["parcel_load"] = sp.parcel_load;
  return j;
}

ServiceParams service_from_json(const json& j) {
  ServiceParams sp;
  if (j.contains("max_wait")) sp.max_wait = j.at("max_wait").get<double>();
  if (j.contains("max_delay_passenger")) {
    sp.max_delay_passenger = j.at("max_delay_passenger").get<double>();
  }
  if (j.contains("max_delay_parcel")) {
    sp.max_delay_parcel = j.at("max_delay_parcel").get<double>();
  }
  if (j.contains("max_intermediate_stops")) {
    sp.max_intermediate_stops = j.at("max_intermediate_stops").get<int>();
  }
  if (j.contains("capacity")) sp.capacity = j.at("capacity").get<double>();
  if (j.contains("passenger_load")) sp.passenger_load = j.at("passenger_load").get<double>();
  if (j.contains("parcel_load")) sp.parcel_load = j.at("parcel_load").get<double>();
  sp.validate();
  return sp;
}

json costs_to_json(const CostParams& cp) {
  json j;
  j["passenger_fixed_income"] = cp.passenger_fixed_income;
  j["parcel_fixed_income"] = cp.parcel_fixed_income;
  j["passenger_income_per_km"] = cp.passenger_income_per_km;
  j["parcel_income_per_km"] = cp.parcel_income_per_km;
  j["cost_per_km"] = cp.cost_per_km;
  j["delay_penalty_per_min"] = cp.delay_penalty_per_min;
  return j;
}

CostParams costs_from_json(const json& j) {
  CostParams cp;
  if (j.contains("passenger_fixed_income")) {
    cp.passenger_fixed_income = j.at("passenger_fixed_income").get<double>();
  }
  if (j.contains("parcel_fixed_income")) {
    cp.parcel_fixed_income = j.at("parcel_fixed_income").get<double>();
  }
  if (j.contains("passenger_income_per_km")) {
    cp.passenger_income_per_km = j.at("passenger_income_per_km").get<double>();
  }
  if (j.contains("parcel_income_per_km")) {
    cp.parcel_income_per_km = j.at("parcel_income_per_km").get<double>();
  }
  if (j.contains("cost_per_km")) cp.cost_per_km = j.at("cost_per_km").get<double>();
  if (j.contains("delay_penalty_per_min")) {
    cp.delay_penalty_per_min = j.at("delay_penalty_per_min").get<double>();
  }
  cp.validate();
  return cp;
}

Scenario load_scenario(const std::string& path) {
  const json j = load_json_file(path);
  Scenario scenario;
  ScenarioSpec& spec = scenario.spec;
  if (j.contains("pattern")) spec.pattern = pattern_from_name(j.at("pattern").get<std::string>());
  if (j.contains("passengers")) spec.n_passengers = j.at("passengers").get<int>();
  if (j.contains("parcels")) spec.n_parcels = j.at("parcels").get<int>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("horizon")) spec.horizon = j.at("horizon").get<double>();
  if (j.contains("rv_fleet")) spec.rv_fleet = j.at("rv_fleet").get<int>();
  if (j.contains("service")) spec.service = service_from_json(j.at("service"));
  if (j.contains("costs")) spec.costs = costs_from_json(j.at("costs"));

  if (!j.contains("network")) throw ValidationError("scenario needs a network");
  const json& net = j.at("network");
  if (net.is_string()) {
    std::filesystem::path net_path(net.get<std::string>());
    if (net_path.is_relative()) {
      net_path = std::filesystem::path(path).parent_path() / net_path;
    }
    scenario.network = load_network(net_path.string());
  } else {
    scenario.network = network_from_json(net);
  }
  return scenario;
}

SelectionProgram program_from_json(const json& j, const TripCatalog& catalog) {
  SelectionProgram program;
  const std::string objective = j.value("objective", "profit-max");
  if (objective == "profit-max") {
    program.objective = SelectionObjective::MaximizeProfit;
  } else if (objective == "count-min") {
    program.objective = SelectionObjective::MinimizeCount;
  } else {
    throw ValidationError("objective must be 'profit-max' or 'count-min'");
  }
  std::vector<char> kinds;
  if (j.contains("kinds")) {
    for (const json& k : j.at("kinds")) {
      const std::string s = k.get<std::string>();
      if (s.size() != 1) throw ValidationError("kind filters must be P, F or M");
      trip_kind_from_code(s[0]);
      kinds.push_back(s[0]);
    }
  }
  for (const Trip* trip : catalog.all()) {
    if (kinds.empty() ||
        std::find(kinds.begin(), kinds.end(), trip_kind_code(trip->kind)) != kinds.end()) {
      program.candidate_trips.push_back(*trip);
    }
  }
  if (j.contains("exactly_once")) {
    for (int id : j.at("exactly_once").get<std::vector<int>>()) {
      program.coverage[id] = CoverageRule::ExactlyOnce;
    }
  }
  if (j.contains("at_most_once")) {
    for (int id : j.at("at_most_once").get<std::vector<int>>()) {
      if (program.coverage.count(id)) {
        throw ValidationError("request " + std::to_string(id) + " listed under two rules");
      }
      program.coverage[id] = CoverageRule::AtMostOnce;
    }
  }
  if (j.contains("cap") && !j.at("cap").is_null()) {
    program.cardinality_cap = j.at("cap").get<int>();
  }
  return program;
}

}  // namespace sarp
