#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sarp/pareto.hpp"

namespace sarp {

// File formats. All writers are deterministic: fixed key order (alphabetic),
// two-space indentation for JSON documents, one compact object per line for
// catalogs, trailing newline everywhere.

nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

nlohmann::json requests_to_json(const std::vector<Request>& requests);
// Loads remain schema-checked: ids follow the 1..n+m convention, endpoints
// must exist in `net`, origins differ from destinations. Loads are assigned
// from `sp` by request kind.
std::vector<Request> requests_from_json(const nlohmann::json& j, const ServiceParams& sp,
                                        const Network& net);
void save_requests(const std::vector<Request>& requests, const std::string& path);
std::vector<Request> load_requests(const std::string& path, const ServiceParams& sp,
                                   const Network& net);

nlohmann::json route_to_json(const Route& route);
Route route_from_json(const nlohmann::json& j);

nlohmann::json trip_to_json(const Trip& trip);
Trip trip_from_json(const nlohmann::json& j);

// Catalog persistence is JSON-lines: one trip per line, levels in order.
void save_catalog(const TripCatalog& catalog, const std::string& path);
TripCatalog load_catalog(const std::string& path);

nlohmann::json stats_to_json(const EnumStats& stats);

nlohmann::json solution_to_json(const AssignmentSolution& solution);
nlohmann::json frontier_to_json(const FrontierResult& result);

nlohmann::json service_to_json(const ServiceParams& sp);
ServiceParams service_from_json(const nlohmann::json& j);
nlohmann::json costs_to_json(const CostParams& cp);
CostParams costs_from_json(const nlohmann::json& j);

struct Scenario {
  ScenarioSpec spec;
  Network network;
};

// Scenario config: ScenarioSpec fields plus a network, inline or by path
// (relative paths resolve against the config file's directory).
Scenario load_scenario(const std::string& path);

// Program descriptor for the assign subcommand: objective, coverage lists,
// optional cap, optional kind filter for the candidate trips.
SelectionProgram program_from_json(const nlohmann::json& j, const TripCatalog& catalog);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sarp
