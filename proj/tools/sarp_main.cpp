#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sarp/brute_force.hpp"
#include "sarp/errors.hpp"
#include "sarp/io.hpp"
#include "sarp/report.hpp"
#include "sarp/rng.hpp"

namespace {

using namespace sarp;
using nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFile = 3;
constexpr int kExitCap = 4;

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) out.push_back(std::stoi(token));
      token.clear();
    } else {
      token += c;
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) out.push_back(std::stod(token));
      token.clear();
    } else {
      token += c;
    }
  }
  return out;
}

// "0-7" or "0,3,5"
std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  const std::size_t dash = text.find('-');
  std::vector<std::uint64_t> out;
  if (dash != std::string::npos) {
    const auto lo = std::stoull(text.substr(0, dash));
    const auto hi = std::stoull(text.substr(dash + 1));
    for (auto s = lo; s <= hi; ++s) out.push_back(s);
  } else {
    for (int v : parse_int_list(text)) out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

struct GridArg {
  int nx = 10;
  int ny = 10;
};

GridArg parse_grid(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError("--grid expects NX,NY");
  GridArg g;
  g.nx = std::stoi(text.substr(0, comma));
  g.ny = std::stoi(text.substr(comma + 1));
  return g;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_file(out_path, content);
  }
}

struct ParamFiles {
  ServiceParams service;
  CostParams costs;
};

ParamFiles load_params(const std::string& config_path) {
  ParamFiles p;
  if (config_path.empty()) return p;
  const json j = json::parse(read_file(config_path));
  if (j.contains("service")) p.service = service_from_json(j.at("service"));
  if (j.contains("costs")) p.costs = costs_from_json(j.at("costs"));
  return p;
}

int cmd_generate(const std::string& pattern, int passengers, int parcels,
                 std::uint64_t seed, double horizon, const std::string& network_path,
                 const std::string& grid_arg, double spacing, double speed,
                 const std::string& config, const std::string& out,
                 const std::string& network_out) {
  Network net = network_path.empty()
                    ? [&] {
                        const GridArg g = parse_grid(grid_arg);
                        return Network::grid(g.nx, g.ny, spacing, speed);
                      }()
                    : load_network(network_path);
  ScenarioSpec spec;
  spec.pattern = pattern_from_name(pattern);
  spec.n_passengers = passengers;
  spec.n_parcels = parcels;
  spec.seed = seed;
  spec.horizon = horizon;
  const ParamFiles params = load_params(config);
  spec.service = params.service;
  spec.costs = params.costs;

  const std::vector<Request> requests = generate_scenario(spec, net);
  emit(requests_to_json(requests).dump(2) + "\n", out);
  if (!network_out.empty()) save_network(net, network_out);
  return 0;
}

int cmd_enumerate(const std::string& requests_path, const std::string& network_path,
                  const std::string& mode_name, int threads, const std::string& config,
                  const std::string& out, const std::string& stats_out,
                  std::size_t cap_direct, std::size_t cap_requests) {
  const Network net = load_network(network_path);
  const ParamFiles params = load_params(config);
  const std::vector<Request> requests = load_requests(requests_path, params.service, net);
  const EnumMode mode = enum_mode_from_name(mode_name);
  enforce_enumeration_caps(mode, requests.size(), cap_direct, cap_requests);

  const TripCatalog catalog =
      enumerate_all(requests, net, params.service, params.costs, mode, threads);
  std::string lines;
  for (const Trip* trip : catalog.all()) lines += trip_to_json(*trip).dump() + "\n";
  emit(lines, out);

  const json stats = stats_to_json(catalog.stats);
  if (stats_out.empty()) {
    std::cerr << stats.dump(2) << "\n";
  } else {
    write_file(stats_out, stats.dump(2) + "\n");
  }
  return 0;
}

int cmd_route(const std::string& requests_path, const std::string& network_path,
              const std::string& ids_arg, const std::string& config,
              const std::string& out) {
  const Network net = load_network(network_path);
  const ParamFiles params = load_params(config);
  const std::vector<Request> all = load_requests(requests_path, params.service, net);
  std::vector<Request> subset;
  for (int id : parse_int_list(ids_arg)) {
    const auto it = std::find_if(all.begin(), all.end(),
                                 [&](const Request& r) { return r.id == id; });
    if (it == all.end()) throw ValidationError("no request with id " + std::to_string(id));
    subset.push_back(*it);
  }
  const RouteResult result = optimal_route(subset, net, params.service, params.costs);
  json j;
  j["feasible"] = result.feasible;
  if (result.feasible) {
    j["profit"] = result.profit;
    j["route"] = route_to_json(*result.route);
  }
  emit(j.dump(2) + "\n", out);
  return 0;
}

int cmd_assign(const std::string& catalog_path, const std::string& program_path,
               const std::string& out, std::size_t cap_trips) {
  const TripCatalog catalog = load_catalog(catalog_path);
  SelectionProgram program =
      program_from_json(json::parse(read_file(program_path)), catalog);
  program.max_candidates = cap_trips;
  const AssignmentSolution solution = solve_selection(program);
  emit(solution_to_json(solution).dump(2) + "\n", out);
  return 0;
}

int cmd_pareto(const std::string& scenario_path, int rvs_override,
               const std::string& requests_path, const std::string& catalog_path,
               int threads, const std::string& out, const std::string& report_path,
               std::size_t cap_requests) {
  Scenario scenario = load_scenario(scenario_path);
  if (rvs_override >= 0) scenario.spec.rv_fleet = rvs_override;

  const std::vector<Request> requests =
      requests_path.empty() ? generate_scenario(scenario.spec, scenario.network)
                            : load_requests(requests_path, scenario.spec.service,
                                            scenario.network);
  TripCatalog catalog;
  if (catalog_path.empty()) {
    enforce_enumeration_caps(EnumMode::AugmentPruned, requests.size(), 12, cap_requests);
    catalog = enumerate_all(requests, scenario.network, scenario.spec.service,
                            scenario.spec.costs, EnumMode::AugmentPruned, threads);
  } else {
    catalog = load_catalog(catalog_path);
  }
  const FrontierResult result = pareto_frontier(catalog, requests, scenario.spec.rv_fleet);
  emit(frontier_to_json(result).dump(2) + "\n", out);
  if (!report_path.empty()) {
    const ReportRow row = report_row(result, std::to_string(scenario.spec.seed));
    write_file(report_path, render_report({row}));
  }
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& param_name,
              const std::string& values_arg, const std::string& seeds_arg, int threads,
              const std::string& out) {
  const Scenario scenario = load_scenario(scenario_path);
  const SweepParam param = sweep_param_from_name(param_name);
  const std::vector<double> values = parse_double_list(values_arg);
  const std::vector<std::uint64_t> seeds = parse_seed_list(seeds_arg);
  const std::vector<SweepRow> rows =
      sweep(param, values, scenario.spec, scenario.network, seeds, threads);
  emit(render_sweep_csv(param, rows), out);
  return 0;
}

// Built-in cross-checks of the optimized paths against the enumeration
// references, on small fixed instances.
int cmd_verify() {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;

  {  // route optimizer vs permutation reference
    ScenarioSpec spec;
    spec.n_passengers = 8;
    spec.n_parcels = 4;
    spec.seed = 7;
    const std::vector<Request> pool = generate_scenario(spec, net);
    SplitMix64 rng(12345);
    int mismatches = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t size = 1 + rng.next_below(3);
      std::vector<Request> subset;
      std::vector<char> used(pool.size(), 0);
      while (subset.size() < size) {
        const auto k = static_cast<std::size_t>(rng.next_below(pool.size()));
        if (!used[k]) {
          used[k] = 1;
          subset.push_back(pool[k]);
        }
      }
      const RouteResult fast = optimal_route(subset, net, sp, cp);
      const RouteResult slow = brute_force::optimal_route(subset, net, sp, cp);
      if (fast.feasible != slow.feasible ||
          (fast.feasible && std::abs(fast.profit - slow.profit) > 1e-6)) {
        ++mismatches;
      }
    }
    report("route optimizer matches permutation reference", mismatches == 0,
           "60 random subsets");
  }

  ScenarioSpec spec8;
  spec8.n_passengers = 5;
  spec8.n_parcels = 3;
  spec8.seed = 1;
  const std::vector<Request> requests8 = generate_scenario(spec8, net);
  const TripCatalog direct = enumerate_all(requests8, net, sp, cp, EnumMode::Direct);
  const TripCatalog alg1 = enumerate_all(requests8, net, sp, cp, EnumMode::Augment);
  const TripCatalog alg2 = enumerate_all(requests8, net, sp, cp, EnumMode::AugmentPruned);

  {  // enumeration modes agree
    auto ids_of = [](const TripCatalog& c) {
      std::vector<std::vector<int>> ids;
      for (const Trip* t : c.all()) ids.push_back(t->request_ids);
      return ids;
    };
    const bool equal = ids_of(direct) == ids_of(alg1) && ids_of(alg1) == ids_of(alg2);
    const bool ordered =
        alg2.stats.candidates_evaluated <= alg1.stats.candidates_evaluated &&
        alg1.stats.candidates_evaluated <= direct.stats.candidates_evaluated;
    report("enumeration modes agree with candidate-count ordering", equal && ordered,
           std::to_string(direct.stats.candidates_evaluated) + " / " +
               std::to_string(alg1.stats.candidates_evaluated) + " / " +
               std::to_string(alg2.stats.candidates_evaluated));
  }

  {  // selection solver vs subset enumeration
    const std::vector<const Trip*> all = alg2.all();
    SplitMix64 rng(777);
    int mismatches = 0;
    for (int trial = 0; trial < 15; ++trial) {
      SelectionProgram program;
      for (const Trip* t : all) {
        if (rng.next_below(2) == 0 && program.candidate_trips.size() < 12) {
          program.candidate_trips.push_back(*t);
        }
      }
      std::vector<int> ids;
      for (const Trip& t : program.candidate_trips) {
        ids.insert(ids.end(), t.request_ids.begin(), t.request_ids.end());
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      for (int id : ids) {
        const auto roll = rng.next_below(3);
        if (roll == 0) program.coverage[id] = CoverageRule::AtMostOnce;
        if (roll == 1 && trial % 2 == 0) program.coverage[id] = CoverageRule::ExactlyOnce;
      }
      program.objective = trial % 3 == 0 ? SelectionObjective::MinimizeCount
                                         : SelectionObjective::MaximizeProfit;
      if (trial % 2 == 1) program.cardinality_cap = static_cast<int>(rng.next_below(4));
      const AssignmentSolution fast = solve_selection(program);
      const AssignmentSolution slow = brute_force::solve_selection(program);
      if (fast.feasible != slow.feasible ||
          (fast.feasible && std::abs(fast.objective_value - slow.objective_value) > 1e-6)) {
        ++mismatches;
      }
    }
    report("selection solver matches subset enumeration", mismatches == 0,
           "15 random programs");
  }

  {  // frontier vs exhaustive fleet/assignment enumeration
    ScenarioSpec spec;
    spec.n_passengers = 6;
    spec.n_parcels = 2;
    spec.seed = 3;
    spec.rv_fleet = 2;
    const std::vector<Request> reqs = generate_scenario(spec, net);
    const TripCatalog catalog = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned);
    const FrontierResult fr = pareto_frontier(catalog, reqs, spec.rv_fleet);
    const auto expect = brute_force::pareto_frontier(catalog, reqs, spec.rv_fleet);
    bool same = fr.frontier.size() == expect.size();
    for (std::size_t i = 0; same && i < expect.size(); ++i) {
      same = fr.frontier[i].epsilon == expect[i].first &&
             std::abs(fr.frontier[i].phi_rv - expect[i].second) < 1e-6;
    }
    report("fleet-size frontier matches exhaustive enumeration", same);
  }

  return failures == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for coordinated ride-hailing and logistics assignment"};
  app.require_subcommand(1);

  std::string pattern = "SS", network_path, grid_arg = "10,10", config, out, network_out;
  int passengers = 0, parcels = 0, threads = 1, rvs_override = -1;
  std::uint64_t seed = 0;
  double horizon = 60.0, spacing = 1.0, speed = 30.0;
  std::string requests_path, mode_name = "alg2", stats_out, ids_arg;
  std::string catalog_path, program_path, scenario_path, report_path;
  std::string param_name = "gamma2", values_arg, seeds_arg = "0-7";
  std::size_t cap_direct = 12, cap_requests = 60, cap_trips = 5000;

  auto* generate = app.add_subcommand("generate", "Generate a seeded demand scenario");
  generate->add_option("--pattern", pattern, "SS, SC_South, SC_North, CS_South, CS_North");
  generate->add_option("--passengers", passengers)->required();
  generate->add_option("--parcels", parcels)->required();
  generate->add_option("--seed", seed);
  generate->add_option("--horizon", horizon, "Submission window length, minutes");
  generate->add_option("--network", network_path, "Network JSON (otherwise a grid is built)");
  generate->add_option("--grid", grid_arg, "Grid size NX,NY");
  generate->add_option("--spacing", spacing, "Grid spacing, km");
  generate->add_option("--speed", speed, "Vehicle speed, km/h");
  generate->add_option("--config", config, "JSON with service/costs overrides");
  generate->add_option("--out", out, "Request JSON output ('-' for stdout)");
  generate->add_option("--network-out", network_out, "Also save the network JSON here");

  auto* enumerate = app.add_subcommand("enumerate", "Generate every feasible trip");
  enumerate->add_option("--requests", requests_path)->required();
  enumerate->add_option("--network", network_path)->required();
  enumerate->add_option("--mode", mode_name, "direct, alg1 or alg2");
  enumerate->add_option("--threads", threads);
  enumerate->add_option("--config", config, "JSON with service/costs overrides");
  enumerate->add_option("--out", out, "Catalog JSON-lines output");
  enumerate->add_option("--stats-out", stats_out, "Stats JSON (default: stderr)");
  enumerate->add_option("--cap-direct", cap_direct, "Request cap for direct mode");
  enumerate->add_option("--cap-requests", cap_requests, "Request cap for alg1/alg2");

  auto* route = app.add_subcommand("route", "Optimal route for chosen requests");
  route->add_option("--requests", requests_path)->required();
  route->add_option("--network", network_path)->required();
  route->add_option("--ids", ids_arg, "Comma-separated request ids")->required();
  route->add_option("--config", config);
  route->add_option("--out", out);

  auto* assign = app.add_subcommand("assign", "Solve a trip-selection program");
  assign->add_option("--catalog", catalog_path)->required();
  assign->add_option("--program", program_path)->required();
  assign->add_option("--out", out);
  assign->add_option("--cap-trips", cap_trips, "Candidate-trip cap per solve");

  auto* pareto = app.add_subcommand("pareto", "Fleet-size/profit frontier with benchmarks");
  pareto->add_option("--scenario", scenario_path)->required();
  pareto->add_option("--rvs", rvs_override, "Override the scenario's RV fleet size");
  pareto->add_option("--requests", requests_path, "Use these requests instead of generating");
  pareto->add_option("--catalog", catalog_path, "Use this catalog instead of enumerating");
  pareto->add_option("--threads", threads);
  pareto->add_option("--out", out, "Frontier JSON output");
  pareto->add_option("--report", report_path, "Also write a one-row summary CSV");
  pareto->add_option("--cap-requests", cap_requests);

  auto* sweep_cmd = app.add_subcommand("sweep", "Re-run the pipeline over a parameter set");
  sweep_cmd->add_option("--scenario", scenario_path)->required();
  sweep_cmd->add_option("--param", param_name, "rv_fleet, gamma2 or ratio");
  sweep_cmd->add_option("--values", values_arg)->required();
  sweep_cmd->add_option("--seeds", seeds_arg, "Range 0-7 or comma list");
  sweep_cmd->add_option("--threads", threads);
  sweep_cmd->add_option("--out", out, "CSV output");

  auto* verify = app.add_subcommand("verify", "Cross-check solvers against references");
  (void)verify;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      return cmd_generate(pattern, passengers, parcels, seed, horizon, network_path,
                          grid_arg, spacing, speed, config, out, network_out);
    }
    if (enumerate->parsed()) {
      return cmd_enumerate(requests_path, network_path, mode_name, threads, config, out,
                           stats_out, cap_direct, cap_requests);
    }
    if (route->parsed()) {
      return cmd_route(requests_path, network_path, ids_arg, config, out);
    }
    if (assign->parsed()) {
      return cmd_assign(catalog_path, program_path, out, cap_trips);
    }
    if (pareto->parsed()) {
      return cmd_pareto(scenario_path, rvs_override, requests_path, catalog_path, threads,
                        out, report_path, cap_requests);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(scenario_path, param_name, values_arg, seeds_arg, threads, out);
    }
    if (verify->parsed()) {
      return cmd_verify();
    }
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFile;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
