#include <doctest.h>

#include <cmath>

#include "sarp/brute_force.hpp"
#include "sarp/pareto.hpp"

using namespace sarp;

namespace {

struct Instance {
  std::vector<Request> requests;
  TripCatalog catalog;
};

Instance make_instance(const Network& net, int passengers, int parcels,
                       std::uint64_t seed, const ServiceParams& sp, const CostParams& cp,
                       double horizon = 40.0) {
  ScenarioSpec spec;
  spec.n_passengers = passengers;
  spec.n_parcels = parcels;
  spec.seed = seed;
  spec.horizon = horizon;
  spec.service = sp;
  spec.costs = cp;
  Instance inst;
  inst.requests = generate_scenario(spec, net);
  inst.catalog = enumerate_all(inst.requests, net, sp, cp, EnumMode::AugmentPruned);
  return inst;
}

}  // namespace

TEST_CASE("no parcels: the frontier is a single passenger-only point") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const Instance inst = make_instance(net, 5, 0, 3, sp, cp);
  const FrontierResult fr = pareto_frontier(inst.catalog, inst.requests, 3);
  REQUIRE(fr.frontier.size() == 1);
  CHECK(fr.frontier[0].epsilon == 0);
  CHECK(fr.frontier[0].phi_rv == doctest::Approx(fr.benchmarks.rv_only.profit));
}

TEST_CASE("frontier equals exhaustive fleet/assignment enumeration") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  for (std::uint64_t seed : {0u, 1u, 2u, 3u, 4u}) {
    for (int rv_fleet : {2, 3}) {
      const Instance inst = make_instance(net, 6, 2, seed, sp, cp);
      const FrontierResult fast = pareto_frontier(inst.catalog, inst.requests, rv_fleet);
      const auto slow = brute_force::pareto_frontier(inst.catalog, inst.requests, rv_fleet);
      REQUIRE(fast.frontier.size() == slow.size());
      for (std::size_t i = 0; i < slow.size(); ++i) {
        CHECK(fast.frontier[i].epsilon == slow[i].first);
        CHECK(fast.frontier[i].phi_rv == doctest::Approx(slow[i].second).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("collected profits shrink with the fleet and the frontier is non-dominated") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const Instance inst = make_instance(net, 7, 3, seed, sp, cp);
    const FrontierResult fr = pareto_frontier(inst.catalog, inst.requests, 3);
    REQUIRE_FALSE(fr.collected.empty());
    // Visit order is fleet size descending; profit must not grow as it shrinks.
    for (std::size_t i = 1; i < fr.collected.size(); ++i) {
      CHECK(fr.collected[i - 1].first == fr.collected[i].first + 1);
      CHECK(fr.collected[i].second <= fr.collected[i - 1].second + 1e-9);
    }
    for (const ParetoPoint& a : fr.frontier) {
      for (const ParetoPoint& b : fr.frontier) {
        if (&a == &b) continue;
        const bool dominates = b.epsilon <= a.epsilon && b.phi_rv >= a.phi_rv - 1e-12 &&
                               (b.epsilon < a.epsilon || b.phi_rv > a.phi_rv + 1e-12);
        CHECK_FALSE(dominates);
      }
    }
  }
}

TEST_CASE("the sweep starts at the benchmark fleet size and beats passengers-only") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  for (std::uint64_t seed : {11u, 12u}) {
    const Instance inst = make_instance(net, 6, 3, seed, sp, cp);
    const FrontierResult fr = pareto_frontier(inst.catalog, inst.requests, 3);
    REQUIRE_FALSE(fr.collected.empty());
    CHECK(fr.collected.front().first == fr.benchmarks.lv_only.fleet_size);
    // With every parcel in LV hands the RV side can fall back to its
    // passengers-only optimum.
    CHECK(fr.collected.front().second >= fr.benchmarks.rv_only.profit - 1e-9);
  }
}

TEST_CASE("profit-first benchmark bounds every frontier profit") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const Instance inst = make_instance(net, 7, 3, seed, sp, cp);
    const FrontierResult fr = pareto_frontier(inst.catalog, inst.requests, 3);
    for (const ParetoPoint& p : fr.frontier) {
      CHECK(fr.benchmarks.sarp.rv_profit >= p.phi_rv - 1e-9);
    }
  }
}

TEST_CASE("benchmarks collapse when there is nothing to coordinate") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const Instance inst = make_instance(net, 5, 0, 9, sp, cp);
  const SarpBenchmark sarp = benchmark_sarp(inst.catalog, inst.requests, 3);
  const RvOnlyBenchmark rv_only = benchmark_rv_only(inst.catalog, inst.requests, 3);
  CHECK(sarp.rv_profit == doctest::Approx(rv_only.profit));
  CHECK(sarp.lv_fleet == 0);
  CHECK(benchmark_lv_only(inst.catalog, inst.requests).fleet_size == 0);
}

TEST_CASE("rv-only profit saturates at one singleton per vehicle") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const Instance inst = make_instance(net, 4, 0, 13, sp, cp);
  const RvOnlyBenchmark few = benchmark_rv_only(inst.catalog, inst.requests, 0);
  CHECK(few.profit == doctest::Approx(0.0));
  const RvOnlyBenchmark plenty = benchmark_rv_only(inst.catalog, inst.requests, 10);
  double sum = 0.0;
  for (const auto& level : inst.catalog.levels) {
    for (const Trip& t : level) {
      if (t.kind == TripKind::PassengerOnly) sum += t.profit;
    }
  }
  CHECK(plenty.profit == doctest::Approx(sum));
}

TEST_CASE("metrics stay within range and acceptance never beats passengers-only") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const Instance inst = make_instance(net, 7, 3, 31, sp, cp);
  const int rv_fleet = 3;
  const FrontierResult fr = pareto_frontier(inst.catalog, inst.requests, rv_fleet);
  const double rv_only_rate =
      std::min<double>(rv_fleet, 7) / 7.0;  // singletons, all profitable
  for (const ParetoPoint& p : fr.frontier) {
    CHECK(p.metrics.passenger_acceptance_rate >= 0.0);
    CHECK(p.metrics.passenger_acceptance_rate <= 1.0);
    CHECK(p.metrics.passenger_acceptance_rate <= rv_only_rate + 1e-9);
    if (!p.rv_solution.selected.empty()) {
      CHECK(p.metrics.avg_profit_per_rv ==
            doctest::Approx(p.phi_rv / p.rv_solution.selected.size()));
    }
    CHECK(p.metrics.lv_fleet_saving_vs_lv_only ==
          fr.benchmarks.lv_only.fleet_size - p.epsilon);
  }
}

TEST_CASE("raising the parcel rate never lowers profit at a given fleet size") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams low_costs;
  low_costs.parcel_income_per_km = 0.6;
  CostParams high_costs;
  high_costs.parcel_income_per_km = 1.8;
  for (std::uint64_t seed : {41u, 42u}) {
    const Instance low = make_instance(net, 6, 3, seed, sp, low_costs);
    const Instance high = make_instance(net, 6, 3, seed, sp, high_costs);
    const FrontierResult fr_low = pareto_frontier(low.catalog, low.requests, 3);
    const FrontierResult fr_high = pareto_frontier(high.catalog, high.requests, 3);
    for (const auto& [eps, phi] : fr_low.collected) {
      for (const auto& [eps2, phi2] : fr_high.collected) {
        if (eps2 == eps) CHECK(phi2 >= phi - 1e-9);
      }
    }
  }
}

TEST_CASE("sweep emits one row per seed plus a mean row") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ScenarioSpec base;
  base.n_passengers = 5;
  base.n_parcels = 2;
  base.horizon = 40.0;
  base.rv_fleet = 2;
  const auto rows = sweep(SweepParam::ParcelIncomePerKm, {1.2}, base, net, {0, 1, 2});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].seed == "0");
  CHECK(rows[1].seed == "1");
  CHECK(rows[2].seed == "2");
  CHECK(rows[3].seed == "mean");
  const double mean_phi = (rows[0].phi_rv + rows[1].phi_rv + rows[2].phi_rv) / 3.0;
  CHECK(rows[3].phi_rv == doctest::Approx(mean_phi));
}

TEST_CASE("ratio sweep keeps the total request count fixed") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ScenarioSpec base;
  base.n_passengers = 6;
  base.n_parcels = 2;
  base.horizon = 40.0;
  base.rv_fleet = 2;
  const auto rows = sweep(SweepParam::RequestRatio, {0.25, 0.5}, base, net, {1});
  REQUIRE(rows.size() == 4);
  for (const SweepRow& row : rows) {
    CHECK(row.param_value <= 0.5);
  }
}
