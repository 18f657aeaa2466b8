#include <doctest.h>

#include <algorithm>
#include <set>

#include "sarp/errors.hpp"
#include "sarp/route_opt.hpp"
#include "sarp/trip_enum.hpp"

using namespace sarp;

namespace {

std::vector<Request> pool(const Network& net, int passengers, int parcels,
                          std::uint64_t seed, double horizon = 60.0) {
  ScenarioSpec spec;
  spec.n_passengers = passengers;
  spec.n_parcels = parcels;
  spec.seed = seed;
  spec.horizon = horizon;
  return generate_scenario(spec, net);
}

std::set<std::vector<int>> id_sets(const TripCatalog& catalog) {
  std::set<std::vector<int>> out;
  for (const Trip* t : catalog.all()) out.insert(t->request_ids);
  return out;
}

}  // namespace

TEST_CASE("a lone passenger gives a one-trip catalog") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const std::vector<Request> reqs{{1, RequestKind::Passenger, 0, 7, 0.0, 4.0}};
  const TripCatalog catalog = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned);
  CHECK(catalog.trip_count() == 1);
  CHECK(catalog.max_level() == 1);
  CHECK(catalog.levels[0][0].request_ids == std::vector<int>{1});
}

TEST_CASE("mutually incompatible requests stop the growth at level one") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  // Submissions 25 minutes apart cannot share a vehicle under a 5-minute wait.
  const std::vector<Request> reqs{{1, RequestKind::Parcel, 0, 7, 0.0, 1.0},
                                  {2, RequestKind::Parcel, 3, 9, 25.0, 1.0},
                                  {3, RequestKind::Parcel, 12, 4, 50.0, 1.0}};
  for (EnumMode mode : {EnumMode::Direct, EnumMode::Augment, EnumMode::AugmentPruned}) {
    const TripCatalog catalog = enumerate_all(reqs, net, sp, cp, mode);
    CHECK(catalog.max_level() == 1);
    CHECK(catalog.trip_count() == 3);
  }
}

TEST_CASE("augmentation candidates use only requests above the highest member") {
  std::vector<Request> reqs;
  for (int id = 1; id <= 7; ++id) {
    reqs.push_back({id, RequestKind::Parcel, 0, 1, 0.0, 1.0});
  }
  Trip trip;
  trip.request_ids = {2, 5};
  const auto candidates = next_level_candidates({trip}, reqs);
  REQUIRE(candidates.size() == 2);
  CHECK(candidates[0] == std::vector<int>{2, 5, 6});
  CHECK(candidates[1] == std::vector<int>{2, 5, 7});
}

TEST_CASE("all modes produce the same catalog") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  for (std::uint64_t seed : {3u, 8u, 21u}) {
    const std::vector<Request> reqs = pool(net, 5, 3, seed, 30.0);
    const TripCatalog direct = enumerate_all(reqs, net, sp, cp, EnumMode::Direct);
    const TripCatalog alg1 = enumerate_all(reqs, net, sp, cp, EnumMode::Augment);
    const TripCatalog alg2 = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned);
    CHECK(id_sets(direct) == id_sets(alg1));
    CHECK(id_sets(alg1) == id_sets(alg2));
    CHECK(alg2.stats.candidates_evaluated <= alg1.stats.candidates_evaluated);
    CHECK(alg1.stats.candidates_evaluated <= direct.stats.candidates_evaluated);
    CHECK(direct.stats.feasible_found == alg1.stats.feasible_found);
    CHECK(direct.stats.feasible_found == direct.trip_count());
  }
}

TEST_CASE("pruned augmentation equals unpruned level growth") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const std::vector<Request> reqs = pool(net, 6, 3, 4, 30.0);
  const TripCatalog alg1 = enumerate_all(reqs, net, sp, cp, EnumMode::Augment);
  for (std::size_t l = 0; l + 1 < alg1.levels.size(); ++l) {
    std::vector<Trip> grown = next_level(alg1.levels[l], reqs, net, sp, cp);
    std::set<std::vector<int>> got;
    for (const Trip& t : grown) got.insert(t.request_ids);
    std::set<std::vector<int>> want;
    for (const Trip& t : alg1.levels[l + 1]) want.insert(t.request_ids);
    CHECK(got == want);
  }
}

TEST_CASE("downward closure holds in the final catalog") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const std::vector<Request> reqs = pool(net, 6, 4, 13, 30.0);
  const TripCatalog catalog = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned);
  for (std::size_t l = 1; l < catalog.levels.size(); ++l) {
    for (const Trip& trip : catalog.levels[l]) {
      for (std::size_t drop = 0; drop < trip.request_ids.size(); ++drop) {
        std::vector<int> sub = trip.request_ids;
        sub.erase(sub.begin() + drop);
        CHECK(catalog.contains(sub));
      }
    }
  }
}

TEST_CASE("trip profits equal their route recomputation") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const std::vector<Request> reqs = pool(net, 5, 4, 6, 30.0);
  const TripCatalog catalog = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned);
  for (const Trip* trip : catalog.all()) {
    std::vector<Request> members;
    for (int id : trip->request_ids) {
      for (const Request& r : reqs) {
        if (r.id == id) members.push_back(r);
      }
    }
    CHECK(route_profit(trip->route, members, net, sp, cp) ==
          doctest::Approx(trip->profit).epsilon(1e-9));
  }
}

TEST_CASE("partition splits the catalog by member kinds") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;

  SUBCASE("all-parcel instance has nothing passenger-only or mixed") {
    const std::vector<Request> reqs = pool(net, 0, 6, 2, 30.0);
    const TripCatalog catalog = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned);
    const TripPartition part = partition(catalog);
    CHECK(part.passenger_only.empty());
    CHECK(part.mixed.empty());
    CHECK(part.parcel_only.size() == catalog.trip_count());
  }

  SUBCASE("kinds are disjoint and exhaustive, passenger trips are singletons") {
    const std::vector<Request> reqs = pool(net, 6, 4, 5, 30.0);
    const TripCatalog catalog = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned);
    const TripPartition part = partition(catalog);
    CHECK(part.passenger_only.size() + part.parcel_only.size() + part.mixed.size() ==
          catalog.trip_count());
    for (const Trip& t : part.passenger_only) CHECK(t.request_ids.size() == 1);
    for (const Trip& t : part.mixed) {
      CHECK(t.kind == TripKind::Mixed);
      CHECK(t.request_ids.size() >= 2);
    }
  }
}

TEST_CASE("worker count changes neither the catalog nor the counters") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  ServiceParams sp;
  CostParams cp;
  const std::vector<Request> reqs = pool(net, 7, 4, 9, 30.0);
  const TripCatalog one = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned, 1);
  const TripCatalog four = enumerate_all(reqs, net, sp, cp, EnumMode::AugmentPruned, 4);
  CHECK(id_sets(one) == id_sets(four));
  CHECK(one.stats.candidates_evaluated == four.stats.candidates_evaluated);
  CHECK(one.stats.level_candidates == four.stats.level_candidates);
  // Identical order within levels, not just identical sets.
  const auto a = one.all();
  const auto b = four.all();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i]->request_ids == b[i]->request_ids);
  }
}

TEST_CASE("size caps reject oversized instances per mode") {
  CHECK_THROWS_AS(enforce_enumeration_caps(EnumMode::Direct, 13), CapExceededError);
  CHECK_NOTHROW(enforce_enumeration_caps(EnumMode::Direct, 12));
  CHECK_THROWS_AS(enforce_enumeration_caps(EnumMode::AugmentPruned, 61), CapExceededError);
  CHECK_NOTHROW(enforce_enumeration_caps(EnumMode::AugmentPruned, 60));
}
