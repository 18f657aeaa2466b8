#include <doctest.h>

#include <nlohmann/json.hpp>

#include "sarp/errors.hpp"
#include "sarp/io.hpp"
#include "sarp/network.hpp"
#include "sarp/rng.hpp"

using namespace sarp;

TEST_CASE("grid distances are rectilinear") {
  const Network net = Network::grid(5, 5, 1.0, 30.0);
  CHECK(net.travel_distance(0, 0) == doctest::Approx(0.0));
  // (0,0) to (3,4): id 3 + 4 rows
  CHECK(net.travel_distance(0, 4 * 5 + 3) == doctest::Approx(7.0));
  CHECK(net.travel_time(0, 4 * 5 + 3) == doctest::Approx(14.0));
}

TEST_CASE("matrix mode returns stored entries") {
  std::vector<Location> locs;
  for (int i = 0; i < 6; ++i) locs.push_back({i, 0.0, 0.0, false});
  std::vector<std::vector<double>> m(6, std::vector<double>(6, 1.0));
  for (int i = 0; i < 6; ++i) m[i][i] = 0.0;
  m[2][5] = 4.2;
  const Network net = Network::from_matrix(locs, m, 30.0);
  CHECK(net.travel_distance(2, 5) == doctest::Approx(4.2));
  CHECK(net.travel_distance(5, 2) == doctest::Approx(1.0));  // asymmetry allowed
}

TEST_CASE("time is distance over speed, in minutes") {
  const Network net = Network::grid(11, 2, 1.0, 30.0);
  CHECK(net.travel_time(0, 10) == doctest::Approx(20.0));  // 10 km at 30 km/h
  CHECK(net.travel_time(3, 3) == doctest::Approx(0.0));
  for (int i : {0, 5, 12}) {
    CHECK(net.travel_distance(i, i) == doctest::Approx(0.0));
    CHECK(net.travel_time(i, i) == doctest::Approx(0.0));
  }
}

TEST_CASE("grid metric is symmetric and satisfies the triangle inequality") {
  const Network net = Network::grid(6, 4, 0.5, 30.0);
  SplitMix64 rng(99);
  const int n = static_cast<int>(net.locations().size());
  for (int trial = 0; trial < 200; ++trial) {
    const int a = static_cast<int>(rng.next_below(n));
    const int b = static_cast<int>(rng.next_below(n));
    const int c = static_cast<int>(rng.next_below(n));
    CHECK(net.travel_distance(a, b) == doctest::Approx(net.travel_distance(b, a)));
    CHECK(net.travel_distance(a, b) <=
          net.travel_distance(a, c) + net.travel_distance(c, b) + 1e-9);
    CHECK(net.travel_time(a, b) ==
          doctest::Approx(net.travel_distance(a, b) / 30.0 * 60.0).epsilon(1e-9));
  }
}

TEST_CASE("unknown ids are rejected") {
  const Network net = Network::grid(2, 2, 1.0, 30.0);
  CHECK_THROWS_WITH_AS(net.travel_distance(0, 99), "unknown location 99", ValidationError);
  CHECK_THROWS_AS(net.location(-1), ValidationError);
}

TEST_CASE("matrix validation") {
  std::vector<Location> locs{{0, 0, 0, false}, {1, 0, 0, false}};
  CHECK_THROWS_AS(Network::from_matrix(locs, {{0.0, -1.0}, {1.0, 0.0}}, 30.0),
                  ValidationError);
  CHECK_THROWS_AS(Network::from_matrix(locs, {{0.5, 1.0}, {1.0, 0.0}}, 30.0),
                  ValidationError);
  CHECK_THROWS_AS(Network::from_matrix(locs, {{0.0, 1.0}}, 30.0), ValidationError);
  CHECK_THROWS_AS(Network::from_matrix(locs, {{0.0, 1.0}, {1.0, 0.0}}, 0.0),
                  ValidationError);
}

TEST_CASE("network JSON round trip") {
  const Network net = Network::grid(3, 2, 1.0, 25.0);
  const auto j = network_to_json(net);
  const Network back = network_from_json(j);
  CHECK(back.metric() == Metric::Grid);
  CHECK(back.speed_kmh() == doctest::Approx(25.0));
  REQUIRE(back.locations().size() == net.locations().size());
  CHECK(back.travel_distance(0, 5) == doctest::Approx(net.travel_distance(0, 5)));
  CHECK(network_to_json(back).dump() == j.dump());
}

TEST_CASE("south and north bands cover the extreme fifth of the y-range") {
  const Network net = Network::grid(3, 10, 1.0, 30.0);  // y spans 0..9
  const auto south = net.south_band();
  const auto north = net.north_band();
  for (int id : south) CHECK(net.location(id).y <= doctest::Approx(1.8));
  for (int id : north) CHECK(net.location(id).y >= doctest::Approx(7.2));
  CHECK(south.size() == 6);  // rows 0 and 1
  CHECK(north.size() == 6);
}
