#pragma once

#include <unordered_map>
#include <vector>

namespace sarp {

struct Location {
  int id = 0;
  double x = 0.0;  // km; required in grid mode, optional in matrix mode
  double y = 0.0;
  bool has_coords = true;
};

enum class Metric { Grid, ExplicitMatrix };

// Travel distances and times between stops. Grid mode uses the rectilinear
// metric on location coordinates; matrix mode serves an ingested distance
// table, which may be asymmetric. Immutable after construction, so
// concurrent reads need no synchronization.
class Network {
 public:
  Network() = default;  // empty; every lookup fails until assigned

  // Regular nx-by-ny grid, ids row-major ((row, col) -> row * nx + col).
  static Network grid(int nx, int ny, double spacing_km, double speed_kmh);
  static Network from_locations(std::vector<Location> locations, double speed_kmh);
  static Network from_matrix(std::vector<Location> locations,
                             std::vector<std::vector<double>> distance_km,
                             double speed_kmh);

  Metric metric() const { return metric_; }
  double speed_kmh() const { return speed_kmh_; }
  const std::vector<Location>& locations() const { return locations_; }
  const std::vector<std::vector<double>>& matrix() const { return matrix_; }

  bool has_location(int id) const { return index_.count(id) != 0; }
  const Location& location(int id) const;

  double travel_distance(int i, int j) const;  // km
  double travel_time(int i, int j) const;      // minutes

  // y-range band used by clustered demand patterns: lowest (south) or
  // highest (north) 20% of the coordinate range.
  std::vector<int> south_band() const;
  std::vector<int> north_band() const;

 private:
  std::size_t index_of(int id) const;

  Metric metric_ = Metric::Grid;
  double speed_kmh_ = 0.0;
  std::vector<Location> locations_;
  std::vector<std::vector<double>> matrix_;  // empty in grid mode
  std::unordered_map<int, std::size_t> index_;
};

}  // namespace sarp
