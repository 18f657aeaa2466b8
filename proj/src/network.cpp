#include "sarp/network.hpp"

#include <cmath>
#include <stdexcept>

#include "sarp/errors.hpp"

namespace sarp {

namespace {

constexpr double kBandFraction = 0.2;

void validate_speed(double speed_kmh) {
  if (!(speed_kmh > 0.0) || !std::isfinite(speed_kmh)) {
    throw ValidationError("vehicle speed must be positive and finite");
  }
}

}  // namespace

Network Network::grid(int nx, int ny, double spacing_km, double speed_kmh) {
  if (nx <= 0 || ny <= 0) throw ValidationError("grid dimensions must be positive");
  if (!(spacing_km > 0.0)) throw ValidationError("grid spacing must be positive");
  std::vector<Location> locs;
  locs.reserve(static_cast<std::size_t>(nx) * ny);
  for (int row = 0; row < ny; ++row) {
    for (int col = 0; col < nx; ++col) {
      locs.push_back({row * nx + col, col * spacing_km, row * spacing_km, true});
    }
  }
  return from_locations(std::move(locs), speed_kmh);
}

Network Network::from_locations(std::vector<Location> locations, double speed_kmh) {
  validate_speed(speed_kmh);
  Network net;
  net.metric_ = Metric::Grid;
  net.speed_kmh_ = speed_kmh;
  net.locations_ = std::move(locations);
  for (std::size_t i = 0; i < net.locations_.size(); ++i) {
    const Location& loc = net.locations_[i];
    if (!loc.has_coords || !std::isfinite(loc.x) || !std::isfinite(loc.y)) {
      throw ValidationError("grid-mode location " + std::to_string(loc.id) +
                            " needs finite coordinates");
    }
    if (!net.index_.emplace(loc.id, i).second) {
      throw ValidationError("duplicate location id " + std::to_string(loc.id));
    }
  }
  if (net.locations_.empty()) throw ValidationError("network has no locations");
  return net;
}

Network Network::from_matrix(std::vector<Location> locations,
                             std::vector<std::vector<double>> distance_km,
                             double speed_kmh) {
  validate_speed(speed_kmh);
  Network net;
  net.metric_ = Metric::ExplicitMatrix;
  net.speed_kmh_ = speed_kmh;
  net.locations_ = std::move(locations);
  net.matrix_ = std::move(distance_km);
  const std::size_t n = net.locations_.size();
  if (n == 0) throw ValidationError("network has no locations");
  for (std::size_t i = 0; i < n; ++i) {
    if (!net.index_.emplace(net.locations_[i].id, i).second) {
      throw ValidationError("duplicate location id " + std::to_string(net.locations_[i].id));
    }
  }
  if (net.matrix_.size() != n) {
    throw ValidationError("distance matrix must have one row per location");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (net.matrix_[i].size() != n) {
      throw ValidationError("distance matrix row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double d = net.matrix_[i][j];
      if (!std::isfinite(d) || d < 0.0) {
        throw ValidationError("distance matrix entries must be finite and non-negative");
      }
    }
    if (net.matrix_[i][i] != 0.0) {
      throw ValidationError("distance matrix diagonal must be zero");
    }
  }
  return net;
}

std::size_t Network::index_of(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw ValidationError("unknown location " + std::to_string(id));
  }
  return it->second;
}

const Location& Network::location(int id) const { return locations_[index_of(id)]; }

double Network::travel_distance(int i, int j) const {
  const std::size_t a = index_of(i);
  const std::size_t b = index_of(j);
  if (metric_ == Metric::Grid) {
    const Location& la = locations_[a];
    const Location& lb = locations_[b];
    return std::abs(la.x - lb.x) + std::abs(la.y - lb.y);
  }
  return matrix_[a][b];
}

double Network::travel_time(int i, int j) const {
  return travel_distance(i, j) / speed_kmh_ * 60.0;
}

namespace {

std::vector<int> band(const std::vector<Location>& locs, bool south) {
  double ymin = 0.0, ymax = 0.0;
  bool seen = false;
  for (const Location& loc : locs) {
    if (!loc.has_coords) continue;
    if (!seen) {
      ymin = ymax = loc.y;
      seen = true;
    } else {
      ymin = std::min(ymin, loc.y);
      ymax = std::max(ymax, loc.y);
    }
  }
  if (!seen) return {};
  const double cut = (ymax - ymin) * kBandFraction;
  std::vector<int> ids;
  for (const Location& loc : locs) {
    if (!loc.has_coords) continue;
    if (south ? loc.y <= ymin + cut : loc.y >= ymax - cut) ids.push_back(loc.id);
  }
  return ids;
}

}  // namespace

std::vector<int> Network::south_band() const { return band(locations_, true); }
std::vector<int> Network::north_band() const { return band(locations_, false); }

}  // namespace sarp
