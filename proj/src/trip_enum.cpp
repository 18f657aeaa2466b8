#include "sarp/trip_enum.hpp"

#include <algorithm>
#include <chrono>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "sarp/errors.hpp"

namespace sarp {

char trip_kind_code(TripKind kind) {
  switch (kind) {
    case TripKind::PassengerOnly: return 'P';
    case TripKind::ParcelOnly: return 'F';
    case TripKind::Mixed: return 'M';
  }
  return 'P';
}

TripKind trip_kind_from_code(char code) {
  switch (code) {
    case 'P': return TripKind::PassengerOnly;
    case 'F': return TripKind::ParcelOnly;
    case 'M': return TripKind::Mixed;
  }
  throw ValidationError(std::string("unknown trip kind '") + code + "'");
}

std::string enum_mode_name(EnumMode mode) {
  switch (mode) {
    case EnumMode::Direct: return "direct";
    case EnumMode::Augment: return "alg1";
    case EnumMode::AugmentPruned: return "alg2";
  }
  return "direct";
}

EnumMode enum_mode_from_name(const std::string& name) {
  if (name == "direct") return EnumMode::Direct;
  if (name == "alg1") return EnumMode::Augment;
  if (name == "alg2") return EnumMode::AugmentPruned;
  throw ValidationError("unknown enumeration mode '" + name + "'");
}

std::size_t TripCatalog::trip_count() const {
  std::size_t n = 0;
  for (const auto& level : levels) n += level.size();
  return n;
}

int TripCatalog::max_level() const {
  for (int l = static_cast<int>(levels.size()); l > 0; --l) {
    if (!levels[l - 1].empty()) return l;
  }
  return 0;
}

std::vector<const Trip*> TripCatalog::all() const {
  std::vector<const Trip*> out;
  out.reserve(trip_count());
  for (const auto& level : levels) {
    for (const Trip& t : level) out.push_back(&t);
  }
  return out;
}

bool TripCatalog::contains(const std::vector<int>& ids) const {
  std::vector<int> key = ids;
  std::sort(key.begin(), key.end());
  if (key.empty() || key.size() > levels.size()) return false;
  const auto& level = levels[key.size() - 1];
  return std::any_of(level.begin(), level.end(),
                     [&](const Trip& t) { return t.request_ids == key; });
}

namespace {

TripKind kind_of(const std::vector<int>& ids, const std::vector<Request>& requests) {
  bool has_passenger = false, has_parcel = false;
  for (int id : ids) {
    for (const Request& r : requests) {
      if (r.id == id) {
        (r.kind == RequestKind::Passenger ? has_passenger : has_parcel) = true;
        break;
      }
    }
  }
  if (has_passenger && has_parcel) return TripKind::Mixed;
  return has_passenger ? TripKind::PassengerOnly : TripKind::ParcelOnly;
}

std::vector<Request> subset_of(const std::vector<int>& ids,
                               const std::vector<Request>& requests) {
  std::vector<Request> out;
  out.reserve(ids.size());
  for (int id : ids) {
    for (const Request& r : requests) {
      if (r.id == id) {
        out.push_back(r);
        break;
      }
    }
  }
  return out;
}

// Evaluates candidate id-sets in parallel; results come back in input order.
std::vector<Trip> evaluate_candidates(const std::vector<std::vector<int>>& candidates,
                                      const std::vector<Request>& requests,
                                      const Network& net, const ServiceParams& sp,
                                      const CostParams& cp, int threads) {
  std::vector<std::optional<Trip>> results(candidates.size());
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::vector<Request> subset = subset_of(candidates[i], requests);
      RouteResult rr = optimal_route(subset, net, sp, cp);
      if (rr.feasible) {
        Trip trip;
        trip.request_ids = candidates[i];
        trip.kind = kind_of(candidates[i], requests);
        trip.profit = rr.profit;
        trip.route = std::move(*rr.route);
        results[i] = std::move(trip);
      }
    }
  };

  const int n_workers = std::max(1, threads);
  if (n_workers == 1 || candidates.size() < 2) {
    worker(0, candidates.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (candidates.size() + n_workers - 1) / n_workers;
    for (int t = 0; t < n_workers; ++t) {
      const std::size_t begin = std::min(candidates.size(), t * chunk);
      const std::size_t end = std::min(candidates.size(), begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  std::vector<Trip> feasible;
  for (auto& r : results) {
    if (r) feasible.push_back(std::move(*r));
  }
  return feasible;
}

std::vector<int> sorted_ids(const std::vector<Request>& requests) {
  std::vector<int> ids;
  ids.reserve(requests.size());
  for (const Request& r : requests) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void sort_and_dedup(std::vector<std::vector<int>>& candidates) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
}

// All l-subsets of ids, lexicographic.
std::vector<std::vector<int>> combinations(const std::vector<int>& ids, std::size_t l) {
  std::vector<std::vector<int>> out;
  std::vector<std::size_t> idx(l);
  for (std::size_t i = 0; i < l; ++i) idx[i] = i;
  if (l == 0 || l > ids.size()) return out;
  while (true) {
    std::vector<int> combo(l);
    for (std::size_t i = 0; i < l; ++i) combo[i] = ids[idx[i]];
    out.push_back(std::move(combo));
    std::size_t i = l;
    while (i > 0 && idx[i - 1] == ids.size() - l + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < l; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> next_level_candidates(const std::vector<Trip>& level,
                                                    const std::vector<Request>& requests) {
  const std::vector<int> ids = sorted_ids(requests);
  std::vector<std::vector<int>> candidates;
  for (const Trip& trip : level) {
    const int highest = trip.request_ids.back();
    auto it = std::upper_bound(ids.begin(), ids.end(), highest);
    for (; it != ids.end(); ++it) {
      std::vector<int> extended = trip.request_ids;
      extended.push_back(*it);  // already sorted: *it exceeds every member
      candidates.push_back(std::move(extended));
    }
  }
  sort_and_dedup(candidates);
  return candidates;
}

std::vector<Trip> next_level(const std::vector<Trip>& level,
                             const std::vector<Request>& requests, const Network& net,
                             const ServiceParams& sp, const CostParams& cp,
                             EnumStats* stats, int threads) {
  std::vector<std::vector<int>> candidates = next_level_candidates(level, requests);
  std::vector<Trip> trips = evaluate_candidates(candidates, requests, net, sp, cp, threads);
  if (stats) {
    stats->candidates_evaluated += candidates.size();
    stats->feasible_found += trips.size();
    stats->level_candidates.push_back(candidates.size());
    stats->level_feasible.push_back(trips.size());
  }
  return trips;
}

TripCatalog enumerate_all(const std::vector<Request>& requests, const Network& net,
                          const ServiceParams& sp, const CostParams& cp, EnumMode mode,
                          int threads) {
  validate_requests(requests, net);
  sp.validate();
  cp.validate();

  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<int> ids = sorted_ids(requests);
  TripCatalog catalog;

  auto run_level = [&](const std::vector<std::vector<int>>& candidates) {
    std::vector<Trip> trips =
        evaluate_candidates(candidates, requests, net, sp, cp, threads);
    catalog.stats.candidates_evaluated += candidates.size();
    catalog.stats.feasible_found += trips.size();
    catalog.stats.level_candidates.push_back(candidates.size());
    catalog.stats.level_feasible.push_back(trips.size());
    catalog.levels.push_back(std::move(trips));
  };

  // Level 1 is the same for every mode: each singleton is checked.
  {
    std::vector<std::vector<int>> singles;
    singles.reserve(ids.size());
    for (int id : ids) singles.push_back({id});
    run_level(singles);
  }

  while (!catalog.levels.empty() && !catalog.levels.back().empty() &&
         catalog.levels.size() < ids.size()) {
    const std::vector<Trip>& prev = catalog.levels.back();
    std::vector<std::vector<int>> candidates;
    switch (mode) {
      case EnumMode::Direct:
        candidates = combinations(ids, catalog.levels.size() + 1);
        break;
      case EnumMode::Augment:
        for (const Trip& trip : prev) {
          for (int id : ids) {
            if (std::binary_search(trip.request_ids.begin(), trip.request_ids.end(), id)) {
              continue;
            }
            std::vector<int> extended = trip.request_ids;
            extended.insert(std::upper_bound(extended.begin(), extended.end(), id), id);
            candidates.push_back(std::move(extended));
          }
        }
        sort_and_dedup(candidates);
        break;
      case EnumMode::AugmentPruned:
        candidates = next_level_candidates(prev, requests);
        break;
    }
    if (candidates.empty()) break;
    run_level(candidates);
  }
  if (!catalog.levels.empty() && catalog.levels.back().empty()) {
    catalog.levels.pop_back();  // keep only populated levels
  }

  catalog.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return catalog;
}

TripPartition partition(const TripCatalog& catalog) {
  TripPartition part;
  for (const auto& level : catalog.levels) {
    for (const Trip& trip : level) {
      switch (trip.kind) {
        case TripKind::PassengerOnly: part.passenger_only.push_back(trip); break;
        case TripKind::ParcelOnly: part.parcel_only.push_back(trip); break;
        case TripKind::Mixed: part.mixed.push_back(trip); break;
      }
    }
  }
  return part;
}

void enforce_enumeration_caps(EnumMode mode, std::size_t request_count,
                              std::size_t direct_cap, std::size_t augment_cap) {
  if (mode == EnumMode::Direct && request_count > direct_cap) {
    throw CapExceededError("direct enumeration is capped at " +
                           std::to_string(direct_cap) + " requests (got " +
                           std::to_string(request_count) + ")");
  }
  if (mode != EnumMode::Direct && request_count > augment_cap) {
    throw CapExceededError("enumeration is capped at " + std::to_string(augment_cap) +
                           " requests (got " + std::to_string(request_count) + ")");
  }
}

}  // namespace sarp
