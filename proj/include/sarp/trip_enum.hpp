#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sarp/route_opt.hpp"

namespace sarp {

enum class TripKind { PassengerOnly, ParcelOnly, Mixed };

char trip_kind_code(TripKind kind);              // 'P', 'F', 'M'
TripKind trip_kind_from_code(char code);

struct Trip {
  std::vector<int> request_ids;  // sorted ascending
  TripKind kind = TripKind::PassengerOnly;
  double profit = 0.0;           // optimal profit of the trip's best route
  Route route;
};

enum class EnumMode {
  Direct,         // every subset, level by level
  Augment,        // extend each feasible trip with every non-member request
  AugmentPruned,  // extend only with requests above the trip's highest member
};

std::string enum_mode_name(EnumMode mode);       // "direct" / "alg1" / "alg2"
EnumMode enum_mode_from_name(const std::string& name);

struct EnumStats {
  std::uint64_t candidates_evaluated = 0;  // distinct request sets checked
  std::uint64_t feasible_found = 0;
  std::vector<std::uint64_t> level_candidates;
  std::vector<std::uint64_t> level_feasible;
  double wall_seconds = 0.0;
};

struct TripCatalog {
  std::vector<std::vector<Trip>> levels;  // levels[l-1]: trips of l requests
  EnumStats stats;

  std::size_t trip_count() const;
  int max_level() const;                  // 0 when empty
  std::vector<const Trip*> all() const;   // level order, lexicographic within
  bool contains(const std::vector<int>& ids) const;
};

// Generates every feasible trip. All modes produce the same catalog; they
// differ only in how many candidate sets they submit to the route optimizer.
// Candidate lists are deduplicated and sorted before evaluation, so counters
// and catalog files are identical for any thread count. Each level's
// evaluations are sharded across `threads` workers; the per-level merge is
// the only synchronization point.
//
// Every level-1 singleton goes through the route optimizer like any other
// candidate, so requests that cannot be served alone are excluded from the
// catalog (and, by extension, from every larger trip).
TripCatalog enumerate_all(const std::vector<Request>& requests, const Network& net,
                          const ServiceParams& sp, const CostParams& cp, EnumMode mode,
                          int threads = 1);

// Augmentation sets for the next level under highest-index pruning: each trip
// is extended only with requests whose id ranks above every member. Exposed
// for direct testing of the pruning rule.
std::vector<std::vector<int>> next_level_candidates(const std::vector<Trip>& level,
                                                    const std::vector<Request>& requests);

// The level l+1 trip set grown from a complete level l.
std::vector<Trip> next_level(const std::vector<Trip>& level,
                             const std::vector<Request>& requests, const Network& net,
                             const ServiceParams& sp, const CostParams& cp,
                             EnumStats* stats = nullptr, int threads = 1);

struct TripPartition {
  std::vector<Trip> passenger_only;  // T_P
  std::vector<Trip> parcel_only;     // T_F
  std::vector<Trip> mixed;           // T_M
};

TripPartition partition(const TripCatalog& catalog);

// Size guards for the exponential modes; throws CapExceededError.
void enforce_enumeration_caps(EnumMode mode, std::size_t request_count,
                              std::size_t direct_cap = 12, std::size_t augment_cap = 60);

}  // namespace sarp
