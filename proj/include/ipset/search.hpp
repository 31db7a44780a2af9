#pragma once

// Exhaustive extremal searches over R^2.
//
//   Integral  maximum clique of the integral-distance graph on R^2
//   Arc       largest integral set with no three points collinear
//   General   largest integral set with no three collinear and no four
//             concircular
//
// Arc and general searches run over fields F_q, q <= 256. They start from
// the seed {(0,0), (0,1)} and add further points in strictly increasing
// direction from the origin, so that each set is enumerated once up to the
// isomorphism rejection of canon_check.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ipset/plane.hpp"

namespace ipset {

class SearchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size bound (vertex bound, field size) was exceeded.
class SearchLimitError : public SearchError {
 public:
  using SearchError::SearchError;
};

enum class SearchMode { MaxIntegral, MaxArc, MaxGeneralPosition };

struct SearchConfig {
  explicit SearchConfig(Ring r) : ring(std::move(r)) {}
  Ring ring;
  SearchMode mode = SearchMode::MaxGeneralPosition;
  Convention convention = Convention::Default;
  bool isomorph_pruning = true;
  /// Triples inspected per canon_check once |P| > 8; all triples below.
  std::uint32_t canon_triple_budget = 200;
  std::uint32_t parallel_width = 1;
  std::optional<std::uint64_t> node_limit;
  std::uint32_t witness_limit = 1;
  /// Largest |R|^2 accepted by the clique search.
  std::uint32_t vertex_bound = 2500;
  /// Called with the running node total, every progress_interval nodes.
  std::function<void(std::uint64_t)> progress;
  std::uint64_t progress_interval = 1u << 20;
};

struct SearchResult {
  std::size_t best_cardinality = 0;
  std::vector<PointSet> witnesses;
  std::uint64_t nodes_expanded = 0;
  std::chrono::duration<double> wall_time{0};
  std::uint64_t pruned_by_canon = 0;
  /// False when the node limit cut the search short.
  bool complete = true;
};

SearchResult run_search(const SearchConfig& cfg);

/// Maximum clique of the integral-distance graph, rooted at the origin.
SearchResult clique_search(const SearchConfig& cfg);
SearchResult clique_search(const Ring& ring, Convention conv = Convention::Default);

/// Rank of the direction from the origin: finite slopes by code, then
/// infinity as q. The origin itself ranks q + 1.
std::uint32_t origin_direction_rank(const Point& p);

/// The total order used by the search: direction from the origin, then
/// canonical coordinate order.
bool precedes(const Point& a, const Point& b);

/// Points of F_q^2 other than the seed, grouped by direction from the
/// origin. Bucket q holds the vertical direction.
struct DirectionBuckets {
  Ring ring;
  std::vector<std::vector<Point>> buckets;
};

DirectionBuckets make_direction_buckets(const Ring& ring);

/// Incremental search state with per-point block counters. Pushing a point
/// blocks every point that is not at integral distance from it, collinear
/// with it and an earlier point, or (general mode) concircular with it and
/// two earlier points. pop() restores the counters exactly.
class SearchState {
 public:
  SearchState(const Ring& ring, SearchMode mode, Convention conv = Convention::Default);

  /// Starts from the seed {(0,0), (0,1)}.
  static SearchState seeded(const Ring& ring, SearchMode mode, Convention conv = Convention::Default);

  void push(const Point& p);
  void pop();

  const PointSet& points() const { return points_; }
  bool blocked(const Point& p) const;
  /// Hash of the point list and all block counters.
  std::uint64_t state_hash() const;

 private:
  Ring ring_;
  SearchMode mode_;
  Convention conv_;
  PointSet points_;
  std::vector<std::uint32_t> blocked_;
  std::vector<std::vector<std::uint32_t>> marks_;
};

/// false when some normalized image of P (or its mirror) has a point that
/// precedes P[2]. Inspects the triples containing the last point of P, up
/// to the budget once |P| > 8.
bool canon_check(const PointSet& points, std::uint32_t triple_budget = 200);

}  // namespace ipset
