#include <gtest/gtest.h>

#include <atomic>

#include "ipset/automorph.hpp"
#include "ipset/bounds.hpp"
#include "ipset/constructions.hpp"
#include "ipset/search.hpp"
#include "oracles.hpp"

using namespace ipset;
using Code = Ring::Code;

namespace {

SearchResult search(std::uint32_t q, SearchMode mode, bool pruning = true, Convention conv = Convention::Default) {
  SearchConfig cfg(oracle::field(q));
  cfg.mode = mode;
  cfg.isomorph_pruning = pruning;
  cfg.convention = conv;
  return run_search(cfg);
}

// Plain exhaustive maximum for tiny fields, no seeding or ordering tricks.
std::size_t brute_force_max(const Ring& r, SearchMode mode) {
  std::vector<Point> pts;
  for (Code x = 0; x < r.order(); ++x)
    for (Code y = 0; y < r.order(); ++y) pts.emplace_back(r, std::vector<Code>{x, y});
  std::size_t best = 0;
  std::vector<Point> cur;
  auto ok = [&](const Point& p) {
    for (const auto& a : cur)
      if (!delta(a, p)) return false;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (collinear(cur[i], cur[j], p)) return false;
        if (mode == SearchMode::MaxGeneralPosition)
          for (std::size_t k = j + 1; k < cur.size(); ++k)
            if (concircular(cur[i], cur[j], cur[k], p)) return false;
      }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t from) -> void {
    best = std::max(best, cur.size());
    for (std::size_t i = from; i < pts.size(); ++i)
      if (ok(pts[i])) {
        cur.push_back(pts[i]);
        self(self, i + 1);
        cur.pop_back();
      }
  };
  cur.push_back(pts[0]);  // translation invariance
  rec(rec, 1);
  return best;
}

}  // namespace

TEST(Search, GeneralPositionSmallPrimes) {
  for (auto [p, v] : table1()) {
    if (p > 47) break;
    EXPECT_EQ(search(p, SearchMode::MaxGeneralPosition).best_cardinality, v) << p;
  }
}

TEST(Search, AgreesWithBruteForceOnTinyFields) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const Ring r = oracle::field(q);
    for (auto mode : {SearchMode::MaxArc, SearchMode::MaxGeneralPosition})
      EXPECT_EQ(search(q, mode).best_cardinality, brute_force_max(r, mode)) << q;
  }
}

TEST(Search, WitnessesPassClassification) {
  for (std::uint32_t q : {7u, 9u, 11u, 13u, 17u, 25u, 29u}) {
    for (auto mode : {SearchMode::MaxArc, SearchMode::MaxGeneralPosition}) {
      SearchConfig cfg(oracle::field(q));
      cfg.mode = mode;
      cfg.witness_limit = 5;
      const auto res = run_search(cfg);
      ASSERT_FALSE(res.witnesses.empty());
      for (const auto& w : res.witnesses) {
        EXPECT_EQ(w.size(), res.best_cardinality);
        const auto c = classify(w);
        EXPECT_TRUE(c.integral && c.arc);
        if (mode == SearchMode::MaxGeneralPosition) EXPECT_TRUE(c.general_position);
      }
    }
  }
}

TEST(Search, PruningIsSoundUpTo31) {
  for (std::uint32_t q : oracle::odd_prime_powers(31))
    for (auto mode : {SearchMode::MaxArc, SearchMode::MaxGeneralPosition}) {
      const auto on = search(q, mode, true);
      const auto off = search(q, mode, false);
      EXPECT_EQ(on.best_cardinality, off.best_cardinality) << q;
      EXPECT_EQ(off.pruned_by_canon, 0u);
      if (q >= 13 && mode == SearchMode::MaxGeneralPosition) EXPECT_GT(on.pruned_by_canon, 0u) << q;
    }
}

TEST(Search, ArcValues) {
  for (std::uint32_t q : {7u, 11u, 19u, 23u}) EXPECT_EQ(search(q, SearchMode::MaxArc).best_cardinality, (q + 1) / 2) << q;
  for (std::uint32_t q : {13u, 17u}) {
    const auto v = search(q, SearchMode::MaxArc).best_cardinality;
    EXPECT_GE(v, (q - 1) / 2);
    EXPECT_LE(v, (q + 3) / 2);
  }
}

TEST(Search, QuadranceArcs) {
  for (std::uint32_t q : {13u, 17u}) {
    const auto v = search(q, SearchMode::MaxArc, true, Convention::Quadrance).best_cardinality;
    EXPECT_GE(v, (q - 1) / 2) << q;
    EXPECT_LE(v, (q + 3) / 2) << q;
  }
}

TEST(Search, CharacteristicTwo) {
  EXPECT_EQ(search(2, SearchMode::MaxGeneralPosition).best_cardinality, 4u);
  EXPECT_EQ(search(2, SearchMode::MaxArc).best_cardinality, 4u);
  EXPECT_EQ(search(4, SearchMode::MaxArc).best_cardinality, brute_force_max(oracle::field(4), SearchMode::MaxArc));
}

TEST(Search, CliqueSearch) {
  for (std::uint32_t q : {3u, 5u, 7u, 9u, 11u, 13u}) EXPECT_EQ(clique_search(oracle::field(q)).best_cardinality, q) << q;
  const auto z9 = clique_search(make_ring("Zn:9"));
  EXPECT_EQ(z9.best_cardinality, 27u);
  EXPECT_TRUE(classify(z9.witnesses.at(0)).integral);
  EXPECT_EQ(clique_search(make_ring("Zn:15")).best_cardinality, 15u);
  EXPECT_EQ(clique_search(make_ring("Fq:2^2")).best_cardinality, 16u);
  EXPECT_EQ(clique_search(make_ring("Zn:4")).best_cardinality, clique_search(make_ring("Zn:4")).witnesses[0].size());
  EXPECT_THROW(clique_search(make_ring("Fp:53")), SearchLimitError);
}

TEST(Search, ModeRequirements) {
  SearchConfig cfg(make_ring("Zn:9"));
  cfg.mode = SearchMode::MaxArc;
  EXPECT_THROW(run_search(cfg), SearchError);
  cfg.mode = SearchMode::MaxIntegral;
  cfg.isomorph_pruning = false;
  EXPECT_EQ(run_search(cfg).best_cardinality, 27u);
  SearchConfig zero(make_ring("Fp:7"));
  zero.parallel_width = 0;
  EXPECT_THROW(run_search(zero), SearchError);
}

TEST(Search, ReferenceSevenSetIsFound) {
  const Ring r = make_ring("Fp:29");
  const PointSet ref(r, {Point(r, {0, 0}), Point(r, {0, 1}), Point(r, {2, 0}), Point(r, {9, 18}), Point(r, {1, 9}),
                         Point(r, {17, 1}), Point(r, {17, 6})});
  SearchConfig cfg(r);
  cfg.witness_limit = 50;
  const auto res = run_search(cfg);
  EXPECT_EQ(res.best_cardinality, 7u);
  bool found = false;
  for (const auto& w : res.witnesses) found = found || are_isomorphic(w, ref);
  EXPECT_TRUE(found);
}

TEST(Search, DeterministicAcrossRunsAndParallelism) {
  for (std::uint32_t width : {1u, 3u}) {
    SearchConfig cfg(make_ring("Fp:37"));
    cfg.parallel_width = width;
    cfg.witness_limit = 4;
    const auto a = run_search(cfg);
    const auto b = run_search(cfg);
    EXPECT_EQ(a.best_cardinality, 7u);
    EXPECT_EQ(a.best_cardinality, b.best_cardinality);
    EXPECT_EQ(a.nodes_expanded, b.nodes_expanded);
    ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) EXPECT_EQ(a.witnesses[i].points(), b.witnesses[i].points());
  }
}

TEST(Search, NodeLimitAndProgress) {
  SearchConfig cfg(make_ring("Fp:61"));
  cfg.node_limit = 500;
  std::atomic<std::uint64_t> last{0};
  cfg.progress = [&](std::uint64_t n) { last = n; };
  cfg.progress_interval = 100;
  const auto res = run_search(cfg);
  EXPECT_FALSE(res.complete);
  EXPECT_GE(res.best_cardinality, 2u);
  EXPECT_GT(last.load(), 0u);
  EXPECT_LE(res.nodes_expanded, 501u);
}

TEST(Search, DirectionBuckets) {
  const Ring r = make_ring("Fp:7");
  const auto b = make_direction_buckets(r);
  ASSERT_EQ(b.buckets.size(), 8u);
  std::size_t total = 0;
  for (std::size_t d = 0; d < b.buckets.size(); ++d)
    for (const auto& p : b.buckets[d]) {
      ++total;
      EXPECT_EQ(origin_direction_rank(p), d);
    }
  EXPECT_EQ(total, 49u - 2u);
}

TEST(Search, StateBlocksAndRestores) {
  const Ring r = make_ring("Fp:7");
  auto s = SearchState::seeded(r, SearchMode::MaxGeneralPosition);
  // The seed line is vertical, so every other point with x = 0 is blocked.
  for (Code y = 0; y < 7; ++y) EXPECT_TRUE(s.blocked(Point(r, {0, y})));
  const auto before = s.state_hash();
  for (Code x = 1; x < 7; ++x)
    for (Code y = 0; y < 7; ++y) {
      const Point p(r, {x, y});
      if (s.blocked(p)) continue;
      s.push(p);
      EXPECT_TRUE(s.blocked(p));
      s.pop();
      EXPECT_EQ(s.state_hash(), before);
    }
}

TEST(Search, BlockedPointsNeverExtendAValidSet) {
  const Ring r = make_ring("Fp:11");
  auto s = SearchState::seeded(r, SearchMode::MaxGeneralPosition);
  for (Code y = 0; y < 11 && s.points().size() < 3; ++y)
    if (!s.blocked(Point(r, {2, y}))) s.push(Point(r, {2, y}));
  ASSERT_EQ(s.points().size(), 3u);
  ASSERT_TRUE(classify(s.points()).general_position);
  for (Code x = 0; x < 11; ++x)
    for (Code y = 0; y < 11; ++y) {
      const Point p(r, {x, y});
      PointSet ext = s.points();
      if (!ext.insert(p)) continue;
      const auto c = classify(ext);
      EXPECT_EQ(s.blocked(p), !(c.integral && c.general_position)) << x << "," << y;
    }
}

TEST(Search, CanonCheckAndOrder) {
  const Ring r = make_ring("Fp:29");
  EXPECT_TRUE(precedes(Point(r, {1, 0}), Point(r, {1, 1})));
  EXPECT_TRUE(precedes(Point(r, {5, 0}), Point(r, {1, 1})));
  EXPECT_TRUE(precedes(Point(r, {1, 28}), Point(r, {0, 5})));
  // A mirror image of a canonical triple is rejected.
  PointSet p(r, {Point(r, {0, 0}), Point(r, {0, 1}), Point(r, {2, 0})});
  EXPECT_TRUE(canon_check(p));
  PointSet mirrored(r, {Point(r, {0, 0}), Point(r, {0, 1}), Point(r, {27, 1})});
  EXPECT_TRUE(delta(mirrored[0], mirrored[2]));
  EXPECT_FALSE(canon_check(mirrored));
}
