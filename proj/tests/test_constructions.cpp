#include <gtest/gtest.h>

#include "ipset/automorph.hpp"
#include "ipset/constructions.hpp"
#include "oracles.hpp"

using namespace ipset;
using Code = Ring::Code;

TEST(Constructions, LineAndCrossAreIntegralWithExpectedSize) {
  for (std::uint32_t q : oracle::odd_prime_powers(125)) {
    const Ring r = oracle::field(q);
    const auto line = line_set(r);
    EXPECT_EQ(line.size(), q);
    EXPECT_TRUE(classify(line).integral);
    if (q % 4 == 1) {
      const auto cross = cross_set(r);
      EXPECT_EQ(cross.size(), q) << q;
      EXPECT_TRUE(classify(cross).integral) << q;
    } else {
      EXPECT_THROW(cross_set(r), ConstructionError);
    }
  }
}

TEST(Constructions, LineAndCrossAreMaximal) {
  for (std::uint32_t q : oracle::odd_prime_powers(31)) {
    const Ring r = oracle::field(q);
    EXPECT_TRUE(is_maximal(line_set(r))) << q;
    if (q % 4 == 1) EXPECT_TRUE(is_maximal(cross_set(r))) << q;
  }
}

TEST(Constructions, CrossOverF29MatchesReferenceCoordinates) {
  const Ring r = make_ring("Fp:29");
  const auto cross = cross_set(r);
  // Coordinates as drawn; the drawing repeats (6,14) where the construction has (6,15).
  const std::vector<std::pair<Code, Code>> drawn{
      {0, 0},   {1, 12},  {4, 19},  {5, 2},   {6, 14},  {7, 26},  {9, 21},  {13, 11}, {16, 18}, {20, 8},
      {22, 3},  {23, 15}, {24, 27}, {25, 10}, {28, 17}, {1, 17},  {4, 10},  {5, 27},  {7, 3},   {9, 8},
      {13, 18}, {16, 11}, {20, 21}, {22, 26}, {23, 14}, {24, 2},  {25, 19}, {28, 12}};
  for (auto [x, y] : drawn) EXPECT_TRUE(cross.contains(Point(r, {x, y}))) << x << "," << y;
  EXPECT_TRUE(cross.contains(Point(r, {6, 15})));
  EXPECT_EQ(cross.size(), drawn.size() + 1);
}

TEST(Constructions, SubfieldGrids) {
  for (const char* spec : {"Fq:3^2", "Fq:5^2", "Fq:7^2", "Fq:3^4", "Fq:11^2"}) {
    const Ring r = make_ring(spec);
    const auto g = subfield_grid(r);
    EXPECT_EQ(g.size(), r.order()) << spec;
    EXPECT_TRUE(classify(g).integral) << spec;
  }
  const auto rot = subfield_grid(make_ring("Fq:5^2"), GridVariant::RotatedByRoot);
  EXPECT_EQ(rot.size(), 25u);
  EXPECT_TRUE(classify(rot).integral);
  EXPECT_THROW(subfield_grid(make_ring("Fq:3^2"), GridVariant::RotatedByRoot), ConstructionError);
  EXPECT_THROW(subfield_grid(make_ring("Fp:13")), ConstructionError);
}

TEST(Constructions, CircleSetsAreArcs) {
  for (std::uint32_t q : oracle::odd_prime_powers(121)) {
    const Ring r = oracle::field(q);
    const auto c = circle_set(r);
    EXPECT_EQ(c.size(), q % 4 == 3 ? (q + 1) / 2 : (q - 1) / 2) << q;
    const auto cl = classify(c);
    EXPECT_TRUE(cl.integral) << q;
    EXPECT_TRUE(cl.arc) << q;
  }
}

TEST(Constructions, OddCircleSetIsIsomorphicArc) {
  for (std::uint32_t q : oracle::odd_prime_powers(61)) {
    const Ring r = oracle::field(q);
    const auto odd = circle_set_odd(r);
    const auto cl = classify(odd);
    EXPECT_TRUE(cl.integral) << q;
    EXPECT_TRUE(cl.arc) << q;
    if (q <= 13) EXPECT_TRUE(are_isomorphic(circle_set(r), odd)) << q;
  }
}

TEST(Constructions, QuadranceCircleHasNoZeroDistance) {
  for (std::uint32_t q : {5u, 13u, 17u, 29u}) {
    const auto c = circle_set(oracle::field(q));
    EXPECT_EQ(c.size(), (q - 1) / 2);
    EXPECT_TRUE(classify(c, Convention::Quadrance).integral) << q;
  }
}

TEST(Constructions, ZnFamilies) {
  const auto fams = zn_families(5, 2);
  ASSERT_EQ(fams.sets.size(), 3u);
  for (const auto& s : fams.sets) EXPECT_EQ(s.size(), 125u);
  EXPECT_TRUE(classify(fams.sets[0]).integral);
  EXPECT_TRUE(is_maximal(fams.sets[0]));
  const auto f3 = zn_families(3, 2);
  EXPECT_EQ(f3.sets.size(), 1u);
  EXPECT_EQ(f3.skipped.size(), 2u);
  EXPECT_EQ(f3.sets[0].size(), 27u);
  const auto f33 = zn_families(3, 3);
  EXPECT_EQ(f33.sets[0].size(), 81u);
  EXPECT_TRUE(classify(f33.sets[0]).integral);
  EXPECT_THROW(zn_families(4, 2), ConstructionError);
  EXPECT_THROW(zn_families(5, 1), ConstructionError);
}

// The skew and lifted-cross families contain pairs whose squared distance
// is p times a unit, which is never a square in Z_{p^2}.
TEST(Constructions, SkewAndLiftedCrossAreNotIntegralOverZ25) {
  const auto fams = zn_families(5, 2);
  const Ring& r = fams.sets[1].ring();
  ASSERT_EQ(fams.families[1], ZnFamily::Skew);
  ASSERT_EQ(fams.families[2], ZnFamily::LiftedCross);
  const Code w = sqrt_of_minus_one(r)->code();
  const Point a(r, {0, 0}), b(r, {1, r.add(w, 5)});
  EXPECT_TRUE(fams.sets[1].contains(a) && fams.sets[1].contains(b));
  EXPECT_EQ(d2(a, b).code(), 20u);
  EXPECT_FALSE(delta(a, b));
  EXPECT_FALSE(classify(fams.sets[1]).integral);
  const Point c(r, {1, 2});
  EXPECT_TRUE(fams.sets[2].contains(a) && fams.sets[2].contains(c));
  EXPECT_EQ(d2(a, c).code(), 5u);
  EXPECT_FALSE(delta(a, c));
  EXPECT_FALSE(classify(fams.sets[2]).integral);
}

// A 125-point integral set in Z_25^2 is a union of five full residue
// classes mod 5. Only the two axis strips through the origin qualify.
TEST(Constructions, OnlyStripsReach125OverZ25) {
  const Ring r = make_ring("Zn:25");
  std::vector<std::pair<Code, Code>> cells;
  for (Code x = 0; x < 5; ++x)
    for (Code y = 0; y < 5; ++y)
      if (x || y) cells.emplace_back(x, y);
  std::vector<std::vector<std::pair<Code, Code>>> found;
  const std::size_t m = cells.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l) {
          const std::vector<std::pair<Code, Code>> q = {{0, 0}, cells[i], cells[j], cells[k], cells[l]};
          bool ok = true;
          for (std::size_t u = 0; u < 5 && ok; ++u)
            for (std::size_t v = 0; v < 5 && ok; ++v)
              for (Code s = 0; s < 5 && ok; ++s)
                for (Code t = 0; t < 5 && ok; ++t) {
                  const Code dx = (q[u].first + 25 - q[v].first + 5 * s) % 25;
                  const Code dy = (q[u].second + 25 - q[v].second + 5 * t) % 25;
                  ok = r.is_square(oracle::norm(r, dx, dy));
                }
          if (ok) found.push_back(q);
        }
  ASSERT_EQ(found.size(), 2u);
  for (const auto& q : found) {
    PointSet s(r);
    for (auto [x, y] : q)
      for (Code a = 0; a < 25; a += 5)
        for (Code b = 0; b < 25; b += 5) s.insert(Point(r, {x + a, y + b}));
    EXPECT_TRUE(s.same_members(zn_family(5, 2, ZnFamily::Strip)) ||
                s.same_members(AffineMap(Point(r, {0, 0}), swap_matrix(r)).apply_set(zn_family(5, 2, ZnFamily::Strip))));
  }
}

TEST(Constructions, ProductAndCrt) {
  const auto a = line_set(make_ring("Zn:3"));
  const auto b = cross_set(make_ring("Zn:5"));
  const auto prod = product_set(a, b);
  EXPECT_EQ(prod.size(), 15u);
  EXPECT_EQ(prod.ring().spec(), "Zn:3xZn:5");
  EXPECT_TRUE(classify(prod).integral);
  const auto flat = crt_flatten(prod);
  EXPECT_EQ(flat.ring().spec(), "Zn:15");
  EXPECT_EQ(flat.size(), 15u);
  EXPECT_TRUE(classify(flat).integral);
  for (const auto& p : flat) {
    bool found = false;
    for (const auto& u : a)
      for (const auto& v : b)
        found = found || (p.x() % 3 == u.x() && p.x() % 5 == v.x() && p.y() % 3 == u.y() && p.y() % 5 == v.y());
    EXPECT_TRUE(found);
  }
  EXPECT_THROW(crt_flatten(line_set(make_ring("Zn:15"))), ConstructionError);
}

TEST(Constructions, EveryConstructionIsIntegralUpTo125) {
  for (std::uint32_t q : oracle::odd_prime_powers(125)) {
    const Ring r = oracle::field(q);
    EXPECT_TRUE(classify(line_set(r)).integral);
    EXPECT_TRUE(classify(circle_set(r)).integral);
    if (q % 4 == 1) EXPECT_TRUE(classify(cross_set(r)).integral);
  }
  for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}, {7, 2}, {11, 2}, {3, 3}, {5, 3}, {3, 4}})
    EXPECT_TRUE(classify(zn_family(p, e, ZnFamily::Strip)).integral) << p << "^" << e;
}
