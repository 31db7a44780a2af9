#pragma once

// Points of R^m and the geometric predicates on them: squared distance,
// the integral-distance predicate, directions, collinearity and
// concircularity determinants, and point-set classification.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ipset/ring.hpp"

namespace ipset {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which squared distances count as integral. The default accepts every
/// square including 0; the quadrance convention requires a nonzero square.
enum class Convention { Default, Quadrance };

class Point {
 public:
  using Code = Ring::Code;

  Point(Ring ring, std::vector<Code> coords);
  Point(Ring ring, std::initializer_list<Code> coords) : Point(std::move(ring), std::vector<Code>(coords)) {}
  /// Signed integer coordinates, reduced via k * 1.
  static Point from_ints(const Ring& ring, std::initializer_list<std::int64_t> coords);
  Point(const RingElement& x, const RingElement& y);

  const Ring& ring() const { return ring_; }
  std::size_t dim() const { return coords_.size(); }
  Code operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Code>& coords() const { return coords_; }
  Code x() const { return coords_[0]; }
  Code y() const { return coords_[1]; }
  RingElement coord(std::size_t i) const { return ring_.element(coords_[i]); }

  bool operator==(const Point& o) const { return coords_ == o.coords_ && ring_ == o.ring_; }
  /// Canonical coordinate order (lexicographic on codes).
  std::strong_ordering operator<=>(const Point& o) const { return coords_ <=> o.coords_; }

 private:
  Ring ring_;
  std::vector<Code> coords_;
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept;
};

/// Ordered, duplicate-free collection of points over one ring.
class PointSet {
 public:
  explicit PointSet(Ring ring) : ring_(std::move(ring)) {}
  PointSet(Ring ring, const std::vector<Point>& points);

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Appends p unless already present. Returns whether it was inserted.
  bool insert(const Point& p);
  bool contains(const Point& p) const { return index_.count(p) != 0; }

  /// Same members regardless of order.
  bool same_members(const PointSet& other) const;

 private:
  Ring ring_;
  std::vector<Point> points_;
  std::unordered_set<Point, PointHash> index_;
};

class Direction {
 public:
  enum class Kind { Finite, Infinity, NonUnit };

  static Direction finite(Ring::Code slope) { return Direction(Kind::Finite, slope); }
  static Direction infinity() { return Direction(Kind::Infinity, 0); }
  static Direction non_unit() { return Direction(Kind::NonUnit, 0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  Ring::Code slope() const { return slope_; }

  bool operator==(const Direction& o) const = default;
  /// Search order: finite slopes ascending by code, then infinity. NonUnit
  /// directions are not ordered; comparing them throws.
  std::strong_ordering operator<=>(const Direction& o) const;

 private:
  Direction(Kind k, Ring::Code s) : kind_(k), slope_(s) {}
  Kind kind_;
  Ring::Code slope_;
};

RingElement d2(const Point& u, const Point& v);
bool delta(const Point& u, const Point& v, Convention conv = Convention::Default);
/// Integral-distance predicate on a squared distance value.
bool is_integral_distance(const Ring& ring, Ring::Code d2, Convention conv = Convention::Default);

Direction direction(const Point& u, const Point& v);

/// Directions realised by point pairs at integral distance. Odd-order fields.
std::vector<Direction> integral_directions(const Ring& ring, Convention conv = Convention::Default);

// Determinant predicates on raw codes, for hot loops.
Ring::Code collinear_det(const Ring& r, Ring::Code x1, Ring::Code y1, Ring::Code x2, Ring::Code y2, Ring::Code x3,
                         Ring::Code y3);
Ring::Code concircular_det(const Ring& r, const Ring::Code* x, const Ring::Code* y);

bool collinear(const Point& p1, const Point& p2, const Point& p3);
/// det[x, y, x^2+y^2, 1] = 0. In characteristic 2 the determinant
/// degenerates; there the circle condition reduces to equal x^2+y^2.
bool concircular(const Point& p1, const Point& p2, const Point& p3, const Point& p4);

struct Classification {
  bool integral = false;
  bool arc = false;
  bool general_position = false;
  std::size_t max_line_multiplicity = 0;
  /// False over non-fields, where the determinant tests are only necessary
  /// conditions for collinearity and concircularity.
  bool exact_predicates = true;
};

Classification classify(const PointSet& points, Convention conv = Convention::Default);

/// Largest number of points of the set on a common line.
std::size_t max_line_multiplicity(const PointSet& points);

}  // namespace ipset
