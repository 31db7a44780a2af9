#include "ipset/plane.hpp"

#include <algorithm>
#include <unordered_map>

namespace ipset {

using Code = Ring::Code;

Point::Point(Ring ring, std::vector<Code> coords) : ring_(std::move(ring)), coords_(std::move(coords)) {
  for (auto c : coords_)
    if (c >= ring_.order()) throw GeometryError("coordinate out of range for " + ring_.spec());
}

Point Point::from_ints(const Ring& ring, std::initializer_list<std::int64_t> coords) {
  std::vector<Code> c;
  for (auto k : coords) c.push_back(ring.from_int(k));
  return Point(ring, std::move(c));
}

Point::Point(const RingElement& x, const RingElement& y) : ring_(x.ring()), coords_{x.code(), y.code()} {
  if (!(x.ring() == y.ring())) throw GeometryError("coordinates belong to different rings");
}

std::size_t PointHash::operator()(const Point& p) const noexcept {
  std::size_t h = 0;
  for (auto c : p.coords()) h = h * 1000003u + c;
  return h;
}

PointSet::PointSet(Ring ring, const std::vector<Point>& points) : ring_(std::move(ring)) {
  for (const auto& p : points) insert(p);
}

bool PointSet::insert(const Point& p) {
  if (!(p.ring() == ring_)) throw GeometryError("point belongs to a different ring");
  if (!index_.insert(p).second) return false;
  points_.push_back(p);
  return true;
}

bool PointSet::same_members(const PointSet& other) const {
  if (size() != other.size() || !(ring_ == other.ring_)) return false;
  return std::all_of(points_.begin(), points_.end(), [&](const Point& p) { return other.contains(p); });
}

std::strong_ordering Direction::operator<=>(const Direction& o) const {
  if (kind_ == Kind::NonUnit || o.kind_ == Kind::NonUnit) throw GeometryError("non-unit directions are unordered");
  if (kind_ != o.kind_) return kind_ == Kind::Finite ? std::strong_ordering::less : std::strong_ordering::greater;
  return slope_ <=> o.slope_;
}

namespace {

void check_compatible(const Point& u, const Point& v) {
  if (!(u.ring() == v.ring())) throw GeometryError("points belong to different rings");
  if (u.dim() != v.dim()) throw GeometryError("points have different dimensions");
}

void check_plane(const Point& p) {
  if (p.dim() != 2) throw GeometryError("operation requires points of the plane");
}

Code sum_of_squares(const Ring& r, Code x, Code y) { return r.add(r.sqr(x), r.sqr(y)); }

}  // namespace

RingElement d2(const Point& u, const Point& v) {
  check_compatible(u, v);
  const Ring& r = u.ring();
  Code acc = 0;
  for (std::size_t i = 0; i < u.dim(); ++i) acc = r.add(acc, r.sqr(r.sub(u[i], v[i])));
  return r.element(acc);
}

bool is_integral_distance(const Ring& ring, Code d2, Convention conv) {
  if (conv == Convention::Quadrance && d2 == 0) return false;
  return ring.is_square(d2);
}

bool delta(const Point& u, const Point& v, Convention conv) {
  return is_integral_distance(u.ring(), d2(u, v).code(), conv);
}

Direction direction(const Point& u, const Point& v) {
  check_compatible(u, v);
  check_plane(u);
  if (u == v) throw GeometryError("direction of a point with itself is undefined");
  const Ring& r = u.ring();
  const Code da = r.sub(u.x(), v.x());
  const Code db = r.sub(u.y(), v.y());
  if (const auto inv = r.inv(da)) return Direction::finite(r.mul(db, *inv));
  if (da == 0) return Direction::infinity();
  return Direction::non_unit();
}

std::vector<Direction> integral_directions(const Ring& ring, Convention conv) {
  if (!ring.is_field() || ring.order() % 2 == 0) throw GeometryError("integral directions require an odd-order field");
  std::vector<Direction> out;
  for (Code d = 0; d < ring.order(); ++d)
    if (is_integral_distance(ring, ring.add(ring.one(), ring.sqr(d)), conv)) out.push_back(Direction::finite(d));
  out.push_back(Direction::infinity());
  return out;
}

Code collinear_det(const Ring& r, Code x1, Code y1, Code x2, Code y2, Code x3, Code y3) {
  return r.sub(r.mul(r.sub(x2, x1), r.sub(y3, y1)), r.mul(r.sub(x3, x1), r.sub(y2, y1)));
}

Code concircular_det(const Ring& r, const Code* x, const Code* y) {
  // Subtracting the first row reduces the 4x4 determinant to a 3x3 one.
  Code m[3][3];
  const Code s0 = sum_of_squares(r, x[0], y[0]);
  for (int i = 0; i < 3; ++i) {
    m[i][0] = r.sub(x[i + 1], x[0]);
    m[i][1] = r.sub(y[i + 1], y[0]);
    m[i][2] = r.sub(sum_of_squares(r, x[i + 1], y[i + 1]), s0);
  }
  const Code c0 = r.sub(r.mul(m[1][1], m[2][2]), r.mul(m[1][2], m[2][1]));
  const Code c1 = r.sub(r.mul(m[1][0], m[2][2]), r.mul(m[1][2], m[2][0]));
  const Code c2 = r.sub(r.mul(m[1][0], m[2][1]), r.mul(m[1][1], m[2][0]));
  return r.add(r.sub(r.mul(m[0][0], c0), r.mul(m[0][1], c1)), r.mul(m[0][2], c2));
}

bool collinear(const Point& p1, const Point& p2, const Point& p3) {
  check_compatible(p1, p2);
  check_compatible(p1, p3);
  check_plane(p1);
  return collinear_det(p1.ring(), p1.x(), p1.y(), p2.x(), p2.y(), p3.x(), p3.y()) == 0;
}

bool concircular(const Point& p1, const Point& p2, const Point& p3, const Point& p4) {
  check_compatible(p1, p2);
  check_compatible(p1, p3);
  check_compatible(p1, p4);
  check_plane(p1);
  const Ring& r = p1.ring();
  if (r.characteristic() == 2) {
    const Code s = sum_of_squares(r, p1.x(), p1.y());
    return sum_of_squares(r, p2.x(), p2.y()) == s && sum_of_squares(r, p3.x(), p3.y()) == s &&
           sum_of_squares(r, p4.x(), p4.y()) == s;
  }
  const Code x[4] = {p1.x(), p2.x(), p3.x(), p4.x()};
  const Code y[4] = {p1.y(), p2.y(), p3.y(), p4.y()};
  return concircular_det(r, x, y) == 0;
}

std::size_t max_line_multiplicity(const PointSet& points) {
  const auto n = points.size();
  if (n <= 2) return n;
  std::size_t best = 2;
  if (points.ring().is_field()) {
    std::unordered_map<std::uint64_t, std::size_t> count;
    for (std::size_t i = 0; i < n; ++i) {
      count.clear();
      for (std::size_t j = i + 1; j < n; ++j) {
        const Direction d = direction(points[i], points[j]);
        const std::uint64_t key = d.is_finite() ? d.slope() : ~std::uint64_t{0};
        best = std::max(best, ++count[key] + 1);
      }
    }
    return best;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t on = 2;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && collinear(points[i], points[j], points[k])) ++on;
      best = std::max(best, on);
    }
  return best;
}

Classification classify(const PointSet& points, Convention conv) {
  Classification c;
  const auto& p = points.points();
  const auto n = p.size();
  c.exact_predicates = points.ring().is_field();
  c.max_line_multiplicity = max_line_multiplicity(points);

  c.integral = true;
  for (std::size_t i = 0; i < n && c.integral; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!delta(p[i], p[j], conv)) {
        c.integral = false;
        break;
      }
  if (!c.integral) return c;

  c.arc = true;
  for (std::size_t i = 0; i < n && c.arc; ++i)
    for (std::size_t j = i + 1; j < n && c.arc; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (collinear(p[i], p[j], p[k])) {
          c.arc = false;
          break;
        }
  if (!c.arc) return c;

  c.general_position = true;
  for (std::size_t i = 0; i < n && c.general_position; ++i)
    for (std::size_t j = i + 1; j < n && c.general_position; ++j)
      for (std::size_t k = j + 1; k < n && c.general_position; ++k)
        for (std::size_t l = k + 1; l < n; ++l)
          if (concircular(p[i], p[j], p[k], p[l])) {
            c.general_position = false;
            break;
          }
  return c;
}

}  // namespace ipset
