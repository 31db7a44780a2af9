#include "ipset/automorph.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace ipset {

using Code = Ring::Code;

Matrix2 identity_matrix(const Ring& r) { return {r.one(), 0, 0, r.one()}; }
Matrix2 swap_matrix(const Ring& r) { return {0, r.one(), r.one(), 0}; }

Matrix2 multiplication_matrix(const Ring& r, GaussCode y) { return {y.re, r.neg(y.im), y.im, y.re}; }

Matrix2 matrix_mul(const Ring& r, const Matrix2& m, const Matrix2& n) {
  return {r.add(r.mul(m.a, n.a), r.mul(m.b, n.c)), r.add(r.mul(m.a, n.b), r.mul(m.b, n.d)),
          r.add(r.mul(m.c, n.a), r.mul(m.d, n.c)), r.add(r.mul(m.c, n.b), r.mul(m.d, n.d))};
}

Code matrix_det(const Ring& r, const Matrix2& m) { return r.sub(r.mul(m.a, m.d), r.mul(m.b, m.c)); }

std::pair<Code, Code> apply_matrix(const Ring& r, const Matrix2& m, Code x, Code y) {
  return {r.add(r.mul(m.a, x), r.mul(m.b, y)), r.add(r.mul(m.c, x), r.mul(m.d, y))};
}

namespace {

std::vector<std::uint8_t> integral_vectors(const Ring& r, Convention conv) {
  const Code n = r.order();
  std::vector<std::uint8_t> out(std::size_t{n} * n);
  for (Code x = 0; x < n; ++x)
    for (Code y = 0; y < n; ++y)
      out[std::size_t{x} * n + y] = is_integral_distance(r, r.add(r.sqr(x), r.sqr(y)), conv);
  return out;
}

bool preserves(const Ring& r, const Matrix2& m, const std::vector<std::uint8_t>& integral) {
  const Code n = r.order();
  for (Code x = 0; x < n; ++x)
    for (Code y = 0; y < n; ++y) {
      const auto [u, v] = apply_matrix(r, m, x, y);
      if (integral[std::size_t{x} * n + y] != integral[std::size_t{u} * n + v]) return false;
    }
  return true;
}

Point frobenius_point(const Point& p, std::uint32_t j) {
  if (j == 0) return p;
  std::vector<Code> c(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) c[i] = frobenius(p.coord(i), j).code();
  return Point(p.ring(), std::move(c));
}

}  // namespace

bool preserves_delta(const Ring& r, const Matrix2& m, Convention conv) {
  return preserves(r, m, integral_vectors(r, conv));
}

AffineMap::AffineMap(Unchecked, Point translation, Matrix2 matrix, bool swap, std::uint32_t frob_power)
    : translation_(std::move(translation)), matrix_(matrix), swap_(swap), frob_power_(frob_power) {}

AffineMap::AffineMap(Point translation, Matrix2 matrix, bool swap, std::uint32_t frob_power)
    : translation_(std::move(translation)), matrix_(matrix), swap_(swap), frob_power_(frob_power) {
  const Ring& r = ring();
  if (translation_.dim() != 2) throw AutomorphismError("translation must be a point of the plane");
  for (Code c : {matrix.a, matrix.b, matrix.c, matrix.d})
    if (c >= r.order()) throw AutomorphismError("matrix entry out of range");
  if (!r.is_unit(matrix_det(r, matrix))) throw AutomorphismError("matrix is not invertible");
  if (frob_power_ != 0) {
    if (!r.is_field()) throw AutomorphismError("Frobenius maps require a field");
    frob_power_ %= r.degree();
  }
  // Rotation form [[a, b], [-b, a]] is valid iff a^2 + b^2 is a unit square.
  const bool rotation = matrix.d == matrix.a && matrix.c == r.neg(matrix.b);
  if (rotation) {
    const Code n = r.add(r.sqr(matrix.a), r.sqr(matrix.b));
    if (!r.is_unit(n) || !r.is_square(n)) throw AutomorphismError("rotation norm is not a nonzero square");
  } else if (!preserves_delta(r, matrix)) {
    throw AutomorphismError("matrix does not respect integral distances");
  }
}

AffineMap AffineMap::identity(const Ring& r) { return AffineMap(Unchecked{}, Point(r, {0, 0}), identity_matrix(r), false, 0); }

AffineMap AffineMap::translation(const Point& by) {
  return AffineMap(Unchecked{}, by, identity_matrix(by.ring()), false, 0);
}

Point AffineMap::apply(const Point& p) const {
  if (!(p.ring() == ring()) || p.dim() != 2) throw AutomorphismError("point does not belong to the map's plane");
  const Ring& r = ring();
  const Point f = frobenius_point(p, frob_power_);
  Code x = f.x(), y = f.y();
  if (swap_) std::swap(x, y);
  const auto [u, v] = apply_matrix(r, matrix_, x, y);
  return Point(r, {r.add(u, translation_.x()), r.add(v, translation_.y())});
}

PointSet AffineMap::apply_set(const PointSet& points) const {
  PointSet out(points.ring());
  for (const auto& p : points) out.insert(apply(p));
  return out;
}

bool AffineMap::operator==(const AffineMap& o) const {
  if (!(ring() == o.ring()) || frob_power_ != o.frob_power_) return false;
  const Ring& r = ring();
  for (const auto& p : {Point(r, {0, 0}), Point(r, {r.one(), 0}), Point(r, {0, r.one()})})
    if (!(apply(p) == o.apply(p))) return false;
  return true;
}

bool AutomorphismGroup::contains(const Matrix2& m) const {
  return std::binary_search(matrices.begin(), matrices.end(), m);
}

namespace {

AutomorphismGroup closure(const Ring& r, const std::vector<Matrix2>& generators) {
  std::set<Matrix2> seen{identity_matrix(r)};
  std::vector<Matrix2> frontier{identity_matrix(r)};
  while (!frontier.empty()) {
    std::vector<Matrix2> next;
    for (const auto& m : frontier)
      for (const auto& g : generators) {
        const auto prod = matrix_mul(r, m, g);
        if (seen.insert(prod).second) next.push_back(prod);
      }
    frontier = std::move(next);
  }
  return {r, std::vector<Matrix2>(seen.begin(), seen.end())};
}

Code primitive_root(const Ring& r) {
  const std::uint64_t n = r.order() - 1;
  for (Code g = 1; g < r.order(); ++g) {
    bool ok = true;
    for (std::uint64_t d = 2; d <= n && ok; ++d)
      if (n % d == 0 && is_prime(d) && r.pow(g, n / d) == r.one()) ok = false;
    if (ok) return g;
  }
  return r.one();
}

}  // namespace

std::vector<Matrix2> generator_matrices(const Ring& ring) {
  if (ring.characteristic() % 2 == 0) throw AutomorphismError("generated group needs odd characteristic");
  const Code n = ring.order();
  std::vector<Matrix2> gens{swap_matrix(ring)};
  for (Code a = 0; a < n; ++a)
    for (Code b = 0; b < n; ++b) {
      const Code norm = ring.add(ring.sqr(a), ring.sqr(b));
      if (ring.is_unit(norm) && ring.is_square(norm)) gens.push_back(multiplication_matrix(ring, {a, b}));
    }
  if (ring.is_field() && (n == 5 || n == 9)) {
    // Independent signs: [[a, b], [+-b, +-a]].
    for (Code a = 0; a < n; ++a)
      for (Code b = 0; b < n; ++b) {
        if (!ring.is_square(ring.add(ring.sqr(a), ring.sqr(b)))) continue;
        for (Code c : {b, ring.neg(b)})
          for (Code d : {a, ring.neg(a)}) {
            const Matrix2 m{a, b, c, d};
            if (ring.is_unit(matrix_det(ring, m))) gens.push_back(m);
          }
      }
    if (n == 9) {
      const Code g = primitive_root(ring);
      gens.push_back({ring.one(), 0, 0, ring.sqr(g)});
    }
  }
  return gens;
}

AutomorphismGroup generated_group(const Ring& ring, std::uint32_t bound) {
  if (ring.order() > bound) throw AutomorphismError("ring order " + std::to_string(ring.order()) + " exceeds bound " + std::to_string(bound));
  return closure(ring, generator_matrices(ring));
}

AutomorphismGroup full_delta_group(const Ring& ring, std::uint32_t bound) {
  if (!ring.is_field()) throw AutomorphismError("full group enumeration needs a field");
  if (ring.order() > bound) throw AutomorphismError("ring order " + std::to_string(ring.order()) + " exceeds bound " + std::to_string(bound));
  const Code n = ring.order();
  const auto integral = integral_vectors(ring, Convention::Default);
  AutomorphismGroup group{ring, {}};
  for (Code a = 0; a < n; ++a)
    for (Code b = 0; b < n; ++b)
      for (Code c = 0; c < n; ++c)
        for (Code d = 0; d < n; ++d) {
          const Matrix2 m{a, b, c, d};
          if (matrix_det(ring, m) == 0) continue;
          if (preserves(ring, m, integral)) group.matrices.push_back(m);
        }
  return group;
}

AffineMap pair_normalizer(const Point& u, const Point& v) {
  const Ring& r = u.ring();
  if (!r.is_field()) throw AutomorphismError("pair normalization requires a field");
  if (u == v) throw AutomorphismError("pair normalization needs distinct points");
  if (!delta(u, v)) throw AutomorphismError("points are not at integral distance");
  const GaussCode w = gauss_sub(r, {v.x(), v.y()}, {u.x(), u.y()});
  const Code norm = gauss_norm(r, w);
  const auto translate = [&](const Matrix2& m, Code x, Code y) {
    const auto [tx, ty] = apply_matrix(r, m, x, y);
    return Point(r, {r.neg(tx), r.neg(ty)});
  };
  if (norm != 0) {
    // z -> (z - u) * i * w^-1 sends v to i = (0, 1).
    const GaussCode y = gauss_mul(r, {0, r.one()}, *gauss_inv(r, w));
    const Matrix2 m = multiplication_matrix(r, y);
    return AffineMap(AffineMap::Unchecked{}, translate(m, u.x(), u.y()), m, false, 0);
  }
  // w = a + b i with b/a = +-omega; scaling by a^-1 gives 1 +- omega i.
  const Code a_inv = *r.inv(w.re);
  const Code omega = sqrt_of_minus_one(r)->code();
  if (r.mul(w.im, a_inv) == omega) {
    const Matrix2 m = multiplication_matrix(r, {a_inv, 0});
    return AffineMap(AffineMap::Unchecked{}, translate(m, u.x(), u.y()), m, false, 0);
  }
  // Conjugate afterwards: conj(z) = -i * swap(z).
  const Matrix2 m = multiplication_matrix(r, {0, r.neg(a_inv)});
  return AffineMap(AffineMap::Unchecked{}, translate(m, u.y(), u.x()), m, true, 0);
}

bool are_isomorphic(const PointSet& first, const PointSet& second) {
  const Ring& r = first.ring();
  if (!(r == second.ring())) return false;
  if (first.size() != second.size()) return false;
  if (first.empty()) return true;

  AutomorphismGroup group = [&] {
    if (r.is_field() && r.order() <= 13) return full_delta_group(r);
    return generated_group(r, Ring::kMaxOrder);
  }();
  const std::uint32_t frob_count = r.is_field() ? r.degree() : 1;

  std::unordered_set<Point, PointHash> target(second.begin(), second.end());
  std::vector<std::pair<Code, Code>> image(first.size());
  for (std::uint32_t j = 0; j < frob_count; ++j) {
    std::vector<Point> src;
    for (const auto& p : first) src.push_back(frobenius_point(p, j));
    for (const auto& m : group.matrices) {
      for (std::size_t k = 0; k < src.size(); ++k) image[k] = apply_matrix(r, m, src[k].x(), src[k].y());
      for (const auto& t : second) {
        const Code sx = r.sub(t.x(), image[0].first);
        const Code sy = r.sub(t.y(), image[0].second);
        bool ok = true;
        for (std::size_t k = 1; k < image.size() && ok; ++k)
          ok = target.count(Point(r, {r.add(image[k].first, sx), r.add(image[k].second, sy)})) != 0;
        if (ok) return true;
      }
    }
  }
  return false;
}

}  // namespace ipset
