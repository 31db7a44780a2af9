#pragma once

// Automorphisms of the plane R^2 that respect the integral-distance
// predicate: translations, the coordinate swap, multiplication by elements
// y of R' whose norm is a nonzero square, and Frobenius powers.
//
// Linear parts act on column vectors, p -> M * p. The groups below are
// closed under transposition, so they coincide with the row-vector groups.
// An AffineMap applies, in this fixed order: Frobenius power, coordinate
// swap, matrix, translation.

#include <cstdint>
#include <optional>
#include <vector>

#include "ipset/gaussian.hpp"
#include "ipset/plane.hpp"

namespace ipset {

class AutomorphismError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Matrix2 {
  Ring::Code a = 0, b = 0, c = 0, d = 0;  // [[a, b], [c, d]]
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
  friend auto operator<=>(const Matrix2&, const Matrix2&) = default;
};

Matrix2 identity_matrix(const Ring& r);
Matrix2 swap_matrix(const Ring& r);
/// Matrix of z -> z * y, i.e. [[re, -im], [im, re]].
Matrix2 multiplication_matrix(const Ring& r, GaussCode y);
Matrix2 matrix_mul(const Ring& r, const Matrix2& m, const Matrix2& n);
Ring::Code matrix_det(const Ring& r, const Matrix2& m);
/// M * (x, y).
std::pair<Ring::Code, Ring::Code> apply_matrix(const Ring& r, const Matrix2& m, Ring::Code x, Ring::Code y);

/// True when p -> M*p maps integral pairs to integral pairs and
/// non-integral pairs to non-integral pairs (checked on all vectors).
bool preserves_delta(const Ring& r, const Matrix2& m, Convention conv = Convention::Default);

class AffineMap {
 public:
  /// Validates: invertible matrix that respects the integral-distance
  /// predicate; Frobenius powers only over fields.
  AffineMap(Point translation, Matrix2 matrix, bool swap = false, std::uint32_t frob_power = 0);

  static AffineMap identity(const Ring& r);
  static AffineMap translation(const Point& by);

  const Ring& ring() const { return translation_.ring(); }
  const Point& translation_part() const { return translation_; }
  const Matrix2& matrix() const { return matrix_; }
  bool swap() const { return swap_; }
  std::uint32_t frob_power() const { return frob_power_; }

  Point apply(const Point& p) const;
  PointSet apply_set(const PointSet& points) const;

  /// Equal Frobenius power and agreement on (0,0), (1,0), (0,1).
  bool operator==(const AffineMap& o) const;

 private:
  struct Unchecked {};
  AffineMap(Unchecked, Point translation, Matrix2 matrix, bool swap, std::uint32_t frob_power);
  friend AffineMap pair_normalizer(const Point& u, const Point& v);

  Point translation_;
  Matrix2 matrix_;
  bool swap_;
  std::uint32_t frob_power_;
};

inline Point apply(const AffineMap& f, const Point& p) { return f.apply(p); }
inline PointSet apply_set(const AffineMap& f, const PointSet& points) { return f.apply_set(points); }

struct AutomorphismGroup {
  Ring ring;
  /// The linear part G of the group, sorted.
  std::vector<Matrix2> matrices;
  std::size_t order() const { return matrices.size(); }
  bool contains(const Matrix2& m) const;
};

/// The generator matrices whose closure is generated_group(ring).
std::vector<Matrix2> generator_matrices(const Ring& ring);

/// Closure of the known generator matrices: multiplication by y with
/// y*conj(y) a nonzero square of a unit, and the swap. For q = 5 and q = 9
/// the extra sign-change matrices are added, and for q = 9 also
/// diag(1, g^2) with g primitive.
AutomorphismGroup generated_group(const Ring& ring, std::uint32_t bound = 49);

/// All M in GL(2, q) preserving the predicate, by exhaustive enumeration.
AutomorphismGroup full_delta_group(const Ring& ring, std::uint32_t bound = 13);

/// An automorphism sending u to (0,0) and v to (0,1) when d^2(u,v) is a
/// nonzero square, or v to (1, w) when d^2(u,v) = 0. Fields only.
AffineMap pair_normalizer(const Point& u, const Point& v);

/// Whether some translation o matrix o Frobenius power maps one set onto
/// the other. Fields use the full group up to order 13 and the generated
/// group beyond; other rings use only the generated group ("up to known
/// automorphisms").
bool are_isomorphic(const PointSet& first, const PointSet& second);

}  // namespace ipset
