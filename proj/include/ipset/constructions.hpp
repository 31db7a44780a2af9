#pragma once

// Explicit integral point set families.

#include <string>
#include <vector>

#include "ipset/plane.hpp"

namespace ipset {

class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {(r, 0) : r in R}.
PointSet line_set(const Ring& ring);

/// {(s, w*s)} u {(s, -w*s)} over all squares s, with w the canonical
/// square root of -1.
PointSet cross_set(const Ring& ring);

enum class GridVariant { Plain, RotatedByRoot };

/// {(a, b) : a, b in the subfield of order sqrt(q)}; the rotated variant
/// is {(a, w*b)} and needs sqrt(q) = 1 mod 4.
PointSet subfield_grid(const Ring& ring, GridVariant variant = GridVariant::Plain);

/// Even powers of a generator of the norm-one group, i.e. its subgroup of
/// squares.
PointSet circle_set(const Ring& ring);
/// The odd powers z^(2i+1).
PointSet circle_set_odd(const Ring& ring);

enum class ZnFamily { Strip = 1, Skew = 2, LiftedCross = 3 };

/// One family over Z_{p^r}:
///   Strip        {(i, j p^ceil(r/2))}
///   Skew         {(i, i w + j p^ceil(r/2))}, needs w^2 = -1 in Z_{p^r}
///   LiftedCross  cross_set(Z_p) lifted to [0, p) plus {(pa, pb)}, r = 2
PointSet zn_family(std::uint32_t p, std::uint32_t r, ZnFamily family);

struct ZnFamilies {
  std::vector<PointSet> sets;
  std::vector<ZnFamily> families;
  /// Families that do not apply to (p, r), with the reason.
  std::vector<std::string> skipped;
};

ZnFamilies zn_families(std::uint32_t p, std::uint32_t r);

/// Componentwise product over R1 x R2.
PointSet product_set(const PointSet& first, const PointSet& second);

/// Re-encodes a point set over Z_a x Z_b (gcd(a, b) = 1) in Z_{ab}.
PointSet crt_flatten(const PointSet& product);

/// No point of R^2 outside the set can be added keeping it integral.
bool is_maximal(const PointSet& points, Convention conv = Convention::Default);

}  // namespace ipset
