#pragma once

// The ring R' = R[x]/(x^2+1) with elements a + b*i, held as pairs over R.
// Conjugation, norm and multiplication turn plane geometry over R^2 into
// algebra: d^2(u, v) = (u - v) * conj(u - v).

#include <optional>
#include <vector>

#include "ipset/ring.hpp"

namespace ipset {

class Point;

struct GaussCode {
  Ring::Code re = 0;
  Ring::Code im = 0;
  friend bool operator==(const GaussCode&, const GaussCode&) = default;
  friend auto operator<=>(const GaussCode&, const GaussCode&) = default;
};

// Code-level kernels shared with the search.
inline GaussCode gauss_mul(const Ring& r, GaussCode u, GaussCode v) {
  return {r.sub(r.mul(u.re, v.re), r.mul(u.im, v.im)), r.add(r.mul(u.re, v.im), r.mul(u.im, v.re))};
}
inline GaussCode gauss_conj(const Ring& r, GaussCode u) { return {u.re, r.neg(u.im)}; }
inline Ring::Code gauss_norm(const Ring& r, GaussCode u) { return r.add(r.sqr(u.re), r.sqr(u.im)); }
inline GaussCode gauss_sub(const Ring& r, GaussCode u, GaussCode v) { return {r.sub(u.re, v.re), r.sub(u.im, v.im)}; }
/// Inverse in R' (exists iff the norm is a unit).
std::optional<GaussCode> gauss_inv(const Ring& r, GaussCode u);

class GaussElement {
 public:
  GaussElement(Ring ring, GaussCode code);
  GaussElement(const RingElement& re, const RingElement& im);

  const Ring& ring() const { return ring_; }
  GaussCode code() const { return code_; }
  RingElement re() const { return ring_.element(code_.re); }
  RingElement im() const { return ring_.element(code_.im); }

  GaussElement operator+(const GaussElement& o) const;
  GaussElement operator-(const GaussElement& o) const;
  GaussElement operator*(const GaussElement& o) const;
  GaussElement pow(std::uint64_t e) const;
  std::optional<GaussElement> inv() const;

  bool operator==(const GaussElement& o) const { return code_ == o.code_ && ring_ == o.ring_; }

  static GaussElement i(const Ring& ring) { return {ring, {0, ring.one()}}; }
  static GaussElement one(const Ring& ring) { return {ring, {ring.one(), 0}}; }

 private:
  void check_same_ring(const GaussElement& o) const;
  Ring ring_;
  GaussCode code_;
};

GaussElement g_mul(const GaussElement& u, const GaussElement& v);
GaussElement g_conj(const GaussElement& u);
RingElement g_norm(const GaussElement& u);

/// a + b*i from the point (a, b), and back. Two-dimensional points only.
GaussElement rho_embed(const Point& p);
Point rho_extract(const GaussElement& u);

struct UnitCircleGroup {
  Ring ring;
  /// All z with z * conj(z) = 1, in ascending (re, im) code order.
  std::vector<GaussCode> elements;
  /// First element of full order in canonical order, when the group is cyclic.
  std::optional<GaussCode> generator;
};

UnitCircleGroup unit_circle(const Ring& ring);

/// Multiplicative order of a unit in R'.
std::uint64_t gauss_order(const Ring& ring, GaussCode z);

}  // namespace ipset
