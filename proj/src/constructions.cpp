#include "ipset/constructions.hpp"

#include <numeric>

#include "ipset/gaussian.hpp"

namespace ipset {

using Code = Ring::Code;

PointSet line_set(const Ring& ring) {
  PointSet out(ring);
  for (Code r = 0; r < ring.order(); ++r) out.insert(Point(ring, {r, 0}));
  return out;
}

PointSet cross_set(const Ring& ring) {
  const auto omega = sqrt_of_minus_one(ring);
  if (!omega) throw ConstructionError("cross construction needs a square root of -1 in " + ring.spec());
  const Code w = omega->code();
  PointSet out(ring);
  for (Code s : ring.squares()) out.insert(Point(ring, {s, ring.mul(w, s)}));
  for (Code s : ring.squares()) out.insert(Point(ring, {s, ring.neg(ring.mul(w, s))}));
  return out;
}

PointSet subfield_grid(const Ring& ring, GridVariant variant) {
  if (ring.kind() != RingKind::ExtensionField || ring.degree() % 2 != 0)
    throw ConstructionError("subfield grid needs F_{p^r} with r even, got " + ring.spec());
  std::uint64_t root_q = 1;
  for (std::uint32_t i = 0; i < ring.degree() / 2; ++i) root_q *= ring.prime();
  std::vector<Code> sub;
  for (Code a = 0; a < ring.order(); ++a)
    if (ring.pow(a, root_q) == a) sub.push_back(a);

  Code scale = ring.one();
  if (variant == GridVariant::RotatedByRoot) {
    if (root_q % 4 != 1) throw ConstructionError("rotated subfield grid needs sqrt(q) = 1 mod 4");
    scale = sqrt_of_minus_one(ring)->code();
  }
  PointSet out(ring);
  for (Code a : sub)
    for (Code b : sub) out.insert(Point(ring, {a, ring.mul(scale, b)}));
  return out;
}

namespace {

PointSet circle_coset(const Ring& ring, bool odd) {
  const auto group = unit_circle(ring);
  if (group.elements.size() <= 1) throw ConstructionError("unit circle of " + ring.spec() + " is trivial");
  PointSet out(ring);
  if (group.generator) {
    const GaussElement z(ring, *group.generator);
    const auto n = group.elements.size();
    for (std::uint64_t k = odd ? 1 : 0; k < n; k += 2) {
      const auto c = z.pow(k).code();
      out.insert(Point(ring, {c.re, c.im}));
    }
    return out;
  }
  // Non-cyclic group: the subgroup of squares, or its coset by the first
  // non-identity element.
  const auto shift = odd ? group.elements[1] : GaussCode{ring.one(), 0};
  for (const auto& z : group.elements) {
    const auto c = gauss_mul(ring, shift, gauss_mul(ring, z, z));
    out.insert(Point(ring, {c.re, c.im}));
  }
  return out;
}

}  // namespace

PointSet circle_set(const Ring& ring) { return circle_coset(ring, false); }
PointSet circle_set_odd(const Ring& ring) { return circle_coset(ring, true); }

namespace {

std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
  std::uint32_t v = 1;
  while (e--) v *= b;
  return v;
}

}  // namespace

PointSet zn_family(std::uint32_t p, std::uint32_t r, ZnFamily family) {
  if (!is_prime(p) || p == 2) throw ConstructionError("Z_{p^r} families need an odd prime p");
  if (r < 2) throw ConstructionError("Z_{p^r} families need r >= 2");
  const Ring ring = Ring::modular(ipow(p, r));
  const std::uint32_t n = ring.order();
  const std::uint32_t step = ipow(p, (r + 1) / 2);
  PointSet out(ring);
  switch (family) {
    case ZnFamily::Strip:
      for (Code i = 0; i < n; ++i)
        for (Code j = 0; j < n; j += step) out.insert(Point(ring, {i, j}));
      break;
    case ZnFamily::Skew: {
      const auto omega = sqrt_of_minus_one(ring);
      if (!omega) throw ConstructionError("no square root of -1 in " + ring.spec());
      for (Code i = 0; i < n; ++i)
        for (Code j = 0; j < n; j += step) out.insert(Point(ring, {i, ring.add(ring.mul(i, omega->code()), j)}));
      break;
    }
    case ZnFamily::LiftedCross: {
      if (r != 2) throw ConstructionError("lifted cross family is defined for r = 2 only");
      const PointSet base = cross_set(Ring::modular(p));
      for (const auto& b : base)
        for (Code a = 0; a < n; a += p)
          for (Code c = 0; c < n; c += p) out.insert(Point(ring, {(b.x() + a) % n, (b.y() + c) % n}));
      break;
    }
  }
  return out;
}

ZnFamilies zn_families(std::uint32_t p, std::uint32_t r) {
  if (!is_prime(p) || p == 2) throw ConstructionError("Z_{p^r} families need an odd prime p");
  if (r < 2) throw ConstructionError("Z_{p^r} families need r >= 2");
  ZnFamilies out;
  auto add = [&](ZnFamily f) {
    out.sets.push_back(zn_family(p, r, f));
    out.families.push_back(f);
  };
  add(ZnFamily::Strip);
  if (p % 4 == 1) {
    add(ZnFamily::Skew);
  } else {
    out.skipped.push_back("skew family: no square root of -1 modulo " + std::to_string(p));
  }
  if (r == 2 && p % 4 == 1) {
    add(ZnFamily::LiftedCross);
  } else if (r == 2) {
    out.skipped.push_back("lifted cross family: no square root of -1 modulo " + std::to_string(p));
  } else {
    out.skipped.push_back("lifted cross family: only defined for r = 2");
  }
  return out;
}

PointSet product_set(const PointSet& first, const PointSet& second) {
  const Ring ring = Ring::product(first.ring(), second.ring());
  const std::uint32_t m = second.ring().order();
  PointSet out(ring);
  for (const auto& a : first)
    for (const auto& b : second) {
      if (a.dim() != b.dim()) throw GeometryError("product of point sets of different dimension");
      std::vector<Code> c(a.dim());
      for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] * m + b[i];
      out.insert(Point(ring, std::move(c)));
    }
  return out;
}

PointSet crt_flatten(const PointSet& product) {
  const Ring& pr = product.ring();
  if (pr.kind() != RingKind::Product || pr.first().kind() != RingKind::Modular ||
      pr.second().kind() != RingKind::Modular)
    throw ConstructionError("CRT flattening needs a point set over Z_a x Z_b");
  const std::uint32_t a = pr.first().order();
  const std::uint32_t b = pr.second().order();
  if (std::gcd(a, b) != 1) throw ConstructionError("CRT flattening needs coprime moduli");
  const Ring flat = Ring::modular(a * b);
  // x = u (mod a), x = v (mod b)  =>  x = u + a * ((v - u) * a^-1 mod b)
  const Ring zb = pr.second();
  const Code a_inv_mod_b = *zb.inv(a % b);
  PointSet out(flat);
  for (const auto& p : product) {
    std::vector<Code> c(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
      const Code u = p[i] / b;
      const Code v = p[i] % b;
      const Code k = zb.mul(zb.sub(v, u % b), a_inv_mod_b);
      c[i] = u + a * k;
    }
    out.insert(Point(flat, std::move(c)));
  }
  return out;
}

bool is_maximal(const PointSet& points, Convention conv) {
  const Ring& r = points.ring();
  const Code n = r.order();
  for (Code x = 0; x < n; ++x)
    for (Code y = 0; y < n; ++y) {
      const Point cand(r, {x, y});
      if (points.contains(cand)) continue;
      bool ok = true;
      for (const auto& p : points) {
        const Code d = r.add(r.sqr(r.sub(x, p.x())), r.sqr(r.sub(y, p.y())));
        if (!is_integral_distance(r, d, conv)) {
          ok = false;
          break;
        }
      }
      if (ok) return false;
    }
  return true;
}

}  // namespace ipset
