#include "ipset/gaussian.hpp"

#include <algorithm>

#include "ipset/plane.hpp"

namespace ipset {

std::optional<GaussCode> gauss_inv(const Ring& r, GaussCode u) {
  const auto n_inv = r.inv(gauss_norm(r, u));
  if (!n_inv) return std::nullopt;
  return GaussCode{r.mul(u.re, *n_inv), r.mul(r.neg(u.im), *n_inv)};
}

GaussElement::GaussElement(Ring ring, GaussCode code) : ring_(std::move(ring)), code_(code) {}

GaussElement::GaussElement(const RingElement& re, const RingElement& im) : ring_(re.ring()), code_{re.code(), im.code()} {
  if (!(re.ring() == im.ring())) throw RingError("real and imaginary parts belong to different rings");
}

void GaussElement::check_same_ring(const GaussElement& o) const {
  if (!(ring_ == o.ring_)) throw RingError("operands belong to different rings");
}

GaussElement GaussElement::operator+(const GaussElement& o) const {
  check_same_ring(o);
  return {ring_, {ring_.add(code_.re, o.code_.re), ring_.add(code_.im, o.code_.im)}};
}

GaussElement GaussElement::operator-(const GaussElement& o) const {
  check_same_ring(o);
  return {ring_, gauss_sub(ring_, code_, o.code_)};
}

GaussElement GaussElement::operator*(const GaussElement& o) const {
  check_same_ring(o);
  return {ring_, gauss_mul(ring_, code_, o.code_)};
}

GaussElement GaussElement::pow(std::uint64_t e) const {
  GaussCode result{ring_.one(), 0};
  GaussCode base = code_;
  while (e > 0) {
    if (e & 1) result = gauss_mul(ring_, result, base);
    base = gauss_mul(ring_, base, base);
    e >>= 1;
  }
  return {ring_, result};
}

std::optional<GaussElement> GaussElement::inv() const {
  auto c = gauss_inv(ring_, code_);
  if (!c) return std::nullopt;
  return GaussElement(ring_, *c);
}

GaussElement g_mul(const GaussElement& u, const GaussElement& v) { return u * v; }
GaussElement g_conj(const GaussElement& u) { return {u.ring(), gauss_conj(u.ring(), u.code())}; }
RingElement g_norm(const GaussElement& u) { return u.ring().element(gauss_norm(u.ring(), u.code())); }

GaussElement rho_embed(const Point& p) {
  if (p.dim() != 2) throw GeometryError("rho_embed requires a point of the plane");
  return {p.ring(), {p.x(), p.y()}};
}

Point rho_extract(const GaussElement& u) { return Point(u.ring(), {u.code().re, u.code().im}); }

std::uint64_t gauss_order(const Ring& ring, GaussCode z) {
  const GaussCode one{ring.one(), 0};
  GaussCode acc = z;
  std::uint64_t k = 1;
  while (acc != one) {
    acc = gauss_mul(ring, acc, z);
    if (++k > std::uint64_t{ring.order()} * ring.order()) return 0;  // not a unit
  }
  return k;
}

namespace {

// Solutions of a^2 + b^2 = 1 over an odd-order field via
//   b = 2 / (t + 1/t),  a = (t - 1/t) / (t + 1/t),  t != 0, t^2 != -1,
// together with (+-1, 0).
std::vector<GaussCode> circle_by_parametrization(const Ring& r) {
  std::vector<GaussCode> out;
  out.push_back({r.one(), 0});
  out.push_back({r.neg(r.one()), 0});
  const auto two = r.add(r.one(), r.one());
  for (Ring::Code t = 1; t < r.order(); ++t) {
    const auto t_inv = *r.inv(t);
    const auto s = r.add(t, t_inv);
    const auto s_inv = r.inv(s);
    if (!s_inv) continue;  // t^2 = -1
    out.push_back({r.mul(r.sub(t, t_inv), *s_inv), r.mul(two, *s_inv)});
  }
  return out;
}

std::vector<GaussCode> circle_by_enumeration(const Ring& r) {
  std::vector<GaussCode> out;
  for (Ring::Code a = 0; a < r.order(); ++a)
    for (Ring::Code b = 0; b < r.order(); ++b)
      if (gauss_norm(r, {a, b}) == r.one()) out.push_back({a, b});
  return out;
}

}  // namespace

UnitCircleGroup unit_circle(const Ring& ring) {
  UnitCircleGroup group{ring, {}, std::nullopt};
  if (ring.is_field() && ring.characteristic() != 2)
    group.elements = circle_by_parametrization(ring);
  else
    group.elements = circle_by_enumeration(ring);
  std::sort(group.elements.begin(), group.elements.end());
  group.elements.erase(std::unique(group.elements.begin(), group.elements.end()), group.elements.end());

  const auto n = group.elements.size();
  for (const auto& z : group.elements) {
    if (gauss_order(ring, z) == n) {
      group.generator = z;
      break;
    }
  }
  return group;
}

}  // namespace ipset
