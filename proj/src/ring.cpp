#include "ipset/ring.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace ipset {

namespace detail {

struct RingData {
  RingKind kind = RingKind::Modular;
  std::uint32_t p = 0;      // prime for fields
  std::uint32_t r = 0;      // extension degree for fields
  std::uint32_t order = 0;
  std::uint32_t characteristic = 0;
  std::vector<std::uint32_t> modulus;  // c_0..c_{r-1}, extension fields
  std::vector<std::uint32_t> weight;   // weight[i] = p^(r-1-i)
  Ring::Code one = 1;

  // Extension fields of small order keep full operation tables.
  std::vector<std::uint16_t> add_table;
  std::vector<std::uint16_t> mul_table;

  std::shared_ptr<const RingData> first;
  std::shared_ptr<const RingData> second;

  std::vector<std::int32_t> inverse;   // -1 for non-units
  std::vector<std::uint8_t> square;    // indicator
  std::vector<std::int32_t> root;      // smallest square root or -1
  std::vector<Ring::Code> square_list;
};

}  // namespace detail

namespace {

using detail::RingData;
using Code = Ring::Code;

constexpr std::uint32_t kTableLimit = 1024;

std::uint32_t checked_power(std::uint32_t base, std::uint32_t exp) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    v *= base;
    if (v > Ring::kMaxOrder) throw RingError("ring order exceeds supported maximum 65536");
  }
  return static_cast<std::uint32_t>(v);
}

// Raw (table-free) arithmetic. Used to build tables and for large orders.

void decode(const RingData& d, Code a, std::uint32_t* out) {
  for (std::uint32_t i = d.r; i-- > 0;) {
    out[i] = a % d.p;
    a /= d.p;
  }
}

Code encode(const RingData& d, const std::uint32_t* digits) {
  Code c = 0;
  for (std::uint32_t i = 0; i < d.r; ++i) c = c * d.p + digits[i];
  return c;
}

Code raw_add(const RingData& d, Code a, Code b);
Code raw_mul(const RingData& d, Code a, Code b);
Code raw_neg(const RingData& d, Code a);

Code raw_add(const RingData& d, Code a, Code b) {
  switch (d.kind) {
    case RingKind::PrimeField:
    case RingKind::Modular: {
      std::uint32_t s = a + b;
      return s >= d.order ? s - d.order : s;
    }
    case RingKind::ExtensionField: {
      if (!d.add_table.empty()) return d.add_table[a * d.order + b];
      std::uint32_t x[32], y[32];
      decode(d, a, x);
      decode(d, b, y);
      for (std::uint32_t i = 0; i < d.r; ++i) x[i] = (x[i] + y[i]) % d.p;
      return encode(d, x);
    }
    case RingKind::Product: {
      const std::uint32_t m = d.second->order;
      return raw_add(*d.first, a / m, b / m) * m + raw_add(*d.second, a % m, b % m);
    }
  }
  return 0;
}

Code raw_neg(const RingData& d, Code a) {
  switch (d.kind) {
    case RingKind::PrimeField:
    case RingKind::Modular:
      return a == 0 ? 0 : d.order - a;
    case RingKind::ExtensionField: {
      std::uint32_t x[32];
      decode(d, a, x);
      for (std::uint32_t i = 0; i < d.r; ++i) x[i] = (d.p - x[i]) % d.p;
      return encode(d, x);
    }
    case RingKind::Product: {
      const std::uint32_t m = d.second->order;
      return raw_neg(*d.first, a / m) * m + raw_neg(*d.second, a % m);
    }
  }
  return 0;
}

Code poly_mul(const RingData& d, Code a, Code b) {
  std::uint32_t x[32], y[32];
  std::uint64_t prod[64] = {};
  decode(d, a, x);
  decode(d, b, y);
  for (std::uint32_t i = 0; i < d.r; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < d.r; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % d.p;
  }
  // x^r = -(c_0 + ... + c_{r-1} x^{r-1})
  for (std::uint32_t k = 2 * d.r - 1; k-- > d.r;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < d.r; ++i) {
      const std::uint64_t t = (c * d.modulus[i]) % d.p;
      prod[k - d.r + i] = (prod[k - d.r + i] + d.p - t) % d.p;
    }
  }
  std::uint32_t out[32];
  for (std::uint32_t i = 0; i < d.r; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return encode(d, out);
}

Code raw_mul(const RingData& d, Code a, Code b) {
  switch (d.kind) {
    case RingKind::PrimeField:
    case RingKind::Modular:
      return static_cast<Code>((std::uint64_t{a} * b) % d.order);
    case RingKind::ExtensionField:
      if (!d.mul_table.empty()) return d.mul_table[a * d.order + b];
      return poly_mul(d, a, b);
    case RingKind::Product: {
      const std::uint32_t m = d.second->order;
      return raw_mul(*d.first, a / m, b / m) * m + raw_mul(*d.second, a % m, b % m);
    }
  }
  return 0;
}

Code raw_pow(const RingData& d, Code a, std::uint64_t e) {
  Code result = d.one;
  while (e > 0) {
    if (e & 1) result = raw_mul(d, result, a);
    a = raw_mul(d, a, a);
    e >>= 1;
  }
  return result;
}

// Monic polynomial over F_p as coefficient vector, constant term first,
// including the leading 1.
using Poly = std::vector<std::uint32_t>;

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t m) {
  std::int64_t t = 0, new_t = 1, r = m, new_r = a % m;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) return 0;
  return static_cast<std::uint32_t>(t < 0 ? t + m : t);
}

// True when the monic polynomial g divides f over F_p.
bool divides(Poly f, const Poly& g, std::uint32_t p) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t k = f.size(); k-- > dg;) {
    const std::uint64_t c = f[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) {
      const std::uint64_t t = (c * g[i]) % p;
      f[k - dg + i] = static_cast<std::uint32_t>((f[k - dg + i] + p - t) % p);
    }
  }
  return std::all_of(f.begin(), f.end(), [](std::uint32_t c) { return c == 0; });
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t dg = 1; dg <= deg / 2; ++dg) {
    // Enumerate monic divisors of degree dg.
    Poly g(dg + 1, 0);
    g[dg] = 1;
    while (true) {
      if (divides(f, g, p)) return false;
      std::size_t i = 0;
      while (i < dg && ++g[i] == p) g[i++] = 0;
      if (i == dg) break;
    }
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t r) {
  // Lexicographic order on (c_0, ..., c_{r-1}): c_{r-1} varies fastest.
  std::vector<std::uint32_t> c(r, 0);
  while (true) {
    Poly f(c.begin(), c.end());
    f.push_back(1);
    if (is_irreducible(f, p)) return c;
    std::size_t i = r;
    while (i > 0 && ++c[i - 1] == p) c[--i] = 0;
    if (i == 0) break;
  }
  throw RingError("no irreducible polynomial found");
}

void finish(RingData& d) {
  const std::uint32_t n = d.order;
  if (d.kind == RingKind::ExtensionField && n <= kTableLimit) {
    std::vector<std::uint16_t> add(std::size_t{n} * n), mul(std::size_t{n} * n);
    for (Code a = 0; a < n; ++a)
      for (Code b = 0; b < n; ++b) {
        add[a * n + b] = static_cast<std::uint16_t>(raw_add(d, a, b));
        mul[a * n + b] = static_cast<std::uint16_t>(poly_mul(d, a, b));
      }
    d.add_table = std::move(add);
    d.mul_table = std::move(mul);
  }

  d.square.assign(n, 0);
  d.root.assign(n, -1);
  for (Code x = 0; x < n; ++x) {
    const Code s = raw_mul(d, x, x);
    d.square[s] = 1;
    if (d.root[s] < 0) d.root[s] = static_cast<std::int32_t>(x);
  }
  for (Code x = 0; x < n; ++x)
    if (d.square[x]) d.square_list.push_back(x);

  d.inverse.assign(n, -1);
  switch (d.kind) {
    case RingKind::PrimeField:
    case RingKind::Modular:
      for (Code a = 1; a < n; ++a)
        if (std::gcd(a, n) == 1) d.inverse[a] = static_cast<std::int32_t>(mod_inverse(a, n));
      if (n == 1) d.inverse[0] = 0;
      break;
    case RingKind::ExtensionField:
      for (Code a = 1; a < n; ++a) d.inverse[a] = static_cast<std::int32_t>(raw_pow(d, a, n - 2));
      break;
    case RingKind::Product: {
      const std::uint32_t m = d.second->order;
      for (Code a = 0; a < n; ++a) {
        const auto i1 = d.first->inverse[a / m];
        const auto i2 = d.second->inverse[a % m];
        if (i1 >= 0 && i2 >= 0) d.inverse[a] = static_cast<std::int32_t>(i1 * m + i2);
      }
      break;
    }
  }
}

}  // namespace

Ring Ring::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw RingError("prime field requires a prime, got " + std::to_string(p));
  if (p > kMaxOrder) throw RingError("ring order exceeds supported maximum 65536");
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::PrimeField;
  d->p = p;
  d->r = 1;
  d->order = p;
  d->characteristic = p;
  d->weight = {1};
  finish(*d);
  return Ring(std::move(d));
}

Ring Ring::extension_field(std::uint32_t p, std::uint32_t r,
                           std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw RingError("extension field requires a prime characteristic, got " + std::to_string(p));
  if (r < 1) throw RingError("extension degree must be at least 1");
  if (r == 1) return prime_field(p);
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::ExtensionField;
  d->p = p;
  d->r = r;
  d->order = checked_power(p, r);
  d->characteristic = p;
  if (modulus) {
    if (modulus->size() != r) throw RingError("modulus must have exactly r coefficients");
    for (auto c : *modulus)
      if (c >= p) throw RingError("modulus coefficient out of range");
    Poly f(modulus->begin(), modulus->end());
    f.push_back(1);
    if (!is_irreducible(f, p)) throw RingError("modulus polynomial is reducible");
    d->modulus = *modulus;
  } else {
    d->modulus = smallest_irreducible(p, r);
  }
  d->weight.resize(r);
  for (std::uint32_t i = 0; i < r; ++i) d->weight[i] = checked_power(p, r - 1 - i);
  d->one = d->weight[0];
  finish(*d);
  return Ring(std::move(d));
}

Ring Ring::modular(std::uint32_t n) {
  if (n < 2) throw RingError("Z_n requires n >= 2");
  if (n > kMaxOrder) throw RingError("ring order exceeds supported maximum 65536");
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::Modular;
  d->order = n;
  d->characteristic = n;
  d->weight = {1};
  finish(*d);
  return Ring(std::move(d));
}

Ring Ring::product(const Ring& first, const Ring& second) {
  const std::uint64_t n = std::uint64_t{first.order()} * second.order();
  if (n > kMaxOrder) throw RingError("ring order exceeds supported maximum 65536");
  auto d = std::make_shared<RingData>();
  d->kind = RingKind::Product;
  d->order = static_cast<std::uint32_t>(n);
  d->characteristic = std::lcm(first.characteristic(), second.characteristic());
  d->first = first.data_;
  d->second = second.data_;
  d->one = first.one() * second.order() + second.one();
  finish(*d);
  return Ring(std::move(d));
}

RingKind Ring::kind() const { return data_->kind; }
std::uint32_t Ring::order() const { return data_->order; }
std::uint32_t Ring::characteristic() const { return data_->characteristic; }
std::uint32_t Ring::prime() const { return is_field() ? data_->p : 0; }
std::uint32_t Ring::degree() const { return is_field() ? data_->r : 0; }
bool Ring::is_field() const {
  return data_->kind == RingKind::PrimeField || data_->kind == RingKind::ExtensionField;
}
const std::vector<std::uint32_t>& Ring::modulus() const { return data_->modulus; }

Ring Ring::first() const {
  if (data_->kind != RingKind::Product) throw RingError("not a product ring");
  return Ring(data_->first);
}
Ring Ring::second() const {
  if (data_->kind != RingKind::Product) throw RingError("not a product ring");
  return Ring(data_->second);
}

std::string Ring::spec() const {
  switch (data_->kind) {
    case RingKind::PrimeField:
      return "Fp:" + std::to_string(data_->p);
    case RingKind::ExtensionField:
      return "Fq:" + std::to_string(data_->p) + "^" + std::to_string(data_->r);
    case RingKind::Modular:
      return "Zn:" + std::to_string(data_->order);
    case RingKind::Product:
      return first().spec() + "x" + second().spec();
  }
  return {};
}

Code Ring::one() const { return data_->one; }
Code Ring::add(Code a, Code b) const { return raw_add(*data_, a, b); }
Code Ring::neg(Code a) const { return raw_neg(*data_, a); }
Code Ring::sub(Code a, Code b) const { return raw_add(*data_, a, raw_neg(*data_, b)); }
Code Ring::mul(Code a, Code b) const { return raw_mul(*data_, a, b); }
Code Ring::pow(Code a, std::uint64_t e) const { return raw_pow(*data_, a, e); }

std::optional<Code> Ring::inv(Code a) const {
  const auto v = data_->inverse[a];
  if (v < 0) return std::nullopt;
  return static_cast<Code>(v);
}
bool Ring::is_unit(Code a) const { return data_->inverse[a] >= 0; }
bool Ring::is_square(Code a) const { return data_->square[a] != 0; }
std::optional<Code> Ring::sqrt(Code a) const {
  const auto v = data_->root[a];
  if (v < 0) return std::nullopt;
  return static_cast<Code>(v);
}

Code Ring::from_int(std::int64_t k) const {
  const std::uint64_t c = characteristic();
  std::int64_t m = k % static_cast<std::int64_t>(c);
  if (m < 0) m += static_cast<std::int64_t>(c);
  if (data_->kind == RingKind::PrimeField || data_->kind == RingKind::Modular) return static_cast<Code>(m);
  Code acc = 0;
  for (std::int64_t i = 0; i < m; ++i) acc = add(acc, one());
  return acc;
}

const std::vector<Code>& Ring::squares() const { return data_->square_list; }
std::span<const std::uint8_t> Ring::square_indicator() const { return data_->square; }

std::vector<std::uint32_t> Ring::digits(Code a) const {
  const auto& d = *data_;
  switch (d.kind) {
    case RingKind::PrimeField:
    case RingKind::Modular:
      return {a};
    case RingKind::ExtensionField: {
      std::vector<std::uint32_t> out(d.r);
      decode(d, a, out.data());
      return out;
    }
    case RingKind::Product:
      return {a / d.second->order, a % d.second->order};
  }
  return {};
}

Code Ring::from_digits(std::span<const std::uint32_t> digits) const {
  const auto& d = *data_;
  switch (d.kind) {
    case RingKind::PrimeField:
    case RingKind::Modular:
      if (digits.size() != 1 || digits[0] >= d.order) throw RingError("residue out of range for " + spec());
      return digits[0];
    case RingKind::ExtensionField:
      if (digits.size() != d.r) throw RingError("coefficient vector has wrong length for " + spec());
      for (auto c : digits)
        if (c >= d.p) throw RingError("coefficient out of range for " + spec());
      return encode(d, digits.data());
    case RingKind::Product:
      if (digits.size() != 2 || digits[0] >= d.first->order || digits[1] >= d.second->order)
        throw RingError("component code out of range for " + spec());
      return digits[0] * d.second->order + digits[1];
  }
  return 0;
}

RingElement Ring::element(Code c) const {
  if (c >= order()) throw RingError("element code out of range");
  return RingElement(*this, c);
}
RingElement Ring::zero_element() const { return RingElement(*this, 0); }
RingElement Ring::one_element() const { return RingElement(*this, one()); }

bool Ring::operator==(const Ring& other) const {
  if (data_ == other.data_) return true;
  const auto& a = *data_;
  const auto& b = *other.data_;
  if (a.kind != b.kind || a.order != b.order || a.p != b.p || a.r != b.r || a.modulus != b.modulus) return false;
  if (a.kind == RingKind::Product) return first() == other.first() && second() == other.second();
  return true;
}

namespace {

std::uint32_t parse_uint(std::string_view s, std::string_view whole) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw RingError("malformed ring specifier: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Ring make_ring(std::string_view spec) {
  if (auto x = spec.find('x'); x != std::string_view::npos)
    return Ring::product(make_ring(spec.substr(0, x)), make_ring(spec.substr(x + 1)));
  if (spec.size() < 4 || spec[2] != ':') throw RingError("malformed ring specifier: '" + std::string(spec) + "'");
  const auto kind = spec.substr(0, 2);
  const auto body = spec.substr(3);
  if (kind == "Fp") return Ring::prime_field(parse_uint(body, spec));
  if (kind == "Zn") return Ring::modular(parse_uint(body, spec));
  if (kind == "Fq") {
    const auto caret = body.find('^');
    if (caret == std::string_view::npos) return Ring::prime_field(parse_uint(body, spec));
    return Ring::extension_field(parse_uint(body.substr(0, caret), spec), parse_uint(body.substr(caret + 1), spec));
  }
  throw RingError("unknown ring kind in specifier: '" + std::string(spec) + "'");
}

RingElement::RingElement(Ring ring, Code code) : ring_(std::move(ring)), code_(code) {}

void RingElement::check_same_ring(const RingElement& o) const {
  if (!(ring_ == o.ring_)) throw RingError("operands belong to different rings");
}

RingElement RingElement::operator+(const RingElement& o) const {
  check_same_ring(o);
  return {ring_, ring_.add(code_, o.code_)};
}
RingElement RingElement::operator-(const RingElement& o) const {
  check_same_ring(o);
  return {ring_, ring_.sub(code_, o.code_)};
}
RingElement RingElement::operator*(const RingElement& o) const {
  check_same_ring(o);
  return {ring_, ring_.mul(code_, o.code_)};
}
RingElement RingElement::operator-() const { return {ring_, ring_.neg(code_)}; }
RingElement RingElement::pow(std::uint64_t e) const { return {ring_, ring_.pow(code_, e)}; }
std::optional<RingElement> RingElement::inv() const {
  auto c = ring_.inv(code_);
  if (!c) return std::nullopt;
  return RingElement(ring_, *c);
}
bool RingElement::is_unit() const { return ring_.is_unit(code_); }

const std::vector<Ring::Code>& squares(const Ring& ring) { return ring.squares(); }

bool is_square(const Ring& ring, const RingElement& x) {
  if (!(x.ring() == ring)) throw RingError("element does not belong to ring");
  return ring.is_square(x.code());
}

std::optional<RingElement> sqrt_of_minus_one(const Ring& ring) {
  const auto minus_one = ring.neg(ring.one());
  for (Code c = 0; c < ring.order(); ++c)
    if (ring.sqr(c) == minus_one) return ring.element(c);
  return std::nullopt;
}

RingElement frobenius(const RingElement& x, std::uint32_t j) {
  const Ring& ring = x.ring();
  if (!ring.is_field()) throw RingError("Frobenius requires a field");
  Code c = x.code();
  for (std::uint32_t i = 0; i < j % ring.degree(); ++i) c = ring.pow(c, ring.prime());
  return ring.element(c);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace ipset
