#include "ipset/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

namespace ipset {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 v = static_cast<unsigned __int128>(a) * b;
  if (v > UINT64_MAX) throw std::invalid_argument("bound does not fit in 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t v = 1;
  while (e--) v = checked_mul(v, b);
  return v;
}

BoundsReport make(Quantity q, const Ring& r, std::uint32_t m) {
  BoundsReport out;
  out.quantity = q;
  out.ring = r.spec();
  out.dimension = m;
  return out;
}

void set_exact(BoundsReport& b, std::uint64_t v, std::string source) {
  b.kind = ValueKind::Exact;
  b.lo = b.hi = v;
  b.source = std::move(source);
}

void set_interval(BoundsReport& b, std::uint64_t lo, std::uint64_t hi, std::string source) {
  b.kind = lo == hi ? ValueKind::Exact : ValueKind::Interval;
  b.lo = lo;
  b.hi = hi;
  b.source = std::move(source);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> factor(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

BoundsReport combine(Quantity q, const Ring& r, std::uint32_t m, const std::vector<BoundsReport>& parts,
                     const std::string& source) {
  BoundsReport out = make(q, r, m);
  std::uint64_t lo = 1, hi = 1;
  std::optional<std::uint64_t> conj = 1;
  for (const auto& p : parts) {
    lo = checked_mul(lo, p.lo);
    hi = checked_mul(hi, p.hi);
    if (p.conjecture && conj) {
      conj = checked_mul(*conj, *p.conjecture);
    } else if (p.kind == ValueKind::Exact && conj) {
      conj = checked_mul(*conj, p.lo);
    } else {
      conj.reset();
    }
  }
  set_interval(out, lo, hi, source);
  if (out.kind == ValueKind::Interval && conj && std::any_of(parts.begin(), parts.end(), [](const auto& p) { return p.conjecture.has_value(); }))
    out.conjecture = conj;
  return out;
}

BoundsReport predict_prime_power_modular(const Ring& r, std::uint32_t p, std::uint32_t e, std::uint32_t m);

BoundsReport predict_i(const Ring& r, std::uint32_t m) {
  BoundsReport out = make(Quantity::I, r, m);
  const std::uint64_t n = r.order();
  if (r.characteristic() == 2) {
    set_exact(out, ipow(n, m), "char-2-full-space");
    return out;
  }
  if (m == 1) {
    set_exact(out, n, "trivial-bounds");
    return out;
  }
  switch (r.kind()) {
    case RingKind::PrimeField:
    case RingKind::ExtensionField:
      if (m == 2) {
        set_exact(out, n, "odd-field-exact");
      } else {
        set_interval(out, n, ipow(n, m), "trivial-bounds");
      }
      return out;
    case RingKind::Product: {
      const auto a = predict_i(r.first(), m);
      const auto b = predict_i(r.second(), m);
      return combine(Quantity::I, r, m, {a, b}, "product-multiplicative");
    }
    case RingKind::Modular: {
      const auto f = factor(r.order());
      if (f.size() == 1) return predict_prime_power_modular(r, f[0].first, f[0].second, m);
      std::vector<BoundsReport> parts;
      for (auto [p, e] : f) {
        const Ring part = Ring::modular(static_cast<std::uint32_t>(ipow(p, e)));
        parts.push_back(predict_i(part, m));
      }
      return combine(Quantity::I, r, m, parts, "coprime-multiplicative");
    }
  }
  return out;
}

BoundsReport predict_prime_power_modular(const Ring& r, std::uint32_t p, std::uint32_t e, std::uint32_t m) {
  BoundsReport out = make(Quantity::I, r, m);
  const std::uint64_t n = r.order();
  if (e == 1) {
    set_exact(out, n, "odd-field-exact");
    return out;
  }
  if (p == 2) {
    set_interval(out, n, ipow(n, m), "trivial-bounds");
    return out;
  }
  if (e == 2 && m == 2) {
    set_exact(out, ipow(p, 3), "zn-p-squared-exact");
    return out;
  }
  const std::uint64_t lo = checked_mul(n, ipow(p, std::uint64_t{m - 1} * (e / 2)));
  set_interval(out, lo, ipow(n, m), "zn-prime-power-lower");
  if (m == 2) out.conjecture = lo;
  return out;
}

BoundsReport predict_ibar(const Ring& r) {
  BoundsReport out = make(Quantity::IBar, r, 2);
  const std::uint64_t n = r.order();
  if (r.is_field() && r.characteristic() != 2) {
    if (n % 4 == 3) {
      set_exact(out, (n + 1) / 2, "circle-arc-exact");
    } else {
      set_interval(out, (n - 1) / 2, (n + 3) / 2, "circle-arc-interval");
      out.conjecture = (n - 1) / 2;
    }
    return out;
  }
  set_interval(out, std::min<std::uint64_t>(2, n * n), 2 * n, "arc-two-lines-upper");
  return out;
}

BoundsReport predict_idot(const Ring& r) {
  BoundsReport out = make(Quantity::IDot, r, 2);
  const bool prime = r.kind() == RingKind::PrimeField || (r.kind() == RingKind::Modular && is_prime(r.order()));
  if (prime) {
    const auto& t = table1();
    if (auto it = t.find(r.order()); it != t.end()) {
      out.kind = ValueKind::Table;
      out.lo = out.hi = it->second;
      out.source = "general-position-table";
      return out;
    }
  }
  out.kind = ValueKind::Unknown;
  out.source = "unknown";
  return out;
}

}  // namespace

BoundsReport predict(Quantity quantity, const Ring& ring, std::uint32_t dimension) {
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
  switch (quantity) {
    case Quantity::I:
      return predict_i(ring, dimension);
    case Quantity::IBar:
      return predict_ibar(ring);
    case Quantity::IDot:
      return predict_idot(ring);
  }
  return {};
}

const std::map<std::uint32_t, std::uint32_t>& table1() {
  static const std::map<std::uint32_t, std::uint32_t> t{
      {2, 4},   {3, 2},   {5, 4},   {7, 3},   {11, 4},  {13, 5},  {17, 5},  {19, 5},  {23, 5},  {29, 7},
      {31, 6},  {37, 7},  {41, 9},  {43, 8},  {47, 7},  {53, 9},  {59, 9},  {61, 10}, {67, 9},  {71, 11},
      {73, 10}, {79, 11}, {83, 11}, {89, 11}, {97, 11}, {101, 13}, {103, 11}, {107, 11}, {109, 12}, {113, 12}};
  return t;
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::I:
      return "I";
    case Quantity::IBar:
      return "Ibar";
    case Quantity::IDot:
      return "Idot";
  }
  return "?";
}

std::string to_string(ValueKind k) {
  switch (k) {
    case ValueKind::Exact:
      return "exact";
    case ValueKind::Interval:
      return "interval";
    case ValueKind::Table:
      return "table";
    case ValueKind::Unknown:
      return "unknown";
  }
  return "?";
}

std::optional<Quantity> parse_quantity(std::string_view s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "i") return Quantity::I;
  if (lower == "ibar") return Quantity::IBar;
  if (lower == "idot") return Quantity::IDot;
  return std::nullopt;
}

}  // namespace ipset
