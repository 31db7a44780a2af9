#pragma once

// Finite commutative rings with 1: prime fields F_p, extension fields
// F_{p^r}, residue rings Z_n and direct products of those.
//
// Every element is encoded as an integer code in [0, |R|). For Z_n and F_p
// the code is the residue itself. For F_{p^r} the code packs the coefficient
// vector (c_0, ..., c_{r-1}) of c_0 + c_1 x + ... with c_0 as the most
// significant base-p digit, so that code order equals the lexicographic
// order of coefficient vectors (constant term first). Product rings use
// code = code_1 * |R_2| + code_2.
//
// A Ring is a cheap handle to immutable shared data and may be used from
// any number of threads.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ipset {

class RingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RingKind { PrimeField, ExtensionField, Modular, Product };

namespace detail {
struct RingData;
}

class RingElement;

class Ring {
 public:
  using Code = std::uint32_t;

  /// Largest supported ring order.
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  static Ring prime_field(std::uint32_t p);
  /// F_{p^r}. Without an explicit modulus the lexicographically smallest
  /// monic irreducible polynomial (constant term first) is used. The
  /// modulus is given as r coefficients c_0..c_{r-1} of the monic
  /// polynomial x^r + c_{r-1} x^{r-1} + ... + c_0.
  static Ring extension_field(std::uint32_t p, std::uint32_t r,
                              std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);
  static Ring modular(std::uint32_t n);
  static Ring product(const Ring& first, const Ring& second);

  RingKind kind() const;
  std::uint32_t order() const;
  std::uint32_t characteristic() const;
  /// Prime p for fields; 0 otherwise.
  std::uint32_t prime() const;
  /// Extension degree r for fields (1 for prime fields); 0 otherwise.
  std::uint32_t degree() const;
  bool is_field() const;
  /// Modulus coefficients c_0..c_{r-1} (extension fields only).
  const std::vector<std::uint32_t>& modulus() const;
  /// Components of a product ring.
  Ring first() const;
  Ring second() const;

  /// "Fp:13", "Fq:3^2", "Zn:25", "Zn:3xZn:5".
  std::string spec() const;

  // Code-level arithmetic. These are the hot-path primitives used by the
  // geometry and search code; operands must be valid codes of this ring.
  Code zero() const { return 0; }
  Code one() const;
  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const;
  Code mul(Code a, Code b) const;
  Code sqr(Code a) const { return mul(a, a); }
  Code pow(Code a, std::uint64_t e) const;
  /// Multiplicative inverse, or nullopt for non-units.
  std::optional<Code> inv(Code a) const;
  bool is_unit(Code a) const;
  bool is_square(Code a) const;
  /// Smallest code s with s*s == a, if a is a square.
  std::optional<Code> sqrt(Code a) const;
  /// Embeds the integer k via k * 1.
  Code from_int(std::int64_t k) const;

  /// Exact square set, in ascending code order.
  const std::vector<Code>& squares() const;
  /// Square indicator indexed by code.
  std::span<const std::uint8_t> square_indicator() const;

  /// Coefficient vector (constant term first) for extension fields; a
  /// single residue for Z_n and F_p; component codes for products.
  std::vector<std::uint32_t> digits(Code a) const;
  /// Inverse of digits(). Throws RingError on out-of-range input.
  Code from_digits(std::span<const std::uint32_t> digits) const;

  RingElement element(Code c) const;
  RingElement zero_element() const;
  RingElement one_element() const;

  bool operator==(const Ring& other) const;

 private:
  explicit Ring(std::shared_ptr<const detail::RingData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::RingData> data_;
};

/// Parses the ring specifier grammar: "Fp:<p>", "Fq:<p>^<r>", "Zn:<n>",
/// and "<spec>x<spec>" for products.
Ring make_ring(std::string_view spec);

class RingElement {
 public:
  using Code = Ring::Code;

  RingElement(Ring ring, Code code);

  const Ring& ring() const { return ring_; }
  Code code() const { return code_; }

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;
  RingElement pow(std::uint64_t e) const;
  std::optional<RingElement> inv() const;
  bool is_unit() const;
  bool is_zero() const { return code_ == 0; }

  bool operator==(const RingElement& o) const { return code_ == o.code_ && ring_ == o.ring_; }
  std::strong_ordering operator<=>(const RingElement& o) const { return code_ <=> o.code_; }

 private:
  void check_same_ring(const RingElement& o) const;
  Ring ring_;
  Code code_;
};

// Free-function forms of the ring operations.
inline RingElement add(const RingElement& a, const RingElement& b) { return a + b; }
inline RingElement sub(const RingElement& a, const RingElement& b) { return a - b; }
inline RingElement mul(const RingElement& a, const RingElement& b) { return a * b; }
inline RingElement neg(const RingElement& a) { return -a; }
inline std::optional<RingElement> inv(const RingElement& a) { return a.inv(); }
inline bool is_unit(const RingElement& a) { return a.is_unit(); }

const std::vector<Ring::Code>& squares(const Ring& ring);
bool is_square(const Ring& ring, const RingElement& x);

/// Canonical square root of -1: the solution with the smallest code.
std::optional<RingElement> sqrt_of_minus_one(const Ring& ring);

/// x^(p^j). Fields only.
RingElement frobenius(const RingElement& x, std::uint32_t j);

bool is_prime(std::uint64_t n);

}  // namespace ipset
