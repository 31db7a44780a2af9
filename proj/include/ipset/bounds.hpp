#pragma once

// Closed-form values and bounds for the extremal quantities
//   I     largest integral point set in R^m
//   IBar  largest integral arc in R^2
//   IDot  largest integral set in general position in R^2
// used as oracles against search output.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ipset/ring.hpp"

namespace ipset {

enum class Quantity { I, IBar, IDot };

enum class ValueKind { Exact, Interval, Table, Unknown };

struct BoundsReport {
  Quantity quantity = Quantity::I;
  std::string ring;
  std::uint32_t dimension = 2;
  ValueKind kind = ValueKind::Unknown;
  /// lo == hi for exact and table values; both 0 when unknown.
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  /// Conjectured value, never mixed into lo/hi.
  std::optional<std::uint64_t> conjecture;
  /// Short tag naming the result the value rests on.
  std::string source;

  bool contains(std::uint64_t v) const { return kind != ValueKind::Unknown && lo <= v && v <= hi; }
};

/// Dimension m is used for I only; IBar and IDot are planar.
BoundsReport predict(Quantity quantity, const Ring& ring, std::uint32_t dimension = 2);

/// Largest general-position integral sets over F_p for the tabulated primes.
const std::map<std::uint32_t, std::uint32_t>& table1();

std::string to_string(Quantity q);
std::string to_string(ValueKind k);
/// Accepts "I", "Ibar", "Idot" (case-insensitive).
std::optional<Quantity> parse_quantity(std::string_view s);

}  // namespace ipset
