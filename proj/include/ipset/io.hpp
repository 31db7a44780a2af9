#pragma once

// JSON persistence of point sets and lattice plots.
//
// Document layout:
//   {"schema_version": 1, "ring": "Fp:29", "convention": "default",
//    "points": [[1, 12], ...], "labels": ..., "metadata": ...}
// Coordinates are canonical representatives: integers for F_p and Z_n,
// coefficient vectors (constant term first) for F_{p^r}, and component
// codes for product rings. Unknown top-level fields are kept verbatim.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ipset/plane.hpp"

namespace ipset {

class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Json = nlohmann::ordered_json;

struct PointSetDocument {
  static constexpr int kSchemaVersion = 1;

  explicit PointSetDocument(PointSet pts, Convention conv = Convention::Default)
      : points(std::move(pts)), convention(conv) {}

  int schema_version = kSchemaVersion;
  PointSet points;
  Convention convention;
  Json labels;    // null when absent
  Json metadata;  // null when absent
  Json extra = Json::object();

  const Ring& ring() const { return points.ring(); }
  bool operator==(const PointSetDocument& o) const;
};

Json encode_coordinate(const Ring& ring, Ring::Code c);
Ring::Code decode_coordinate(const Ring& ring, const Json& j);

Json to_json(const PointSetDocument& doc);
PointSetDocument from_json(const Json& j);

PointSetDocument read_pointset(std::istream& in);
PointSetDocument read_pointset(const std::string& path);
void write_pointset(const PointSetDocument& doc, std::ostream& out);
void write_pointset(const PointSetDocument& doc, const std::string& path);

/// Indented JSON; arrays without nested objects stay on one line when short.
std::string format_json(const Json& j);

std::string convention_name(Convention c);
Convention parse_convention(const std::string& s);

/// Text grid, row y = |R|-1 on top, '#' for points and '.' elsewhere.
std::string plot_ascii(const PointSet& points);
/// SVG lattice with 20px cells and the origin at the bottom left.
std::string plot_svg(const PointSet& points);

}  // namespace ipset
