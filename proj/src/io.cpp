#include "ipset/io.hpp"

#include <fstream>
#include <sstream>

namespace ipset {

namespace {

constexpr std::uint32_t kMaxPlotOrder = 256;

void check_plot(const PointSet& points) {
  if (points.ring().order() > kMaxPlotOrder) throw DocumentError("plots support rings of order at most 256");
  for (const auto& p : points)
    if (p.dim() != 2) throw DocumentError("plots need points of the plane");
}

bool flat(const Json& j) {
  if (j.is_object()) return false;
  if (!j.is_array()) return true;
  for (const auto& e : j)
    if (!flat(e)) return false;
  return true;
}

void format_into(const Json& j, int indent, std::string& out) {
  if (flat(j)) {
    std::string s = j.dump();
    if (!j.is_array() || j.empty() || s.size() + indent <= 100) {
      out += s;
      return;
    }
  }
  const std::string pad(indent + 2, ' ');
  const bool obj = j.is_object();
  out += obj ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (obj) out += Json(it.key()).dump() + ": ";
    format_into(*it, indent + 2, out);
  }
  out += "\n" + std::string(indent, ' ') + (obj ? "}" : "]");
}

}  // namespace

std::string format_json(const Json& j) {
  std::string out;
  format_into(j, 0, out);
  return out + "\n";
}

bool PointSetDocument::operator==(const PointSetDocument& o) const {
  return schema_version == o.schema_version && ring() == o.ring() && points.points() == o.points.points() &&
         convention == o.convention && labels == o.labels && metadata == o.metadata && extra == o.extra;
}

std::string convention_name(Convention c) { return c == Convention::Quadrance ? "quadrance" : "default"; }

Convention parse_convention(const std::string& s) {
  if (s == "default") return Convention::Default;
  if (s == "quadrance") return Convention::Quadrance;
  throw DocumentError("unknown convention '" + s + "'");
}

Json encode_coordinate(const Ring& ring, Ring::Code c) {
  if (ring.kind() == RingKind::PrimeField || ring.kind() == RingKind::Modular) return c;
  return ring.digits(c);
}

Ring::Code decode_coordinate(const Ring& ring, const Json& j) {
  try {
    if (ring.kind() == RingKind::PrimeField || ring.kind() == RingKind::Modular) {
      if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= ring.order())
        throw DocumentError("coordinate " + j.dump() + " is not a residue of " + ring.spec());
      return j.get<Ring::Code>();
    }
    if (!j.is_array()) throw DocumentError("coordinate " + j.dump() + " must be a coefficient vector");
    std::vector<std::uint32_t> d;
    for (const auto& e : j) {
      if (!e.is_number_unsigned()) throw DocumentError("coefficient " + e.dump() + " must be a non-negative integer");
      d.push_back(e.get<std::uint32_t>());
    }
    return ring.from_digits(d);
  } catch (const RingError& e) {
    throw DocumentError(e.what());
  }
}

Json to_json(const PointSetDocument& doc) {
  Json j = Json::object();
  j["schema_version"] = doc.schema_version;
  j["ring"] = doc.ring().spec();
  j["convention"] = convention_name(doc.convention);
  Json pts = Json::array();
  for (const auto& p : doc.points) {
    Json c = Json::array();
    for (auto code : p.coords()) c.push_back(encode_coordinate(doc.ring(), code));
    pts.push_back(std::move(c));
  }
  j["points"] = std::move(pts);
  if (!doc.labels.is_null()) j["labels"] = doc.labels;
  if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
  for (const auto& [k, v] : doc.extra.items()) j[k] = v;
  return j;
}

PointSetDocument from_json(const Json& j) {
  if (!j.is_object()) throw DocumentError("document must be a JSON object");
  for (const char* key : {"schema_version", "ring", "points"})
    if (!j.contains(key)) throw DocumentError(std::string("missing field '") + key + "'");
  if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != PointSetDocument::kSchemaVersion)
    throw DocumentError("unsupported schema_version " + j["schema_version"].dump());
  if (!j["ring"].is_string()) throw DocumentError("field 'ring' must be a string");
  const Ring ring = [&] {
    try {
      return make_ring(j["ring"].get<std::string>());
    } catch (const RingError& e) {
      throw DocumentError(e.what());
    }
  }();
  Convention conv = Convention::Default;
  if (j.contains("convention")) {
    if (!j["convention"].is_string()) throw DocumentError("field 'convention' must be a string");
    conv = parse_convention(j["convention"].get<std::string>());
  }
  if (!j["points"].is_array()) throw DocumentError("field 'points' must be an array");
  PointSet pts(ring);
  for (const auto& jp : j["points"]) {
    if (!jp.is_array() || jp.empty()) throw DocumentError("point " + jp.dump() + " must be a non-empty array");
    std::vector<Ring::Code> c;
    for (const auto& jc : jp) c.push_back(decode_coordinate(ring, jc));
    if (!pts.empty() && pts[0].dim() != c.size()) throw DocumentError("points have different dimensions");
    if (!pts.insert(Point(ring, std::move(c)))) throw DocumentError("duplicate point " + jp.dump());
  }
  PointSetDocument doc(std::move(pts), conv);
  if (j.contains("labels")) doc.labels = j["labels"];
  if (j.contains("metadata")) doc.metadata = j["metadata"];
  for (const auto& [k, v] : j.items())
    if (k != "schema_version" && k != "ring" && k != "convention" && k != "points" && k != "labels" && k != "metadata")
      doc.extra[k] = v;
  return doc;
}

PointSetDocument read_pointset(std::istream& in) {
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

PointSetDocument read_pointset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open " + path);
  return read_pointset(in);
}

void write_pointset(const PointSetDocument& doc, std::ostream& out) { out << format_json(to_json(doc)); }

void write_pointset(const PointSetDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DocumentError("cannot write " + path);
  write_pointset(doc, out);
}

std::string plot_ascii(const PointSet& points) {
  check_plot(points);
  const std::uint32_t n = points.ring().order();
  std::vector<std::string> rows(n, std::string(2 * n - 1, ' '));
  for (auto& row : rows)
    for (std::uint32_t x = 0; x < n; ++x) row[2 * x] = '.';
  for (const auto& p : points) rows[n - 1 - p.y()][2 * p.x()] = '#';
  std::string out;
  for (const auto& row : rows) out += row + '\n';
  return out;
}

std::string plot_svg(const PointSet& points) {
  check_plot(points);
  constexpr int cell = 20;
  const int n = static_cast<int>(points.ring().order());
  const int size = n * cell;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
    << size << ' ' << size << "\">\n";
  s << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
  s << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (int i = 0; i < n; ++i) {
    const int c = i * cell + cell / 2;
    s << "<line x1=\"" << cell / 2 << "\" y1=\"" << c << "\" x2=\"" << size - cell / 2 << "\" y2=\"" << c << "\"/>\n";
    s << "<line x1=\"" << c << "\" y1=\"" << cell / 2 << "\" x2=\"" << c << "\" y2=\"" << size - cell / 2 << "\"/>\n";
  }
  s << "</g>\n<g fill=\"black\">\n";
  for (const auto& p : points) {
    const int cx = static_cast<int>(p.x()) * cell + cell / 2;
    const int cy = (n - 1 - static_cast<int>(p.y())) * cell + cell / 2;
    s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << cell / 3 << "\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace ipset
