#include "ipset/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>

#include "CLI11.hpp"
#include "ipset/automorph.hpp"
#include "ipset/bounds.hpp"
#include "ipset/constructions.hpp"
#include "ipset/io.hpp"
#include "ipset/search.hpp"

namespace ipset {

namespace {

class Mismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint32_t default_threads() {
  if (const char* env = std::getenv("IPSET_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<std::uint32_t>(v);
  }
  return 1;
}

// Writes to the named file, or to out when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DocumentError("cannot write " + path);
  f << text;
}

std::string dump(const Json& j) { return format_json(j); }

std::pair<std::uint32_t, std::uint32_t> odd_prime_power(std::uint32_t n) {
  std::uint32_t p = 2;
  while (n % p != 0) ++p;
  std::uint32_t r = 0, m = n;
  while (m % p == 0) {
    m /= p;
    ++r;
  }
  if (m != 1 || p == 2) throw ConstructionError("Z_n families need n = p^r with p an odd prime");
  return {p, r};
}

PointSet full_plane(const Ring& r) {
  if (std::uint64_t{r.order()} * r.order() > (1u << 20)) throw ConstructionError("plane of " + r.spec() + " is too large");
  PointSet out(r);
  for (Ring::Code x = 0; x < r.order(); ++x)
    for (Ring::Code y = 0; y < r.order(); ++y) out.insert(Point(r, {x, y}));
  return out;
}

// Largest known integral set for one factor of a product construction.
PointSet factor_set(const Ring& r) {
  if (r.characteristic() == 2) return full_plane(r);
  switch (r.kind()) {
    case RingKind::PrimeField:
    case RingKind::ExtensionField:
      return r.order() % 4 == 1 ? cross_set(r) : line_set(r);
    case RingKind::Product:
      return product_set(factor_set(r.first()), factor_set(r.second()));
    case RingKind::Modular: {
      std::vector<std::uint32_t> parts;
      std::uint32_t n = r.order();
      for (std::uint32_t p = 2; p <= n; ++p) {
        if (n % p) continue;
        std::uint32_t pe = 1;
        while (n % p == 0) {
          n /= p;
          pe *= p;
        }
        parts.push_back(pe);
      }
      if (parts.size() == 1) {
        const std::uint32_t pe = parts[0];
        if (is_prime(pe)) return pe % 4 == 1 ? cross_set(r) : line_set(r);
        if (pe % 2 == 0) return line_set(r);
        const auto [p, e] = odd_prime_power(pe);
        return zn_family(p, e, ZnFamily::Strip);
      }
      PointSet acc = factor_set(Ring::modular(parts[0]));
      for (std::size_t i = 1; i < parts.size(); ++i) acc = crt_flatten(product_set(acc, factor_set(Ring::modular(parts[i]))));
      return acc;
    }
  }
  throw ConstructionError("unsupported ring " + r.spec());
}

PointSet build_family(const Ring& r, const std::string& family, bool odd, bool rotated) {
  if (family == "line") return line_set(r);
  if (family == "cross") return cross_set(r);
  if (family == "subfield") return subfield_grid(r, rotated ? GridVariant::RotatedByRoot : GridVariant::Plain);
  if (family == "circle") return odd ? circle_set_odd(r) : circle_set(r);
  if (family == "zn:i" || family == "zn:ii" || family == "zn:iii") {
    if (r.kind() != RingKind::Modular) throw ConstructionError("Z_n families need a ring Zn:<p^r>");
    const auto [p, e] = odd_prime_power(r.order());
    const ZnFamily f = family == "zn:i" ? ZnFamily::Strip : family == "zn:ii" ? ZnFamily::Skew : ZnFamily::LiftedCross;
    return zn_family(p, e, f);
  }
  if (family == "product") return factor_set(r);
  throw ConstructionError("unknown family '" + family + "'");
}

Json classification_json(const PointSetDocument& doc) {
  const auto c = classify(doc.points, doc.convention);
  Json j = Json::object();
  j["ring"] = doc.ring().spec();
  j["convention"] = convention_name(doc.convention);
  j["size"] = doc.points.size();
  j["integral"] = c.integral;
  j["arc"] = c.arc;
  j["general_position"] = c.general_position;
  j["maximal"] = c.integral && is_maximal(doc.points, doc.convention);
  j["max_line_multiplicity"] = c.max_line_multiplicity;
  j["exact_predicates"] = c.exact_predicates;
  return j;
}

SearchMode parse_mode(const std::string& m) {
  if (m == "integral") return SearchMode::MaxIntegral;
  if (m == "arc") return SearchMode::MaxArc;
  if (m == "general") return SearchMode::MaxGeneralPosition;
  throw std::invalid_argument("unknown mode '" + m + "'");
}

std::string mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::MaxIntegral:
      return "integral";
    case SearchMode::MaxArc:
      return "arc";
    case SearchMode::MaxGeneralPosition:
      return "general";
  }
  return "?";
}

Json points_json(const PointSet& s) {
  Json pts = Json::array();
  for (const auto& p : s) {
    Json c = Json::array();
    for (auto code : p.coords()) c.push_back(encode_coordinate(s.ring(), code));
    pts.push_back(std::move(c));
  }
  return pts;
}

Json report_json(const BoundsReport& b) {
  Json j = Json::object();
  j["quantity"] = to_string(b.quantity);
  j["ring"] = b.ring;
  j["dimension"] = b.dimension;
  j["kind"] = to_string(b.kind);
  if (b.kind == ValueKind::Unknown) {
    j["lo"] = nullptr;
    j["hi"] = nullptr;
  } else {
    j["lo"] = b.lo;
    j["hi"] = b.hi;
  }
  j["conjecture"] = b.conjecture ? Json(*b.conjecture) : Json(nullptr);
  j["source"] = b.source;
  return j;
}

Json matrix_json(const Ring& r, const Matrix2& m) {
  return Json::array({encode_coordinate(r, m.a), encode_coordinate(r, m.b), encode_coordinate(r, m.c),
                      encode_coordinate(r, m.d)});
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral point sets over finite rings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ipset 1.0");

  std::string ring_spec, family, output, input, mode = "general", format = "ascii", quantity;
  bool quadrance = false, odd = false, rotated = false, no_pruning = false, progress = false;
  std::uint32_t parallel = default_threads(), witnesses = 1, dim = 2, max_p = 0, min_p = 2;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::size_t> expect_size;
  std::optional<bool> expect_integral, expect_arc, expect_general, expect_maximal;

  auto* construct = app.add_subcommand("construct", "Emit an explicit integral point set");
  construct->add_option("--ring", ring_spec, "Ring specifier, e.g. Fp:29, Fq:3^2, Zn:25")->required();
  construct->add_option("--family", family, "line|cross|subfield|circle|zn:i|zn:ii|zn:iii|product")->required();
  construct->add_flag("--quadrance", quadrance, "Require nonzero square distances");
  construct->add_flag("--odd", odd, "Circle family: odd powers of the generator");
  construct->add_flag("--rotated", rotated, "Subfield family: rotate by a root of -1");
  construct->add_option("-o,--output", output, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Classify a point set document");
  verify->add_option("input", input, "Point set document")->required();
  verify->add_option("--expect-size", expect_size);
  verify->add_option("--expect-integral", expect_integral);
  verify->add_option("--expect-arc", expect_arc);
  verify->add_option("--expect-general", expect_general);
  verify->add_option("--expect-maximal", expect_maximal);

  auto* search = app.add_subcommand("search", "Exhaustive extremal search");
  search->add_option("--ring", ring_spec)->required();
  search->add_option("--mode", mode, "integral|arc|general")->check(CLI::IsMember({"integral", "arc", "general"}));
  search->add_flag("--no-isomorph-pruning", no_pruning);
  search->add_option("--parallel", parallel)->check(CLI::Range(1u, 1024u));
  search->add_option("--node-limit", node_limit);
  search->add_option("--witnesses", witnesses)->check(CLI::Range(1u, 1000000u));
  search->add_flag("--quadrance", quadrance);
  search->add_flag("--progress", progress, "Report node counts on stderr");
  search->add_option("-o,--output", output, "Witness document");

  auto* autom = app.add_subcommand("auto", "Automorphism group orders");
  autom->add_option("--ring", ring_spec)->required();

  auto* bounds = app.add_subcommand("bounds", "Known values and bounds");
  bounds->add_option("--ring", ring_spec)->required();
  bounds->add_option("--quantity", quantity, "I|Ibar|Idot")->required();
  bounds->add_option("--dim", dim, "Dimension for I")->check(CLI::Range(1u, 64u));

  auto* table = app.add_subcommand("table", "Recompute the general-position table and diff it");
  table->add_option("--max-p", max_p)->required();
  table->add_option("--min-p", min_p);
  table->add_option("--parallel", parallel)->check(CLI::Range(1u, 1024u));
  table->add_flag("--no-isomorph-pruning", no_pruning);

  auto* plot = app.add_subcommand("plot", "Render a point set");
  plot->add_option("input", input)->required();
  plot->add_option("--format", format)->check(CLI::IsMember({"ascii", "svg"}));
  plot->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalidInput;
  }

  const Convention conv = quadrance ? Convention::Quadrance : Convention::Default;
  try {
    if (construct->parsed()) {
      const Ring r = make_ring(ring_spec);
      PointSetDocument doc(build_family(r, family, odd, rotated), conv);
      doc.metadata = Json::object({{"family", family}, {"size", doc.points.size()}});
      std::ostringstream s;
      write_pointset(doc, s);
      emit(output, s.str(), out);
      return kExitOk;
    }
    if (verify->parsed()) {
      const auto doc = read_pointset(input);
      const Json rep = classification_json(doc);
      out << dump(rep);
      std::vector<std::string> bad;
      if (expect_size && *expect_size != doc.points.size()) bad.push_back("size");
      auto check = [&](const std::optional<bool>& e, const char* key) {
        if (e && *e != rep[key].get<bool>()) bad.push_back(key);
      };
      check(expect_integral, "integral");
      check(expect_arc, "arc");
      check(expect_general, "general_position");
      check(expect_maximal, "maximal");
      for (const auto& b : bad) err << "mismatch: " << b << '\n';
      return bad.empty() ? kExitOk : kExitMismatch;
    }
    if (search->parsed()) {
      SearchConfig cfg(make_ring(ring_spec));
      cfg.mode = parse_mode(mode);
      cfg.convention = conv;
      cfg.isomorph_pruning = !no_pruning;
      cfg.parallel_width = parallel;
      cfg.node_limit = node_limit;
      cfg.witness_limit = witnesses;
      if (progress) cfg.progress = [&err](std::uint64_t n) { err << "nodes " << n << '\n'; };
      const auto res = run_search(cfg);
      Json summary = Json::object();
      summary["ring"] = cfg.ring.spec();
      summary["mode"] = mode_name(cfg.mode);
      summary["convention"] = convention_name(conv);
      summary["isomorph_pruning"] = cfg.isomorph_pruning;
      summary["parallel_width"] = cfg.parallel_width;
      summary["best_cardinality"] = res.best_cardinality;
      summary["nodes_expanded"] = res.nodes_expanded;
      summary["pruned_by_canon"] = res.pruned_by_canon;
      summary["complete"] = res.complete;
      Json ws = Json::array();
      for (const auto& w : res.witnesses) ws.push_back(points_json(w));
      summary["witnesses"] = ws;
      out << dump(summary);
      err << "wall time " << res.wall_time.count() << " s\n";
      if (!output.empty() && !res.witnesses.empty()) {
        PointSetDocument doc(res.witnesses.front(), conv);
        Json meta = summary;
        meta.erase("witnesses");
        doc.metadata = meta;
        std::ostringstream s;
        write_pointset(doc, s);
        emit(output, s.str(), out);
      }
      if (!res.complete) {
        err << "node limit reached; result is a lower bound\n";
        return kExitResourceLimit;
      }
      return kExitOk;
    }
    if (autom->parsed()) {
      const Ring r = make_ring(ring_spec);
      Json j = Json::object();
      j["ring"] = r.spec();
      const auto gens = generator_matrices(r);
      if (r.order() <= 49) {
        const auto g = generated_group(r);
        j["generated_order"] = g.order();
      } else {
        j["generated_order"] = nullptr;
      }
      if (r.is_field() && r.order() <= 13) {
        const auto f = full_delta_group(r);
        j["full_order"] = f.order();
        if (r.order() <= 49) j["equal"] = f.matrices == generated_group(r).matrices;
      } else {
        j["full_order"] = nullptr;
      }
      j["frobenius_powers"] = r.is_field() ? r.degree() : 1;
      Json gl = Json::array();
      for (const auto& m : gens) gl.push_back(matrix_json(r, m));
      j["generators"] = gl;
      out << dump(j);
      return kExitOk;
    }
    if (bounds->parsed()) {
      const auto q = parse_quantity(quantity);
      if (!q) throw std::invalid_argument("unknown quantity '" + quantity + "'");
      out << dump(report_json(predict(*q, make_ring(ring_spec), dim)));
      return kExitOk;
    }
    if (table->parsed()) {
      if (max_p > 256) throw SearchLimitError("table supports p <= 256");
      const auto& expected = table1();
      int diffs = 0;
      Json rows = Json::array();
      for (std::uint32_t p = std::max<std::uint32_t>(min_p, 2); p <= max_p; ++p) {
        if (!is_prime(p)) continue;
        SearchConfig cfg(Ring::prime_field(p));
        cfg.mode = SearchMode::MaxGeneralPosition;
        cfg.isomorph_pruning = !no_pruning;
        cfg.parallel_width = parallel;
        const auto res = run_search(cfg);
        Json row = Json::object();
        row["p"] = p;
        row["computed"] = res.best_cardinality;
        const auto it = expected.find(p);
        row["expected"] = it == expected.end() ? Json(nullptr) : Json(it->second);
        const bool ok = it == expected.end() || it->second == res.best_cardinality;
        row["status"] = it == expected.end() ? "new" : ok ? "match" : "diff";
        if (!ok) ++diffs;
        err << "p=" << p << " computed=" << res.best_cardinality << " (" << res.wall_time.count() << " s)\n";
        rows.push_back(std::move(row));
      }
      out << dump(Json::object({{"rows", rows}, {"diffs", diffs}}));
      return diffs == 0 ? kExitOk : kExitMismatch;
    }
    if (plot->parsed()) {
      const auto doc = read_pointset(input);
      emit(output, format == "svg" ? plot_svg(doc.points) : plot_ascii(doc.points), out);
      return kExitOk;
    }
  } catch (const SearchLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace ipset
