#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ipset/cli.hpp"
#include "ipset/constructions.hpp"
#include "ipset/io.hpp"

using namespace ipset;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ipset");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("ipset_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                  "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Io, CoordinateEncoding) {
  const Ring f29 = make_ring("Fp:29");
  PointSetDocument doc(PointSet(f29, {Point(f29, {1, 12})}));
  EXPECT_EQ(to_json(doc)["points"], Json::parse("[[1,12]]"));
  const Ring f9 = make_ring("Fq:3^2");
  const auto x = f9.from_digits(std::vector<std::uint32_t>{0, 1});
  PointSetDocument d9(PointSet(f9, {Point(f9, {x, f9.from_int(2)})}));
  EXPECT_EQ(to_json(d9)["points"], Json::parse("[[[0,1],[2,0]]]"));
}

TEST(Io, RoundTripPreservesEverything) {
  for (const char* spec : {"Fp:29", "Fq:3^2", "Zn:25", "Fp:3xZn:4"}) {
    const Ring r = make_ring(spec);
    PointSet pts(r);
    for (Ring::Code c = 0; c < r.order(); c += 2) pts.insert(Point(r, {c, r.sub(r.order() - 1, c)}));
    PointSetDocument doc(pts, Convention::Quadrance);
    doc.labels = Json::array({"a", "b"});
    doc.metadata = Json::object({{"family", "test"}});
    doc.extra["note"] = Json::object({{"kept", true}});
    std::stringstream s;
    write_pointset(doc, s);
    const auto back = read_pointset(s);
    EXPECT_TRUE(back == doc) << spec;
    EXPECT_EQ(back.extra["note"]["kept"], true);
    EXPECT_EQ(back.points.points(), pts.points());
    std::stringstream again;
    write_pointset(back, again);
    std::stringstream first;
    write_pointset(doc, first);
    EXPECT_EQ(again.str(), first.str());
  }
}

TEST(Io, SchemaViolations) {
  const char* bad[] = {
      R"({"ring":"Fp:7","points":[[1,2]]})",
      R"({"schema_version":2,"ring":"Fp:7","points":[[1,2]]})",
      R"({"schema_version":1,"ring":"Fp:7","points":[[1,7]]})",
      R"({"schema_version":1,"ring":"Fp:7","points":[[1,-1]]})",
      R"({"schema_version":1,"ring":"Fp:7","points":[[1,2],[3]]})",
      R"({"schema_version":1,"ring":"Fp:7","points":[[]]})",
      R"({"schema_version":1,"ring":"Fq:3^2","points":[[1,2]]})",
      R"({"schema_version":1,"ring":"Fq:3^2","points":[[[0,3],[0,0]]]})",
      R"({"schema_version":1,"ring":"Qp:7","points":[]})",
      R"({"schema_version":1,"ring":"Fp:7","points":[[1,2]],"convention":"odd"})",
      R"({"schema_version":1,"ring":"Fp:7","points":{}})",
      R"([1,2])",
  };
  for (const char* s : bad) {
    std::istringstream in(s);
    EXPECT_THROW(read_pointset(in), std::invalid_argument) << s;
  }
  std::istringstream garbage("{not json");
  EXPECT_THROW(read_pointset(garbage), std::exception);
}

TEST(Io, AsciiPlotOfCross) {
  const Ring r = make_ring("Fp:29");
  const auto cross = cross_set(r);
  const auto text = plot_ascii(cross);
  std::vector<std::string> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 29u);
  std::size_t dots = 0;
  for (std::size_t i = 0; i < 29; ++i) {
    const std::uint32_t y = 28 - static_cast<std::uint32_t>(i);
    ASSERT_EQ(rows[i].size(), 2u * 29 - 1);
    for (std::uint32_t x = 0; x < 29; ++x) {
      const bool mark = rows[i][2 * x] == '#';
      dots += mark;
      EXPECT_EQ(mark, cross.contains(Point(r, {x, y}))) << x << "," << y;
    }
  }
  EXPECT_EQ(dots, 29u);
}

TEST(Io, SvgPlot) {
  const Ring r = make_ring("Fp:7");
  const auto svg = plot_svg(line_set(r));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t circles = 0;
  for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
  EXPECT_EQ(circles, 7u);
}

TEST(Cli, ConstructThenVerify) {
  TempDir dir;
  const auto path = dir.file("cross.json");
  ASSERT_EQ(run({"construct", "--ring", "Fp:29", "--family", "cross", "-o", path}).code, kExitOk);
  const auto v = run({"verify", path, "--expect-size", "29", "--expect-integral", "true", "--expect-maximal", "true"});
  EXPECT_EQ(v.code, kExitOk) << v.err;
  const auto rep = Json::parse(v.out);
  EXPECT_EQ(rep["integral"], true);
  EXPECT_EQ(rep["size"], 29);
  EXPECT_EQ(rep["maximal"], true);
  EXPECT_EQ(run({"verify", path, "--expect-size", "30"}).code, kExitMismatch);
  EXPECT_EQ(run({"verify", path, "--expect-arc", "true"}).code, kExitMismatch);
}

TEST(Cli, ConstructFamilies) {
  const std::vector<std::vector<std::string>> cases = {
      {"Fp:7", "line"},       {"Fq:3^2", "subfield"}, {"Fp:11", "circle"}, {"Zn:25", "zn:i"},
      {"Zn:15", "product"},   {"Fp:3xFp:5", "product"},
      {"Fq:2^2", "product"},  {"Zn:75", "product"},
  };
  for (const auto& c : cases) {
    const auto res = run({"construct", "--ring", c[0], "--family", c[1]});
    ASSERT_EQ(res.code, kExitOk) << c[0] << " " << c[1] << res.err;
    std::istringstream in(res.out);
    const auto doc = read_pointset(in);
    EXPECT_TRUE(classify(doc.points).integral) << c[0] << " " << c[1];
  }
  for (const char* fam : {"zn:ii", "zn:iii"}) {
    const auto res = run({"construct", "--ring", "Zn:25", "--family", fam});
    ASSERT_EQ(res.code, kExitOk) << fam;
    std::istringstream in(res.out);
    const auto doc = read_pointset(in);
    EXPECT_EQ(doc.points.size(), 125u);
    EXPECT_FALSE(classify(doc.points).integral) << fam;
  }
  EXPECT_EQ(run({"construct", "--ring", "Fp:7", "--family", "cross"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"construct", "--ring", "Fp:7", "--family", "spiral"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"construct", "--ring", "Fp:8", "--family", "line"}).code, kExitInvalidInput);
}

TEST(Cli, SearchFindsSevenOverF29) {
  TempDir dir;
  const auto path = dir.file("w.json");
  const auto res = run({"search", "--ring", "Fp:29", "--mode", "general", "-o", path});
  ASSERT_EQ(res.code, kExitOk) << res.err;
  EXPECT_EQ(Json::parse(res.out)["best_cardinality"], 7);
  const auto doc = read_pointset(path);
  EXPECT_EQ(doc.points.size(), 7u);
  EXPECT_TRUE(classify(doc.points).general_position);
  // Determinism: identical flags give identical bytes.
  const auto again = run({"search", "--ring", "Fp:29", "--mode", "general", "--parallel", "2"});
  EXPECT_EQ(Json::parse(again.out)["witnesses"], Json::parse(res.out)["witnesses"]);
  EXPECT_EQ(run({"search", "--ring", "Fp:29", "--mode", "general"}).out, res.out);
}

TEST(Cli, SearchResourceLimit) {
  EXPECT_EQ(run({"search", "--ring", "Fp:61", "--mode", "general", "--node-limit", "100"}).code, kExitResourceLimit);
  EXPECT_EQ(run({"search", "--ring", "Fp:61", "--mode", "integral"}).code, kExitResourceLimit);
  EXPECT_EQ(run({"search", "--ring", "Zn:9", "--mode", "arc"}).code, kExitInvalidInput);
  EXPECT_EQ(run({"search", "--ring", "Fp:7", "--mode", "round"}).code, kExitInvalidInput);
}

TEST(Cli, AutoBoundsTable) {
  const auto a = run({"auto", "--ring", "Fq:3^2"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  const auto ja = Json::parse(a.out);
  EXPECT_EQ(ja["generated_order"], 192);
  EXPECT_EQ(ja["full_order"], 192);
  const auto b = run({"bounds", "--ring", "Fp:13", "--quantity", "Ibar"});
  ASSERT_EQ(b.code, kExitOk);
  const auto jb = Json::parse(b.out);
  EXPECT_EQ(jb["lo"], 6);
  EXPECT_EQ(jb["hi"], 8);
  EXPECT_EQ(run({"bounds", "--ring", "Fp:13", "--quantity", "K"}).code, kExitInvalidInput);
  const auto t = run({"table", "--max-p", "47"});
  EXPECT_EQ(t.code, kExitOk) << t.out;
  EXPECT_EQ(Json::parse(t.out)["diffs"], 0);
}

TEST(Cli, Plot) {
  TempDir dir;
  const auto path = dir.file("c.json");
  ASSERT_EQ(run({"construct", "--ring", "Fp:29", "--family", "cross", "-o", path}).code, kExitOk);
  const auto a = run({"plot", path});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, plot_ascii(cross_set(make_ring("Fp:29"))));
  const auto svg = dir.file("c.svg");
  ASSERT_EQ(run({"plot", path, "--format", "svg", "-o", svg}).code, kExitOk);
  EXPECT_EQ(slurp(svg), plot_svg(cross_set(make_ring("Fp:29"))));
}

TEST(Cli, InvalidInput) {
  TempDir dir;
  const auto path = dir.file("bad.json");
  std::ofstream(path) << R"({"schema_version":1,"ring":"Fp:7","points":[[9,9]]})";
  EXPECT_EQ(run({"verify", path}).code, kExitInvalidInput);
  EXPECT_EQ(run({"verify", dir.file("missing.json")}).code, kExitInvalidInput);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInvalidInput);
  EXPECT_EQ(run({}).code, kExitInvalidInput);
}

TEST(Cli, Executable) {
  const std::string cmd = std::string(IPSET_CLI_PATH) + " bounds --ring Zn:9 --quantity I > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  const std::string bad = std::string(IPSET_CLI_PATH) + " bounds --ring Zn:0 --quantity I > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), kExitInvalidInput);
}
