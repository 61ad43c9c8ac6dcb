#include <doctest.h>

#include <filesystem>

#include "heronwaist/errors.hpp"
#include "heronwaist/io.hpp"
#include "heronwaist/render.hpp"
#include "instances.hpp"

using namespace heronwaist;
using namespace heronwaist::testing;
namespace fs = std::filesystem;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = haystack.find(needle); at != std::string::npos; at = haystack.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("render") {
  TEST_CASE("drawing of the reference optimum") {
    const std::string svg = render_svg(example1(), example1_table());
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count(svg, "<circle class=\"set chain-set ball\"") == 4);
    CHECK(count(svg, "<rect class=\"set hub-set box\"") == 1);
    CHECK(count(svg, "<polygon class=\"chain\"") == 1);
    CHECK(count(svg, "class=\"hub-ray\"") == 4);
    for (const char* label : {">a1<", ">a2<", ">a3<", ">a4<", ">x<"}) CHECK(count(svg, label) == 1);

    const auto start = svg.find("points=\"") + 8;
    const std::string points = svg.substr(start, svg.find('"', start) - start);
    CHECK(count(points, ",") == 4);
    CHECK(render_svg(example1(), example1_table()) == svg);
  }

  TEST_CASE("zero radial weights draw no ray") {
    std::vector<ConvexSet> sets{ConvexSet::ball(pt({0, 0}), 1), ConvexSet::ball(pt({5, 0}), 1),
                                ConvexSet::halfspace(pt({0, -1}), -4)};
    const Problem p(sets, ConvexSet::singleton(pt({2, 2})), Weights{{1, 1, 1}, {1, 0, 1}});
    const auto u = Configuration::from_points({pt({0, 0}), pt({5, 0}), pt({2, 4})}, pt({2, 2}));
    const std::string svg = render_svg(p, u);
    CHECK(count(svg, "class=\"hub-ray\"") == 2);
    CHECK(count(svg, "<line class=\"set chain-set halfspace\"") == 1);
  }

  TEST_CASE("point and edge table") {
    const std::string table = configuration_table(example2(), example2_table());
    CHECK(table.rfind("type,a,b,values\n", 0) == 0);
    CHECK(table.find("point,a2,,4 5 4\n") != std::string::npos);
    CHECK(table.find("edge,a5,a1,0.8\n") != std::string::npos);
    CHECK(table.find("edge,a3,x,1.5\n") != std::string::npos);
    CHECK(count(table, "\npoint,") == 6);
    CHECK(count(table, "\nedge,") == 10);
  }

  TEST_CASE("three dimensions fall back to the table") {
    const fs::path dir = fs::temp_directory_path() / "heronwaist_render";
    fs::remove_all(dir);
    fs::create_directories(dir);
    CHECK_THROWS_AS(render_svg(example2(), example2_table()), UnsupportedDimension);
    CHECK_THROWS_AS(write_svg(example2(), example2_table(), dir / "out.svg"), UnsupportedDimension);
    CHECK_FALSE(fs::exists(dir / "out.svg"));
    REQUIRE(fs::exists(dir / "out.csv"));
    CHECK(read_file(dir / "out.csv") == configuration_table(example2(), example2_table()));

    write_svg(example1(), example1_table(), dir / "plane.svg");
    CHECK(read_file(dir / "plane.svg") == render_svg(example1(), example1_table()));
    fs::remove_all(dir);
  }

  TEST_CASE("configuration must fit the problem") {
    CHECK_THROWS_AS(render_svg(example1(), Configuration(2, 3)), InvalidInput);
    CHECK_THROWS_AS(render_svg(example1(), Configuration()), InvalidInput);
    CHECK_THROWS_AS(configuration_table(example1(), Configuration(3, 4)), InvalidInput);
  }
}
