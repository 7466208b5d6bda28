#include "doctest.h"
#include "gen.hpp"
#include "loctile/pipeline.hpp"
#include "loctile/svg.hpp"

#include <regex>

using namespace loctile;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("elements, sets and rationals") {
  const auto h = GroupSpec::heisenberg();
  const auto g = make_element(h, {1, -2, 7});
  CHECK(to_json(g).dump() == "[1,-2,7]");
  CHECK(element_from_json(h, to_json(g), "x") == g);
  CHECK_THROWS_AS(element_from_json(h, Json::parse("[1,2]"), "x"), FormatError);
  CHECK_THROWS_WITH(element_from_json(h, Json::parse("[1,2,\"a\"]"), "S"), "field 'S': expected an integer");

  const FiniteSubset s(h, {g, identity(h), make_element(h, {0, 0, -1})});
  CHECK(to_json(s).dump() == "[[0,0,-1],[0,0,0],[1,-2,7]]");
  CHECK(subset_from_json(h, Json::parse("[[1,-2,7],[0,0,0],[0,0,-1],[0,0,0]]"), "S") == s);

  CHECK(to_json(Rational(-3, 12)).dump() == "\"-1/4\"");
  CHECK(rational_from_json(Json::parse("\"2/5\""), "r") == Rational(2, 5));
  CHECK(rational_from_json(Json::parse("0.2"), "r") == Rational(1, 5));
  CHECK(rational_from_json(Json::parse("3"), "r") == Rational(3));
  CHECK_THROWS_AS(rational_from_json(Json::parse("\"x/2\""), "r"), FormatError);

  CHECK(group_from_name("Z3") == GroupSpec::lattice(3));
  CHECK(group_from_name("heisenberg") == h);
  CHECK_THROWS_WITH(group_from_name("Z9"), "field 'group': unknown group 'Z9'");
}

TEST_CASE("tiling, coloring and witness round trips") {
  gen::Rng rng(2024);
  const auto z1 = GroupSpec::lattice(1);
  OwOptions opt;
  const auto p = ow_parameters(z1, FiniteSubset(z1, {identity(z1), make_element(z1, {1})}), Rational(9, 20), opt);
  for (int trial = 0; trial < 4; ++trial) {
    const auto coloring = seeded_coloring(cube(z1, 300), p.base_set, rng(), 0.1);
    const auto back = coloring_from_json(Json::parse(dump(to_json(coloring))));
    CHECK(back == coloring);

    const auto t = ow_quasi_tiling(coloring, p);
    CHECK(tiling_from_json(Json::parse(dump(to_json(t)))) == t);

    const auto a = indicator(gen::subset_of(rng, t.footprint(), 0.2));
    const auto b = indicator(t.footprint());
    bool feasible = true;
    SubequivalenceWitness w;
    try {
      w = comparison_from_tiling(t, a, b);
    } catch (const ComparisonError&) {
      feasible = false;
    }
    if (feasible) CHECK(witness_from_json(Json::parse(dump(witness_to_json(z1, w)))) == w);
  }

  const auto h = GroupSpec::heisenberg();
  const std::pair<std::int64_t, std::int64_t> bounds[] = {{-1, 1}, {-1, 1}, {-8, 8}};
  const auto ht = base_lattice_tiling(box(h, bounds), 4);
  CHECK(tiling_from_json(Json::parse(dump(to_json(ht)))) == ht);

  ApproximateTiling no_interior = ht;
  no_interior.interior.reset();
  const auto j = to_json(no_interior);
  CHECK_FALSE(j.contains("interior"));
  CHECK(tiling_from_json(j) == no_interior);
}

TEST_CASE("json output is key-sorted and stable") {
  const auto t = base_lattice_tiling(cube(GroupSpec::lattice(2), 8), 4);
  const auto text = dump(to_json(t));
  CHECK(text == dump(to_json(tiling_from_json(Json::parse(text)))));
  const auto pd = text.find("\"D\""), pg = text.find("\"group\""), pi = text.find("\"interior\""),
             pt = text.find("\"tiles\""), pw = text.find("\"window\"");
  CHECK(pd < pg);
  CHECK(pg < pi);
  CHECK(pi < pt);
  CHECK(pt < pw);
  CHECK(text.back() == '\n');
}

TEST_CASE("malformed documents name the field") {
  CHECK_THROWS_WITH(tiling_from_json(Json::parse(R"({"group":"Z1","window":[[0]]})")), "field 'D': missing");
  CHECK_THROWS_WITH(tiling_from_json(Json::parse(R"({"group":"Z1","window":[[0]],"D":[[0]],"tiles":[[[0]]]})")),
                    "field 'tiles': expected [center, shape] pairs");
  CHECK_THROWS_WITH(coloring_from_json(Json::parse(R"({"group":"Z1","F":[[0]],"domain":[[0]],"palette":1,"colors":[]})")),
                    "field 'colors': expected one entry per domain point");
}

TEST_CASE("svg rendering") {
  const auto z2 = GroupSpec::lattice(2);
  const auto lat = base_lattice_tiling(cube(z2, 64), 4);
  REQUIRE(lat.tiles.size() == 256);
  const auto svg = render_svg(lat);
  CHECK(count_of(svg, "<path class=\"tile\"") == 256);
  CHECK(count_of(svg, "class=\"remainder\"") == 0);
  CHECK(svg.find("width=\"512\"") != std::string::npos);
  CHECK(svg == render_svg(lat));
  // Square tiles trace to four corners each.
  const std::regex square("d=\"M[0-9]+ [0-9]+L[0-9]+ [0-9]+L[0-9]+ [0-9]+L[0-9]+ [0-9]+Z\"");
  CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), square), std::sregex_iterator()) == 256);

  // An annulus traces to two loops; the remainder is one black path.
  std::vector<Element> ring;
  for (std::int64_t x = 0; x < 3; ++x)
    for (std::int64_t y = 0; y < 3; ++y)
      if (x != 1 || y != 1) ring.push_back(make_element(z2, {x, y}));
  const FiniteSubset shape(z2, ring);
  ApproximateTiling annulus{cube(z2, 5), shape, {{make_element(z2, {1, 1}), shape}}, std::nullopt};
  const auto s2 = render_svg(annulus);
  CHECK(count_of(s2, "<path class=\"tile\"") == 1);
  CHECK(count_of(s2, "class=\"remainder\"") == 1);
  // Two loops for the tile; the remainder is the outer frame (two) and the hole (one).
  CHECK(count_of(s2, "Z") == 5);
  CHECK(s2.find(tile_fill(make_element(z2, {1, 1}))) != std::string::npos);
  CHECK(tile_fill(make_element(z2, {1, 1})) != tile_fill(make_element(z2, {1, 2})));

  CHECK_THROWS_AS(render_svg(base_lattice_tiling(cube(GroupSpec::lattice(1), 8), 2)), TilingError);
}

TEST_CASE("run config validation") {
  auto base = Json::parse(R"({"group":"Z1","window":[[0,99]],"K":1,"delta":"1/5","base_N":10})");
  CHECK(parse_run_config(base).window.size() == 100);
  CHECK(parse_run_config(base).k.size() == 3);

  auto bad = base;
  bad["delta"] = "1/2";
  CHECK_THROWS_WITH(parse_run_config(bad), "field 'delta': value 1/2 outside (0,1/2)");
  bad = base;
  bad["kappa"] = 0.7;
  CHECK_THROWS_WITH(parse_run_config(bad), doctest::Contains("field 'kappa'"));
  bad = base;
  bad["window"] = Json::parse("[[5,1]]");
  CHECK_THROWS_WITH(parse_run_config(bad), "field 'window': empty window");
  bad = base;
  bad.erase("K");
  CHECK_THROWS_WITH(parse_run_config(bad), "field 'K': missing");
  bad = base;
  bad["coloring"] = Json::parse(R"({"mode":"random"})");
  CHECK_THROWS_WITH(parse_run_config(bad), doctest::Contains("field 'coloring.mode'"));
  bad = base;
  bad["family"] = "spheres";
  CHECK_THROWS_WITH(parse_run_config(bad), "field 'family': unknown family 'spheres'");
}
