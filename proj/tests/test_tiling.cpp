#include "doctest.h"
#include "gen.hpp"
#include "loctile/tiling.hpp"

#include <cmath>

using namespace loctile;

namespace {

const GroupSpec kZ = GroupSpec::lattice(1);

Element z(std::int64_t x) { return make_element(kZ, {x}); }

FiniteSubset interval(std::int64_t lo, std::int64_t hi) {
  std::vector<Element> v;
  for (auto x = lo; x < hi; ++x) v.push_back(z(x));
  return FiniteSubset(kZ, v);
}

// Floating-point evaluation with a wide margin, used as an independent check.
long double beta_lhs(long double eps, long n, long double beta) {
  return (1 - std::pow(1 - (1 + beta) * eps, static_cast<long double>(n))) / (1 + beta);
}

}  // namespace

TEST_CASE("ow level count and beta") {
  CHECK(ow_level_count(Rational(1, 10)) == 22);
  CHECK(std::pow(0.9L, 22) < 0.1L);
  CHECK(std::pow(0.9L, 21) >= 0.1L);
  CHECK(ow_level_count(Rational(499, 1000)) == 2);
  CHECK(ow_level_count(Rational(1, 40)) == 146);

  const auto beta = ow_beta(Rational(1, 10), 22);
  CHECK(ow_beta_admissible(Rational(1, 10), 22, beta));
  CHECK(beta_lhs(0.1L, 22, to_double(beta)) > 0.9L);
  CHECK_FALSE(ow_beta_admissible(Rational(1, 10), 22, beta * Rational(2)));
  const auto b2 = ow_beta(Rational(499, 1000), 2);
  CHECK(beta_lhs(0.499L, 2, to_double(b2)) > 0.501L);
}

TEST_CASE("ow parameters on Z") {
  OwOptions opt;
  opt.max_scale_parameter = 400;
  const auto p = ow_parameters(kZ, interval(-1, 2), Rational(1, 5), opt);
  CHECK(p.eps == Rational(1, 40));
  CHECK(p.n == 146);
  CHECK(p.eps * (1 + p.delta) < Rational(1));
  CHECK(ow_beta_admissible(p.eps, p.n, p.beta));
  // (N-2)/N > 39/40 first holds at N = 81; the nested scale is out of reach.
  REQUIRE(p.scales.size() == 1);
  CHECK(p.scales[0] == interval(0, 81));
  CHECK_FALSE(p.nesting_certified);
  CHECK(p.base_set == interval(-80, 81));
  CHECK(p.palette == 161);
  CHECK(p.level_scale(1) == p.scales[0]);
  CHECK(p.level_scale(p.n) == p.scales[0]);

  OwOptions loose = opt;
  loose.nesting_tolerance = Rational(1, 4);
  const auto q = ow_parameters(kZ, interval(-1, 2), Rational(1, 5), loose);
  REQUIRE(q.scales.size() >= 2);
  for (std::size_t j = 1; j < q.scales.size(); ++j) {
    CHECK(is_invariant(q.scales[j], q.scales[0], Rational(1)).passes);
    for (std::size_t i = 0; i < j; ++i) {
      CHECK(is_invariant(q.scales[j], inverse_set(q.scales[i]), Rational(1, 4)).passes);
    }
    CHECK(is_invariant(q.scales[j], interval(-1, 2), q.eps).passes);
  }
  CHECK(q.level_scale(1) == q.scales.back());

  CHECK_THROWS(ow_parameters(kZ, interval(-1, 2), Rational(1, 2), opt));
  CHECK_THROWS(ow_parameters(kZ, interval(-1, 2), Rational(0), opt));
}

TEST_CASE("ow quasi-tiling on Z") {
  OwOptions opt;
  opt.max_scale_parameter = 250;
  const auto k = interval(-1, 2);
  const Rational delta(1, 5);
  const auto p = ow_parameters(kZ, k, delta, opt);

  const auto small = interval(0, 50);
  const auto none = ow_quasi_tiling(greedy_coloring(small, p.base_set), p);
  CHECK(none.tiles.empty());
  CHECK(verify_tiling(none, k, delta).covering_fraction == Rational(0));

  gen::Rng rng(6);
  for (int trial = 0; trial < 4; ++trial) {
    const auto window = interval(0, 1000);
    const auto coloring = trial == 0 ? greedy_coloring(window, p.base_set)
                                     : seeded_coloring(window, p.base_set, rng(), 0.01);
    const auto t = ow_quasi_tiling(coloring, p);
    const auto r = verify_tiling(t, k, delta);
    CHECK(r.disjoint);
    CHECK(r.within_window);
    CHECK(r.shapes_invariant);
    CHECK(r.covering_fraction >= 1 - 2 * p.eps);
    for (const auto& tile : t.tiles) {
      CHECK(static_cast<std::int64_t>(tile.shape.size()) * 40 >= 39 * 81);
      CHECK(is_subset(tile.shape, p.scales[0]));
    }
  }

  const auto wrong = greedy_coloring(interval(0, 300), interval(-1, 2));
  CHECK_THROWS_WITH(ow_quasi_tiling(wrong, p), "coloring base set insufficient for scales");
}

TEST_CASE("ow quasi-tiling is a local map") {
  OwOptions opt;
  const auto k = FiniteSubset(kZ, {z(0), z(1)});
  const auto p = ow_parameters(kZ, k, Rational(9, 20), opt);
  CHECK(p.scales.back() == interval(0, 14));
  CHECK(p.palette == 27);
  const auto map = ow_local_map(p);
  CHECK(map.window == interval(-364, 365));

  const auto window = interval(0, 1000);
  const auto coloring = seeded_coloring(window, p.base_set, 99, 0.05);
  const auto config = as_configuration(coloring);
  const auto bulk = apply_local(map, config, EvalMode::Bulk);
  REQUIRE(bulk.domain.size() == 272);
  const auto per = apply_local(map, config, EvalMode::PerPosition);
  CHECK(per == bulk);
  std::size_t tiles = 0;
  for (const auto& v : bulk.values) tiles += v ? 1 : 0;
  CHECK(tiles > 0);
  for (std::int64_t shift : {-7, 13, 250}) {
    const auto rep = equivariance_report(map, config, z(shift), EvalMode::Bulk);
    CHECK(rep.passes);
    CHECK(rep.compared > 0);
  }
}

TEST_CASE("verify tiling") {
  const auto window = interval(0, 20);
  ApproximateTiling empty{window, interval(0, 5), {}, std::nullopt};
  const auto r0 = verify_tiling(empty, interval(0, 1), Rational(1, 2));
  CHECK(r0.disjoint);
  CHECK(r0.covering_fraction == Rational(0));

  ApproximateTiling overlap{window, interval(0, 5), {{z(0), interval(0, 5)}, {z(3), interval(0, 5)}}, {}};
  CHECK_FALSE(verify_tiling(overlap, interval(0, 1), Rational(1, 2)).disjoint);
  CHECK_THROWS_WITH(relative_position(overlap), "not a tiling");

  const auto z2 = GroupSpec::lattice(2);
  const auto lat = base_lattice_tiling(cube(z2, 64), 4);
  CHECK(lat.tiles.size() == 256);
  const auto rl = verify_tiling(lat, FiniteSubset(z2, {identity(z2), make_element(z2, {1, 0})}),
                                Rational(1, 2));
  CHECK(rl.disjoint);
  CHECK(rl.exact_on_interior);
  CHECK(rl.interior_size == 58 * 58);
  const auto collar_report = verify_tiling(lat, singleton(identity(z2)), Rational(1, 2),
                                           product_set(cube(z2, 4), inverse_set(cube(z2, 4))));
  CHECK(collar_report.exact_on_interior);

  const auto ones = base_lattice_tiling(window, 1);
  CHECK(ones.tiles.size() == 20);
  CHECK(verify_tiling(ones, singleton(z(0)), Rational(1, 2)).exact_on_interior);

  ApproximateTiling far_empty{window, interval(0, 5), {}, FiniteSubset(kZ)};
  const auto r_empty = verify_tiling(far_empty, singleton(z(0)), Rational(1, 2));
  CHECK(r_empty.covering_fraction == Rational(0));
  CHECK_FALSE(r_empty.exact_on_interior);
}

TEST_CASE("relative position") {
  const auto window = interval(0, 20);
  const auto shape = FiniteSubset(kZ, {z(0), z(2), z(3)});
  ApproximateTiling one{window, shape, {{z(5), shape}}, {}};
  const auto rp = relative_position(one);
  for (const auto& s : shape) CHECK(rp.position[window.position(mul(s, z(5)))] == s);
  CHECK_FALSE(rp.position[window.position(z(6))].has_value());

  gen::Rng rng(14);
  OwOptions opt;
  const auto p = ow_parameters(kZ, FiniteSubset(kZ, {z(0), z(1)}), Rational(9, 20), opt);
  const auto t = ow_quasi_tiling(seeded_coloring(interval(0, 400), p.base_set, rng(), 0.05), p);
  auto back = tiling_from_relative_position(relative_position(t), t.shape_universe);
  back.interior = t.interior;
  CHECK(back == t);

  const auto h = GroupSpec::heisenberg();
  const std::pair<std::int64_t, std::int64_t> b[] = {{-2, 2}, {-2, 2}, {-8, 8}};
  const auto hw = box(h, b);
  const auto ht = base_lattice_tiling(hw, 4);
  CHECK(ht.tiles.size() == 25 * 4);
  auto hback = tiling_from_relative_position(relative_position(ht), ht.shape_universe);
  hback.interior = ht.interior;
  CHECK(hback == ht);
}

TEST_CASE("exactify on Z") {
  const auto window = interval(0, 3000);
  const auto exact = base_lattice_tiling(window, 10);
  CHECK(exactify(exact, lattice_comparison(window, 100), Rational(1, 10)) == exact);

  OwOptions opt;
  opt.max_scale_parameter = 250;
  const auto k = interval(-1, 2);
  const Rational delta(1, 5), kappa(1, 10);
  const auto p = ow_parameters(kZ, k, delta, opt);
  int exercised = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto t = ow_quasi_tiling(seeded_coloring(window, p.base_set, seed, 0.02), p);
    ExactifyStats stats;
    const auto e = exactify(t, lattice_comparison(window, 500), kappa, &stats);
    const auto r = verify_tiling(e, k, delta);
    CHECK(r.disjoint);
    CHECK(r.exact_on_interior);
    CHECK(stats.max_growth <= 1 + kappa);
    const auto loose = verify_tiling(e, k, (delta + kappa) / (1 + kappa));
    CHECK(loose.shapes_invariant);
    for (const auto& tile : e.tiles) {
      const Tile* old = t.tile_at(tile.center);
      REQUIRE(old);
      CHECK(is_subset(old->shape, tile.shape));
      CHECK(Rational(static_cast<std::int64_t>(tile.shape.size())) <=
            (1 + kappa) * Rational(static_cast<std::int64_t>(old->shape.size())));
    }
    exercised += stats.remainder_matched > 0;
  }
  CHECK(exercised > 0);
}

TEST_CASE("marks") {
  CHECK(mark_subset(interval(0, 25), Rational(1, 10)) == interval(0, 2));
  CHECK(mark_subset(interval(0, 9), Rational(1, 10)).empty());
}

TEST_CASE("overgroup comparison") {
  CHECK(partition_sizes(7, 3) == std::vector<std::size_t>{3, 2, 2});
  CHECK(partition_sizes(0, 3) == std::vector<std::size_t>{0, 0, 0});

  const auto h = GroupSpec::heisenberg();
  const std::pair<std::int64_t, std::int64_t> b[] = {{-2, 2}, {-2, 2}, {-20, 20}};
  const auto window = box(h, b);
  const FiniteSubset l(h, {identity(h), make_element(h, {1, 0, 0}), make_element(h, {0, 1, 0})});
  CHECK_THROWS_WITH(extend_to_overgroup(window, l, Rational(1, 2), 17), "interval length below 3|L|/gamma");
  const std::pair<std::int64_t, std::int64_t> thin[] = {{-2, 2}, {-2, 2}, {-3, 3}};
  CHECK_THROWS_WITH(extend_to_overgroup(box(h, thin), l, Rational(1, 2), 18),
                    doctest::Contains("window too thin along center"));

  auto provider = extend_to_overgroup(window, l, Rational(1, 2), 18);
  const auto empty_spread = provider->spread(FiniteSubset(h));
  CHECK(empty_spread.multiset.domain.empty());
  CHECK(empty_spread.witness.assignment.empty());

  gen::Rng rng(31);
  const auto c = gen::subset_of(rng, provider->region(), 0.3);
  const auto sp = provider->spread(c);
  CHECK(verify_witness(sp.witness, indicator(sp.kept), sp.multiset, true));
  CHECK(sp.kept == c);
  for (const auto& [part, portion] : provider->partition_log()) {
    const auto lo = portion / 3, hi = (portion + 2) / 3;
    CHECK((part == lo || part == hi));
  }

  // Sparse A against dense B: the composite routes A into B.
  const auto a = gen::subset_of(rng, provider->region(), 0.05);
  const auto dense = gen::subset_of(rng, window, 0.8);
  const auto res = (*provider)(a, dense);
  const auto a_in = set_intersection(a, res.region);
  CHECK(verify_witness(res.witness, indicator(a_in), indicator(dense), false));
}
