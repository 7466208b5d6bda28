#include "doctest.h"
#include "gen.hpp"
#include "loctile/comparison.hpp"
#include "loctile/tiling.hpp"

using namespace loctile;

namespace {

const GroupSpec kZ = GroupSpec::lattice(1);

Element z(std::int64_t x) { return make_element(kZ, {x}); }

FiniteSubset interval(std::int64_t lo, std::int64_t hi) {
  std::vector<Element> v;
  for (auto x = lo; x < hi; ++x) v.push_back(z(x));
  return FiniteSubset(kZ, v);
}

Multiset on(const FiniteSubset& q, std::vector<std::int64_t> counts, std::int64_t cap) {
  return {q, std::move(counts), cap};
}

}  // namespace

TEST_CASE("profiles") {
  const auto dom = interval(0, 100);
  CHECK(check_profile(on(dom, std::vector<std::int64_t>(100, 0), 1), interval(0, 10), Rational(1, 100),
                      Side::Upper));
  CHECK(check_profile(on(dom, std::vector<std::int64_t>(100, 2), 2), interval(0, 10), Rational(19, 10),
                      Side::Lower));
  std::vector<std::int64_t> alt(100);
  for (std::size_t i = 0; i < 100; ++i) alt[i] = static_cast<std::int64_t>(i % 2);
  const auto rep = profile_report(on(dom, alt, 1), interval(0, 10), Rational(3, 5), Side::Upper);
  CHECK(rep.passes);
  CHECK(rep.extremal_sum == 5);
  CHECK(rep.translates == 91);
  CHECK_FALSE(check_profile(on(dom, alt, 1), interval(0, 10), Rational(1, 2), Side::Upper));
  CHECK_THROWS(check_profile(on(dom, alt, 1), interval(0, 101), Rational(1, 2), Side::Upper));
}

TEST_CASE("tile matching") {
  const auto q = interval(0, 6);
  const auto zero = on(q, {0, 0, 0, 0, 0, 0}, 2);
  const auto b = on(q, {1, 0, 2, 1, 0, 1}, 2);
  const auto empty = tile_match(q, zero, b);
  CHECK(empty.assignment.empty());
  CHECK(verify_witness(empty, zero, b, false));

  const auto a = on(q, {1, 0, 2, 1, 0, 0}, 2);
  const auto w = tile_match(q, a, b);
  CHECK(verify_witness(w, a, b, false));
  CHECK_FALSE(verify_witness(w, a, b, true));
  for (const auto& d : w.displacements) CHECK(product_set(q, inverse_set(q)).contains(d));
  // a equals b except one extra unit of b: every unit stays put.
  for (const auto& [h, seq] : w.assignment) {
    for (const auto& d : seq) CHECK(is_identity(d));
  }

  CHECK_THROWS_WITH(tile_match(q, b, b), "capacity exceeded");

  auto corrupted = w;
  corrupted.assignment[1].second[0] = mul(z(-1), corrupted.assignment[1].second[0]);
  corrupted.displacements = set_union(corrupted.displacements, interval(-6, 6));
  CHECK_FALSE(verify_witness(corrupted, a, b, false));
}

TEST_CASE("tile matching on a nonabelian tile") {
  const auto h = GroupSpec::heisenberg();
  const auto q = ball(h, standard_generators(h), 2);
  gen::Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> ca(q.size()), cb(q.size());
    std::int64_t sa = 0, sb = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      ca[i] = gen::uniform(rng, 0, 1);
      cb[i] = gen::uniform(rng, 0, 2);
      sa += ca[i];
      sb += cb[i];
    }
    if (sa >= sb) continue;
    const auto a = on(q, ca, 2), b = on(q, cb, 2);
    const auto w = tile_match(q, a, b);
    CHECK(verify_witness(w, a, b, false));
    const auto qq = product_set(q, inverse_set(q));
    for (const auto& d : w.displacements) CHECK(qq.contains(d));
  }
}

TEST_CASE("comparison through a lattice tiling") {
  const auto window = interval(0, 100);
  const auto t = base_lattice_tiling(window, 10);
  const std::vector<std::int64_t> none(100, 0);
  CHECK(comparison_from_tiling(t, on(window, none, 1), on(window, none, 1)).assignment.empty());

  gen::Rng rng(8);
  int produced = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> ca(100), cb(100);
    for (std::size_t i = 0; i < 100; ++i) {
      ca[i] = gen::uniform(rng, 0, 1);
      cb[i] = gen::uniform(rng, 0, 2);
    }
    const auto a = on(window, ca, 2), b = on(window, cb, 2);
    bool feasible = true;
    std::string bad_center;
    for (std::size_t k = 0; k < 10; ++k) {
      std::int64_t sa = 0, sb = 0;
      for (std::size_t i = 10 * k; i < 10 * k + 10; ++i) {
        sa += ca[i];
        sb += cb[i];
      }
      if (sa > 0 && sa >= sb) {
        if (feasible) bad_center = "(" + std::to_string(10 * k) + ")";
        feasible = false;
      }
    }
    if (feasible) {
      const auto w = comparison_from_tiling(t, a, b);
      CHECK(verify_witness(w, a, b, false));
      const auto dd = product_set(inverse_set(t.shape_universe), t.shape_universe);
      for (const auto& d : w.displacements) CHECK(dd.contains(d));
      ++produced;
    } else {
      CHECK_THROWS_WITH(comparison_from_tiling(t, a, b),
                        ("comparison infeasible at tile center " + bad_center).c_str());
    }
  }
  CHECK(produced > 0);

  const auto outside = on(interval(0, 101), std::vector<std::int64_t>(101, 0), 1);
  auto stray = outside;
  stray.counts[100] = 1;
  CHECK_THROWS(comparison_from_tiling(t, stray, on(window, std::vector<std::int64_t>(100, 1), 1)));
}

TEST_CASE("inverting equivalences") {
  const auto q = interval(0, 8);
  const auto id_a = on(q, {1, 1, 0, 2, 0, 1, 1, 0}, 2);
  std::vector<std::pair<Element, std::vector<Element>>> routes;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (id_a.counts[i]) routes.emplace_back(q[i], std::vector<Element>(static_cast<std::size_t>(id_a.counts[i]), q[i]));
  }
  const auto identity_eq = witness_from_routes(kZ, routes);
  const auto inv_id = invert_equivalence(identity_eq, id_a, id_a);
  CHECK(inv_id == identity_eq);

  gen::Rng rng(12);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::int64_t> ca(8), cb(8);
    for (std::size_t i = 0; i < 8; ++i) {
      ca[i] = gen::uniform(rng, 0, 2);
      cb[i] = gen::uniform(rng, 0, 2);
    }
    const auto a = on(q, ca, 2), b = on(q, cb, 2);
    if (a.total() >= b.total()) continue;
    const auto w = tile_match(q, a, b);
    // Pad to an equivalence: compare against the capacities actually used.
    const auto used = image_of(w, kZ, 2);
    REQUIRE(verify_witness(w, a, used, true));
    const auto back = invert_equivalence(w, a, used);
    CHECK(verify_witness(back, used, a, true));
    CHECK(invert_equivalence(back, used, a) == w);
    const auto round = compose_witnesses(back, w);
    for (const auto& [h, seq] : round.assignment) {
      for (const auto& d : seq) CHECK(is_identity(d));
    }
    ++checked;
  }
  CHECK(checked > 50);

  const auto q2 = interval(0, 3);
  const auto a = on(q2, {1, 0, 0}, 1), b = on(q2, {1, 1, 0}, 1);
  CHECK_THROWS_WITH(invert_equivalence(tile_match(q2, a, b), a, b), "not invertible");
}
