#include "doctest.h"
#include "gen.hpp"
#include "loctile/local_map.hpp"

using namespace loctile;

namespace {

const GroupSpec kZ = GroupSpec::lattice(1);

FiniteSubset interval(std::int64_t lo, std::int64_t hi) {
  std::vector<Element> v;
  for (auto x = lo; x < hi; ++x) v.push_back(make_element(kZ, {x}));
  return FiniteSubset(kZ, v);
}

const Alphabet<int> kBits{"bits", [](const int& v) { return v == 0 || v == 1; }};

LocalMap<int, int> majority3() {
  LocalMap<int, int> m;
  m.window = interval(-1, 2);
  m.input = kBits;
  m.output = kBits;
  m.rule = [](std::span<const int> p) { return p[0] + p[1] + p[2] >= 2 ? 1 : 0; };
  return m;
}

// Output at x is x(x+1) xor x(x-2).
LocalMap<int, int> xor_map() {
  LocalMap<int, int> m;
  m.window = FiniteSubset(kZ, {make_element(kZ, {-2}), make_element(kZ, {1})});
  m.input = kBits;
  m.output = kBits;
  m.rule = [](std::span<const int> p) { return p[0] ^ p[1]; };
  return m;
}

PartialConfiguration<int> random_bits(gen::Rng& rng, const FiniteSubset& domain) {
  PartialConfiguration<int> c{domain, {}};
  for (std::size_t i = 0; i < domain.size(); ++i) c.values.push_back(static_cast<int>(gen::uniform(rng, 0, 1)));
  return c;
}

}  // namespace

TEST_CASE("interior") {
  CHECK(interior(interval(0, 10), interval(-1, 2)) == interval(1, 9));
  CHECK(interior(interval(0, 10), singleton(identity(kZ))) == interval(0, 10));
  CHECK(interior(FiniteSubset(kZ), interval(-1, 2)).empty());
  CHECK(interior_iterated(interval(0, 10), interval(-1, 2), 3) == interval(3, 7));
}

TEST_CASE("apply_local") {
  const auto id = identity_map<int>(kZ, kBits);
  PartialConfiguration<int> alt{interval(0, 10), {0, 1, 0, 1, 0, 1, 0, 1, 0, 1}};
  CHECK(apply_local(id, alt) == alt);

  const auto out = apply_local(majority3(), alt);
  CHECK(out.domain == interval(1, 9));
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const std::size_t x = i + 1;
    const int brute = alt.values[x - 1] + alt.values[x] + alt.values[x + 1] >= 2 ? 1 : 0;
    CHECK(out.values[i] == brute);
  }

  PartialConfiguration<int> tiny{interval(0, 2), {1, 1}};
  CHECK(apply_local(majority3(), tiny).domain.empty());

  PartialConfiguration<int> bad{interval(0, 5), {0, 1, 2, 1, 0}};
  CHECK_THROWS_WITH(apply_local(majority3(), bad), "alphabet violation");
}

TEST_CASE("composition and join") {
  gen::Rng rng(9);
  const auto f = majority3();
  const auto g = xor_map();
  const auto gf = compose(g, f);
  CHECK(gf.window == product_set(f.window, g.window));
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_bits(rng, interval(0, 40));
    const auto direct = apply_local(gf, c);
    const auto chained = apply_local(g, apply_local(f, c));
    REQUIRE(!direct.domain.empty());
    for (std::size_t i = 0; i < direct.values.size(); ++i) {
      const int* v = chained.find(direct.domain[i]);
      REQUIRE(v);
      CHECK(*v == direct.values[i]);
    }
    const auto with_id = apply_local(compose(identity_map<int>(kZ, kBits), f), c);
    CHECK(with_id == apply_local(f, c));

    const auto assoc_left = apply_local(compose(compose(g, f), f), c);
    const auto assoc_right = apply_local(compose(g, compose(f, f)), c);
    CHECK(assoc_left == assoc_right);
  }

  const auto pair = join(identity_map<int>(kZ, kBits), identity_map<int>(kZ, kBits));
  const auto c = random_bits(rng, interval(0, 10));
  const auto joined = apply_local(pair, c);
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    CHECK(joined.values[i] == std::pair<int, int>(c.values[i], c.values[i]));
  }

  LocalMap<int, int> other = f;
  other.input.name = "trits";
  CHECK_THROWS(compose(other, f));
}

TEST_CASE("equivariance harness") {
  gen::Rng rng(4);
  const auto c = random_bits(rng, interval(0, 60));
  const auto m = majority3();
  CHECK(equivariance_check(m, c, identity(kZ), EvalMode::PerPosition));
  for (int t = 0; t < 10; ++t) {
    CHECK(equivariance_check(m, c, gen::element(rng, kZ, 30), EvalMode::PerPosition));
  }

  // Negative control: the bulk evaluator reads absolute coordinates.
  auto coordinate_reader = m;
  coordinate_reader.bulk = [](const PartialConfiguration<int>& x) {
    PartialConfiguration<int> out = x;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = x.domain[i][0] >= 30 ? 1 : 0;
    return out;
  };
  CHECK(equivariance_check(coordinate_reader, c, identity(kZ), EvalMode::Bulk));
  const auto rep = equivariance_report(coordinate_reader, c, make_element(kZ, {5}), EvalMode::Bulk);
  CHECK_FALSE(rep.passes);
  CHECK(rep.mismatches == 5);

  const auto h = GroupSpec::heisenberg();
  LocalMap<int, int> hm;
  hm.window = ball(h, standard_generators(h), 1);
  hm.input = kBits;
  hm.output = {"counts", [](const int&) { return true; }};
  hm.rule = [](std::span<const int> p) {
    int s = 0;
    for (int v : p) s += v;
    return s;
  };
  const auto dom = ball(h, standard_generators(h), 6);
  const auto hc = random_bits(rng, dom);
  for (int t = 0; t < 5; ++t) {
    const auto rep2 = equivariance_report(hm, hc, gen::element(rng, h, 2), EvalMode::PerPosition);
    CHECK(rep2.passes);
  }
}
