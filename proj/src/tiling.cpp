#include "loctile/tiling.hpp"

#include "loctile/parallel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace loctile {

namespace {

using BigQ = boost::multiprecision::cpp_rational;

BigQ big(const Rational& r) { return BigQ(r.numerator()) / BigQ(r.denominator()); }

BigQ power(BigQ base, std::int64_t n) {
  BigQ out = 1;
  while (n > 0) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

}  // namespace

FiniteSubset collar_interior(const FiniteSubset& window, const Collar& collar) {
  return interior_iterated(window, collar.base, collar.power);
}

std::int64_t ow_level_count(const Rational& eps) {
  if (eps <= Rational(0) || eps >= Rational(1, 2)) throw InvarianceError("eps must lie in (0,1/2)");
  const BigQ e = big(eps);
  const BigQ q = 1 - e;
  BigQ acc = q;
  for (std::int64_t n = 1; n < 1'000'000; ++n) {
    if (acc < e) return n;
    acc *= q;
  }
  throw InvarianceError("level count too large");
}

bool ow_beta_admissible(const Rational& eps, std::int64_t n, const Rational& beta) {
  const BigQ e = big(eps);
  const BigQ b = big(beta);
  const BigQ inner = 1 - (1 + b) * e;
  if (inner <= 0) return false;
  return (1 - power(inner, n)) / (1 + b) > 1 - e;
}

Rational ow_beta(const Rational& eps, std::int64_t n) {
  for (int k = 1; k < 62; ++k) {
    const Rational beta(1, std::int64_t{1} << k);
    if (ow_beta_admissible(eps, n, beta)) return beta;
  }
  throw InvarianceError("no admissible beta on the dyadic grid");
}

const FiniteSubset& OwParameters::level_scale(std::int64_t i) const {
  if (i < 1 || i > n) throw InvarianceError("level out of range");
  // F_j for j = n-i+1; the top s indices hold the distinct chain.
  const std::int64_t j = n - i + 1;
  const auto s = static_cast<std::int64_t>(scales.size());
  const std::int64_t slot = std::max<std::int64_t>(0, j - (n - s) - 1);
  return scales[static_cast<std::size_t>(slot)];
}

OwParameters ow_parameters(const GroupSpec& spec, const FiniteSubset& k, const Rational& delta,
                           const OwOptions& options) {
  if (delta <= Rational(0) || delta >= Rational(1, 2)) {
    throw InvarianceError("delta must lie in (0,1/2)");
  }
  OwParameters p;
  p.k = k;
  p.delta = delta;
  p.eps = ks_epsilon(k, delta);
  p.n = ow_level_count(p.eps);
  p.beta = ow_beta(p.eps, p.n);
  p.family = options.family;
  p.nesting_tolerance = options.nesting_tolerance.value_or(p.beta * (1 - p.eps));

  const std::int64_t first = folner_first_parameter(options.family);
  std::vector<FiniteSubset> inverses;
  for (std::int64_t param = first; param <= options.max_scale_parameter; ++param) {
    if (static_cast<std::int64_t>(p.scales.size()) == p.n) break;
    FiniteSubset q = folner_member(spec, options.family, param);
    if (!p.scales.empty() && q.size() <= p.scales.back().size()) continue;
    if (!invariant_quick(q, k, p.eps)) continue;
    const bool nested = std::all_of(inverses.begin(), inverses.end(), [&](const FiniteSubset& fi) {
      return invariant_quick(q, fi, p.nesting_tolerance);
    });
    if (!nested) continue;
    inverses.push_back(inverse_set(q));
    p.scales.push_back(std::move(q));
  }
  if (p.scales.empty()) throw InvarianceError("no Følner set within cap");
  p.nesting_certified = static_cast<std::int64_t>(p.scales.size()) == p.n;

  const auto& top = p.scales.back();
  p.base_set = symmetrize(product_set(inverse_set(top), top));
  p.palette = static_cast<Color>(p.base_set.size());
  return p;
}

Collar ow_dependence_collar(const OwParameters& params) {
  return {params.base_set,
          params.effective_levels() * static_cast<std::size_t>(params.palette) + 1};
}

ApproximateTiling ow_quasi_tiling(const ProperColoring& coloring, const OwParameters& params) {
  if (!is_subset(params.base_set, coloring.base_set)) {
    throw TilingError("coloring base set insufficient for scales");
  }
  if (coloring.palette > params.palette) throw TilingError("coloring palette exceeds parameters");
  if (!is_proper(coloring)) throw TilingError("improper input");

  const FiniteSubset& window = coloring.domain;
  const ElementIndex index(window);
  std::vector<std::vector<std::size_t>> classes(static_cast<std::size_t>(params.palette) + 1);
  for (std::size_t i = 0; i < window.size(); ++i) {
    classes[static_cast<std::size_t>(coloring.colors[i])].push_back(i);
  }

  std::vector<char> covered(window.size(), 0);
  std::vector<char> is_center(window.size(), 0);
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> picked;  // center, cells

  const auto one_minus = 1 - params.eps;
  for (auto level = params.scales.rbegin(); level != params.scales.rend(); ++level) {
    const FiniteSubset& q = *level;
    const auto qsize = static_cast<std::int64_t>(q.size());
    for (std::size_t color = 1; color < classes.size(); ++color) {
      const auto& members = classes[color];
      std::vector<std::vector<std::size_t>> found(members.size());
      std::vector<char> accept(members.size(), 0);
      parallel_for(members.size(), [&](std::size_t lo, std::size_t hi) {
        std::vector<std::size_t> cells;
        for (std::size_t m = lo; m < hi; ++m) {
          const std::size_t g = members[m];
          if (is_center[g]) continue;
          cells.clear();
          bool inside = true;
          for (const auto& f : q) {
            const auto c = index.find(mul(f, window[g]));
            if (c == ElementIndex::npos) {
              inside = false;
              break;
            }
            if (!covered[c]) cells.push_back(c);
          }
          if (!inside) continue;
          if (static_cast<std::int64_t>(cells.size()) * one_minus.denominator() >=
              one_minus.numerator() * qsize) {
            accept[m] = 1;
            found[m] = cells;
          }
        }
      });
      for (std::size_t m = 0; m < members.size(); ++m) {
        if (!accept[m]) continue;
        for (auto c : found[m]) covered[c] = 1;
        is_center[members[m]] = 1;
        picked.emplace_back(members[m], std::move(found[m]));
      }
    }
  }

  ApproximateTiling t;
  t.window = window;
  t.shape_universe = FiniteSubset(window.spec());
  for (const auto& s : params.scales) t.shape_universe = set_union(t.shape_universe, s);
  t.tiles.reserve(picked.size());
  for (const auto& [g, cells] : picked) {
    const Element gi = inv(window[g]);
    std::vector<Element> shape;
    shape.reserve(cells.size());
    for (auto c : cells) shape.push_back(mul(window[c], gi));
    t.tiles.push_back({window[g], FiniteSubset(window.spec(), std::move(shape))});
  }
  t.sort_tiles();
  t.interior = interior(window, params.base_set);
  return t;
}

LocalMap<Color, ShapeOrStar> ow_local_map(const OwParameters& params) {
  LocalMap<Color, ShapeOrStar> m;
  m.window = ow_dependence_collar(params).expand();
  const Color p = params.palette;
  m.input = {"colors<=" + std::to_string(p), [p](const Color& c) { return c >= 1 && c <= p; }};
  m.output = {"shapes", [](const ShapeOrStar&) { return true; }};
  const FiniteSubset w = m.window;
  m.rule = [params, w](std::span<const Color> pattern) -> ShapeOrStar {
    ProperColoring c{params.base_set, w, {pattern.begin(), pattern.end()}, params.palette};
    const auto t = ow_quasi_tiling(c, params);
    if (const Tile* tile = t.tile_at(identity(w.spec()))) return tile->shape;
    return std::nullopt;
  };
  m.bulk = [params](const PartialConfiguration<Color>& config) {
    ProperColoring c{params.base_set, config.domain, config.values, params.palette};
    const auto t = ow_quasi_tiling(c, params);
    PartialConfiguration<ShapeOrStar> out{config.domain, std::vector<ShapeOrStar>(config.domain.size())};
    for (const auto& tile : t.tiles) out.values[config.domain.position(tile.center)] = tile.shape;
    return out;
  };
  return m;
}

TilingReport verify_tiling_on(const ApproximateTiling& t, const FiniteSubset& k,
                              const Rational& delta, const FiniteSubset& region) {
  TilingReport r;
  r.tiles = t.tiles.size();
  std::unordered_set<Element, ElementHash> cells;
  for (const auto& tile : t.tiles) {
    for (const auto& s : tile.shape) {
      const Element x = mul(s, tile.center);
      if (!cells.insert(x).second) r.disjoint = false;
      if (!t.window.contains(x)) r.within_window = false;
    }
  }
  std::map<std::vector<Element>, bool> verdicts;
  for (const auto& tile : t.tiles) {
    auto [it, fresh] = verdicts.try_emplace(tile.shape.elements(), false);
    if (fresh) it->second = !tile.shape.empty() && is_invariant(tile.shape, k, delta).passes;
    if (!it->second) {
      r.shapes_invariant = false;
      ++r.non_invariant_shapes;
    }
  }
  r.interior_size = region.size();
  for (const auto& g : region) r.covered_in_interior += cells.count(g);
  if (region.empty()) {
    r.covering_fraction = Rational(0);
    r.exact_on_interior = false;
  } else {
    r.covering_fraction = Rational(static_cast<std::int64_t>(r.covered_in_interior),
                                   static_cast<std::int64_t>(r.interior_size));
    r.exact_on_interior = r.covered_in_interior == r.interior_size;
  }
  return r;
}

TilingReport verify_tiling(const ApproximateTiling& t, const FiniteSubset& k, const Rational& delta,
                           const FiniteSubset& collar) {
  return verify_tiling_on(t, k, delta, interior(t.window, collar));
}

TilingReport verify_tiling(const ApproximateTiling& t, const FiniteSubset& k, const Rational& delta) {
  return verify_tiling_on(t, k, delta, t.interior.value_or(t.window));
}

RelativePosition relative_position(const ApproximateTiling& t) {
  RelativePosition rp;
  rp.window = t.window;
  rp.position.assign(t.window.size(), std::nullopt);
  std::unordered_set<Element, ElementHash> seen;
  for (const auto& tile : t.tiles) {
    for (const auto& s : tile.shape) {
      const Element x = mul(s, tile.center);
      if (!seen.insert(x).second) throw TilingError("not a tiling");
      const auto i = t.window.position(x);
      if (i != FiniteSubset::npos) rp.position[i] = s;
    }
  }
  return rp;
}

ApproximateTiling tiling_from_relative_position(const RelativePosition& rp,
                                                const FiniteSubset& shape_universe) {
  std::map<Element, std::vector<Element>> by_center;
  for (std::size_t i = 0; i < rp.window.size(); ++i) {
    if (!rp.position[i]) continue;
    const Element& s = *rp.position[i];
    by_center[mul(inv(s), rp.window[i])].push_back(s);
  }
  ApproximateTiling t;
  t.window = rp.window;
  t.shape_universe = shape_universe;
  for (auto& [c, shape] : by_center) t.tiles.push_back({c, FiniteSubset(rp.window.spec(), shape)});
  return t;
}

ApproximateTiling base_lattice_tiling(const FiniteSubset& window, std::int64_t n) {
  if (n < 1) throw TilingError("lattice period must be positive");
  const GroupSpec spec = window.spec();
  auto on_lattice = [n](std::int64_t x) { return ((x % n) + n) % n == 0; };
  FiniteSubset q;
  std::vector<int> anchored;
  if (spec.kind == GroupKind::Heisenberg) {
    const std::pair<std::int64_t, std::int64_t> b[] = {{0, 0}, {0, 0}, {0, n - 1}};
    q = box(spec, b);
    anchored = {2};
  } else {
    q = cube(spec, n);
    for (int i = 0; i < spec.rank(); ++i) anchored.push_back(i);
  }
  const ElementIndex index(window);
  ApproximateTiling t;
  t.window = window;
  t.shape_universe = q;
  for (const auto& g : window) {
    if (!std::all_of(anchored.begin(), anchored.end(), [&](int i) { return on_lattice(g[i]); })) {
      continue;
    }
    const bool inside =
        std::all_of(q.begin(), q.end(), [&](const Element& s) { return index.contains(mul(s, g)); });
    if (inside) t.tiles.push_back({g, q});
  }
  t.interior = interior(window, product_set(q, inverse_set(q)));
  return t;
}

FiniteSubset mark_subset(const FiniteSubset& q, const Rational& kappa) {
  const auto count = floor_times(kappa, static_cast<std::int64_t>(q.size()));
  return FiniteSubset(q.spec(), {q.begin(), q.begin() + count});
}

FiniteSubset marked_set(const ApproximateTiling& t, const Rational& kappa) {
  std::vector<Element> out;
  for (const auto& tile : t.tiles) {
    for (const auto& s : mark_subset(tile.shape, kappa)) out.push_back(mul(s, tile.center));
  }
  return FiniteSubset(t.window.spec(), std::move(out));
}

ApproximateTiling exactify(const ApproximateTiling& t, const ComparisonProvider& comparison,
                           const Rational& kappa, ExactifyStats* stats) {
  if (kappa <= Rational(0) || kappa >= Rational(1, 2)) throw TilingError("kappa must lie in (0,1/2)");
  std::unordered_map<Element, std::size_t, ElementHash> owner;
  for (std::size_t k = 0; k < t.tiles.size(); ++k) {
    for (const auto& s : t.tiles[k].shape) {
      if (!owner.emplace(mul(s, t.tiles[k].center), k).second) throw TilingError("not a tiling");
    }
  }
  const FiniteSubset region = t.interior.value_or(t.window);
  const FiniteSubset a = set_difference(region, t.footprint());
  if (stats) *stats = {};
  if (a.empty()) return t;

  const FiniteSubset b = marked_set(t, kappa);
  ComparisonResult result;
  try {
    result = comparison(a, b);
  } catch (const ComparisonError& e) {
    const std::string what = e.what();
    throw TilingError(what.rfind("comparison infeasible", 0) == 0 ? what
                                                                  : "comparison infeasible: " + what);
  }
  const FiniteSubset matched = set_intersection(a, result.region);
  if (!verify_witness(result.witness, indicator(matched), indicator(b), false)) {
    throw TilingError("comparison infeasible: witness rejected");
  }

  std::vector<std::vector<Element>> grown(t.tiles.size());
  for (const auto& [h, seq] : result.witness.assignment) {
    const Element target = mul(seq.front(), h);
    const std::size_t k = owner.at(target);
    grown[k].push_back(mul(h, inv(t.tiles[k].center)));
  }

  ApproximateTiling out = t;
  Rational max_growth(1);
  for (std::size_t k = 0; k < out.tiles.size(); ++k) {
    if (grown[k].empty()) continue;
    auto& tile = out.tiles[k];
    const auto before = static_cast<std::int64_t>(tile.shape.size());
    tile.shape = set_union(tile.shape, FiniteSubset(tile.shape.spec(), grown[k]));
    max_growth = std::max(max_growth, Rational(static_cast<std::int64_t>(tile.shape.size()), before));
    out.shape_universe = set_union(out.shape_universe, tile.shape);
  }
  out.interior = set_intersection(region, result.region);
  if (stats) {
    stats->remainder_matched = matched.size();
    stats->max_growth = max_growth;
  }
  return out;
}

ComparisonProvider lattice_comparison(const FiniteSubset& window, std::int64_t n) {
  auto tiling = std::make_shared<ApproximateTiling>(base_lattice_tiling(window, n));
  auto footprint = std::make_shared<FiniteSubset>(tiling->footprint());
  return [tiling, footprint](const FiniteSubset& a, const FiniteSubset& b) {
    const FiniteSubset inside = set_intersection(a, *footprint);
    return ComparisonResult{comparison_from_tiling(*tiling, indicator(inside), indicator(b)),
                            *footprint};
  };
}

std::vector<std::size_t> partition_sizes(std::size_t c, std::size_t l) {
  std::vector<std::size_t> out(l, c / l);
  for (std::size_t i = 0; i < c % l; ++i) ++out[i];
  return out;
}

OvergroupComparison::OvergroupComparison(FiniteSubset window, FiniteSubset l, Rational gamma,
                                         std::int64_t base_n)
    : window_(std::move(window)), l_(std::move(l)), gamma_(gamma), base_n_(base_n) {
  if (window_.spec().kind != GroupKind::Heisenberg) throw TilingError("overgroup comparison needs a Heisenberg window");
  if (l_.empty()) throw TilingError("averaging set L is empty");
  if (gamma_ <= Rational(0) || gamma_ >= Rational(1)) throw TilingError("gamma must lie in (0,1)");
  // |Q| >= 3|L|/gamma for the interval tiles.
  if (Rational(base_n_) * gamma_ < Rational(3 * static_cast<std::int64_t>(l_.size()))) {
    throw TilingError("interval length below 3|L|/gamma");
  }
  for (const auto& slice : coset_slices(window_, Subgroup::HeisenbergCenter)) {
    if (static_cast<std::int64_t>(slice.elements.size()) < base_n_) {
      throw TilingError("window too thin along center at coset " + to_string(slice.representative));
    }
  }
  tiling_ = base_lattice_tiling(window_, base_n_);
  footprint_ = tiling_.footprint();
  std::vector<Element> reg;
  for (const auto& h : footprint_) {
    const bool ok = std::all_of(l_.begin(), l_.end(),
                                [&](const Element& r) { return footprint_.contains(mul(inv(r), h)); });
    if (ok) reg.push_back(h);
  }
  region_ = FiniteSubset(window_.spec(), std::move(reg));
}

OvergroupComparison::Spread OvergroupComparison::spread(const FiniteSubset& c) {
  const GroupSpec spec = window_.spec();
  std::vector<std::pair<Element, std::vector<Element>>> routes;
  std::map<Element, std::int64_t> load;
  std::vector<Element> kept;
  for (const auto& tile : tiling_.tiles) {
    std::vector<Element> portion;
    for (const auto& s : tile.shape) {
      const Element x = mul(s, tile.center);
      if (c.contains(x)) portion.push_back(x);
    }
    if (portion.empty()) continue;
    const auto sizes = partition_sizes(portion.size(), l_.size());
    for (auto sz : sizes) log_.emplace_back(sz, portion.size());
    for (std::size_t i = 0; i < portion.size(); ++i) {
      const Element target = mul(inv(l_[i % l_.size()]), portion[i]);
      if (!footprint_.contains(target)) continue;
      kept.push_back(portion[i]);
      routes.emplace_back(portion[i], std::vector<Element>{target});
      ++load[target];
    }
  }
  Spread out;
  out.witness = witness_from_routes(spec, std::move(routes));
  out.multiset = make_multiset(spec, {load.begin(), load.end()}, static_cast<std::int64_t>(l_.size()));
  out.kept = FiniteSubset(spec, std::move(kept));
  return out;
}

ComparisonResult OvergroupComparison::operator()(const FiniteSubset& a, const FiniteSubset& b) {
  const FiniteSubset a_in = set_intersection(a, region_);
  const Spread sa = spread(a_in);
  const Spread sb = spread(set_intersection(b, footprint_));
  const auto r = comparison_from_tiling(tiling_, sa.multiset, sb.multiset);
  const auto back = invert_equivalence(sb.witness, indicator(sb.kept), sb.multiset);
  return {compose_witnesses(back, compose_witnesses(r, sa.witness)), region_};
}

std::shared_ptr<OvergroupComparison> extend_to_overgroup(const FiniteSubset& window,
                                                         const FiniteSubset& l,
                                                         const Rational& gamma,
                                                         std::int64_t base_n) {
  return std::make_shared<OvergroupComparison>(window, l, gamma, base_n);
}

}  // namespace loctile
