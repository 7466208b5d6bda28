#include "loctile/comparison.hpp"

#include "loctile/invariance.hpp"
#include "loctile/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace loctile {

std::int64_t Multiset::count_at(const Element& g) const {
  const auto i = domain.position(g);
  return i == FiniteSubset::npos ? 0 : counts[i];
}

std::int64_t Multiset::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

Multiset indicator(const FiniteSubset& s) {
  return {s, std::vector<std::int64_t>(s.size(), 1), 1};
}

Multiset make_multiset(const GroupSpec& spec, std::vector<std::pair<Element, std::int64_t>> entries,
                       std::int64_t cap) {
  std::sort(entries.begin(), entries.end());
  Multiset m;
  m.cap = cap;
  std::vector<Element> dom;
  for (const auto& [g, c] : entries) {
    if (c < 0 || c > cap) throw ComparisonError("multiset count outside [0, cap] at " + to_string(g));
    if (c == 0) continue;
    if (!dom.empty() && dom.back() == g) throw ComparisonError("duplicate multiset entry");
    dom.push_back(g);
    m.counts.push_back(c);
  }
  m.domain = FiniteSubset(spec, std::move(dom));
  return m;
}

const std::vector<Element>* SubequivalenceWitness::sequence_at(const Element& source) const {
  auto it = std::lower_bound(assignment.begin(), assignment.end(), source,
                             [](const auto& p, const Element& s) { return p.first < s; });
  return it != assignment.end() && it->first == source ? &it->second : nullptr;
}

std::size_t SubequivalenceWitness::units() const {
  std::size_t n = 0;
  for (const auto& [h, seq] : assignment) n += seq.size();
  return n;
}

SubequivalenceWitness witness_from_routes(
    const GroupSpec& spec, std::vector<std::pair<Element, std::vector<Element>>> routes) {
  SubequivalenceWitness w;
  std::vector<Element> disp;
  std::sort(routes.begin(), routes.end());
  for (auto& [h, targets] : routes) {
    if (targets.empty()) continue;
    std::sort(targets.begin(), targets.end());
    const Element hi = inv(h);
    std::vector<Element> seq;
    seq.reserve(targets.size());
    for (const auto& g : targets) {
      seq.push_back(mul(g, hi));
      disp.push_back(seq.back());
    }
    if (!w.assignment.empty() && w.assignment.back().first == h) {
      throw ComparisonError("duplicate source " + to_string(h));
    }
    w.assignment.emplace_back(h, std::move(seq));
  }
  w.displacements = FiniteSubset(spec, std::move(disp));
  return w;
}

ProfileReport profile_report(const Multiset& a, const FiniteSubset& l, const Rational& bound,
                             Side side) {
  const FiniteSubset ys = admissible_translates(l, a.domain);
  if (ys.empty()) throw ComparisonError("no admissible translate of L in the domain");
  const ElementIndex index(a.domain);
  std::vector<std::int64_t> sums(ys.size());
  parallel_for(ys.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      std::int64_t s = 0;
      for (const auto& g : l) s += a.counts[index.find(mul(g, ys[i]))];
      sums[i] = s;
    }
  });
  ProfileReport r;
  r.translates = ys.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (side == Side::Upper ? sums[i] > sums[best] : sums[i] < sums[best]) best = i;
  }
  r.extremal_translate = ys[best];
  r.extremal_sum = sums[best];
  const auto size = static_cast<std::int64_t>(l.size());
  r.passes = side == Side::Upper ? less_than_fraction(sums[best], bound, size)
                                 : greater_than_fraction(sums[best], bound, size);
  return r;
}

bool check_profile(const Multiset& a, const FiniteSubset& l, const Rational& bound, Side side) {
  return profile_report(a, l, bound, side).passes;
}

std::vector<std::size_t> tile_match_units(std::span<const std::int64_t> a,
                                          std::span<const std::int64_t> b) {
  if (a.size() != b.size()) throw ComparisonError("tile multisets differ in length");
  const auto sa = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  const auto sb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
  if (sa >= sb) throw ComparisonError("capacity exceeded");
  std::vector<std::size_t> targets;
  targets.reserve(static_cast<std::size_t>(sa));
  std::size_t cursor = 0;
  std::int64_t left = b.empty() ? 0 : b[0];
  for (std::size_t h = 0; h < a.size(); ++h) {
    for (std::int64_t i = 0; i < a[h]; ++i) {
      while (left == 0) left = b[++cursor];
      targets.push_back(cursor);
      --left;
    }
  }
  return targets;
}

bool verify_tile_units(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                       std::span<const std::size_t> targets) {
  const auto sa = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  if (static_cast<std::int64_t>(targets.size()) != sa) return false;
  std::vector<std::int64_t> load(b.size(), 0);
  for (auto t : targets) {
    if (t >= b.size() || ++load[t] > b[t]) return false;
  }
  return true;
}

namespace {

std::vector<std::int64_t> counts_on(const FiniteSubset& q, const Multiset& m) {
  std::vector<std::int64_t> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = m.count_at(q[i]);
  return out;
}

// Routes of one tile, given by its cells (sorted) and unit targets.
std::vector<std::pair<Element, std::vector<Element>>> routes_on(
    const std::vector<Element>& cells, std::span<const std::int64_t> a,
    std::span<const std::size_t> targets) {
  std::vector<std::pair<Element, std::vector<Element>>> routes;
  std::size_t u = 0;
  for (std::size_t h = 0; h < cells.size(); ++h) {
    if (a[h] == 0) continue;
    std::vector<Element> dest;
    for (std::int64_t i = 0; i < a[h]; ++i) dest.push_back(cells[targets[u++]]);
    routes.emplace_back(cells[h], std::move(dest));
  }
  return routes;
}

}  // namespace

SubequivalenceWitness tile_match(const FiniteSubset& q, const Multiset& a, const Multiset& b) {
  const auto ca = counts_on(q, a);
  const auto cb = counts_on(q, b);
  if (a.total() != std::accumulate(ca.begin(), ca.end(), std::int64_t{0})) {
    throw ComparisonError("source multiset has mass outside the tile");
  }
  const auto targets = tile_match_units(ca, cb);
  return witness_from_routes(q.spec(), routes_on(q.elements(), ca, targets));
}

SubequivalenceWitness comparison_from_tiling(const ApproximateTiling& t, const Multiset& a,
                                             const Multiset& b) {
  const GroupSpec spec = t.window.spec();
  std::vector<std::vector<std::pair<Element, std::vector<Element>>>> per_tile(t.tiles.size());
  std::vector<std::int64_t> mass(t.tiles.size(), 0);
  std::vector<std::string> failure(t.tiles.size());
  parallel_for(t.tiles.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const Tile& tile = t.tiles[k];
      std::vector<Element> cells;
      cells.reserve(tile.shape.size());
      for (const auto& s : tile.shape) cells.push_back(mul(s, tile.center));
      std::vector<std::int64_t> ca(cells.size()), cb(cells.size());
      for (std::size_t i = 0; i < cells.size(); ++i) {
        ca[i] = a.count_at(cells[i]);
        cb[i] = b.count_at(cells[i]);
        mass[k] += ca[i];
      }
      if (mass[k] == 0) continue;
      std::vector<std::size_t> targets;
      try {
        targets = tile_match_units(ca, cb);
      } catch (const ComparisonError&) {
        failure[k] = "comparison infeasible at tile center " + to_string(tile.center);
        continue;
      }
      per_tile[k] = routes_on(cells, ca, targets);
    }
  });
  for (const auto& f : failure) {
    if (!f.empty()) throw ComparisonError(f);
  }
  if (std::accumulate(mass.begin(), mass.end(), std::int64_t{0}) != a.total()) {
    throw ComparisonError("source multiset has mass outside the tiling");
  }
  std::vector<std::pair<Element, std::vector<Element>>> routes;
  for (auto& r : per_tile) {
    for (auto& e : r) routes.push_back(std::move(e));
  }
  auto w = witness_from_routes(spec, std::move(routes));
  if (!verify_witness(w, a, b, false)) throw ComparisonError("internal: witness failed verification");
  return w;
}

bool verify_witness(const SubequivalenceWitness& r, const Multiset& a, const Multiset& b,
                    bool strict) {
  std::unordered_map<Element, std::int64_t, ElementHash> load;
  std::size_t matched_sources = 0;
  for (std::size_t k = 0; k < r.assignment.size(); ++k) {
    const auto& [h, seq] = r.assignment[k];
    if (k > 0 && !(r.assignment[k - 1].first < h)) return false;
    if (static_cast<std::int64_t>(seq.size()) != a.count_at(h)) return false;
    if (!seq.empty()) ++matched_sources;
    for (const auto& d : seq) {
      if (!r.displacements.contains(d)) return false;
      ++load[mul(d, h)];
    }
  }
  std::size_t positive = 0;
  for (auto c : a.counts) positive += c > 0 ? 1 : 0;
  if (matched_sources != positive) return false;
  for (const auto& [g, n] : load) {
    if (n > b.count_at(g)) return false;
  }
  if (strict) {
    for (std::size_t i = 0; i < b.domain.size(); ++i) {
      auto it = load.find(b.domain[i]);
      if ((it == load.end() ? 0 : it->second) != b.counts[i]) return false;
    }
  }
  return true;
}

SubequivalenceWitness invert_equivalence(const SubequivalenceWitness& r, const Multiset& a,
                                         const Multiset& b) {
  if (!verify_witness(r, a, b, true)) throw ComparisonError("not invertible");
  std::map<Element, std::vector<Element>> back;
  for (const auto& [h, seq] : r.assignment) {
    for (const auto& d : seq) back[mul(d, h)].push_back(h);
  }
  std::vector<std::pair<Element, std::vector<Element>>> routes(back.begin(), back.end());
  auto w = witness_from_routes(a.domain.empty() ? b.domain.spec() : a.domain.spec(), std::move(routes));
  w.displacements = inverse_set(r.displacements);
  return w;
}

SubequivalenceWitness compose_witnesses(const SubequivalenceWitness& r2,
                                        const SubequivalenceWitness& r1) {
  std::unordered_map<Element, std::size_t, ElementHash> rank;
  std::vector<std::pair<Element, std::vector<Element>>> routes;
  GroupSpec spec = r1.displacements.spec();
  for (const auto& [h, seq] : r1.assignment) {
    std::vector<Element> dest;
    for (const auto& d : seq) {
      const Element g = mul(d, h);
      const auto* next = r2.sequence_at(g);
      const std::size_t k = rank[g]++;
      if (!next || k >= next->size()) {
        throw ComparisonError("composition: no onward route at " + to_string(g));
      }
      dest.push_back(mul((*next)[k], g));
    }
    routes.emplace_back(h, std::move(dest));
  }
  return witness_from_routes(spec, std::move(routes));
}

Multiset image_of(const SubequivalenceWitness& r, const GroupSpec& spec, std::int64_t cap) {
  std::map<Element, std::int64_t> load;
  for (const auto& [h, seq] : r.assignment) {
    for (const auto& d : seq) ++load[mul(d, h)];
  }
  return make_multiset(spec, {load.begin(), load.end()}, cap);
}

}  // namespace loctile
